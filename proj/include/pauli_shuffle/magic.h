// Copyright 2026 The Pauli Shuffle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAULI_SHUFFLE_MAGIC_H
#define PAULI_SHUFFLE_MAGIC_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "pauli_shuffle/bloch.h"
#include "pauli_shuffle/rng.h"

namespace pshuf {

inline constexpr size_t kMaxStabilizerQubits = 3;
inline constexpr double kClassifyTolerance = 1e-7;
inline constexpr double kInvalidEigenvalue = -1e-10;

/// All pure n-qubit stabilizer states, as Bloch vectors.
struct StabilizerStateSet {
    size_t num_qubits = 0;
    std::vector<BlochVector> states;
    /// Column s holds 2^n * states[s].coeffs; every entry is 0 or +-1.
    Eigen::MatrixXd scaled_columns;
    /// 4^n states whose columns are linearly independent.
    std::vector<Eigen::Index> spanning_columns;

    size_t size() const {
        return states.size();
    }
};

/// 2^n * prod_{k=1..n} (2^k + 1).
uint64_t stabilizer_state_count(size_t n);

/// Builds the set from scratch. n must be 1, 2 or 3.
StabilizerStateSet enumerate_stabilizer_states(size_t n);

/// Shared, lazily built copy of enumerate_stabilizer_states(n).
const StabilizerStateSet &stabilizer_states(size_t n);

/// Sum of |coeffs|.
double d_measure(const BlochVector &v);

struct RobustnessResult {
    double value = 0;
    /// Quasiprobability weight of each stabilizer state.
    Eigen::VectorXd weights;
    /// max |sum_s q_s stab_s - v| over Bloch components.
    double residual = 0;
    int iterations = 0;
};

/// min sum |q_s| subject to sum_s q_s stab_s = v. Throws std::runtime_error if
/// the LP fails or the decomposition misses v by more than 1e-8.
RobustnessResult robustness_decomposition(const BlochVector &v, const StabilizerStateSet &set);
double robustness(const BlochVector &v, const StabilizerStateSet &set);

enum class MagicClass { StabilizerMixture, Bound, Magic, Invalid };

/// "stabilizer", "bound", "magic", "invalid".
const char *magic_class_name(MagicClass c);

struct Classification {
    MagicClass label = MagicClass::StabilizerMixture;
    double d_value = 0;
    /// Empty when the label was decided from D alone.
    std::optional<double> r_value;
    double tolerance = kClassifyTolerance;
};

/// Magic if D > 1 + tol (the LP is skipped unless full_lp), else
/// StabilizerMixture if R <= 1 + tol, else Bound.
Classification classify(const BlochVector &v, const StabilizerStateSet &set, double tol = kClassifyTolerance,
                        bool full_lp = false);
Classification classify(const BlochVector &v, double tol = kClassifyTolerance, bool full_lp = false);

/// Smallest eigenvalue of sum_i coeffs[i] sigma_i.
double min_eigenvalue(const BlochVector &v);
bool is_valid_density(const BlochVector &v, double eigen_floor = kInvalidEigenvalue);

/// G G^dag / Tr(G G^dag) with G a 2^n x rank matrix of standard complex
/// Gaussians. rank 0 means full rank (Hilbert-Schmidt measure).
BlochVector random_density(size_t n, PhiloxStream &rng, size_t rank = 0);

struct CensusResult {
    size_t num_qubits = 0;
    uint64_t count = 0;
    uint64_t seed = 0;
    uint64_t stabilizer = 0;
    uint64_t bound = 0;
    uint64_t magic = 0;
    const char *measure = "hilbert-schmidt";

    double stabilizer_fraction() const;
    double bound_fraction() const;
    double magic_fraction() const;
};

/// Classifies `count` random density matrices. State i is drawn from
/// PhiloxStream(seed, i), so the result is independent of the thread count.
CensusResult census(size_t n, uint64_t count, uint64_t seed, int threads = 0, bool full_lp = false);
CensusResult census_serial(size_t n, uint64_t count, uint64_t seed, bool full_lp = false);

/// Two-qubit families of cross sections:
///   a: I/4 + x (XX + ZZ - YY) + y (ZI + IZ)
///   b: I/4 + x ZZ + y (XX + XY + YX - YY)
///   c: (I + 0.8 ZZ)/4 + x (XX - YY) + y (XY + YX)
enum class Family { A, B, C };

Family family_from_name(std::string_view name);
char family_name(Family f);
BlochVector family_state(Family f, double x, double y);

struct CrossSectionOptions {
    double x_min = -0.35;
    double x_max = 0.35;
    double y_min = -0.35;
    double y_max = 0.35;
    size_t resolution = 301;
    double tolerance = kClassifyTolerance;
    bool full_lp = false;
};

struct CrossSection {
    Family family = Family::A;
    CrossSectionOptions options;
    /// Row-major, y outer: labels[iy * resolution + ix].
    std::vector<MagicClass> labels;

    double x(size_t ix) const;
    double y(size_t iy) const;
    MagicClass at(size_t ix, size_t iy) const {
        return labels[iy * options.resolution + ix];
    }
    uint64_t count(MagicClass c) const;
    /// Header `x,y,class`, one line per grid point.
    void write_csv(std::ostream &out) const;
};

/// Label of one point: Invalid if any eigenvalue is below -1e-10, otherwise
/// classify().
MagicClass classify_point(const BlochVector &v, const StabilizerStateSet &set, double tol, bool full_lp);

CrossSection cross_section(Family f, const CrossSectionOptions &options = {}, int threads = 0);
CrossSection cross_section_serial(Family f, const CrossSectionOptions &options = {});

}  // namespace pshuf

#endif
