#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qbell/bell_basis.hpp"
#include "qbell/core_linalg.hpp"

namespace qbell {

enum class ExchangeLabel { symmetric, antisymmetric, neither };

std::string_view to_string(ExchangeLabel label);

/// Result of testing a state against the SWAP operator. `residual` is
/// ||SWAP|psi> -+ |psi>|| for the matching sign, or the smaller of the two
/// when the state is not an eigenstate.
struct SymmetryClass {
    ExchangeLabel label = ExchangeLabel::neither;
    double residual = 0.0;
};

/// Applies SWAP: output[(i, j)] = input[(j, i)].
std::vector<Complex> swap_apply(const std::vector<Complex>& amplitudes, int d);
std::vector<Complex> swap_apply(const BellState& state);

SymmetryClass classify_symmetry(const BellState& state, Tolerance tol = {});

/// Closed-form sector sizes for the symmetrized basis:
/// (d(d+1)/2 symmetric, d(d-1)/2 antisymmetric).
std::pair<int, int> symmetry_counts(int d);

enum class Subsystem { left, right };

/// Partial trace of |psi><psi| over the complementary subsystem. Equals I/d
/// for every fully entangled state.
ComplexMatrix reduced_density(const BellState& state, Subsystem which);

/// Dimension-counting demonstration that no symmetrized Bell basis exists in
/// odd dimension: the symmetric matrices span only d(d+1)/2 < d^2 dimensions,
/// and every odd-dimensional skew-symmetric matrix is singular (sampled
/// numerically).
struct ObstructionReport {
    int d = 0;
    long long sym_dim = 0;  ///< d(d+1)/2
    long long needed = 0;   ///< d^2
    std::vector<std::pair<std::uint64_t, double>> skew_det_samples;  ///< (seed, |det|)
};

/// Random real skew-symmetric d x d matrix, upper-triangle entries uniform in
/// [-1, 1). Sampling is reproducible: values are derived bitwise from
/// mt19937_64, independent of platform library details.
ComplexMatrix random_skew_symmetric(int d, std::uint64_t seed);

ObstructionReport odd_d_obstruction(int d, int n_samples = 100, std::uint64_t rng_seed = 0);

}  // namespace qbell
