#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qbell/bell_basis.hpp"
#include "qbell/core_linalg.hpp"

namespace qbell {

enum class Statistics { boson, fermion };

std::string_view to_string(Statistics statistics);
Statistics statistics_from_string(std::string_view name);

/// Mode map of the measurement apparatus: a 50/50 beam splitter on the L/R
/// side index followed by state-resolving splitters fanning each side out
/// into d detector channels. Row = detector channel (side_out * d + state),
/// column = input mode (side_in * d + state), with side L = 0, R = 1 in and
/// A = 0, B = 1 out.
struct ModeUnitary {
    int d = 0;
    ComplexMatrix matrix;  ///< 2d x 2d, unitary
};

/// The map a_{L,k} -> (b_{A,k} + b_{B,k})/sqrt(2),
///         a_{R,k} -> (b_{A,k} - b_{B,k})/sqrt(2).
ModeUnitary device_unitary(int d);

/// An unordered pair of detector channels that fired. Stored with n1 <= n2;
/// fermion signatures always have n1 < n2.
struct DetectionSignature {
    int n1 = 0;
    int n2 = 0;

    auto operator<=>(const DetectionSignature&) const = default;
};

/// Makes a signature with the canonical channel ordering.
DetectionSignature make_signature(int a, int b);

/// Outcome probabilities over detector-channel pairs for one input state.
/// Holds every kinematically possible signature, zeros included; `support`
/// filters by threshold.
struct SignatureDistribution {
    int d = 0;
    Statistics statistics = Statistics::boson;
    std::map<DetectionSignature, double> entries;

    double total() const;
    std::vector<DetectionSignature> support(double tol = kSupportTol) const;
};

/// Second-quantized propagation of a two-particle input through the device.
/// With input tensor chi (left state i enters mode L_i, right state j enters
/// mode R_j) and C[n1][n2] = sum_ij chi_ij M(n1, L_i) M(n2, R_j), the
/// signature weights are
///   bosons:   |C[n1][n2] + C[n2][n1]|^2 / (1 + delta_{n1,n2}),
///   fermions: |C[n1][n2] - C[n2][n1]|^2   (n1 < n2).
/// The weights sum to 1 for a unitary device; this is asserted rather than
/// renormalized.
SignatureDistribution detection_distribution(const BellState& state, const ModeUnitary& device,
                                             Statistics statistics);

/// Signatures with probability above `tol`.
std::vector<DetectionSignature> signature_support(const BellState& state,
                                                  const ModeUnitary& device,
                                                  Statistics statistics,
                                                  double tol = kSupportTol);

/// Result of the pairwise-disjoint-support test. When the states are
/// distinguishable the certificate maps every signature that can occur to the
/// index of the unique state producing it.
struct DistinguishabilityCheck {
    bool distinguishable = false;
    std::map<DetectionSignature, std::size_t> certificate;
    std::optional<std::pair<std::size_t, std::size_t>> conflict;
};

DistinguishabilityCheck distinguishable(const std::vector<BellState>& states,
                                        const ModeUnitary& device, Statistics statistics);

/// The 2d-1 dense-coding codewords: (c=0, p=0) plus (c, p) for c = 1..d-1,
/// p in {0, 1}, in that order.
std::vector<BellState> codeword_set(int d, PhaseMode mode = PhaseMode::dft);

inline constexpr std::uint64_t kDefaultSearchBudget = 20'000'000;

/// A maximum set of mutually distinguishable states. `exact` is true when the
/// branch-and-bound search completed within budget, proving maximality; on
/// budget exhaustion the best set found so far is returned with exact=false.
struct DistinguishabilityResult {
    std::vector<std::pair<int, int>> states;  ///< (c, p) tags, ascending
    int size = 0;
    std::size_t conflict_graph_edges = 0;
    bool exact = true;
    std::map<DetectionSignature, std::pair<int, int>> certificate;
};

/// Exact maximum independent set of the conflict graph (vertices = states,
/// edge = overlapping supports) via branch and bound with a greedy
/// clique-cover bound. Deterministic: among maximum sets, the one whose
/// vertex list is lexicographically smallest in input order is returned.
DistinguishabilityResult max_distinguishable_set(const std::vector<BellState>& states,
                                                 const ModeUnitary& device,
                                                 Statistics statistics,
                                                 std::uint64_t search_budget = kDefaultSearchBudget);

/// Convenience overload over the full symmetrized basis.
DistinguishabilityResult max_distinguishable_set(int d, const ModeUnitary& device,
                                                 Statistics statistics,
                                                 std::uint64_t search_budget = kDefaultSearchBudget,
                                                 PhaseMode mode = PhaseMode::dft);

/// True when the two channels sit on the same beam-splitter output side.
bool same_side(const DetectionSignature& signature, int d);

}  // namespace qbell
