#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "qbell/core_linalg.hpp"

namespace qbell {

/// Source of the per-pair phases: roots of unity from a DFT column (any even
/// d) or +-1 entries from a Walsh matrix column (d/2 a power of two only).
enum class PhaseMode { dft, walsh };

std::string_view to_string(PhaseMode mode);
PhaseMode phase_mode_from_string(std::string_view name);

/// A round-robin tournament over the d single-particle states: d-1 rounds of
/// d/2 disjoint pairs, with every unordered pair appearing in exactly one
/// round. Round r (0-based) hosts correlation class c = r + 1.
struct PairingSchedule {
    int d = 0;
    std::vector<std::vector<std::pair<int, int>>> rounds;
};

/// Circle-method schedule: player 0 is fixed, players 1..d-1 rotate. In round
/// r (1-based) the pairs are (0, r) followed by (r+k, r-k) for k = 1..d/2-1,
/// both entries wrapped into {1..d-1}.
PairingSchedule round_robin_schedule(int d);

/// A two-particle state on a d x d product space. `amplitudes` is dense and
/// row-major: index = left_state * d + right_state. Constructed Bell states
/// have exactly d nonzero entries of magnitude 1/sqrt(d).
struct BellState {
    int d = 0;
    int c = 0;  ///< correlation class (pairing pattern)
    int p = 0;  ///< phase class; parity of p sets the exchange sign for c != 0
    PhaseMode mode = PhaseMode::dft;
    std::vector<Complex> amplitudes;

    Complex amplitude(int left, int right) const {
        return amplitudes[static_cast<std::size_t>(left) * d + right];
    }
};

/// The (d/2) x (d/2) unit-modulus matrix whose columns supply phase classes.
struct PhaseAssignment {
    int d = 0;
    PhaseMode mode = PhaseMode::dft;
    ComplexMatrix matrix;
};

PhaseAssignment phase_assignment(int d, PhaseMode mode);

/// Phase carried by pair j of a class-(anything) state in phase class p:
/// column floor(p/2) of the phase matrix, row j. For dft mode this equals
/// exp(i * floor(p/2) * 4*pi*j / d); for walsh mode it is +-1.
Complex phase_factor(int j, int p, int d, PhaseMode mode);

/// Exchange-symmetrized Bell state |Psi_c^p>.
///
/// For c != 0, pair j = (s, t) of schedule round c-1 (oriented s < t)
/// contributes phase_factor(j,p)/sqrt(d) at |s>|t> and (-1)^p times that at
/// |t>|s>. For c = 0 the pairs are the diagonal entries (2j, 2j) and
/// (2j+1, 2j+1) with the same phase/sign pattern.
///
/// Pair orientation is a gauge choice; this library fixes s = min(pair) so
/// the (-1)^p sign always lands on the high-state-first term.
BellState bell_state(int d, int c, int p, PhaseMode mode = PhaseMode::dft);

/// All d^2 states, ordered by (c, p) lexicographically. Mutually orthonormal.
std::vector<BellState> full_basis(int d, PhaseMode mode = PhaseMode::dft);

/// The conventional (unsymmetrized) qudit Bell state: amplitude
/// exp(2*pi*i*n*k/d)/sqrt(d) at |k>|(k+m) mod d>. Valid for any d >= 2,
/// odd included; the returned value carries (n, m) in the (c, p) fields and
/// makes no exchange-symmetry guarantee.
BellState canonical_bell_state(int d, int n, int m);

/// All d^2 canonical states, ordered by (n, m) lexicographically.
std::vector<BellState> canonical_basis(int d);

/// <a|b> with the conjugate on the left argument.
Complex inner_product(const BellState& a, const BellState& b);

/// Matrix of pairwise inner products G(i, j) = <states[i]|states[j]>.
ComplexMatrix gram_matrix(const std::vector<BellState>& states);

}  // namespace qbell
