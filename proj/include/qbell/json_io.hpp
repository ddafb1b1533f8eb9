#pragma once

#include <json.hpp>

#include "qbell/bell_basis.hpp"
#include "qbell/lelm.hpp"

namespace qbell {

/// JSON with insertion-ordered keys, so emitted documents keep the documented
/// field order.
using Json = nlohmann::ordered_json;

/// Basis export format:
///   {"d": <int>, "mode": "dft"|"walsh",
///    "states": [{"c": <int>, "p": <int>, "amplitudes": [[re, im], ...]}, ...]}
/// with amplitudes row-major (left * d + right). Values are not required to
/// be bit-exact on read; readers accept anything within 1e-9 of regenerated
/// amplitudes.
Json basis_to_json(int d, PhaseMode mode, const std::vector<BellState>& states);

struct ParsedBasis {
    int d = 0;
    PhaseMode mode = PhaseMode::dft;
    std::vector<BellState> states;
};

ParsedBasis basis_from_json(const Json& j);

Json signature_to_json(const DetectionSignature& signature);

/// One entry of the signature report: the state's tags with its support and
/// probability table (entries above `support_tol` only).
Json signature_report_entry(const BellState& state, const SignatureDistribution& dist,
                            double support_tol = kSupportTol);

}  // namespace qbell
