#include "qbell/json_io.hpp"

#include <stdexcept>
#include <string>

namespace qbell {

Json basis_to_json(int d, PhaseMode mode, const std::vector<BellState>& states) {
    Json j;
    j["d"] = d;
    j["mode"] = to_string(mode);
    auto& out = j["states"] = Json::array();
    for (const auto& state : states) {
        Json entry;
        entry["c"] = state.c;
        entry["p"] = state.p;
        auto& amps = entry["amplitudes"] = Json::array();
        for (const Complex& a : state.amplitudes)
            amps.push_back(Json::array({a.real(), a.imag()}));
        out.push_back(std::move(entry));
    }
    return j;
}

ParsedBasis basis_from_json(const Json& j) {
    ParsedBasis parsed;
    parsed.d = j.at("d").get<int>();
    parsed.mode = phase_mode_from_string(j.at("mode").get<std::string>());
    if (parsed.d < 2) throw std::invalid_argument("basis file: d must be >= 2");

    const auto expected_len = static_cast<std::size_t>(parsed.d) * parsed.d;
    for (const auto& entry : j.at("states")) {
        BellState state;
        state.d = parsed.d;
        state.c = entry.at("c").get<int>();
        state.p = entry.at("p").get<int>();
        state.mode = parsed.mode;
        const auto& amps = entry.at("amplitudes");
        if (amps.size() != expected_len)
            throw std::invalid_argument("basis file: state (" + std::to_string(state.c) + ", " +
                                        std::to_string(state.p) + ") has " +
                                        std::to_string(amps.size()) +
                                        " amplitudes, expected " + std::to_string(expected_len));
        state.amplitudes.reserve(expected_len);
        for (const auto& pair : amps)
            state.amplitudes.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        parsed.states.push_back(std::move(state));
    }
    return parsed;
}

Json signature_to_json(const DetectionSignature& signature) {
    return Json::array({signature.n1, signature.n2});
}

Json signature_report_entry(const BellState& state, const SignatureDistribution& dist,
                                      double support_tol) {
    Json entry;
    entry["c"] = state.c;
    entry["p"] = state.p;
    auto& support = entry["support"] = Json::array();
    auto& table = entry["distribution"] = Json::array();
    for (const auto& [sig, weight] : dist.entries) {
        if (weight <= support_tol) continue;
        support.push_back(signature_to_json(sig));
        table.push_back(Json::array({sig.n1, sig.n2, weight}));
    }
    return entry;
}

}  // namespace qbell
