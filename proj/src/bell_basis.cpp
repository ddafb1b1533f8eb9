#include "qbell/bell_basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qbell {

std::string_view to_string(PhaseMode mode) {
    return mode == PhaseMode::dft ? "dft" : "walsh";
}

PhaseMode phase_mode_from_string(std::string_view name) {
    if (name == "dft") return PhaseMode::dft;
    if (name == "walsh") return PhaseMode::walsh;
    throw std::invalid_argument("unknown phase mode '" + std::string(name) +
                                "' (expected dft or walsh)");
}

namespace {

// Maps x into the rotating-player range {1..d-1}.
int wrap_player(int x, int d) {
    int m = (x - 1) % (d - 1);
    if (m < 0) m += d - 1;
    return m + 1;
}

void require_class_and_phase(int d, int c, int p) {
    if (c < 0 || c >= d)
        throw std::invalid_argument("correlation class out of range: c = " + std::to_string(c));
    if (p < 0 || p >= d)
        throw std::invalid_argument("phase class out of range: p = " + std::to_string(p));
}

void require_phase_mode_supported(int d, PhaseMode mode) {
    if (mode == PhaseMode::walsh && !is_power_of_two(static_cast<std::size_t>(d / 2)))
        throw std::invalid_argument(
            "walsh phase mode requires d/2 to be a power of two, got d = " + std::to_string(d));
}

}  // namespace

PairingSchedule round_robin_schedule(int d) {
    detail::require_even_dimension(d);
    PairingSchedule schedule;
    schedule.d = d;
    schedule.rounds.reserve(d - 1);
    for (int r = 1; r < d; ++r) {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(d / 2);
        pairs.emplace_back(0, r);
        for (int k = 1; k < d / 2; ++k)
            pairs.emplace_back(wrap_player(r + k, d), wrap_player(r - k, d));
        schedule.rounds.push_back(std::move(pairs));
    }
    return schedule;
}

PhaseAssignment phase_assignment(int d, PhaseMode mode) {
    detail::require_even_dimension(d);
    require_phase_mode_supported(d, mode);
    const auto half = static_cast<std::size_t>(d / 2);
    return {d, mode, mode == PhaseMode::dft ? dft_matrix(half) : walsh_matrix(half)};
}

Complex phase_factor(int j, int p, int d, PhaseMode mode) {
    detail::require_even_dimension(d);
    if (j < 0 || j >= d / 2)
        throw std::invalid_argument("pair index out of range: j = " + std::to_string(j));
    if (p < 0 || p >= d)
        throw std::invalid_argument("phase class out of range: p = " + std::to_string(p));
    require_phase_mode_supported(d, mode);
    const auto half = static_cast<std::size_t>(d / 2);
    const auto column = static_cast<std::size_t>(p / 2);
    if (mode == PhaseMode::walsh)
        return {static_cast<double>(walsh_matrix_int(half)[j][column]), 0.0};
    return dft_entry(static_cast<std::size_t>(j), column, half);
}

BellState bell_state(int d, int c, int p, PhaseMode mode) {
    detail::require_even_dimension(d);
    require_class_and_phase(d, c, p);
    require_phase_mode_supported(d, mode);

    BellState state{d, c, p, mode, std::vector<Complex>(static_cast<std::size_t>(d) * d)};
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    const double exchange_sign = (p % 2 == 0) ? 1.0 : -1.0;

    if (c == 0) {
        for (int j = 0; j < d / 2; ++j) {
            const Complex amp = phase_factor(j, p, d, mode) * scale;
            state.amplitudes[static_cast<std::size_t>(2 * j) * d + 2 * j] = amp;
            state.amplitudes[static_cast<std::size_t>(2 * j + 1) * d + 2 * j + 1] =
                exchange_sign * amp;
        }
        return state;
    }

    const auto schedule = round_robin_schedule(d);
    const auto& round = schedule.rounds[static_cast<std::size_t>(c - 1)];
    for (int j = 0; j < d / 2; ++j) {
        const auto [a, b] = round[static_cast<std::size_t>(j)];
        const int s = std::min(a, b);
        const int t = std::max(a, b);
        const Complex amp = phase_factor(j, p, d, mode) * scale;
        state.amplitudes[static_cast<std::size_t>(s) * d + t] = amp;
        state.amplitudes[static_cast<std::size_t>(t) * d + s] = exchange_sign * amp;
    }
    return state;
}

std::vector<BellState> full_basis(int d, PhaseMode mode) {
    detail::require_even_dimension(d);
    require_phase_mode_supported(d, mode);
    std::vector<BellState> states;
    states.reserve(static_cast<std::size_t>(d) * d);
    for (int c = 0; c < d; ++c)
        for (int p = 0; p < d; ++p) states.push_back(bell_state(d, c, p, mode));
    return states;
}

BellState canonical_bell_state(int d, int n, int m) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
    if (n < 0 || n >= d)
        throw std::invalid_argument("phase parameter out of range: n = " + std::to_string(n));
    if (m < 0 || m >= d)
        throw std::invalid_argument("shift parameter out of range: m = " + std::to_string(m));

    BellState state{d, n, m, PhaseMode::dft,
                    std::vector<Complex>(static_cast<std::size_t>(d) * d)};
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) {
        const int right = (k + m) % d;
        state.amplitudes[static_cast<std::size_t>(k) * d + right] =
            scale * dft_entry(static_cast<std::size_t>(n), static_cast<std::size_t>(k),
                              static_cast<std::size_t>(d));
    }
    return state;
}

std::vector<BellState> canonical_basis(int d) {
    std::vector<BellState> states;
    states.reserve(static_cast<std::size_t>(d) * d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) states.push_back(canonical_bell_state(d, n, m));
    return states;
}

Complex inner_product(const BellState& a, const BellState& b) {
    if (a.d != b.d) throw std::invalid_argument("inner_product: dimensions disagree");
    Complex acc{};
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return acc;
}

ComplexMatrix gram_matrix(const std::vector<BellState>& states) {
    const std::size_t n = states.size();
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = inner_product(states[i], states[j]);
    return g;
}

}  // namespace qbell
