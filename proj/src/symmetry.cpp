#include "qbell/symmetry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qbell {

std::string_view to_string(ExchangeLabel label) {
    switch (label) {
        case ExchangeLabel::symmetric: return "symmetric";
        case ExchangeLabel::antisymmetric: return "antisymmetric";
        case ExchangeLabel::neither: return "neither";
    }
    return "neither";
}

std::vector<Complex> swap_apply(const std::vector<Complex>& amplitudes, int d) {
    if (amplitudes.size() != static_cast<std::size_t>(d) * d)
        throw std::invalid_argument("swap_apply: amplitude length is not d^2");
    std::vector<Complex> out(amplitudes.size());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out[static_cast<std::size_t>(i) * d + j] =
                amplitudes[static_cast<std::size_t>(j) * d + i];
    return out;
}

std::vector<Complex> swap_apply(const BellState& state) {
    return swap_apply(state.amplitudes, state.d);
}

SymmetryClass classify_symmetry(const BellState& state, Tolerance tol) {
    const auto swapped = swap_apply(state);
    double sym_sq = 0.0;
    double anti_sq = 0.0;
    for (std::size_t i = 0; i < swapped.size(); ++i) {
        sym_sq += std::norm(swapped[i] - state.amplitudes[i]);
        anti_sq += std::norm(swapped[i] + state.amplitudes[i]);
    }
    const double r_sym = std::sqrt(sym_sq);
    const double r_anti = std::sqrt(anti_sq);
    if (r_sym < tol.eps) return {ExchangeLabel::symmetric, r_sym};
    if (r_anti < tol.eps) return {ExchangeLabel::antisymmetric, r_anti};
    return {ExchangeLabel::neither, std::min(r_sym, r_anti)};
}

std::pair<int, int> symmetry_counts(int d) {
    detail::require_even_dimension(d);
    return {d * (d + 1) / 2, d * (d - 1) / 2};
}

ComplexMatrix reduced_density(const BellState& state, Subsystem which) {
    const int d = state.d;
    ComplexMatrix rho(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    const auto amp = [&](int i, int j) {
        return state.amplitudes[static_cast<std::size_t>(i) * d + j];
    };
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Complex acc{};
            for (int k = 0; k < d; ++k)
                acc += (which == Subsystem::left) ? amp(a, k) * std::conj(amp(b, k))
                                                  : amp(k, a) * std::conj(amp(k, b));
            rho(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = acc;
        }
    return rho;
}

namespace {

// 53 mantissa bits of the raw engine output, mapped affinely onto [-1, 1).
double uniform_pm1(std::mt19937_64& rng) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

}  // namespace

ComplexMatrix random_skew_symmetric(int d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("random_skew_symmetric: dimension must be positive");
    std::mt19937_64 rng(seed);
    ComplexMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double v = uniform_pm1(rng);
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            m(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = -v;
        }
    return m;
}

ObstructionReport odd_d_obstruction(int d, int n_samples, std::uint64_t rng_seed) {
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument(
            "obstruction applies to odd d >= 3 only (even d admits symmetrized bases), got " +
            std::to_string(d));
    if (n_samples < 1) throw std::invalid_argument("n_samples must be positive");

    ObstructionReport report;
    report.d = d;
    report.sym_dim = static_cast<long long>(d) * (d + 1) / 2;
    report.needed = static_cast<long long>(d) * d;
    report.skew_det_samples.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const std::uint64_t seed = rng_seed + static_cast<std::uint64_t>(i);
        const double det = std::abs(determinant(random_skew_symmetric(d, seed)));
        report.skew_det_samples.emplace_back(seed, det);
    }
    return report;
}

}  // namespace qbell
