#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "qbell/bell_basis.hpp"

using qbell::BellState;
using qbell::Complex;
using qbell::PhaseMode;

namespace {

constexpr double pi = std::numbers::pi;

double cdist(Complex a, Complex b) { return std::abs(a - b); }

// Test-local Gram computation over raw amplitude vectors.
double max_gram_deviation(const std::vector<BellState>& states) {
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j) {
            Complex dot{};
            for (std::size_t k = 0; k < states[i].amplitudes.size(); ++k)
                dot += std::conj(states[i].amplitudes[k]) * states[j].amplitudes[k];
            const Complex expected = (i == j) ? Complex{1.0, 0.0} : Complex{};
            worst = std::max(worst, std::abs(dot - expected));
        }
    return worst;
}

// Exhaustive schedule checker: every round a perfect matching, every
// unordered pair covered exactly once.
void check_schedule_invariants(const qbell::PairingSchedule& schedule) {
    const int d = schedule.d;
    REQUIRE(schedule.rounds.size() == static_cast<std::size_t>(d - 1));
    std::set<std::pair<int, int>> seen;
    for (const auto& round : schedule.rounds) {
        REQUIRE(round.size() == static_cast<std::size_t>(d / 2));
        std::set<int> players;
        for (const auto& [s, t] : round) {
            CHECK(s != t);
            CHECK(s >= 0);
            CHECK(t >= 0);
            CHECK(s < d);
            CHECK(t < d);
            players.insert(s);
            players.insert(t);
            const auto key = std::minmax(s, t);
            CHECK(seen.insert(key).second);  // no pair repeats across rounds
        }
        CHECK(players.size() == static_cast<std::size_t>(d));
    }
    CHECK(seen.size() == static_cast<std::size_t>(d * (d - 1) / 2));
}

void check_amplitudes(const BellState& state,
                      const std::map<std::pair<int, int>, Complex>& expected, double tol) {
    for (int l = 0; l < state.d; ++l)
        for (int r = 0; r < state.d; ++r) {
            const auto it = expected.find({l, r});
            const Complex want = (it == expected.end()) ? Complex{} : it->second;
            CAPTURE(l);
            CAPTURE(r);
            CHECK(cdist(state.amplitude(l, r), want) < tol);
        }
}

}  // namespace

TEST_CASE("round_robin_schedule d=6 reproduces the circle-method table") {
    const auto schedule = qbell::round_robin_schedule(6);
    using Round = std::vector<std::pair<int, int>>;
    const std::vector<Round> expected = {
        {{0, 1}, {2, 5}, {3, 4}},
        {{0, 2}, {3, 1}, {4, 5}},
        {{0, 3}, {4, 2}, {5, 1}},
        {{0, 4}, {5, 3}, {1, 2}},
        {{0, 5}, {1, 4}, {2, 3}},
    };
    CHECK(schedule.rounds == expected);
}

TEST_CASE("round_robin_schedule d=2 is the single pairing") {
    const auto schedule = qbell::round_robin_schedule(2);
    REQUIRE(schedule.rounds.size() == 1);
    CHECK(schedule.rounds[0] == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("round_robin_schedule d=8 satisfies the matching and coverage invariants") {
    check_schedule_invariants(qbell::round_robin_schedule(8));
}

TEST_CASE("round_robin_schedule invariants hold for all even d up to 16") {
    for (int d = 2; d <= 16; d += 2) check_schedule_invariants(qbell::round_robin_schedule(d));
}

TEST_CASE("round_robin_schedule rejects odd and zero d") {
    CHECK_THROWS_AS(qbell::round_robin_schedule(5), std::invalid_argument);
    CHECK_THROWS_AS(qbell::round_robin_schedule(0), std::invalid_argument);
    CHECK_THROWS_AS(qbell::round_robin_schedule(-2), std::invalid_argument);
}

TEST_CASE("phase_factor is 1 for phase classes 0 and 1") {
    for (int j = 0; j < 3; ++j)
        for (int p : {0, 1}) CHECK(cdist(qbell::phase_factor(j, p, 6, PhaseMode::dft), 1.0) == 0.0);
}

TEST_CASE("phase_factor d=6 p=4 j=1 is exp(4 pi i / 3)") {
    CHECK(cdist(qbell::phase_factor(1, 4, 6, PhaseMode::dft), std::polar(1.0, 4.0 * pi / 3.0)) <
          1e-15);
}

TEST_CASE("phase_factor d=8 walsh p=5 j=3 hits H(4) row 3 column 2") {
    CHECK(cdist(qbell::phase_factor(3, 5, 8, PhaseMode::walsh), -1.0) == 0.0);
}

TEST_CASE("phase_factor rejects walsh when d/2 is not a power of two") {
    CHECK_THROWS_AS(qbell::phase_factor(0, 0, 6, PhaseMode::walsh), std::invalid_argument);
    CHECK_THROWS_AS(qbell::phase_factor(0, 0, 12, PhaseMode::walsh), std::invalid_argument);
}

TEST_CASE("phase_factor depends on p only through floor(p/2)") {
    for (int d : {4, 6, 8, 10}) {
        for (int j = 0; j < d / 2; ++j)
            for (int l = 0; l < d / 2; ++l)
                CHECK(cdist(qbell::phase_factor(j, 2 * l, d, PhaseMode::dft),
                            qbell::phase_factor(j, 2 * l + 1, d, PhaseMode::dft)) == 0.0);
    }
}

TEST_CASE("phase_assignment matrices have orthogonal columns") {
    for (int d : {2, 4, 6, 8}) {
        const auto assignment = qbell::phase_assignment(d, PhaseMode::dft);
        const auto prod = assignment.matrix.adjoint() * assignment.matrix;
        CHECK(qbell::deviation_from_scaled_identity(prod, d / 2.0) < 1e-12);
    }
    CHECK_THROWS_AS(qbell::phase_assignment(6, PhaseMode::walsh), std::invalid_argument);
}

TEST_CASE("bell_state d=2 c=0 p=0 is (|00>+|11>)/sqrt(2)") {
    const auto state = qbell::bell_state(2, 0, 0);
    const double s = 1.0 / std::sqrt(2.0);
    check_amplitudes(state, {{{0, 0}, s}, {{1, 1}, s}}, 1e-15);
}

TEST_CASE("golden d=6 states") {
    const double s = 1.0 / std::sqrt(6.0);
    const Complex w1 = std::polar(1.0, 4.0 * pi / 3.0);
    const Complex w2 = std::polar(1.0, 8.0 * pi / 3.0);

    SUBCASE("|Psi_0^4>") {
        check_amplitudes(qbell::bell_state(6, 0, 4),
                         {{{0, 0}, s}, {{1, 1}, s},
                          {{2, 2}, s * w1}, {{3, 3}, s * w1},
                          {{4, 4}, s * w2}, {{5, 5}, s * w2}},
                         1e-12);
    }
    SUBCASE("|Psi_0^5>") {
        check_amplitudes(qbell::bell_state(6, 0, 5),
                         {{{0, 0}, s}, {{1, 1}, -s},
                          {{2, 2}, s * w1}, {{3, 3}, -s * w1},
                          {{4, 4}, s * w2}, {{5, 5}, -s * w2}},
                         1e-12);
    }
    SUBCASE("|Psi_1^1>") {
        check_amplitudes(qbell::bell_state(6, 1, 1),
                         {{{0, 1}, s}, {{1, 0}, -s},
                          {{2, 5}, s}, {{5, 2}, -s},
                          {{3, 4}, s}, {{4, 3}, -s}},
                         1e-12);
    }
    SUBCASE("|Psi_2^5>") {
        check_amplitudes(qbell::bell_state(6, 2, 5),
                         {{{0, 2}, s}, {{2, 0}, -s},
                          {{1, 3}, s * w1}, {{3, 1}, -s * w1},
                          {{4, 5}, s * w2}, {{5, 4}, -s * w2}},
                         1e-12);
    }
}

TEST_CASE("bell_state rejects out-of-range classes and odd d") {
    CHECK_THROWS_AS(qbell::bell_state(6, 6, 0), std::invalid_argument);
    CHECK_THROWS_AS(qbell::bell_state(6, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(qbell::bell_state(3, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(qbell::bell_state(6, 0, 0, PhaseMode::walsh), std::invalid_argument);
}

TEST_CASE("full_basis d=2 yields the four qubit Bell states") {
    const auto basis = qbell::full_basis(2);
    REQUIRE(basis.size() == 4);
    const double s = 1.0 / std::sqrt(2.0);
    // (c=0, p=0/1) are the correlated pair, (c=1, p=0/1) the anticorrelated.
    check_amplitudes(basis[0], {{{0, 0}, s}, {{1, 1}, s}}, 1e-15);
    check_amplitudes(basis[1], {{{0, 0}, s}, {{1, 1}, -s}}, 1e-15);
    check_amplitudes(basis[2], {{{0, 1}, s}, {{1, 0}, s}}, 1e-15);
    check_amplitudes(basis[3], {{{0, 1}, s}, {{1, 0}, -s}}, 1e-15);
}

TEST_CASE("full_basis d=4 and d=6 are orthonormal") {
    CHECK(max_gram_deviation(qbell::full_basis(4)) < 1e-10);
    CHECK(max_gram_deviation(qbell::full_basis(6)) < 1e-10);
}

TEST_CASE("full_basis is orthonormal with d-sparse unit-magnitude support, d <= 12") {
    for (int d = 2; d <= 12; d += 2) {
        std::vector<PhaseMode> modes{PhaseMode::dft};
        if (qbell::is_power_of_two(static_cast<std::size_t>(d / 2)))
            modes.push_back(PhaseMode::walsh);
        for (PhaseMode mode : modes) {
            const auto basis = qbell::full_basis(d, mode);
            REQUIRE(basis.size() == static_cast<std::size_t>(d) * d);
            CHECK(max_gram_deviation(basis) < 1e-10);
            const double expected_mag = 1.0 / std::sqrt(static_cast<double>(d));
            for (const auto& state : basis) {
                int nonzero = 0;
                for (const Complex& a : state.amplitudes) {
                    if (std::abs(a) > 1e-12) {
                        ++nonzero;
                        CHECK(std::abs(std::abs(a) - expected_mag) < 1e-12);
                    }
                }
                CHECK(nonzero == d);
            }
        }
    }
}

TEST_CASE("states in different correlation classes have disjoint support") {
    for (int d : {4, 6, 8}) {
        const auto basis = qbell::full_basis(d);
        auto support = [&](const BellState& st) {
            std::set<std::size_t> idx;
            for (std::size_t k = 0; k < st.amplitudes.size(); ++k)
                if (std::abs(st.amplitudes[k]) > 1e-12) idx.insert(k);
            return idx;
        };
        for (const auto& a : basis)
            for (const auto& b : basis) {
                if (a.c == b.c) continue;
                const auto sa = support(a);
                const auto sb = support(b);
                for (std::size_t k : sa) CHECK(sb.count(k) == 0);
            }
    }
}

TEST_CASE("phase-class partners differ exactly by the exchange sign pattern") {
    for (int d : {4, 6}) {
        const auto schedule = qbell::round_robin_schedule(d);
        for (int c = 1; c < d; ++c)
            for (int l = 0; l < d / 2; ++l) {
                const auto even = qbell::bell_state(d, c, 2 * l);
                const auto odd = qbell::bell_state(d, c, 2 * l + 1);
                for (auto [a, b] : schedule.rounds[static_cast<std::size_t>(c - 1)]) {
                    const int s = std::min(a, b);
                    const int t = std::max(a, b);
                    CHECK(cdist(odd.amplitude(s, t), even.amplitude(s, t)) == 0.0);
                    CHECK(cdist(odd.amplitude(t, s), -even.amplitude(t, s)) == 0.0);
                }
            }
    }
}

TEST_CASE("canonical_bell_state d=2 n=0 m=0 is (|00>+|11>)/sqrt(2)") {
    const auto state = qbell::canonical_bell_state(2, 0, 0);
    const double s = 1.0 / std::sqrt(2.0);
    check_amplitudes(state, {{{0, 0}, s}, {{1, 1}, s}}, 1e-15);
}

TEST_CASE("canonical_bell_state d=6 n=1 m=1 walks the sixth roots of unity") {
    const auto state = qbell::canonical_bell_state(6, 1, 1);
    const double s = 1.0 / std::sqrt(6.0);
    std::map<std::pair<int, int>, Complex> expected;
    for (int k = 0; k < 6; ++k)
        expected[{k, (k + 1) % 6}] = s * std::polar(1.0, pi * k / 3.0);
    check_amplitudes(state, expected, 1e-12);
}

TEST_CASE("canonical basis exists and is orthonormal for odd d") {
    CHECK(max_gram_deviation(qbell::canonical_basis(3)) < 1e-10);
    CHECK(max_gram_deviation(qbell::canonical_basis(5)) < 1e-10);
}

TEST_CASE("canonical_bell_state rejects out-of-range parameters") {
    CHECK_THROWS_AS(qbell::canonical_bell_state(4, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(qbell::canonical_bell_state(4, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(qbell::canonical_bell_state(1, 0, 0), std::invalid_argument);
}

TEST_CASE("gram_matrix agrees with the library inner product") {
    const auto basis = qbell::full_basis(4);
    const auto g = qbell::gram_matrix(basis);
    CHECK(qbell::deviation_from_scaled_identity(g, 1.0) < 1e-10);
}

TEST_CASE("walsh d=4 basis states factor into pairs of qubit Bell states") {
    // Qubit Bell states, indexed 0..3: correlated +, correlated -,
    // anticorrelated +, anticorrelated -.
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<Complex>> qubit(4, std::vector<Complex>(4));
    qubit[0][0 * 2 + 0] = s;
    qubit[0][1 * 2 + 1] = s;
    qubit[1][0 * 2 + 0] = s;
    qubit[1][1 * 2 + 1] = -s;
    qubit[2][0 * 2 + 1] = s;
    qubit[2][1 * 2 + 0] = s;
    qubit[3][0 * 2 + 1] = s;
    qubit[3][1 * 2 + 0] = -s;

    // Hyperentangled product: qudit state k = 2*k1 + k0 from qubit pairs.
    auto product_state = [&](int b1, int b0) {
        std::vector<Complex> amps(16);
        for (int l1 = 0; l1 < 2; ++l1)
            for (int l0 = 0; l0 < 2; ++l0)
                for (int r1 = 0; r1 < 2; ++r1)
                    for (int r0 = 0; r0 < 2; ++r0) {
                        const int left = 2 * l1 + l0;
                        const int right = 2 * r1 + r0;
                        amps[static_cast<std::size_t>(left) * 4 + right] =
                            qubit[static_cast<std::size_t>(b1)][static_cast<std::size_t>(l1) * 2 + r1] *
                            qubit[static_cast<std::size_t>(b0)][static_cast<std::size_t>(l0) * 2 + r0];
                    }
        return amps;
    };

    const auto basis = qbell::full_basis(4, PhaseMode::walsh);
    std::vector<int> row_hits(16, 0), col_hits(16, 0);
    for (std::size_t i = 0; i < 16; ++i) {
        for (int b1 = 0; b1 < 4; ++b1)
            for (int b0 = 0; b0 < 4; ++b0) {
                const auto product = product_state(b1, b0);
                Complex overlap{};
                for (std::size_t k = 0; k < 16; ++k)
                    overlap += std::conj(product[k]) * basis[i].amplitudes[k];
                const double mag = std::abs(overlap);
                CHECK((mag < 1e-10 || mag > 1.0 - 1e-10));  // unit entry or zero
                if (mag > 1.0 - 1e-10) {
                    ++row_hits[i];
                    ++col_hits[static_cast<std::size_t>(b1) * 4 + b0];
                }
            }
    }
    for (int hits : row_hits) CHECK(hits == 1);
    for (int hits : col_hits) CHECK(hits == 1);
}

TEST_CASE("phase mode strings round-trip") {
    CHECK(qbell::phase_mode_from_string("dft") == PhaseMode::dft);
    CHECK(qbell::phase_mode_from_string("walsh") == PhaseMode::walsh);
    CHECK(qbell::to_string(PhaseMode::walsh) == "walsh");
    CHECK_THROWS_AS(qbell::phase_mode_from_string("fourier"), std::invalid_argument);
}
