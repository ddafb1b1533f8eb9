#include "qbell/lelm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qbell {

std::string_view to_string(Statistics statistics) {
    return statistics == Statistics::boson ? "boson" : "fermion";
}

Statistics statistics_from_string(std::string_view name) {
    if (name == "boson") return Statistics::boson;
    if (name == "fermion") return Statistics::fermion;
    throw std::invalid_argument("unknown statistics '" + std::string(name) +
                                "' (expected boson or fermion)");
}

ModeUnitary device_unitary(int d) {
    detail::require_even_dimension(d);
    const double s = 1.0 / std::numbers::sqrt2;
    ComplexMatrix m(static_cast<std::size_t>(2 * d), static_cast<std::size_t>(2 * d));
    for (int k = 0; k < d; ++k) {
        const auto a = static_cast<std::size_t>(k);      // detector A, state k
        const auto b = static_cast<std::size_t>(d + k);  // detector B, state k
        m(a, static_cast<std::size_t>(k)) = s;           // from L, k
        m(b, static_cast<std::size_t>(k)) = s;
        m(a, static_cast<std::size_t>(d + k)) = s;       // from R, k
        m(b, static_cast<std::size_t>(d + k)) = -s;
    }
    return {d, std::move(m)};
}

DetectionSignature make_signature(int a, int b) {
    return a <= b ? DetectionSignature{a, b} : DetectionSignature{b, a};
}

bool same_side(const DetectionSignature& signature, int d) {
    return (signature.n1 < d) == (signature.n2 < d);
}

double SignatureDistribution::total() const {
    double sum = 0.0;
    for (const auto& [sig, weight] : entries) sum += weight;
    return sum;
}

std::vector<DetectionSignature> SignatureDistribution::support(double tol) const {
    std::vector<DetectionSignature> out;
    for (const auto& [sig, weight] : entries)
        if (weight > tol) out.push_back(sig);
    return out;
}

SignatureDistribution detection_distribution(const BellState& state, const ModeUnitary& device,
                                             Statistics statistics) {
    if (state.d != device.d)
        throw std::invalid_argument("detection_distribution: state/device dimension mismatch");
    const int d = state.d;
    const int channels = 2 * d;
    const auto& m = device.matrix;

    // Two-step contraction of the output tensor:
    //   T[n][j]   = sum_i chi_ij M(n, L_i)
    //   C[n1][n2] = sum_j T[n1][j] M(n2, R_j)
    std::vector<Complex> t(static_cast<std::size_t>(channels) * d);
    for (int n = 0; n < channels; ++n)
        for (int j = 0; j < d; ++j) {
            Complex acc{};
            for (int i = 0; i < d; ++i)
                acc += state.amplitudes[static_cast<std::size_t>(i) * d + j] *
                       m(static_cast<std::size_t>(n), static_cast<std::size_t>(i));
            t[static_cast<std::size_t>(n) * d + j] = acc;
        }
    std::vector<Complex> c(static_cast<std::size_t>(channels) * channels);
    for (int n1 = 0; n1 < channels; ++n1)
        for (int n2 = 0; n2 < channels; ++n2) {
            Complex acc{};
            for (int j = 0; j < d; ++j)
                acc += t[static_cast<std::size_t>(n1) * d + j] *
                       m(static_cast<std::size_t>(n2), static_cast<std::size_t>(d + j));
            c[static_cast<std::size_t>(n1) * channels + n2] = acc;
        }

    SignatureDistribution dist;
    dist.d = d;
    dist.statistics = statistics;
    double total = 0.0;
    for (int n1 = 0; n1 < channels; ++n1) {
        for (int n2 = n1; n2 < channels; ++n2) {
            const Complex direct = c[static_cast<std::size_t>(n1) * channels + n2];
            const Complex exchanged = c[static_cast<std::size_t>(n2) * channels + n1];
            double weight = 0.0;
            if (statistics == Statistics::boson) {
                weight = std::norm(direct + exchanged);
                if (n1 == n2) weight /= 2.0;
            } else {
                if (n1 == n2) continue;  // excluded: a fermion pair cannot share a channel
                weight = std::norm(direct - exchanged);
            }
            dist.entries.emplace(DetectionSignature{n1, n2}, weight);
            total += weight;
        }
    }
    if (std::abs(total - 1.0) > kDefaultTol)
        throw std::logic_error("detection weights do not sum to 1; device is not unitary");
    return dist;
}

std::vector<DetectionSignature> signature_support(const BellState& state,
                                                  const ModeUnitary& device,
                                                  Statistics statistics, double tol) {
    return detection_distribution(state, device, statistics).support(tol);
}

DistinguishabilityCheck distinguishable(const std::vector<BellState>& states,
                                        const ModeUnitary& device, Statistics statistics) {
    DistinguishabilityCheck result;
    result.distinguishable = true;
    for (std::size_t idx = 0; idx < states.size(); ++idx) {
        for (const auto& sig : signature_support(states[idx], device, statistics)) {
            const auto [it, inserted] = result.certificate.try_emplace(sig, idx);
            if (!inserted) {
                result.distinguishable = false;
                if (!result.conflict) result.conflict = {{it->second, idx}};
            }
        }
    }
    if (!result.distinguishable) result.certificate.clear();
    return result;
}

std::vector<BellState> codeword_set(int d, PhaseMode mode) {
    detail::require_even_dimension(d);
    std::vector<BellState> codewords;
    codewords.reserve(static_cast<std::size_t>(2 * d - 1));
    codewords.push_back(bell_state(d, 0, 0, mode));
    for (int c = 1; c < d; ++c) {
        codewords.push_back(bell_state(d, c, 0, mode));
        codewords.push_back(bell_state(d, c, 1, mode));
    }
    return codewords;
}

namespace {

// Exact maximum independent set by branch and bound. Small graphs only
// (basis sizes, at most a few hundred vertices).
class IndependentSetSolver {
  public:
    IndependentSetSolver(const std::vector<std::vector<bool>>& adjacency, std::uint64_t budget)
        : adjacency_(adjacency), n_(adjacency.size()), budget_(budget) {}

    // Returns the best set found and whether maximality was proven. When the
    // search completes, the result is the lexicographically smallest maximum
    // independent set in vertex-index order.
    std::pair<std::vector<int>, bool> solve() {
        best_ = greedy_seed();
        std::vector<int> current;
        std::vector<int> candidates(n_);
        std::iota(candidates.begin(), candidates.end(), 0);
        expand(current, candidates);
        if (!truncated_) {
            auto lex = lexicographic_rebuild(best_.size());
            if (lex.size() == best_.size()) best_ = std::move(lex);
        }
        return {best_, !truncated_};
    }

  private:
    bool adjacent(int u, int v) const {
        return adjacency_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }

    std::vector<int> greedy_seed() const {
        // Ascending-degree greedy; decent lower bound for the cover pruning.
        std::vector<int> order(n_);
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> degree(n_, 0);
        for (std::size_t v = 0; v < n_; ++v)
            for (std::size_t u = 0; u < n_; ++u)
                if (adjacency_[v][u]) ++degree[v];
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return degree[static_cast<std::size_t>(a)] <
                                                    degree[static_cast<std::size_t>(b)]; });
        std::vector<int> chosen;
        for (int v : order) {
            bool ok = true;
            for (int u : chosen)
                if (adjacent(u, v)) { ok = false; break; }
            if (ok) chosen.push_back(v);
        }
        return chosen;
    }

    // Upper bound on the independence number of the candidate subgraph: the
    // size of a greedy partition into cliques (each clique contributes at
    // most one vertex).
    std::size_t clique_cover_bound(const std::vector<int>& candidates) const {
        std::vector<std::vector<int>> cliques;
        for (int v : candidates) {
            bool placed = false;
            for (auto& clique : cliques) {
                bool fits = true;
                for (int u : clique)
                    if (!adjacent(u, v)) { fits = false; break; }
                if (fits) {
                    clique.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) cliques.push_back({v});
        }
        return cliques.size();
    }

    void expand(std::vector<int>& current, std::vector<int>& candidates) {
        if (truncated_) return;
        if (++nodes_ > budget_) {
            truncated_ = true;
            return;
        }
        if (current.size() > best_.size()) best_ = current;
        if (candidates.empty()) return;
        if (current.size() + clique_cover_bound(candidates) <= best_.size()) return;

        const int v = candidates.front();
        std::vector<int> with_v;
        with_v.reserve(candidates.size());
        for (int u : candidates)
            if (u != v && !adjacent(u, v)) with_v.push_back(u);
        current.push_back(v);
        expand(current, with_v);
        current.pop_back();

        std::vector<int> without_v(candidates.begin() + 1, candidates.end());
        expand(current, without_v);
    }

    // Decision search: can `need` more vertices be packed from `candidates`?
    // Shares the node budget; answers false conservatively when it runs out,
    // which only skips the lexicographic polish below.
    bool can_reach(const std::vector<int>& candidates, std::size_t need) {
        if (need == 0) return true;
        if (candidates.size() < need) return false;
        if (++nodes_ > budget_) return false;
        if (clique_cover_bound(candidates) < need) return false;
        const int v = candidates.front();
        std::vector<int> with_v;
        with_v.reserve(candidates.size());
        for (int u : candidates)
            if (u != v && !adjacent(u, v)) with_v.push_back(u);
        if (can_reach(with_v, need - 1)) return true;
        std::vector<int> without_v(candidates.begin() + 1, candidates.end());
        return can_reach(without_v, need);
    }

    // Rebuilds the lexicographically smallest independent set of size k by
    // committing vertices in index order whenever a completion still exists.
    std::vector<int> lexicographic_rebuild(std::size_t k) {
        std::vector<int> chosen;
        std::vector<int> candidates(n_);
        std::iota(candidates.begin(), candidates.end(), 0);
        while (chosen.size() < k && !candidates.empty()) {
            const int v = candidates.front();
            std::vector<int> rest;
            rest.reserve(candidates.size());
            for (int u : candidates)
                if (u != v && !adjacent(u, v)) rest.push_back(u);
            if (can_reach(rest, k - chosen.size() - 1)) {
                chosen.push_back(v);
                candidates = std::move(rest);
            } else {
                candidates.erase(candidates.begin());
            }
        }
        return chosen;
    }

    const std::vector<std::vector<bool>>& adjacency_;
    std::size_t n_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool truncated_ = false;
    std::vector<int> best_;
};

}  // namespace

DistinguishabilityResult max_distinguishable_set(const std::vector<BellState>& states,
                                                 const ModeUnitary& device,
                                                 Statistics statistics,
                                                 std::uint64_t search_budget) {
    const std::size_t n = states.size();
    std::vector<std::vector<DetectionSignature>> supports;
    supports.reserve(n);
    for (const auto& state : states)
        supports.push_back(signature_support(state, device, statistics));

    std::vector<std::vector<bool>> adjacency(n, std::vector<bool>(n, false));
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool overlap = std::ranges::any_of(supports[i], [&](const auto& sig) {
                return std::ranges::binary_search(supports[j], sig);
            });
            if (overlap) {
                adjacency[i][j] = adjacency[j][i] = true;
                ++edges;
            }
        }

    IndependentSetSolver solver(adjacency, search_budget);
    auto [chosen, exact] = solver.solve();
    std::sort(chosen.begin(), chosen.end());

    DistinguishabilityResult result;
    result.size = static_cast<int>(chosen.size());
    result.conflict_graph_edges = edges;
    result.exact = exact;
    for (int idx : chosen) {
        const auto& state = states[static_cast<std::size_t>(idx)];
        result.states.emplace_back(state.c, state.p);
        for (const auto& sig : supports[static_cast<std::size_t>(idx)])
            result.certificate.emplace(sig, std::make_pair(state.c, state.p));
    }
    return result;
}

DistinguishabilityResult max_distinguishable_set(int d, const ModeUnitary& device,
                                                 Statistics statistics,
                                                 std::uint64_t search_budget, PhaseMode mode) {
    return max_distinguishable_set(full_basis(d, mode), device, statistics, search_budget);
}

}  // namespace qbell
