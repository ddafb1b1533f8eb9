#include "qbell/dense_coding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qbell {

UndecodableSignature::UndecodableSignature(const DetectionSignature& signature)
    : std::runtime_error("signature (" + std::to_string(signature.n1) + ", " +
                         std::to_string(signature.n2) +
                         ") lies outside every codeword's support") {}

ComplexMatrix alice_unitary(int d, int c, int p) {
    detail::require_even_dimension(d);
    if (c < 0 || c >= d)
        throw std::invalid_argument("correlation class out of range: c = " + std::to_string(c));
    if (p != 0 && p != 1)
        throw std::invalid_argument("codeword phase class must be 0 or 1, got " +
                                    std::to_string(p));

    ComplexMatrix u(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    if (c == 0) {
        for (int k = 0; k < d; ++k)
            u(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) =
                (p == 1 && k % 2 == 1) ? -1.0 : 1.0;
    } else {
        const auto schedule = round_robin_schedule(d);
        for (const auto& [a, b] : schedule.rounds[static_cast<std::size_t>(c - 1)]) {
            const int s = std::min(a, b);
            const int t = std::max(a, b);
            u(static_cast<std::size_t>(s), static_cast<std::size_t>(t)) = 1.0;  // |t> -> |s>
            u(static_cast<std::size_t>(t), static_cast<std::size_t>(s)) =
                (p == 1) ? -1.0 : 1.0;  // |s> -> (-1)^p |t>
        }
    }

    // The sign placement is defined by the target condition
    // (U (x) I)|Psi_0^0> = |Psi_c^p>, so check it rather than trust the
    // construction.
    const BellState target = bell_state(d, c, p);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    Complex overlap{};
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k)
            overlap += std::conj(target.amplitude(l, k)) *
                       (u(static_cast<std::size_t>(l), static_cast<std::size_t>(k)) * scale);
    if (std::abs(std::abs(overlap) - 1.0) > kDefaultTol)
        throw std::logic_error("alice_unitary does not map the shared state onto the codeword");
    return u;
}

std::pair<int, int> message_to_class(int d, int message) {
    detail::require_even_dimension(d);
    if (message < 0 || message > 2 * d - 2)
        throw std::invalid_argument("message out of range: " + std::to_string(message) +
                                    " (alphabet is 0.." + std::to_string(2 * d - 2) + ")");
    if (message == 0) return {0, 0};
    return {(message + 1) / 2, (message - 1) % 2};
}

int class_to_message(int d, int c, int p) {
    detail::require_even_dimension(d);
    if (c == 0 && p == 0) return 0;
    if (c >= 1 && c < d && (p == 0 || p == 1)) return 2 * c - 1 + p;
    throw std::invalid_argument("no codeword message for (c, p) = (" + std::to_string(c) + ", " +
                                std::to_string(p) + ")");
}

BellState encode(int d, int message, PhaseMode mode) {
    const auto [c, p] = message_to_class(d, message);
    const ComplexMatrix u = alice_unitary(d, c, p);
    const BellState shared = bell_state(d, 0, 0, mode);

    BellState encoded{d, c, p, mode, std::vector<Complex>(static_cast<std::size_t>(d) * d)};
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k) {
            Complex acc{};
            for (int s = 0; s < d; ++s)
                acc += u(static_cast<std::size_t>(l), static_cast<std::size_t>(s)) *
                       shared.amplitudes[static_cast<std::size_t>(s) * d + k];
            encoded.amplitudes[static_cast<std::size_t>(l) * d + k] = acc;
        }
    return encoded;
}

DenseCodingChannel::DenseCodingChannel(int d, Statistics statistics, PhaseMode mode)
    : d_(d), statistics_(statistics), mode_(mode) {
    const auto device = device_unitary(d);
    const auto codewords = codeword_set(d, mode);
    distributions_.reserve(codewords.size());
    for (const auto& codeword : codewords)
        distributions_.push_back(detection_distribution(codeword, device, statistics));

    const auto check = distinguishable(codewords, device, statistics);
    if (!check.distinguishable)
        throw std::logic_error("codeword supports overlap; decoding would be ambiguous");
    for (const auto& [sig, index] : check.certificate)
        decode_table_.emplace(sig, static_cast<int>(index));
}

const SignatureDistribution& DenseCodingChannel::distribution(int message) const {
    if (message < 0 || message >= message_count())
        throw std::invalid_argument("message out of range: " + std::to_string(message));
    return distributions_[static_cast<std::size_t>(message)];
}

int DenseCodingChannel::decode(const DetectionSignature& signature) const {
    const auto it = decode_table_.find(signature);
    if (it == decode_table_.end()) throw UndecodableSignature(signature);
    return it->second;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DetectionSignature DenseCodingChannel::sample(int message, std::mt19937_64& rng) const {
    const auto& dist = distribution(message);
    const double u = uniform01(rng);
    double cum = 0.0;
    const DetectionSignature* last_positive = nullptr;
    for (const auto& [sig, weight] : dist.entries) {
        if (weight <= 0.0) continue;
        cum += weight;
        last_positive = &sig;
        if (u < cum) return sig;
    }
    if (last_positive == nullptr) throw std::logic_error("empty detection distribution");
    return *last_positive;  // round-off spillover past the final bin
}

std::vector<TranscriptEntry> DenseCodingChannel::roundtrip(const std::vector<int>& messages,
                                                           std::uint64_t rng_seed) const {
    std::vector<TranscriptEntry> transcript;
    transcript.reserve(messages.size());
    std::mt19937_64 rng(rng_seed);
    for (int message : messages) {
        const DetectionSignature sig = sample(message, rng);
        transcript.push_back({message, sig, decode(sig)});
    }
    return transcript;
}

int decode(const DetectionSignature& signature, int d, Statistics statistics, PhaseMode mode) {
    return DenseCodingChannel(d, statistics, mode).decode(signature);
}

std::vector<TranscriptEntry> roundtrip(int d, const std::vector<int>& messages,
                                       Statistics statistics, std::uint64_t rng_seed,
                                       PhaseMode mode) {
    return DenseCodingChannel(d, statistics, mode).roundtrip(messages, rng_seed);
}

}  // namespace qbell
