#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "qbell/bell_basis.hpp"
#include "qbell/core_linalg.hpp"
#include "qbell/lelm.hpp"

namespace qbell {

/// Raised by decode when a signature lies outside every codeword's support.
/// Cannot occur in a noiseless run; kept for robustness against bad input.
class UndecodableSignature : public std::runtime_error {
  public:
    explicit UndecodableSignature(const DetectionSignature& signature);
};

/// Alice's local operation turning the shared (c=0, p=0) state into the
/// (c, p) codeword: a signed permutation with |t> -> |s> and
/// |s> -> (-1)^p |t> for every class-c pair (s, t), s < t. For c = 0 it is
/// the identity (p = 0) or a phase flip on the odd-indexed states (p = 1).
/// The construction is validated against the target state before returning.
ComplexMatrix alice_unitary(int d, int c, int p);

/// Message numbering over the 2d-1 codewords: 0 -> (0,0), and m >= 1 ->
/// (c = ceil(m/2), p = (m-1) mod 2).
std::pair<int, int> message_to_class(int d, int message);
int class_to_message(int d, int c, int p);

/// Applies (alice_unitary (x) I) to the shared state and returns the encoded
/// Bell state, tagged with its (c, p).
BellState encode(int d, int message, PhaseMode mode = PhaseMode::dft);

struct TranscriptEntry {
    int message_sent = 0;
    DetectionSignature signature_observed;
    int message_decoded = 0;
};

/// Precomputed dense-coding pipeline for one (d, statistics, mode) choice:
/// codeword states, their detection distributions, and the signature ->
/// message table derived from the disjoint-support certificate.
class DenseCodingChannel {
  public:
    DenseCodingChannel(int d, Statistics statistics, PhaseMode mode = PhaseMode::dft);

    int d() const { return d_; }
    Statistics statistics() const { return statistics_; }
    int message_count() const { return 2 * d_ - 1; }

    const std::map<DetectionSignature, int>& decode_table() const { return decode_table_; }
    const SignatureDistribution& distribution(int message) const;

    int decode(const DetectionSignature& signature) const;

    /// Draws one detector signature for the given message. Sampling uses CDF
    /// inversion with uniforms derived bitwise from mt19937_64, so transcripts
    /// are reproducible from the seed alone on any platform.
    DetectionSignature sample(int message, std::mt19937_64& rng) const;

    /// Runs encode -> sampled measurement -> decode for each message, in
    /// order. Noiseless, so every entry decodes to its input.
    std::vector<TranscriptEntry> roundtrip(const std::vector<int>& messages,
                                           std::uint64_t rng_seed) const;

  private:
    int d_;
    Statistics statistics_;
    PhaseMode mode_;
    std::vector<SignatureDistribution> distributions_;
    std::map<DetectionSignature, int> decode_table_;
};

/// One-shot decode; builds the channel internally.
int decode(const DetectionSignature& signature, int d, Statistics statistics,
           PhaseMode mode = PhaseMode::dft);

/// One-shot transcript; builds the channel internally.
std::vector<TranscriptEntry> roundtrip(int d, const std::vector<int>& messages,
                                       Statistics statistics, std::uint64_t rng_seed,
                                       PhaseMode mode = PhaseMode::dft);

}  // namespace qbell
