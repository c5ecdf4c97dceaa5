#ifndef PSYCHOLEX_SYNTH_HPP
#define PSYCHOLEX_SYNTH_HPP

#include <cstdint>
#include <string>

#include "psycholex/corpus.hpp"

namespace psycholex {

/// Seeded generator for paper-shaped synthetic corpora: positives use
/// first-person pronouns at twice the control rate, hashtag token ratios
/// differ per class, and per-user joy/sadness document fractions are
/// anti-correlated.
struct SynthConfig {
    std::uint64_t seed = 42;
    std::size_t users_per_class = 50;
    std::size_t docs_per_user = 40;
    Platform platform = Platform::twitter;
    std::string positive_label = "depression";
    std::string control_label = "control";
    // second control split for KL reference comparisons
    bool split_control = true;
    double positive_pronoun_rate = 0.10;  // per-token probability of "i"
    double control_pronoun_rate = 0.05;
    double positive_hashtag_ratio = 0.01;
    double control_hashtag_ratio = 0.02;
};

Corpus generate_synthetic_corpus(const SynthConfig& cfg);

/// Streams a synthetic corpus straight to JSONL without holding it in memory.
/// Returns the number of documents written.
std::size_t write_synthetic_jsonl(const SynthConfig& cfg, const std::string& path);

} // namespace psycholex

#endif
