#ifndef PSYCHOLEX_OPENVOCAB_HPP
#define PSYCHOLEX_OPENVOCAB_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "psycholex/corpus.hpp"
#include "psycholex/textscan.hpp"

namespace psycholex {

/// Word multiset for one class: unique words plus occurrence counts.
struct Vocabulary {
    std::string class_label;
    std::unordered_map<std::string, std::uint64_t> counts;
    std::uint64_t total_tokens = 0;

    std::size_t unique_words() const { return counts.size(); }
    void add(const std::string& word, std::uint64_t n = 1);
    void merge(const Vocabulary& other);
};

Vocabulary build_vocabulary(const Corpus& corpus, const std::string& class_label,
                            const ScanOptions& opts = {});
Vocabulary vocabulary_of_user(const UserProfile& user, const ScanOptions& opts = {});

/// Union multiset of two (or more) class vocabularies; the collection S.
Vocabulary vocabulary_union(const std::vector<const Vocabulary*>& parts,
                            const std::string& label = "union");

struct JaccardResult {
    std::optional<double> index;   // null when both sets empty
    std::size_t intersection_size = 0;
    std::size_t union_size = 0;
    std::size_t p_minus_c = 0;     // |P \ C|
    std::size_t c_minus_p = 0;     // |C \ P|
};

JaccardResult jaccard(const Vocabulary& p, const Vocabulary& c);

enum class LogBase { natural, two };
double apply_log(double x, LogBase base);

/// Jelinek-Mercer smoothed unigram model over the support of a collection S.
struct LanguageModel {
    std::string class_label;
    double lambda = 0.1;
    // Parallel arrays sorted by word for deterministic iteration.
    std::vector<std::string> words;
    std::vector<double> probs;

    std::size_t size() const { return words.size(); }
    double prob_sum() const;
    std::optional<double> prob_of(const std::string& word) const;
};

/// prob(w) = (1-lambda) * count_D(w)/|D| + lambda * count_S(w)/|S| for every
/// word of the collection. An empty target class falls back to the plain
/// collection distribution (the MLE term is undefined at |D| = 0).
LanguageModel build_language_model(const Vocabulary& target,
                                   const Vocabulary& collection, double lambda);

/// KL(P||C) = sum_x P(x) log(P(x)/C(x)). Supports must be identical.
double kl_divergence(const LanguageModel& p, const LanguageModel& c,
                     LogBase base = LogBase::natural);

enum class NearestClass { positive, control };

struct ReferenceScore {
    double kl_to_positive = 0.0;
    double kl_to_control = 0.0;
    NearestClass nearest = NearestClass::positive;
};

/// Per-user LM built on the reference models' support, compared to both.
/// Null when the user has no word tokens.
std::optional<ReferenceScore> reference_lm_score(
    const UserProfile& user, const LanguageModel& ref_positive,
    const LanguageModel& ref_control, const Vocabulary& collection,
    double lambda, LogBase base = LogBase::natural,
    const ScanOptions& opts = {});

} // namespace psycholex

#endif
