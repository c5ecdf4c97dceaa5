#include "psycholex/openvocab.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "psycholex/parallel.hpp"
#include "psycholex/runner.hpp"

namespace psycholex {

void Vocabulary::add(const std::string& word, std::uint64_t n) {
    counts[word] += n;
    total_tokens += n;
}

void Vocabulary::merge(const Vocabulary& other) {
    for (const auto& [w, c] : other.counts) counts[w] += c;
    total_tokens += other.total_tokens;
}

Vocabulary vocabulary_of_user(const UserProfile& user, const ScanOptions& opts) {
    Vocabulary v;
    v.class_label = user.class_label;
    for (const auto& doc : user.documents) {
        TokenStream ts = tokenize(doc.text, opts);
        for (auto& w : ts.normalized_words) v.add(w);
    }
    return v;
}

Vocabulary build_vocabulary(const Corpus& corpus, const std::string& class_label,
                            const ScanOptions& opts) {
    const auto& users = corpus.cohort(class_label);
    std::vector<Vocabulary> partials(users.size());
    parallel_for(users.size(), worker_threads(), [&](std::size_t i) {
        partials[i] = vocabulary_of_user(users[i], opts);
    });
    Vocabulary v;
    v.class_label = class_label;
    for (const auto& p : partials) v.merge(p);
    return v;
}

Vocabulary vocabulary_union(const std::vector<const Vocabulary*>& parts,
                            const std::string& label) {
    Vocabulary u;
    u.class_label = label;
    for (const Vocabulary* p : parts) u.merge(*p);
    return u;
}

JaccardResult jaccard(const Vocabulary& p, const Vocabulary& c) {
    JaccardResult r;
    for (const auto& [w, cnt] : p.counts)
        if (c.counts.count(w))
            ++r.intersection_size;
        else
            ++r.p_minus_c;
    r.c_minus_p = c.counts.size() - r.intersection_size;
    r.union_size = r.intersection_size + r.p_minus_c + r.c_minus_p;
    if (r.union_size > 0)
        r.index = static_cast<double>(r.intersection_size) / r.union_size;
    return r;
}

double apply_log(double x, LogBase base) {
    return base == LogBase::natural ? std::log(x) : std::log2(x);
}

double LanguageModel::prob_sum() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

std::optional<double> LanguageModel::prob_of(const std::string& word) const {
    auto it = std::lower_bound(words.begin(), words.end(), word);
    if (it == words.end() || *it != word) return std::nullopt;
    return probs[static_cast<std::size_t>(it - words.begin())];
}

LanguageModel build_language_model(const Vocabulary& target,
                                   const Vocabulary& collection, double lambda) {
    if (lambda <= 0.0 || lambda >= 1.0)
        throw Error("lambda must lie in (0,1)");
    if (collection.total_tokens == 0) throw Error("empty collection");

    LanguageModel lm;
    lm.class_label = target.class_label;
    lm.lambda = lambda;
    lm.words.reserve(collection.counts.size());
    for (const auto& [w, c] : collection.counts) lm.words.push_back(w);
    std::sort(lm.words.begin(), lm.words.end());

    const double inv_s = 1.0 / static_cast<double>(collection.total_tokens);
    const bool empty_target = target.total_tokens == 0;
    const double inv_d =
        empty_target ? 0.0 : 1.0 / static_cast<double>(target.total_tokens);
    lm.probs.resize(lm.words.size());
    for (std::size_t i = 0; i < lm.words.size(); ++i) {
        const auto cit = collection.counts.find(lm.words[i]);
        const double p_coll = static_cast<double>(cit->second) * inv_s;
        if (empty_target) {
            lm.probs[i] = p_coll;
            continue;
        }
        double p_ml = 0.0;
        if (auto tit = target.counts.find(lm.words[i]); tit != target.counts.end())
            p_ml = static_cast<double>(tit->second) * inv_d;
        lm.probs[i] = (1.0 - lambda) * p_ml + lambda * p_coll;
    }
    return lm;
}

double kl_divergence(const LanguageModel& p, const LanguageModel& c,
                     LogBase base) {
    if (p.words != c.words) throw Error("language models have mismatched supports");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        const double pi = p.probs[i];
        if (pi <= 0.0) continue;
        sum += pi * apply_log(pi / c.probs[i], base);
    }
    return sum;
}

std::optional<ReferenceScore> reference_lm_score(
    const UserProfile& user, const LanguageModel& ref_positive,
    const LanguageModel& ref_control, const Vocabulary& collection,
    double lambda, LogBase base, const ScanOptions& opts) {
    Vocabulary uv = vocabulary_of_user(user, opts);
    if (uv.total_tokens == 0) return std::nullopt;
    // drop words outside the shared support so the user LM lives on it
    Vocabulary clipped;
    clipped.class_label = user.user_id;
    for (const auto& [w, c] : uv.counts)
        if (collection.counts.count(w)) clipped.add(w, c);
    if (clipped.total_tokens == 0) return std::nullopt;
    LanguageModel user_lm = build_language_model(clipped, collection, lambda);
    ReferenceScore score;
    score.kl_to_positive = kl_divergence(user_lm, ref_positive, base);
    score.kl_to_control = kl_divergence(user_lm, ref_control, base);
    score.nearest = score.kl_to_positive <= score.kl_to_control
                        ? NearestClass::positive
                        : NearestClass::control;
    return score;
}

} // namespace psycholex
