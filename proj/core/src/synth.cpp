#include "psycholex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include <json.hpp>

namespace psycholex {

namespace {

// mt19937_64 is bit-exact across platforms; the mappings below avoid the
// implementation-defined std distributions.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double u01() { return (engine() >> 11) * (1.0 / 9007199254740992.0); }
    std::uint64_t below(std::uint64_t n) { return engine() % n; }
    bool chance(double p) { return u01() < p; }
};

// Zipf-ish background vocabulary: cumulative weights 1/(i+1).
struct WordPool {
    std::vector<double> cumulative;
    std::string prefix;

    WordPool(std::size_t size, std::string pfx) : prefix(std::move(pfx)) {
        cumulative.reserve(size);
        double total = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            total += 1.0 / static_cast<double>(i + 1);
            cumulative.push_back(total);
        }
        for (auto& c : cumulative) c /= total;
    }

    std::string draw(Rng& rng) const {
        const double u = rng.u01();
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t idx =
            static_cast<std::size_t>(it - cumulative.begin());
        return prefix + std::to_string(idx);
    }
};

struct Generators {
    WordPool common{800, "word"};
    WordPool positive_topic{120, "ptopic"};
    WordPool control_topic{120, "ctopic"};
};

std::string make_text(Rng& rng, const Generators& gen, bool positive,
                      double pronoun_rate, double hashtag_rate,
                      double joy_preference, Platform platform) {
    std::string text;
    const std::size_t tokens = 25;
    // one emotion word per document, joy xor sadness
    const std::size_t emotion_slot = rng.below(tokens);
    const bool joyful = rng.chance(joy_preference);
    for (std::size_t t = 0; t < tokens; ++t) {
        if (!text.empty()) text += ' ';
        if (t == emotion_slot) {
            text += joyful ? "happy" : "sad";
            continue;
        }
        const double u = rng.u01();
        if (u < pronoun_rate) {
            text += "i";
        } else if (u < pronoun_rate + hashtag_rate) {
            text += "#tag" + std::to_string(rng.below(40));
        } else if (u < pronoun_rate + hashtag_rate + 0.01 &&
                   platform == Platform::twitter) {
            text += "@user" + std::to_string(rng.below(200));
        } else {
            // topical mixture separates positive from control language
            const double topic = rng.u01();
            if (positive)
                text += topic < 0.25 ? gen.positive_topic.draw(rng)
                                     : gen.common.draw(rng);
            else
                text += topic < 0.25 ? gen.control_topic.draw(rng)
                                     : gen.common.draw(rng);
        }
    }
    return text;
}

struct CohortSpec {
    std::string label;
    bool positive = false;
    std::size_t users = 0;
};

std::vector<CohortSpec> cohort_specs(const SynthConfig& cfg) {
    std::vector<CohortSpec> specs;
    specs.push_back({cfg.positive_label, true, cfg.users_per_class});
    if (cfg.split_control) {
        specs.push_back({cfg.control_label + "-a", false, cfg.users_per_class});
        specs.push_back({cfg.control_label + "-b", false, cfg.users_per_class});
    } else {
        specs.push_back({cfg.control_label, false, cfg.users_per_class});
    }
    return specs;
}

template <typename Sink>
void generate(const SynthConfig& cfg, Sink&& sink) {
    Generators gen;
    Rng rng(cfg.seed);
    constexpr std::int64_t kStart = 1420070400;  // 2015-01-01T00:00:00Z
    std::size_t user_serial = 0;
    for (const auto& spec : cohort_specs(cfg)) {
        const double pronoun_rate = spec.positive ? cfg.positive_pronoun_rate
                                                  : cfg.control_pronoun_rate;
        const double hashtag_rate = spec.positive ? cfg.positive_hashtag_ratio
                                                  : cfg.control_hashtag_ratio;
        for (std::size_t u = 0; u < spec.users; ++u) {
            const std::string user_id = "u" + std::to_string(user_serial++);
            // per-user joy preference; sadness fraction is its complement
            const double joy_preference = rng.u01();
            std::int64_t t = kStart + static_cast<std::int64_t>(rng.below(86400));
            for (std::size_t d = 0; d < cfg.docs_per_user; ++d) {
                Document doc;
                doc.doc_id = user_id + "-d" + std::to_string(d);
                doc.user_id = user_id;
                doc.platform = cfg.platform;
                // gaps of 6h..66h spread documents across the year
                t += 21600 + static_cast<std::int64_t>(rng.below(216000));
                doc.timestamp = t;
                doc.text = make_text(rng, gen, spec.positive, pronoun_rate,
                                     hashtag_rate, joy_preference, cfg.platform);
                if (cfg.platform == Platform::reddit)
                    doc.submission_type = rng.chance(0.5)
                                              ? SubmissionType::comment
                                              : SubmissionType::post;
                sink(spec.label, std::move(doc));
            }
        }
    }
}

} // namespace

Corpus generate_synthetic_corpus(const SynthConfig& cfg) {
    Corpus corpus;
    corpus.platform = cfg.platform;
    UserProfile* current = nullptr;
    generate(cfg, [&](const std::string& label, Document&& doc) {
        auto& cohort = corpus.cohorts[label];
        if (!current || current->user_id != doc.user_id ||
            current->class_label != label) {
            cohort.push_back(UserProfile{doc.user_id, label, {}});
            current = &cohort.back();
        }
        current->documents.push_back(std::move(doc));
    });
    return corpus;
}

std::size_t write_synthetic_jsonl(const SynthConfig& cfg,
                                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    std::size_t count = 0;
    std::string buf;
    buf.reserve(1 << 20);
    generate(cfg, [&](const std::string& label, Document&& doc) {
        nlohmann::json rec{{"doc_id", doc.doc_id},
                           {"user_id", doc.user_id},
                           {"class", label},
                           {"timestamp", format_iso8601_utc(doc.timestamp)},
                           {"text", doc.text},
                           {"platform", to_string(doc.platform)}};
        if (doc.submission_type)
            rec["submission_type"] = to_string(*doc.submission_type);
        buf += rec.dump();
        buf += '\n';
        if (buf.size() > (1 << 20) - 4096) {
            out << buf;
            buf.clear();
        }
        ++count;
    });
    out << buf;
    return count;
}

} // namespace psycholex
