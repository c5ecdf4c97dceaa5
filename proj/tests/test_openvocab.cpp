#include <doctest.h>

#include <random>

#include "psycholex/openvocab.hpp"
#include "oracles.hpp"

using namespace psycholex;

namespace {

Corpus corpus_from_texts(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& cohorts) {
    // one user per class, one document per text
    Corpus c;
    std::int64_t t = 1420070400;
    for (const auto& [label, texts] : cohorts) {
        UserProfile u;
        u.user_id = "user_" + label;
        u.class_label = label;
        int i = 0;
        for (const auto& text : texts) {
            Document d;
            d.doc_id = label + std::to_string(i++);
            d.user_id = u.user_id;
            d.timestamp = t += 3600;
            d.text = text;
            d.platform = Platform::other;
            u.documents.push_back(std::move(d));
        }
        c.cohorts[label].push_back(std::move(u));
    }
    return c;
}

Vocabulary vocab_of(const std::vector<std::pair<std::string, int>>& counts,
                    const std::string& label = "v") {
    Vocabulary v;
    v.class_label = label;
    for (const auto& [w, n] : counts) v.add(w, n);
    return v;
}

} // namespace

TEST_CASE("build_vocabulary counts normalized tokens") {
    Corpus c = corpus_from_texts({{"pos", {"a a b"}}});
    Vocabulary v = build_vocabulary(c, "pos");
    CHECK(v.unique_words() == 2);
    CHECK(v.counts.at("a") == 2);
    CHECK(v.counts.at("b") == 1);
    CHECK(v.total_tokens == 3);
}

TEST_CASE("build_vocabulary: empty texts give empty vocabulary") {
    Corpus c = corpus_from_texts({{"pos", {"", ""}}});
    Vocabulary v = build_vocabulary(c, "pos");
    CHECK(v.unique_words() == 0);
    CHECK(v.total_tokens == 0);
}

TEST_CASE("build_vocabulary: unknown class label") {
    Corpus c = corpus_from_texts({{"pos", {"x"}}});
    CHECK_THROWS_AS(build_vocabulary(c, "nope"), Error);
}

TEST_CASE("jaccard: {a,b,c} vs {b,c,d} is 0.5 with difference sizes") {
    Vocabulary p = vocab_of({{"a", 1}, {"b", 1}, {"c", 1}});
    Vocabulary c = vocab_of({{"b", 1}, {"c", 1}, {"d", 1}});
    JaccardResult r = jaccard(p, c);
    REQUIRE(r.index.has_value());
    CHECK(*r.index == doctest::Approx(0.5));
    CHECK(r.intersection_size == 2);
    CHECK(r.union_size == 4);
    CHECK(r.p_minus_c == 1);
    CHECK(r.c_minus_p == 1);
}

TEST_CASE("jaccard boundary cases") {
    Vocabulary p = vocab_of({{"a", 1}, {"b", 1}});
    CHECK(*jaccard(p, p).index == doctest::Approx(1.0));
    Vocabulary q = vocab_of({{"c", 1}});
    CHECK(*jaccard(p, q).index == doctest::Approx(0.0));
    Vocabulary empty;
    CHECK_FALSE(jaccard(empty, empty).index.has_value());
}

TEST_CASE("language model: hand-computed 7/12 case") {
    // D = "a a b", S = "a a b b", lambda = 0.5
    Vocabulary d = vocab_of({{"a", 2}, {"b", 1}});
    Vocabulary s = vocab_of({{"a", 2}, {"b", 2}});
    LanguageModel lm = build_language_model(d, s, 0.5);
    CHECK(*lm.prob_of("a") == doctest::Approx(7.0 / 12.0).epsilon(1e-9));
    CHECK(*lm.prob_of("b") == doctest::Approx(5.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("language model: word absent from target still gets mass") {
    Vocabulary d = vocab_of({{"a", 3}});
    Vocabulary s = vocab_of({{"a", 3}, {"b", 2}});
    LanguageModel lm = build_language_model(d, s, 0.1);
    CHECK(*lm.prob_of("b") == doctest::Approx(0.1 * 2.0 / 5.0));
    CHECK(*lm.prob_of("b") > 0.0);
}

TEST_CASE("language model: lambda bounds and empty collection") {
    Vocabulary d = vocab_of({{"a", 1}});
    Vocabulary s = vocab_of({{"a", 1}});
    CHECK_THROWS_AS(build_language_model(d, s, 0.0), Error);
    CHECK_THROWS_AS(build_language_model(d, s, 1.0), Error);
    Vocabulary empty;
    CHECK_THROWS_AS(build_language_model(d, empty, 0.5), Error);
}

TEST_CASE("kl: identical models give zero") {
    Vocabulary d = vocab_of({{"a", 2}, {"b", 1}});
    Vocabulary s = vocab_of({{"a", 4}, {"b", 2}});
    LanguageModel lm = build_language_model(d, s, 0.3);
    CHECK(kl_divergence(lm, lm) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kl: hand-computed 0.130812 nats") {
    LanguageModel p, c;
    p.words = {"x", "y"};
    p.probs = {0.75, 0.25};
    c.words = {"x", "y"};
    c.probs = {0.5, 0.5};
    CHECK(kl_divergence(p, c) == doctest::Approx(0.130812).epsilon(1e-6));
    // base-2 variant is the nats value / ln 2
    CHECK(kl_divergence(p, c, LogBase::two) ==
          doctest::Approx(0.130812 / std::log(2.0)).epsilon(1e-5));
}

TEST_CASE("kl: mismatched supports rejected") {
    LanguageModel p, c;
    p.words = {"x"};
    p.probs = {1.0};
    c.words = {"y"};
    c.probs = {1.0};
    CHECK_THROWS_AS(kl_divergence(p, c), Error);
}

TEST_CASE("property: probabilities sum to 1 and jaccard identities") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        Vocabulary d1, d2;
        d1.class_label = "p";
        d2.class_label = "c";
        const int nw = 1 + static_cast<int>(rng() % 30);
        for (int w = 0; w < nw; ++w) {
            const std::string word = "w" + std::to_string(rng() % 40);
            if (rng() % 2) d1.add(word, 1 + rng() % 5);
            if (rng() % 2) d2.add(word, 1 + rng() % 5);
        }
        if (d1.total_tokens == 0) d1.add("fallback", 1);
        if (d2.total_tokens == 0) d2.add("fallback2", 1);
        Vocabulary s = vocabulary_union({&d1, &d2});
        for (double lambda : {0.05, 0.1, 0.5, 0.9}) {
            LanguageModel lm = build_language_model(d1, s, lambda);
            CHECK(lm.prob_sum() == doctest::Approx(1.0).epsilon(1e-9));
        }
        JaccardResult r = jaccard(d1, d2);
        CHECK(r.intersection_size + r.p_minus_c + r.c_minus_p == r.union_size);
        JaccardResult rr = jaccard(d2, d1);
        CHECK(r.index == rr.index);  // symmetry
        // KL >= 0 and asymmetry preserved
        LanguageModel lp = build_language_model(d1, s, 0.1);
        LanguageModel lc = build_language_model(d2, s, 0.1);
        CHECK(kl_divergence(lp, lc) >= -1e-12);
        CHECK(kl_divergence(lc, lp) >= -1e-12);
    }
}

TEST_CASE("oracle agreement: lm and kl on random multisets") {
    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 50; ++iter) {
        std::map<std::string, std::uint64_t> tmap, cmap;
        Vocabulary tv, cv;
        const int nw = 2 + static_cast<int>(rng() % 20);
        for (int w = 0; w < nw; ++w) {
            const std::string word = "w" + std::to_string(w);
            const std::uint64_t tn = rng() % 6;
            const std::uint64_t cn = 1 + rng() % 6;
            if (tn) {
                tmap[word] = tn;
                tv.add(word, tn);
            }
            cmap[word] = cn;
            cv.add(word, cn);
        }
        if (tv.total_tokens == 0) {
            tmap["w0"] = 1;
            tv.add("w0", 1);
        }
        Vocabulary s = vocabulary_union({&tv, &cv});
        std::map<std::string, std::uint64_t> smap;
        for (const auto& [w, c] : s.counts) smap[w] = c;
        const double lambda = 0.05 + 0.9 * oracles::u01(rng);
        LanguageModel lm = build_language_model(tv, s, lambda);
        auto ref = oracles::language_model(tmap, smap, lambda);
        for (std::size_t i = 0; i < lm.words.size(); ++i)
            CHECK(lm.probs[i] ==
                  doctest::Approx(ref.at(lm.words[i])).epsilon(1e-9));
        LanguageModel lc = build_language_model(cv, s, lambda);
        auto refc = oracles::language_model(
            [&] {
                std::map<std::string, std::uint64_t> m;
                for (const auto& [w, c] : cv.counts) m[w] = c;
                return m;
            }(),
            smap, lambda);
        const double kl_ref = oracles::kl(ref, refc);
        CHECK(kl_divergence(lm, lc) == doctest::Approx(kl_ref).epsilon(1e-9));
    }
}

TEST_CASE("reference_lm_score: user drawn from positive is nearer positive") {
    Corpus c = corpus_from_texts(
        {{"pos", {"gloom doom sorrow gloom", "doom gloom sorrow sorrow"}},
         {"ctl", {"sun beach fun sun", "beach fun sun fun"}}});
    Vocabulary pos = build_vocabulary(c, "pos");
    Vocabulary ctl = build_vocabulary(c, "ctl");
    Vocabulary coll = vocabulary_union({&pos, &ctl});
    LanguageModel lp = build_language_model(pos, coll, 0.1);
    LanguageModel lc = build_language_model(ctl, coll, 0.1);
    auto score =
        reference_lm_score(c.cohort("pos")[0], lp, lc, coll, 0.1);
    REQUIRE(score.has_value());
    CHECK(score->kl_to_positive < score->kl_to_control);
    CHECK(score->nearest == NearestClass::positive);
}

TEST_CASE("reference_lm_score: null for user with no word tokens") {
    Corpus c = corpus_from_texts({{"pos", {"x y"}}, {"ctl", {"y z"}},
                                  {"empty", {"...", "!!"}}});
    Vocabulary pos = build_vocabulary(c, "pos");
    Vocabulary ctl = build_vocabulary(c, "ctl");
    Vocabulary coll = vocabulary_union({&pos, &ctl});
    LanguageModel lp = build_language_model(pos, coll, 0.1);
    LanguageModel lc = build_language_model(ctl, coll, 0.1);
    CHECK_FALSE(
        reference_lm_score(c.cohort("empty")[0], lp, lc, coll, 0.1).has_value());
}

TEST_CASE("reference_lm_score: invariant under duplicating documents") {
    Corpus c = corpus_from_texts(
        {{"pos", {"alpha beta alpha", "beta beta gamma"}},
         {"ctl", {"delta epsilon", "epsilon delta delta"}}});
    Vocabulary pos = build_vocabulary(c, "pos");
    Vocabulary ctl = build_vocabulary(c, "ctl");
    Vocabulary coll = vocabulary_union({&pos, &ctl});
    LanguageModel lp = build_language_model(pos, coll, 0.1);
    LanguageModel lc = build_language_model(ctl, coll, 0.1);

    UserProfile user = c.cohort("pos")[0];
    auto before = reference_lm_score(user, lp, lc, coll, 0.1);
    UserProfile doubled = user;
    for (const auto& d : user.documents) {
        Document copy = d;
        copy.doc_id += "_dup";
        doubled.documents.push_back(copy);
    }
    auto after = reference_lm_score(doubled, lp, lc, coll, 0.1);
    REQUIRE(before.has_value());
    REQUIRE(after.has_value());
    CHECK(before->nearest == after->nearest);
    CHECK(before->kl_to_positive == doctest::Approx(after->kl_to_positive));
}
