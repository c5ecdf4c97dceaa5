#include <benchmark/benchmark.h>

#include "psycholex/lexicons.hpp"
#include "psycholex/openvocab.hpp"
#include "psycholex/stats.hpp"
#include "psycholex/synth.hpp"
#include "psycholex/textscan.hpp"

using namespace psycholex;

namespace {

const Corpus& bench_corpus() {
    static const Corpus corpus = [] {
        SynthConfig cfg;
        cfg.users_per_class = 40;
        cfg.docs_per_user = 50;
        return generate_synthetic_corpus(cfg);
    }();
    return corpus;
}

void BM_Tokenize(benchmark::State& state) {
    const std::string text =
        "RT @friend: I don't *think* I can make it today :( #monday "
        "http://example.com/x f**k 12,345 HELLO";
    for (auto _ : state) {
        TokenStream ts = tokenize(text);
        benchmark::DoNotOptimize(ts.tokens.size());
    }
}
BENCHMARK(BM_Tokenize);

void BM_BuildVocabulary(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    for (auto _ : state) {
        Vocabulary v = build_vocabulary(corpus, "depression");
        benchmark::DoNotOptimize(v.total_tokens);
    }
}
BENCHMARK(BM_BuildVocabulary);

void BM_LanguageModelAndKl(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    Vocabulary pos = build_vocabulary(corpus, "depression");
    Vocabulary ctl = build_vocabulary(corpus, "control-a");
    Vocabulary coll = vocabulary_union({&pos, &ctl});
    for (auto _ : state) {
        LanguageModel lp = build_language_model(pos, coll, 0.1);
        LanguageModel lc = build_language_model(ctl, coll, 0.1);
        benchmark::DoNotOptimize(kl_divergence(lp, lc));
    }
}
BENCHMARK(BM_LanguageModelAndKl);

void BM_WelchTTest(benchmark::State& state) {
    std::vector<double> a, b;
    for (int i = 0; i < 500; ++i) {
        a.push_back(0.01 * i);
        b.push_back(0.011 * i + 0.3);
    }
    for (auto _ : state) {
        WelchResult r = welch_t_test(a, b);
        benchmark::DoNotOptimize(r.p_value);
    }
}
BENCHMARK(BM_WelchTTest);

} // namespace

BENCHMARK_MAIN();
