#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "psycholex/runner.hpp"
#include "psycholex/synth.hpp"

using namespace psycholex;
namespace fs = std::filesystem;

namespace {

const std::string kData = PSYCHOLEX_DATA_DIR;

Corpus small_synth() {
    SynthConfig cfg;
    cfg.seed = 7;
    cfg.users_per_class = 6;
    cfg.docs_per_user = 8;
    return generate_synthetic_corpus(cfg);
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.pairs = {{"depression", "control-a"}};
    cfg.category_lexicon_path = kData + "/demo_categories.tsv";
    cfg.emotion_lexicon_path = kData + "/demo_emotions.tsv";
    return cfg;
}

} // namespace

TEST_CASE("run_analyses produces the expected section families") {
    Corpus corpus = small_synth();
    AnalysisReport report = run_analyses(corpus, small_config());
    std::vector<std::string> names;
    for (const auto& s : report.sections) names.push_back(s.name);
    auto has = [&](const std::string& n) {
        for (const auto& name : names)
            if (name == n) return true;
        return false;
    };
    CHECK(has("summary"));
    CHECK(has("vocab_comparison_depression_vs_control-a"));
    CHECK(has("lm_plot_depression_vs_control-a"));
    CHECK(has("reference_lm_depression_vs_control-a"));
    CHECK(has("behavior_profiles"));
    CHECK(has("monthly_gaps"));
    CHECK(report.metadata.tests_performed > 0);
    for (const auto& s : report.sections) CHECK_FALSE(s.csv.empty());
}

TEST_CASE("run_analyses is deterministic for a fixed seed") {
    Corpus corpus = small_synth();
    RunConfig cfg = small_config();
    AnalysisReport a = run_analyses(corpus, cfg);
    AnalysisReport b = run_analyses(corpus, cfg);
    CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("validate_run_config names the missing class") {
    Corpus corpus = small_synth();
    RunConfig cfg = small_config();
    cfg.pairs = {{"depression", "nonexistent"}};
    try {
        validate_run_config(cfg, corpus);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("nonexistent") != std::string::npos);
    }
}

TEST_CASE("load_run_config parses the json schema") {
    const std::string path = "/tmp/psycholex_test_config.json";
    {
        std::ofstream out(path);
        out << R"({
            "input": "corpus.jsonl",
            "pairs": [{"positive": "depression", "control": "control"}],
            "lambda": 0.2,
            "log_base": "2",
            "alpha": 0.01,
            "seed": 99,
            "analyses": ["openvocab", "behavior"],
            "out": "outdir",
            "strict": false,
            "correlation": "spearman"
        })";
    }
    RunConfig cfg = load_run_config(path);
    CHECK(cfg.input_path == "corpus.jsonl");
    REQUIRE(cfg.pairs.size() == 1);
    CHECK(cfg.pairs[0].positive == "depression");
    CHECK(cfg.lambda == doctest::Approx(0.2));
    CHECK(cfg.log_base == LogBase::two);
    CHECK(cfg.alpha == doctest::Approx(0.01));
    CHECK(cfg.seed == 99);
    REQUIRE(cfg.analyses.size() == 2);
    CHECK(cfg.analyses[0] == Analysis::openvocab);
    CHECK(cfg.analyses[1] == Analysis::behavior);
    CHECK(cfg.out_dir == "outdir");
    CHECK_FALSE(cfg.strict_ingest);
    CHECK(cfg.correlation == CorrelationKind::spearman);
    fs::remove(path);
}

TEST_CASE("load_run_config rejects bad enum values and bad lambda") {
    const std::string path = "/tmp/psycholex_test_bad_config.json";
    {
        std::ofstream out(path);
        out << R"({"input": "x.jsonl", "log_base": "10"})";
    }
    CHECK_THROWS_AS(load_run_config(path), Error);
    {
        std::ofstream out(path);
        out << R"({"input": "x.jsonl", "lambda": 1.5, "pairs": [{"positive": "a", "control": "b"}]})";
    }
    RunConfig cfg = load_run_config(path);  // parse succeeds...
    Corpus c;
    c.cohorts["a"];
    c.cohorts["b"];
    CHECK_THROWS_AS(validate_run_config(cfg, c), Error);  // ...validation rejects
    fs::remove(path);
}

TEST_CASE("run: end-to-end report directory layout") {
    const fs::path dir = "/tmp/psycholex_test_report";
    fs::remove_all(dir);
    const std::string corpus_path = "/tmp/psycholex_test_corpus.jsonl";
    SynthConfig synth;
    synth.seed = 7;
    synth.users_per_class = 5;
    synth.docs_per_user = 6;
    write_synthetic_jsonl(synth, corpus_path);

    RunConfig cfg = small_config();
    cfg.input_path = corpus_path;
    cfg.out_dir = dir.string();
    AnalysisReport report = run(cfg);

    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "metadata.json"));
    CHECK(fs::is_directory(dir / "tables"));
    CHECK(fs::is_directory(dir / "charts"));
    std::size_t csvs = 0, svgs = 0;
    for (const auto& e : fs::directory_iterator(dir / "tables"))
        if (e.path().extension() == ".csv") ++csvs;
    for (const auto& e : fs::directory_iterator(dir / "charts"))
        if (e.path().extension() == ".svg") ++svgs;
    CHECK(csvs == report.sections.size());
    std::size_t chart_sections = 0;
    for (const auto& s : report.sections)
        if (!s.svg.empty()) ++chart_sections;
    CHECK(svgs == chart_sections);
    CHECK(report.metadata.corpus_digest.size() == 16);

    // re-running the same config yields byte-identical report.json
    std::ifstream f1(dir / "report.json");
    std::string first((std::istreambuf_iterator<char>(f1)), {});
    run(cfg);
    std::ifstream f2(dir / "report.json");
    std::string second((std::istreambuf_iterator<char>(f2)), {});
    CHECK(first == second);

    fs::remove_all(dir);
    fs::remove(corpus_path);
}

TEST_CASE("worker_threads is at least one") {
    CHECK(worker_threads() >= 1);
}
