// Command-line front end: corpus ingestion and the analysis pipeline.
// Data goes to files/stdout, progress and warnings to stderr.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "psycholex/behavior.hpp"
#include "psycholex/lexicons.hpp"
#include "psycholex/report.hpp"
#include "psycholex/runner.hpp"
#include "psycholex/synth.hpp"

namespace fs = std::filesystem;
using namespace psycholex;

namespace {

void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << content;
}

Corpus load_corpus(const std::string& input, bool strict) {
    IngestOptions opts;
    opts.strict = strict;
    IngestStats stats;
    Corpus corpus = ingest(input, opts, &stats);
    std::cerr << "ingested " << stats.records << " records";
    if (stats.skipped > 0) std::cerr << " (" << stats.skipped << " skipped)";
    std::cerr << " from " << input << "\n";
    return corpus;
}

std::vector<CohortPair> pairs_from_classes(const std::vector<std::string>& classes) {
    if (classes.size() < 2)
        throw Error("need at least two classes (positive,control)");
    std::vector<CohortPair> pairs;
    for (std::size_t i = 1; i < classes.size(); ++i)
        pairs.push_back({classes[0], classes[i]});
    return pairs;
}

// Pull the sections of a single-pair analysis out into the flat file names
// the subcommands promise.
void write_sections(const AnalysisReport& report, const std::string& out_dir,
                    const std::vector<std::pair<std::string, std::string>>& renames) {
    fs::create_directories(out_dir);
    for (const auto& s : report.sections) {
        std::string base = s.name;
        for (const auto& [prefix, target] : renames) {
            if (s.name.rfind(prefix, 0) == 0) {
                base = target;
                break;
            }
        }
        if (!s.csv.empty()) write_file(fs::path(out_dir) / (base + ".csv"), s.csv);
        if (!s.svg.empty()) write_file(fs::path(out_dir) / (base + ".svg"), s.svg);
    }
}

int run_openvocab_cmd(const std::string& input, const std::string& positive,
                      const std::string& control, double lambda,
                      const std::string& log_base, std::uint64_t seed,
                      const std::string& out_dir, bool strict) {
    RunConfig cfg;
    cfg.input_path = input;
    cfg.pairs = {{positive, control}};
    cfg.lambda = lambda;
    cfg.log_base = log_base == "2" ? LogBase::two : LogBase::natural;
    cfg.seed = seed;
    cfg.analyses = {Analysis::openvocab};
    cfg.strict_ingest = strict;
    Corpus corpus = load_corpus(input, strict);
    AnalysisReport report = run_analyses(corpus, cfg);
    write_sections(report, out_dir,
                   {{"vocab_comparison_", "vocab_comparison"},
                    {"lm_plot_", "lm_plot"},
                    {"reference_lm_", "reference_lm"}});

    // word -> probability maps for both classes
    Vocabulary pos = build_vocabulary(corpus, positive);
    Vocabulary ctl = build_vocabulary(corpus, control);
    Vocabulary coll = vocabulary_union({&pos, &ctl});
    for (const auto* v : {&pos, &ctl}) {
        LanguageModel lm = build_language_model(*v, coll, lambda);
        nlohmann::json j;
        j["class"] = lm.class_label;
        j["lambda"] = lm.lambda;
        j["log_base"] = log_base;
        nlohmann::json probs = nlohmann::json::object();
        for (std::size_t i = 0; i < lm.words.size(); ++i)
            probs[lm.words[i]] = lm.probs[i];
        j["probs"] = std::move(probs);
        write_file(fs::path(out_dir) / ("lm_" + lm.class_label + ".json"),
                   j.dump(2) + "\n");
    }
    std::cerr << "openvocab outputs written to " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus analytics for cohort language and behaviour comparison"};
    app.require_subcommand(1);

    std::string input, out_dir = "report", config_path;
    std::string positive, control, lexicon_path, emotion_path, emoticons_path;
    std::string log_base = "e";
    std::vector<std::string> classes, categories;
    double lambda = 0.1, alpha = 0.001;
    std::uint64_t seed = 42;
    bool strict = true, lenient = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "JSONL corpus file")->required();
        cmd->add_flag("--lenient", lenient, "skip malformed lines instead of failing");
        cmd->add_option("--emoticons", emoticons_path, "emoticon pattern file");
    };

    auto* c_ingest = app.add_subcommand("ingest", "validate a corpus file and print summary");
    c_ingest->add_option("--input", input, "JSONL corpus file")->required();
    c_ingest->add_flag("--strict", strict, "fail on malformed lines (default)");
    c_ingest->add_flag("--lenient", lenient, "skip malformed lines");

    auto* c_open = app.add_subcommand("openvocab", "vocabulary overlap, language models, KL divergence");
    add_common(c_open);
    c_open->add_option("--positive", positive)->required();
    c_open->add_option("--control", control)->required();
    c_open->add_option("--lambda", lambda, "smoothing coefficient in (0,1)");
    c_open->add_option("--log-base", log_base)->check(CLI::IsMember({"e", "2"}));
    c_open->add_option("--seed", seed);
    c_open->add_option("--out", out_dir);

    auto* c_lex = app.add_subcommand("lexicon", "category proportions, box plots, Welch tests");
    add_common(c_lex);
    c_lex->add_option("--lexicon", lexicon_path)->required();
    c_lex->add_option("--classes", classes, "positive,control[,...]")->required()->delimiter(',');
    c_lex->add_option("--categories", categories)->delimiter(',');
    c_lex->add_option("--alpha", alpha);
    c_lex->add_option("--out", out_dir);

    auto* c_emo = app.add_subcommand("emotion", "emotion profiles, radar chart, correlation heatmaps");
    add_common(c_emo);
    c_emo->add_option("--emotion-lexicon", emotion_path)->required();
    c_emo->add_option("--classes", classes)->required()->delimiter(',');
    c_emo->add_option("--alpha", alpha);
    c_emo->add_option("--out", out_dir);

    auto* c_beh = app.add_subcommand("behavior", "engagement markers and posting time-gap trends");
    add_common(c_beh);
    c_beh->add_option("--classes", classes)->required()->delimiter(',');
    c_beh->add_option("--alpha", alpha);
    c_beh->add_option("--out", out_dir);

    auto* c_run = app.add_subcommand("run-all", "run every configured analysis end to end");
    c_run->add_option("--config", config_path)->required();
    c_run->add_option("--seed", seed);
    c_run->add_option("--out", out_dir);

    auto* c_rep = app.add_subcommand("report", "re-emit tables and charts from a report.json");
    c_rep->add_option("--report", config_path, "existing report.json")->required();
    c_rep->add_option("--out", out_dir)->required();

    std::string synth_out;
    std::size_t synth_users = 50, synth_docs = 40;
    auto* c_synth = app.add_subcommand("synth", "generate a synthetic corpus for tutorials and load tests");
    c_synth->add_option("--out", synth_out)->required();
    c_synth->add_option("--users-per-class", synth_users);
    c_synth->add_option("--docs-per-user", synth_docs);
    c_synth->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        const bool strict_mode = !lenient;
        if (c_ingest->parsed()) {
            Corpus corpus = load_corpus(input, strict_mode);
            SummaryTable table = summarize(corpus);
            std::cout << "class,users,documents,mean_docs_per_user,"
                         "mean_words_per_doc,mean_activity_period_days\n";
            for (const auto& r : table.rows)
                std::cout << r.class_label << "," << r.user_count << ","
                          << r.document_count << "," << r.mean_documents_per_user
                          << "," << r.mean_words_per_document << ","
                          << r.mean_activity_period_days << "\n";
            return 0;
        }
        if (c_open->parsed())
            return run_openvocab_cmd(input, positive, control, lambda, log_base,
                                     seed, out_dir, strict_mode);
        if (c_lex->parsed() || c_emo->parsed() || c_beh->parsed()) {
            RunConfig cfg;
            cfg.input_path = input;
            cfg.pairs = pairs_from_classes(classes);
            cfg.alpha = alpha;
            cfg.seed = seed;
            cfg.strict_ingest = strict_mode;
            cfg.emoticons_path = emoticons_path;
            cfg.selected_categories = categories;
            if (c_lex->parsed()) {
                cfg.category_lexicon_path = lexicon_path;
                cfg.analyses = {Analysis::lexicon};
            } else if (c_emo->parsed()) {
                cfg.emotion_lexicon_path = emotion_path;
                cfg.analyses = {Analysis::emotion};
            } else {
                cfg.analyses = {Analysis::behavior};
            }
            Corpus corpus = load_corpus(input, strict_mode);
            AnalysisReport report = run_analyses(corpus, cfg);
            write_sections(report, out_dir,
                           {{"timegap_plot", "timegap_plot"},
                            {"behavior_profiles", "behavior_profiles"},
                            {"monthly_gaps", "monthly_gaps"}});
            std::cerr << "outputs written to " << out_dir << "\n";
            return 0;
        }
        if (c_run->parsed()) {
            RunConfig cfg = load_run_config(config_path);
            if (c_run->count("--seed") > 0) cfg.seed = seed;
            if (c_run->count("--out") > 0) cfg.out_dir = out_dir;
            run(cfg);
            std::cerr << "report written to " << cfg.out_dir << "\n";
            return 0;
        }
        if (c_rep->parsed()) {
            std::ifstream in(config_path);
            if (!in) throw Error("cannot open " + config_path);
            nlohmann::json j;
            in >> j;
            AnalysisReport report;
            const auto& md = j.at("metadata");
            report.metadata.corpus_digest = md.value("corpus_digest", "");
            report.metadata.artifact_version = md.value("artifact_version", "");
            report.metadata.lambda = md.value("lambda", 0.1);
            report.metadata.log_base = md.value("log_base", "e");
            report.metadata.alpha = md.value("alpha", 0.001);
            report.metadata.seed = md.value("seed", std::uint64_t{42});
            report.metadata.tests_performed = md.value("tests_performed", std::size_t{0});
            for (const auto& s : j.at("sections")) {
                ReportSection sec;
                const std::string kind = s.value("kind", "table");
                for (SectionKind k :
                     {SectionKind::table, SectionKind::boxplot, SectionKind::radar,
                      SectionKind::heatmap, SectionKind::lineplot, SectionKind::lmplot})
                    if (kind == to_string(k)) sec.kind = k;
                sec.name = s.at("name").get<std::string>();
                sec.csv = s.value("csv", "");
                sec.svg = s.value("svg", "");
                report.sections.push_back(std::move(sec));
            }
            write_report_dir(report, out_dir);
            std::cerr << "report re-emitted to " << out_dir << "\n";
            return 0;
        }
        if (c_synth->parsed()) {
            SynthConfig scfg;
            scfg.seed = seed;
            scfg.users_per_class = synth_users;
            scfg.docs_per_user = synth_docs;
            const std::size_t n = write_synthetic_jsonl(scfg, synth_out);
            std::cerr << "wrote " << n << " synthetic documents to " << synth_out
                      << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
