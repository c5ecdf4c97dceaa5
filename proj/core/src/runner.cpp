#include "psycholex/runner.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "psycholex/behavior.hpp"
#include "psycholex/lexicons.hpp"
#include "psycholex/stats.hpp"
#include "psycholex/svg.hpp"

namespace psycholex {

using nlohmann::json;

namespace {
constexpr const char* kArtifactVersion = "0.1.0";
}

unsigned worker_threads() {
    if (const char* env = std::getenv("PSYCHOLEX_THREADS")) {
        const long n = std::atol(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error("config parse error: " + std::string(e.what()));
    }
    RunConfig cfg;
    cfg.input_path = j.value("input", "");
    if (j.contains("pairs"))
        for (const auto& p : j["pairs"])
            cfg.pairs.push_back({p.at("positive").get<std::string>(),
                                 p.at("control").get<std::string>()});
    cfg.category_lexicon_path = j.value("category_lexicon", "");
    cfg.emotion_lexicon_path = j.value("emotion_lexicon", "");
    cfg.emoticons_path = j.value("emoticons", "");
    if (j.contains("categories"))
        for (const auto& c : j["categories"])
            cfg.selected_categories.push_back(c.get<std::string>());
    cfg.lambda = j.value("lambda", 0.1);
    const std::string base = j.value("log_base", "e");
    if (base == "e") cfg.log_base = LogBase::natural;
    else if (base == "2") cfg.log_base = LogBase::two;
    else throw Error("config: log_base must be 'e' or '2'");
    cfg.alpha = j.value("alpha", 0.001);
    cfg.seed = j.value("seed", std::uint64_t{42});
    if (j.contains("analyses"))
        for (const auto& a : j["analyses"]) {
            const std::string name = a.get<std::string>();
            if (name == "openvocab") cfg.analyses.push_back(Analysis::openvocab);
            else if (name == "lexicon") cfg.analyses.push_back(Analysis::lexicon);
            else if (name == "emotion") cfg.analyses.push_back(Analysis::emotion);
            else if (name == "behavior") cfg.analyses.push_back(Analysis::behavior);
            else throw Error("config: unknown analysis '" + name + "'");
        }
    cfg.out_dir = j.value("out", "report");
    cfg.strict_ingest = j.value("strict", true);
    const std::string corr = j.value("correlation", "pearson");
    if (corr == "pearson") cfg.correlation = CorrelationKind::pearson;
    else if (corr == "spearman") cfg.correlation = CorrelationKind::spearman;
    else throw Error("config: correlation must be 'pearson' or 'spearman'");
    return cfg;
}

void validate_run_config(const RunConfig& cfg, const Corpus& corpus) {
    if (cfg.lambda <= 0.0 || cfg.lambda >= 1.0)
        throw Error("config: lambda must lie in (0,1)");
    if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0)
        throw Error("config: alpha must lie in (0,1)");
    if (cfg.pairs.empty()) throw Error("config: no cohort pairs given");
    for (const auto& p : cfg.pairs) {
        if (!corpus.has_class(p.positive))
            throw Error("config: class '" + p.positive + "' not in corpus");
        if (!corpus.has_class(p.control))
            throw Error("config: class '" + p.control + "' not in corpus");
    }
}

namespace {

struct RunContext {
    const Corpus& corpus;
    const RunConfig& cfg;
    ScanOptions scan;
    EmoticonSet emoticons;
    std::size_t welch_count = 0;
    AnalysisReport report;

    void add_table(const std::string& name, std::string csv) {
        report.sections.push_back(
            {SectionKind::table, name, std::move(csv), ""});
    }
    void add_chart(SectionKind kind, const std::string& name, std::string csv,
                   std::string svg) {
        report.sections.push_back(
            {kind, name, std::move(csv), std::move(svg)});
    }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

void run_summary(RunContext& ctx) {
    SummaryTable table = summarize(ctx.corpus);
    std::string csv =
        "class,users,documents,mean_docs_per_user,mean_words_per_doc,"
        "mean_activity_period_days,empty_cohort\n";
    for (const auto& row : table.rows) {
        csv += csv_escape(row.class_label) + "," + std::to_string(row.user_count) +
               "," + std::to_string(row.document_count) + "," +
               fmt_num(row.mean_documents_per_user, 4) + "," +
               fmt_num(row.mean_words_per_document, 4) + "," +
               fmt_num(row.mean_activity_period_days, 4) + "," +
               (row.empty_cohort ? "1" : "0") + "\n";
    }
    ctx.add_table("summary", std::move(csv));
}

void run_openvocab_pair(RunContext& ctx, const CohortPair& pair) {
    const auto& cfg = ctx.cfg;
    Vocabulary pos = build_vocabulary(ctx.corpus, pair.positive, ctx.scan);
    Vocabulary ctl = build_vocabulary(ctx.corpus, pair.control, ctx.scan);
    Vocabulary coll = vocabulary_union({&pos, &ctl});
    JaccardResult jac = jaccard(pos, ctl);
    LanguageModel lm_pos = build_language_model(pos, coll, cfg.lambda);
    LanguageModel lm_ctl = build_language_model(ctl, coll, cfg.lambda);
    const double kl_pc = kl_divergence(lm_pos, lm_ctl, cfg.log_base);
    const double kl_cp = kl_divergence(lm_ctl, lm_pos, cfg.log_base);

    const std::string tag = pair.positive + "_vs_" + pair.control;
    std::string csv = "metric,value\n";
    csv += "positive_class," + csv_escape(pair.positive) + "\n";
    csv += "control_class," + csv_escape(pair.control) + "\n";
    csv += "unique_words_positive," + std::to_string(pos.unique_words()) + "\n";
    csv += "unique_words_control," + std::to_string(ctl.unique_words()) + "\n";
    csv += "difference_size_positive," + std::to_string(jac.p_minus_c) + "\n";
    csv += "difference_size_control," + std::to_string(jac.c_minus_p) + "\n";
    csv += "intersection_size," + std::to_string(jac.intersection_size) + "\n";
    csv += "union_size," + std::to_string(jac.union_size) + "\n";
    csv += "jaccard_index," +
           (jac.index ? fmt_num(*jac.index, 6) : std::string("null")) + "\n";
    csv += "kl_positive_vs_control," + fmt_num(kl_pc, 6) + "\n";
    csv += "kl_control_vs_positive," + fmt_num(kl_cp, 6) + "\n";
    ctx.add_table("vocab_comparison_" + tag, std::move(csv));

    // rank-ordered probability curves
    std::vector<LmCurve> curves;
    for (const auto* lm : {&lm_pos, &lm_ctl}) {
        LmCurve cu;
        cu.label = lm->class_label;
        cu.probs_sorted_desc = lm->probs;
        std::sort(cu.probs_sorted_desc.begin(), cu.probs_sorted_desc.end(),
                  std::greater<>());
        cu.color_index = static_cast<int>(curves.size());
        curves.push_back(std::move(cu));
    }
    std::string svg = render_lmplot("Language models: " + tag, curves);
    std::string chart_csv = "class,rank,prob (see chart desc)\n";
    ctx.add_chart(SectionKind::lmplot, "lm_plot_" + tag, std::move(chart_csv),
                  std::move(svg));

    // per-user reference-LM comparison on a seeded 10% sample of each class
    std::mt19937_64 rng(cfg.seed);
    auto sample_users = [&](const std::string& label) {
        const auto& users = ctx.corpus.cohort(label);
        std::vector<std::size_t> idx(users.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        // Fisher-Yates prefix shuffle with the portable engine
        const std::size_t want = std::max<std::size_t>(1, users.size() / 10);
        for (std::size_t i = 0; i < want && i + 1 < idx.size(); ++i) {
            const std::size_t j = i + rng() % (idx.size() - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(std::min(want, idx.size()));
        return idx;
    };
    std::string ref_csv =
        "class,users_sampled,mean_kl_to_positive,mean_kl_to_control,"
        "nearest_positive_count,nearest_control_count,null_users\n";
    for (const std::string& label : {pair.positive, pair.control}) {
        const auto& users = ctx.corpus.cohort(label);
        double sum_pos = 0.0, sum_ctl = 0.0;
        std::size_t n = 0, near_pos = 0, near_ctl = 0, nulls = 0;
        for (std::size_t i : sample_users(label)) {
            auto score = reference_lm_score(users[i], lm_pos, lm_ctl, coll,
                                            cfg.lambda, cfg.log_base, ctx.scan);
            if (!score) {
                ++nulls;
                continue;
            }
            sum_pos += score->kl_to_positive;
            sum_ctl += score->kl_to_control;
            ++n;
            if (score->nearest == NearestClass::positive) ++near_pos;
            else ++near_ctl;
        }
        ref_csv += csv_escape(label) + "," + std::to_string(n) + "," +
                   (n ? fmt_num(sum_pos / n, 6) : std::string("null")) + "," +
                   (n ? fmt_num(sum_ctl / n, 6) : std::string("null")) + "," +
                   std::to_string(near_pos) + "," + std::to_string(near_ctl) +
                   "," + std::to_string(nulls) + "\n";
    }
    ctx.add_table("reference_lm_" + tag, std::move(ref_csv));
}

std::vector<double> column(const std::vector<UserCategoryProfile>& profiles,
                           std::size_t cat) {
    std::vector<double> v;
    v.reserve(profiles.size());
    for (const auto& p : profiles) v.push_back(p.proportions[cat]);
    return v;
}

void run_lexicon_all(RunContext& ctx, const CategoryLexicon& lexicon) {
    const auto names = lexicon.category_names();
    std::vector<std::size_t> selected;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (ctx.cfg.selected_categories.empty() ||
            std::find(ctx.cfg.selected_categories.begin(),
                      ctx.cfg.selected_categories.end(),
                      names[c]) != ctx.cfg.selected_categories.end())
            selected.push_back(c);
    }

    std::map<std::string, std::vector<UserCategoryProfile>> by_class;
    auto profiles_of = [&](const std::string& label)
        -> const std::vector<UserCategoryProfile>& {
        auto it = by_class.find(label);
        if (it == by_class.end())
            it = by_class
                     .emplace(label, category_profiles(ctx.corpus, label,
                                                       lexicon, ctx.scan))
                     .first;
        return it->second;
    };

    // '^' convention: positive cohorts that differ significantly from
    // another positive cohort on a category
    std::vector<std::string> positives;
    for (const auto& p : ctx.cfg.pairs)
        if (std::find(positives.begin(), positives.end(), p.positive) ==
            positives.end())
            positives.push_back(p.positive);
    std::map<std::pair<std::string, std::size_t>, bool> caret;
    for (std::size_t i = 0; i < positives.size(); ++i)
        for (std::size_t j = i + 1; j < positives.size(); ++j)
            for (std::size_t c : selected) {
                auto a = column(profiles_of(positives[i]), c);
                auto b = column(profiles_of(positives[j]), c);
                if (a.size() < 2 || b.size() < 2) continue;
                WelchResult w = welch_t_test(a, b, ctx.cfg.alpha);
                ++ctx.welch_count;
                if (w.significant()) {
                    caret[{positives[i], c}] = true;
                    caret[{positives[j], c}] = true;
                }
            }

    for (const auto& pair : ctx.cfg.pairs) {
        const auto& pos = profiles_of(pair.positive);
        const auto& ctl = profiles_of(pair.control);
        const std::string tag = pair.positive + "_vs_" + pair.control;
        std::string csv = "category,t_statistic,df,p_value,significant\n";
        std::vector<BoxGroup> groups;
        for (std::size_t c : selected) {
            auto a = column(pos, c);
            auto b = column(ctl, c);
            bool significant = false;
            if (a.size() >= 2 && b.size() >= 2) {
                WelchResult w = welch_t_test(a, b, ctx.cfg.alpha);
                ++ctx.welch_count;
                significant = w.significant();
                csv += csv_escape(names[c]) + "," + fmt_num(w.t_statistic, 6) +
                       "," + fmt_num(w.degrees_of_freedom, 6) + "," +
                       fmt_num(w.p_value, 9) + "," + (significant ? "1" : "0") +
                       "\n";
            } else {
                csv += csv_escape(names[c]) + ",null,null,null,0\n";
            }
            if (!a.empty()) {
                BoxGroup g;
                g.label = names[c] + "/" + pair.positive;
                g.stats = box_stats(a);
                g.mark_star = significant;
                auto it = caret.find({pair.positive, c});
                g.mark_caret = it != caret.end() && it->second;
                g.color_index = 0;
                groups.push_back(std::move(g));
            }
            if (!b.empty()) {
                BoxGroup g;
                g.label = names[c] + "/" + pair.control;
                g.stats = box_stats(b);
                g.color_index = 1;
                groups.push_back(std::move(g));
            }
        }
        ctx.add_table("category_tests_" + lexicon.name + "_" + tag, csv);
        if (!groups.empty()) {
            std::string svg = render_boxplot(
                "Category proportions (" + lexicon.name + "): " + tag, groups);
            ctx.add_chart(SectionKind::boxplot,
                          "category_boxplot_" + lexicon.name + "_" + tag, csv,
                          std::move(svg));
        }
    }
}

void run_emotion_pair(RunContext& ctx, const CohortPair& pair,
                      const EmotionLexicon& lexicon) {
    auto pos = emotion_document_stats(ctx.corpus, pair.positive, lexicon, ctx.scan);
    auto ctl = emotion_document_stats(ctx.corpus, pair.control, lexicon, ctx.scan);
    const std::string tag = pair.positive + "_vs_" + pair.control;

    std::vector<std::string> axes(kEmotionLabels.begin(), kEmotionLabels.end());
    auto means_pos = emotion_class_mean_counts(pos);
    auto means_ctl = emotion_class_mean_counts(ctl);
    std::string csv = "class";
    for (const auto& a : axes) csv += "," + a;
    csv += "\n" + csv_escape(pair.positive);
    for (double m : means_pos) csv += "," + fmt_num(m, 6);
    csv += "\n" + csv_escape(pair.control);
    for (double m : means_ctl) csv += "," + fmt_num(m, 6);
    csv += "\n";
    std::vector<RadarSeries> series{
        {pair.positive, {means_pos.begin(), means_pos.end()}, 0},
        {pair.control, {means_ctl.begin(), means_ctl.end()}, 1}};
    std::string radar_svg = render_radar("Emotion profile: " + tag, axes, series);
    ctx.add_chart(SectionKind::radar, "emotion_radar_" + tag, csv,
                  std::move(radar_svg));

    auto columns_of = [&](const std::vector<UserEmotionStats>& stats) {
        std::vector<std::vector<double>> cols(kEmotionCount);
        for (auto& c : cols) c.reserve(stats.size());
        for (const auto& s : stats)
            for (std::size_t e = 0; e < kEmotionCount; ++e)
                cols[e].push_back(s.doc_fractions[e]);
        return cols;
    };
    if (pos.size() >= 2 && ctl.size() >= 2) {
        CorrelationMatrix mp =
            correlation_matrix(axes, columns_of(pos), ctx.cfg.correlation);
        CorrelationMatrix mc =
            correlation_matrix(axes, columns_of(ctl), ctx.cfg.correlation);
        std::string corr_csv = "panel,row,col,r\n";
        auto emit = [&](const CorrelationMatrix& m, const std::string& panel) {
            for (std::size_t i = 0; i < m.labels.size(); ++i)
                for (std::size_t j = 0; j < m.labels.size(); ++j) {
                    auto v = m.at(i, j);
                    corr_csv += panel + "," + m.labels[i] + "," + m.labels[j] +
                                "," + (v ? fmt_num(*v, 6) : std::string("null")) +
                                "\n";
                }
        };
        emit(mp, pair.positive);
        emit(mc, pair.control);
        std::string heat_svg =
            render_heatmap("Emotion correlation: " + tag, mp, pair.positive, mc,
                           pair.control);
        ctx.add_chart(SectionKind::heatmap, "emotion_heatmap_" + tag,
                      std::move(corr_csv), std::move(heat_svg));
    }
}

void run_behavior_all(RunContext& ctx) {
    // every class named by any pair, positives first, duplicates dropped
    std::vector<std::string> classes;
    for (const auto& p : ctx.cfg.pairs) {
        for (const auto& label : {p.positive, p.control})
            if (std::find(classes.begin(), classes.end(), label) == classes.end())
                classes.push_back(label);
    }

    std::string csv = "class,user_id,documents";
    for (const char* m : kMarkerLabels) csv += std::string(",") + m;
    csv += ",mean_hashtag_ratio,mean_mention_ratio,mean_time_gap_seconds\n";
    std::map<std::string, std::vector<UserBehaviorProfile>> by_class;
    for (const auto& cls : classes) {
        auto profiles = behavior_profiles(ctx.corpus, cls, ctx.scan);
        for (const auto& p : profiles) {
            csv += csv_escape(cls) + "," + csv_escape(p.user_id) + "," +
                   std::to_string(p.document_count);
            for (std::size_t k = 0; k < kMarkerCount; ++k)
                csv += "," + fmt_num(p.marker_fractions[k], 6);
            csv += "," + fmt_num(p.mean_hashtag_ratio, 6) + "," +
                   fmt_num(p.mean_mention_ratio, 6) + "," +
                   (p.mean_time_gap_seconds
                        ? fmt_num(*p.mean_time_gap_seconds, 1)
                        : std::string("null"));
            csv += "\n";
        }
        by_class[cls] = std::move(profiles);
    }
    ctx.add_table("behavior_profiles", std::move(csv));

    // Welch tests per marker for each configured pair, box plot per pair
    for (const auto& pair : ctx.cfg.pairs) {
        const auto& pos = by_class[pair.positive];
        const auto& ctl = by_class[pair.control];
        const std::string tag = pair.positive + "_vs_" + pair.control;
        std::string tests = "marker,t_statistic,df,p_value,significant\n";
        std::vector<BoxGroup> groups;
        for (std::size_t k = 0; k < kMarkerCount; ++k) {
            std::vector<double> a, b;
            for (const auto& p : pos) a.push_back(p.marker_fractions[k]);
            for (const auto& p : ctl) b.push_back(p.marker_fractions[k]);
            bool significant = false;
            if (a.size() >= 2 && b.size() >= 2) {
                WelchResult w = welch_t_test(a, b, ctx.cfg.alpha);
                ++ctx.welch_count;
                significant = w.significant();
                tests += std::string(kMarkerLabels[k]) + "," +
                         fmt_num(w.t_statistic, 6) + "," +
                         fmt_num(w.degrees_of_freedom, 6) + "," +
                         fmt_num(w.p_value, 9) + "," +
                         (significant ? "1" : "0") + "\n";
            } else {
                tests += std::string(kMarkerLabels[k]) + ",null,null,null,0\n";
            }
            if (!a.empty()) {
                BoxGroup g{std::string(kMarkerLabels[k]) + "/" + pair.positive,
                           box_stats(a), significant, false, 0};
                groups.push_back(std::move(g));
            }
            if (!b.empty()) {
                BoxGroup g{std::string(kMarkerLabels[k]) + "/" + pair.control,
                           box_stats(b), false, false, 1};
                groups.push_back(std::move(g));
            }
        }
        ctx.add_table("engagement_tests_" + tag, tests);
        if (!groups.empty()) {
            std::string svg =
                render_boxplot("Engagement markers: " + tag, groups);
            ctx.add_chart(SectionKind::boxplot, "engagement_boxplots_" + tag,
                          tests, std::move(svg));
        }
    }

    MonthlyGapTable gaps = monthly_gap_table(ctx.corpus, classes);
    std::string gap_csv = "class,month,mean_hours,stddev_hours,count\n";
    bool any = false;
    for (const auto& [cls, months] : gaps.cells)
        for (const auto& [m, cell] : months) {
            any = true;
            gap_csv += csv_escape(cls) + "," + std::to_string(m) + "," +
                       fmt_num(cell.mean / 3600.0, 6) + "," +
                       fmt_num(cell.stddev / 3600.0, 6) + "," +
                       std::to_string(cell.count) + "\n";
        }
    ctx.add_table("monthly_gaps", gap_csv);
    if (any) {
        std::string svg = render_timegap("Posting time-gap by month", gaps);
        ctx.add_chart(SectionKind::lineplot, "timegap_plot", gap_csv,
                      std::move(svg));
    }
}

std::string now_utc_string() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

AnalysisReport run_analyses(const Corpus& corpus, const RunConfig& cfg) {
    validate_run_config(cfg, corpus);
    RunContext ctx{corpus, cfg};
    if (!cfg.emoticons_path.empty()) {
        ctx.emoticons = EmoticonSet::load(cfg.emoticons_path);
        ctx.scan.emoticons = &ctx.emoticons;
    }

    std::vector<Analysis> analyses = cfg.analyses;
    if (analyses.empty()) {
        analyses = {Analysis::openvocab, Analysis::behavior};
        if (!cfg.category_lexicon_path.empty())
            analyses.push_back(Analysis::lexicon);
        if (!cfg.emotion_lexicon_path.empty())
            analyses.push_back(Analysis::emotion);
    }

    auto& md = ctx.report.metadata;
    md.artifact_version = kArtifactVersion;
    md.lambda = cfg.lambda;
    md.log_base = cfg.log_base == LogBase::natural ? "e" : "2";
    md.alpha = cfg.alpha;
    md.seed = cfg.seed;
    md.created_utc = now_utc_string();
    if (!cfg.input_path.empty()) {
        std::ifstream probe(cfg.input_path);
        if (probe) md.corpus_digest = digest_file(cfg.input_path);
    }
    md.notes["collection_model"] = "union of the two classes under comparison";
    md.notes["gap_month_rule"] = "gap assigned to the earlier document's month";
    md.notes["vocabulary"] = "sigil-stripped hashtag/mention forms included";
    md.notes["empty_documents"] = "kept and counted in proportions";
    md.notes["correlation"] =
        cfg.correlation == CorrelationKind::pearson ? "pearson" : "spearman";

    run_summary(ctx);
    for (Analysis a : analyses) {
        switch (a) {
            case Analysis::openvocab:
                for (const auto& pair : cfg.pairs) run_openvocab_pair(ctx, pair);
                break;
            case Analysis::lexicon: {
                if (cfg.category_lexicon_path.empty())
                    throw Error("lexicon analysis requested without a lexicon file");
                CategoryLexicon lex =
                    load_category_lexicon(cfg.category_lexicon_path);
                md.lexicon_digests[lex.name] =
                    digest_file(cfg.category_lexicon_path);
                run_lexicon_all(ctx, lex);
                break;
            }
            case Analysis::emotion: {
                if (cfg.emotion_lexicon_path.empty())
                    throw Error("emotion analysis requested without a lexicon file");
                EmotionLexicon lex = load_emotion_lexicon(cfg.emotion_lexicon_path);
                md.lexicon_digests["emotion"] =
                    digest_file(cfg.emotion_lexicon_path);
                for (const auto& pair : cfg.pairs)
                    run_emotion_pair(ctx, pair, lex);
                break;
            }
            case Analysis::behavior:
                run_behavior_all(ctx);
                break;
        }
    }
    md.tests_performed = ctx.welch_count;
    return ctx.report;
}

AnalysisReport run(const RunConfig& cfg) {
    IngestOptions opts;
    opts.strict = cfg.strict_ingest;
    Corpus corpus = ingest(cfg.input_path, opts);
    AnalysisReport report = run_analyses(corpus, cfg);
    write_report_dir(report, cfg.out_dir);
    return report;
}

} // namespace psycholex
