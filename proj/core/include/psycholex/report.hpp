#ifndef PSYCHOLEX_REPORT_HPP
#define PSYCHOLEX_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psycholex/behavior.hpp"
#include "psycholex/openvocab.hpp"
#include "psycholex/stats.hpp"

namespace psycholex {

enum class SectionKind { table, boxplot, radar, heatmap, lineplot, lmplot };
const char* to_string(SectionKind k);

struct ReportSection {
    SectionKind kind = SectionKind::table;
    std::string name;
    std::string csv;   // the data table behind the section
    std::string svg;   // empty for kind == table
};

struct ReportMetadata {
    std::string corpus_digest;
    std::string artifact_version;
    double lambda = 0.1;
    std::string log_base = "e";
    double alpha = 0.001;
    std::uint64_t seed = 42;
    std::map<std::string, std::string> lexicon_digests;
    std::map<std::string, std::string> notes;
    std::size_t tests_performed = 0;  // Welch tests run, footnoted (no correction applied)
    std::string created_utc;          // excluded from determinism checks
};

struct AnalysisReport {
    ReportMetadata metadata;
    std::vector<ReportSection> sections;
};

/// One box-and-whisker group in a grouped plot.
struct BoxGroup {
    std::string label;        // e.g. "i / depression"
    BoxStats stats;
    bool mark_star = false;   // '*': positive vs control significant
    bool mark_caret = false;  // '^': positive vs positive significant
    int color_index = 0;
};

std::string render_boxplot(const std::string& title,
                           const std::vector<BoxGroup>& groups);

struct RadarSeries {
    std::string label;
    std::vector<double> values;  // one per axis
    int color_index = 0;
};

std::string render_radar(const std::string& title,
                         const std::vector<std::string>& axes,
                         const std::vector<RadarSeries>& series);

/// Side-by-side heatmap pair on a fixed [-1,1] diverging scale; null cells
/// are left blank.
std::string render_heatmap(const std::string& title,
                           const CorrelationMatrix& left,
                           const std::string& left_label,
                           const CorrelationMatrix& right,
                           const std::string& right_label);

/// Per-class monthly mean line with +-1 stddev band; missing months break
/// the line. Throws on an empty table.
std::string render_timegap(const std::string& title,
                           const MonthlyGapTable& table);

struct LmCurve {
    std::string label;
    std::vector<double> probs_sorted_desc;
    int color_index = 0;
};

/// Rank-ordered probability curves, log-scaled y.
std::string render_lmplot(const std::string& title,
                          const std::vector<LmCurve>& curves);

/// FNV-1a 64 over bytes, hex string; used for corpus/lexicon digests.
std::string fnv1a_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

std::string report_to_json(const AnalysisReport& report);

/// Writes metadata.json, tables/*.csv, charts/*.svg and report.json under dir.
void write_report_dir(const AnalysisReport& report, const std::string& dir);

} // namespace psycholex

#endif
