#ifndef PSYCHOLEX_RUNNER_HPP
#define PSYCHOLEX_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "psycholex/openvocab.hpp"
#include "psycholex/report.hpp"

namespace psycholex {

struct CohortPair {
    std::string positive;
    std::string control;
};

enum class Analysis { openvocab, lexicon, emotion, behavior };

struct RunConfig {
    std::string input_path;
    std::vector<CohortPair> pairs;
    std::string category_lexicon_path;   // optional
    std::string emotion_lexicon_path;    // optional
    std::string emoticons_path;          // optional override
    std::vector<std::string> selected_categories;  // empty -> all
    double lambda = 0.1;
    LogBase log_base = LogBase::natural;
    double alpha = 0.001;
    std::uint64_t seed = 42;
    std::vector<Analysis> analyses;      // empty -> all applicable
    std::string out_dir = "report";
    bool strict_ingest = true;
    CorrelationKind correlation = CorrelationKind::pearson;
};

/// Parse a JSON config file into a RunConfig; CLI flags override afterwards.
RunConfig load_run_config(const std::string& path);
void validate_run_config(const RunConfig& cfg, const Corpus& corpus);

/// Max worker threads: PSYCHOLEX_THREADS env var, else hardware concurrency.
unsigned worker_threads();

/// Executes the selected analyses over an already-ingested corpus and
/// assembles the full report. Deterministic for fixed config + input + seed.
AnalysisReport run_analyses(const Corpus& corpus, const RunConfig& cfg);

/// ingest + run_analyses + write_report_dir. Returns the report.
AnalysisReport run(const RunConfig& cfg);

} // namespace psycholex

#endif
