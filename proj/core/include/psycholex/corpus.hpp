#ifndef PSYCHOLEX_CORPUS_HPP
#define PSYCHOLEX_CORPUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psycholex {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Platform { reddit, twitter, other };
enum class SubmissionType { post, comment };

const char* to_string(Platform p);
const char* to_string(SubmissionType s);
Platform platform_from_string(const std::string& s);

/// One post/tweet. Timestamp is UTC epoch seconds.
struct Document {
    std::string doc_id;
    std::string user_id;
    std::int64_t timestamp = 0;
    std::string text;
    Platform platform = Platform::other;
    std::optional<SubmissionType> submission_type;
};

/// A user's chronology: documents sorted ascending by timestamp,
/// ties broken by doc_id.
struct UserProfile {
    std::string user_id;
    std::string class_label;
    std::vector<Document> documents;
};

struct Corpus {
    std::map<std::string, std::vector<UserProfile>> cohorts;
    Platform platform = Platform::other;

    bool has_class(const std::string& label) const {
        return cohorts.count(label) > 0;
    }
    const std::vector<UserProfile>& cohort(const std::string& label) const;
    std::size_t total_documents() const;
};

struct IngestOptions {
    bool strict = true;           // lenient mode skips malformed lines and counts them
};

struct IngestStats {
    std::size_t records = 0;
    std::size_t skipped = 0;      // only nonzero in lenient mode
};

/// Parse "YYYY-MM-DDTHH:MM:SS" with optional "Z" or "+HH:MM"/"-HH:MM" offset.
/// Missing timezone is treated as UTC. Throws Error on malformed input.
std::int64_t parse_iso8601_utc(const std::string& s);
std::string format_iso8601_utc(std::int64_t epoch_seconds);

Corpus ingest(const std::string& path, const IngestOptions& opts = {},
              IngestStats* stats = nullptr);
Corpus ingest_lines(const std::vector<std::string>& lines,
                    const IngestOptions& opts = {}, IngestStats* stats = nullptr);

/// Write the corpus back out as one JSON object per line (the ingest format).
void export_jsonl(const Corpus& corpus, const std::string& path);

struct CohortSummary {
    std::string class_label;
    std::size_t user_count = 0;
    std::size_t document_count = 0;
    double mean_documents_per_user = 0.0;
    double mean_words_per_document = 0.0;
    double mean_activity_period_days = 0.0;
    bool empty_cohort = false;
};

struct SummaryTable {
    std::vector<CohortSummary> rows;
};

SummaryTable summarize(const Corpus& corpus);

} // namespace psycholex

#endif
