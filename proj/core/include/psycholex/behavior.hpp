#ifndef PSYCHOLEX_BEHAVIOR_HPP
#define PSYCHOLEX_BEHAVIOR_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psycholex/corpus.hpp"
#include "psycholex/textscan.hpp"

namespace psycholex {

inline constexpr std::size_t kMarkerCount = 10;
/// Document-level engagement markers, fixed order for table columns.
extern const std::array<const char*, kMarkerCount> kMarkerLabels;

struct UserBehaviorProfile {
    std::string user_id;
    std::string class_label;
    std::size_t document_count = 0;
    // fraction of documents with >= 1 occurrence, parallel to kMarkerLabels
    std::array<double, kMarkerCount> marker_fractions{};
    double mean_hashtag_ratio = 0.0;
    double mean_mention_ratio = 0.0;
    std::optional<double> mean_time_gap_seconds;  // null when < 2 documents
    bool retweet_applicable = true;               // false off Twitter
    bool submission_type_applicable = true;       // false off Reddit
};

std::vector<UserBehaviorProfile> behavior_profiles(const Corpus& corpus,
                                                   const std::string& class_label,
                                                   const ScanOptions& opts = {});

/// Mean of the n-1 consecutive timestamp differences; null when n < 2.
std::optional<double> mean_time_gap(const UserProfile& user);

struct GapCell {
    double mean = 0.0;      // seconds
    double stddev = 0.0;    // population
    std::size_t count = 0;
};

/// class -> month-of-year (1..12) -> stats; months with no gaps are absent.
/// Each gap is assigned to the UTC month of the earlier document.
struct MonthlyGapTable {
    std::map<std::string, std::map<int, GapCell>> cells;
};

MonthlyGapTable monthly_gap_table(const Corpus& corpus,
                                  const std::vector<std::string>& classes);

/// UTC month-of-year (1..12) of an epoch timestamp.
int month_of(std::int64_t epoch_seconds);

} // namespace psycholex

#endif
