#include "psycholex/behavior.hpp"

#include <cmath>

#include "psycholex/parallel.hpp"
#include "psycholex/runner.hpp"

namespace psycholex {

const std::array<const char*, kMarkerCount> kMarkerLabels = {
    "mentions",  "hashtags", "all_caps",       "ascii_emoticons", "emojis",
    "emphasis",  "censored", "repeated_words", "retweet",         "submission_is_comment"};

std::optional<double> mean_time_gap(const UserProfile& user) {
    const auto& docs = user.documents;
    if (docs.size() < 2) return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = 1; i < docs.size(); ++i)
        sum += static_cast<double>(docs[i].timestamp - docs[i - 1].timestamp);
    return sum / static_cast<double>(docs.size() - 1);
}

int month_of(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) days -= 1;
    // civil-from-days, month only
    std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    return static_cast<int>(mp + (mp < 10 ? 3 : -9));
}

std::vector<UserBehaviorProfile> behavior_profiles(const Corpus& corpus,
                                                   const std::string& class_label,
                                                   const ScanOptions& opts) {
    const auto& users = corpus.cohort(class_label);
    std::vector<UserBehaviorProfile> result(users.size());
    parallel_for(users.size(), worker_threads(), [&](std::size_t i) {
        const auto& user = users[i];
        auto& prof = result[i];
        prof.user_id = user.user_id;
        prof.class_label = class_label;
        prof.document_count = user.documents.size();
        if (user.documents.empty()) return;
        std::array<std::size_t, kMarkerCount> docs_with{};
        double hashtag_ratio_sum = 0.0;
        double mention_ratio_sum = 0.0;
        bool any_twitter = false;
        bool any_reddit = false;
        for (const auto& doc : user.documents) {
            MarkerProfile mp = scan_markers(doc, opts);
            if (doc.platform == Platform::twitter) any_twitter = true;
            if (doc.platform == Platform::reddit) any_reddit = true;
            const bool flags[kMarkerCount] = {
                mp.mentions > 0,  mp.hashtags > 0, mp.all_caps > 0,
                mp.ascii_emoticons > 0, mp.emojis > 0,  mp.emphasis > 0,
                mp.censored > 0,  mp.repeated_words > 0, mp.retweet,
                mp.submission_is_comment};
            for (std::size_t k = 0; k < kMarkerCount; ++k)
                if (flags[k]) ++docs_with[k];
            hashtag_ratio_sum += mp.hashtag_ratio;
            mention_ratio_sum += mp.mention_ratio;
        }
        const double nd = static_cast<double>(user.documents.size());
        for (std::size_t k = 0; k < kMarkerCount; ++k)
            prof.marker_fractions[k] = static_cast<double>(docs_with[k]) / nd;
        prof.mean_hashtag_ratio = hashtag_ratio_sum / nd;
        prof.mean_mention_ratio = mention_ratio_sum / nd;
        prof.mean_time_gap_seconds = mean_time_gap(user);
        prof.retweet_applicable = any_twitter;
        prof.submission_type_applicable = any_reddit;
    });
    std::vector<UserBehaviorProfile> out;
    out.reserve(result.size());
    for (std::size_t i = 0; i < users.size(); ++i)
        if (!users[i].documents.empty()) out.push_back(std::move(result[i]));
    return out;
}

MonthlyGapTable monthly_gap_table(const Corpus& corpus,
                                  const std::vector<std::string>& classes) {
    if (classes.empty()) throw Error("monthly_gap_table: no classes given");
    MonthlyGapTable table;
    for (const auto& cls : classes) {
        // per-month accumulation of (sum, sum of squares, count)
        struct Acc {
            double sum = 0.0, sumsq = 0.0;
            std::size_t n = 0;
        };
        std::map<int, Acc> acc;
        for (const auto& user : corpus.cohort(cls)) {
            for (std::size_t i = 1; i < user.documents.size(); ++i) {
                const double gap = static_cast<double>(
                    user.documents[i].timestamp - user.documents[i - 1].timestamp);
                const int month = month_of(user.documents[i - 1].timestamp);
                auto& a = acc[month];
                a.sum += gap;
                a.sumsq += gap * gap;
                ++a.n;
            }
        }
        auto& row = table.cells[cls];
        for (const auto& [month, a] : acc) {
            GapCell cell;
            cell.count = a.n;
            cell.mean = a.sum / static_cast<double>(a.n);
            const double var =
                a.sumsq / static_cast<double>(a.n) - cell.mean * cell.mean;
            cell.stddev = var > 0.0 ? std::sqrt(var) : 0.0;
            row[month] = cell;
        }
    }
    return table;
}

} // namespace psycholex
