#include "psycholex/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "psycholex/textscan.hpp"

namespace psycholex {

using nlohmann::json;

const char* to_string(Platform p) {
    switch (p) {
        case Platform::reddit: return "reddit";
        case Platform::twitter: return "twitter";
        default: return "other";
    }
}

const char* to_string(SubmissionType s) {
    return s == SubmissionType::post ? "post" : "comment";
}

Platform platform_from_string(const std::string& s) {
    if (s == "reddit") return Platform::reddit;
    if (s == "twitter") return Platform::twitter;
    if (s == "other") return Platform::other;
    throw Error("unknown platform: " + s);
}

const std::vector<UserProfile>& Corpus::cohort(const std::string& label) const {
    auto it = cohorts.find(label);
    if (it == cohorts.end()) throw Error("unknown class label: " + label);
    return it->second;
}

std::size_t Corpus::total_documents() const {
    std::size_t n = 0;
    for (const auto& [label, users] : cohorts)
        for (const auto& u : users) n += u.documents.size();
    return n;
}

namespace {

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

constexpr std::int64_t kMinTimestamp = 631152000;  // 1990-01-01T00:00:00Z

bool parse_fixed_digits(const char* s, int n, int& out) {
    out = 0;
    for (int i = 0; i < n; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

} // namespace

std::int64_t parse_iso8601_utc(const std::string& s) {
    // YYYY-MM-DDTHH:MM:SS then optional Z | +HH:MM | -HH:MM
    if (s.size() < 19) throw Error("bad timestamp: " + s);
    const char* p = s.c_str();
    int year, mon, day, hh, mm, ss;
    if (!parse_fixed_digits(p, 4, year) || p[4] != '-' ||
        !parse_fixed_digits(p + 5, 2, mon) || p[7] != '-' ||
        !parse_fixed_digits(p + 8, 2, day) ||
        (p[10] != 'T' && p[10] != ' ') ||
        !parse_fixed_digits(p + 11, 2, hh) || p[13] != ':' ||
        !parse_fixed_digits(p + 14, 2, mm) || p[16] != ':' ||
        !parse_fixed_digits(p + 17, 2, ss))
        throw Error("bad timestamp: " + s);
    if (mon < 1 || mon > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 || ss > 60)
        throw Error("bad timestamp: " + s);
    std::int64_t offset = 0;
    if (s.size() > 19) {
        const std::string rest = s.substr(19);
        if (rest == "Z") {
            // UTC
        } else if ((rest[0] == '+' || rest[0] == '-') && rest.size() == 6 &&
                   rest[3] == ':') {
            int oh, om;
            if (!parse_fixed_digits(rest.c_str() + 1, 2, oh) ||
                !parse_fixed_digits(rest.c_str() + 4, 2, om))
                throw Error("bad timestamp offset: " + s);
            offset = (rest[0] == '+' ? 1 : -1) * (oh * 3600 + om * 60);
        } else {
            throw Error("bad timestamp suffix: " + s);
        }
    }
    return days_from_civil(year, mon, day) * 86400 + hh * 3600 + mm * 60 + ss -
           offset;
}

std::string format_iso8601_utc(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

namespace {

struct Builder {
    std::unordered_map<std::string, std::string> user_class;
    std::unordered_map<std::string, UserProfile> users;
    std::unordered_map<std::string, std::unordered_set<std::string>> doc_ids;
    std::optional<Platform> corpus_platform;

    void add_record(const json& rec, std::size_t line_no) {
        auto require = [&](const char* key) -> const json& {
            auto it = rec.find(key);
            if (it == rec.end())
                throw Error("line " + std::to_string(line_no) +
                            ": missing field '" + key + "'");
            return *it;
        };
        Document doc;
        doc.doc_id = require("doc_id").get<std::string>();
        doc.user_id = require("user_id").get<std::string>();
        const std::string cls = require("class").get<std::string>();
        doc.text = require("text").get<std::string>();
        const std::string platform_str = require("platform").get<std::string>();
        const std::string timestamp_str = require("timestamp").get<std::string>();
        try {
            doc.platform = platform_from_string(platform_str);
            doc.timestamp = parse_iso8601_utc(timestamp_str);
        } catch (const Error& e) {
            // value-level parse errors need the line context too
            throw Error("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (doc.timestamp < kMinTimestamp)
            throw Error("line " + std::to_string(line_no) +
                        ": timestamp before 1990-01-01");
        if (doc.timestamp > static_cast<std::int64_t>(std::time(nullptr)))
            throw Error("line " + std::to_string(line_no) +
                        ": timestamp in the future");
        if (auto it = rec.find("submission_type"); it != rec.end() && !it->is_null()) {
            if (doc.platform != Platform::reddit)
                throw Error("line " + std::to_string(line_no) +
                            ": submission_type only valid for reddit");
            const std::string st = it->get<std::string>();
            if (st == "post")
                doc.submission_type = SubmissionType::post;
            else if (st == "comment")
                doc.submission_type = SubmissionType::comment;
            else
                throw Error("line " + std::to_string(line_no) +
                            ": bad submission_type '" + st + "'");
        }

        auto [cit, fresh] = user_class.emplace(doc.user_id, cls);
        if (!fresh && cit->second != cls)
            throw Error("line " + std::to_string(line_no) + ": user '" +
                        doc.user_id + "' assigned two class labels ('" +
                        cit->second + "', '" + cls + "')");
        if (!doc_ids[doc.user_id].insert(doc.doc_id).second)
            throw Error("line " + std::to_string(line_no) + ": duplicate doc_id '" +
                        doc.doc_id + "' for user '" + doc.user_id + "'");

        auto& profile = users[doc.user_id];
        if (profile.user_id.empty()) {
            profile.user_id = doc.user_id;
            profile.class_label = cls;
        }
        if (!corpus_platform) corpus_platform = doc.platform;
        profile.documents.push_back(std::move(doc));
    }

    Corpus finish() {
        Corpus corpus;
        if (corpus_platform) corpus.platform = *corpus_platform;
        for (auto& [id, profile] : users) {
            std::sort(profile.documents.begin(), profile.documents.end(),
                      [](const Document& a, const Document& b) {
                          if (a.timestamp != b.timestamp)
                              return a.timestamp < b.timestamp;
                          return a.doc_id < b.doc_id;
                      });
            corpus.cohorts[profile.class_label].push_back(std::move(profile));
        }
        for (auto& [label, list] : corpus.cohorts)
            std::sort(list.begin(), list.end(),
                      [](const UserProfile& a, const UserProfile& b) {
                          return a.user_id < b.user_id;
                      });
        return corpus;
    }
};

Corpus ingest_stream(std::istream& in, const IngestOptions& opts,
                     IngestStats* stats) {
    Builder builder;
    std::string line;
    std::size_t line_no = 0;
    std::size_t records = 0;
    std::size_t skipped = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            json rec = json::parse(line);
            if (!rec.is_object())
                throw Error("line " + std::to_string(line_no) +
                            ": record is not a JSON object");
            builder.add_record(rec, line_no);
            ++records;
        } catch (const json::parse_error&) {
            if (opts.strict)
                throw Error("line " + std::to_string(line_no) +
                            ": malformed JSON");
            ++skipped;
        } catch (const Error&) {
            if (opts.strict) throw;
            ++skipped;
        }
    }
    if (records == 0) throw Error("no records");
    if (stats) {
        stats->records = records;
        stats->skipped = skipped;
    }
    return builder.finish();
}

} // namespace

Corpus ingest(const std::string& path, const IngestOptions& opts,
              IngestStats* stats) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    return ingest_stream(in, opts, stats);
}

Corpus ingest_lines(const std::vector<std::string>& lines,
                    const IngestOptions& opts, IngestStats* stats) {
    std::string joined;
    for (const auto& l : lines) {
        joined += l;
        joined += '\n';
    }
    std::istringstream in(joined);
    return ingest_stream(in, opts, stats);
}

void export_jsonl(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    for (const auto& [label, users] : corpus.cohorts) {
        for (const auto& u : users) {
            for (const auto& d : u.documents) {
                json rec{{"doc_id", d.doc_id},
                         {"user_id", d.user_id},
                         {"class", label},
                         {"timestamp", format_iso8601_utc(d.timestamp)},
                         {"text", d.text},
                         {"platform", to_string(d.platform)}};
                if (d.submission_type)
                    rec["submission_type"] = to_string(*d.submission_type);
                out << rec.dump() << '\n';
            }
        }
    }
}

SummaryTable summarize(const Corpus& corpus) {
    SummaryTable table;
    for (const auto& [label, users] : corpus.cohorts) {
        CohortSummary row;
        row.class_label = label;
        row.user_count = users.size();
        std::uint64_t words = 0;
        double activity_days_sum = 0.0;
        for (const auto& u : users) {
            row.document_count += u.documents.size();
            for (const auto& d : u.documents)
                words += tokenize(d.text).count(TokenKind::word);
            if (!u.documents.empty())
                activity_days_sum +=
                    static_cast<double>(u.documents.back().timestamp -
                                        u.documents.front().timestamp) /
                    86400.0;
        }
        if (users.empty() || row.document_count == 0) row.empty_cohort = users.empty();
        if (row.user_count > 0) {
            row.mean_documents_per_user =
                static_cast<double>(row.document_count) / row.user_count;
            row.mean_activity_period_days = activity_days_sum / row.user_count;
        }
        if (row.document_count > 0)
            row.mean_words_per_document =
                static_cast<double>(words) / row.document_count;
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace psycholex
