#include "psycholex/lexicons.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "psycholex/parallel.hpp"
#include "psycholex/runner.hpp"

namespace psycholex {

std::vector<std::string> CategoryLexicon::category_names() const {
    std::vector<std::string> names;
    names.reserve(categories.size());
    for (const auto& [name, entries] : categories) names.push_back(name);
    return names;
}

const std::vector<LexiconEntry>* CategoryLexicon::find(
    const std::string& category) const {
    for (const auto& [name, entries] : categories)
        if (name == category) return &entries;
    return nullptr;
}

namespace {

std::string to_lower_ascii(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c += 32;
    return s;
}

std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

LexiconEntry make_entry(const std::string& raw, const std::string& category) {
    std::string w = to_lower_ascii(raw);
    LexiconEntry e;
    if (!w.empty() && w.back() == '*') {
        e.is_prefix = true;
        e.value = w.substr(0, w.size() - 1);
        if (e.value.size() < 2)
            throw Error("prefix stem too short in category '" + category +
                        "': " + raw);
    } else {
        e.value = std::move(w);
    }
    if (e.value.empty())
        throw Error("empty entry in category '" + category + "'");
    return e;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

CategoryLexicon parse_dic(std::istream& in, const std::string& name) {
    CategoryLexicon lex;
    lex.name = name;
    std::string line;
    // header block between '%' lines: id TAB category-name
    if (!std::getline(in, line) || strip_cr(line) != "%")
        throw Error("lexicon '" + name + "': .dic header must start with '%'");
    std::unordered_map<std::string, std::size_t> id_to_index;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line == "%") break;
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() < 2)
            throw Error("lexicon '" + name + "': bad .dic header line: " + line);
        id_to_index[cols[0]] = lex.categories.size();
        lex.categories.emplace_back(cols[1], std::vector<LexiconEntry>{});
    }
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() < 2)
            throw Error("lexicon '" + name + "': word line without category ids: " +
                        line);
        for (std::size_t i = 1; i < cols.size(); ++i) {
            if (cols[i].empty()) continue;
            auto it = id_to_index.find(cols[i]);
            if (it == id_to_index.end())
                throw Error("lexicon '" + name + "': unknown category id '" +
                            cols[i] + "'");
            lex.categories[it->second].second.push_back(
                make_entry(cols[0], lex.categories[it->second].first));
        }
    }
    return lex;
}

CategoryLexicon parse_tsv(std::istream& in, const std::string& name) {
    CategoryLexicon lex;
    lex.name = name;
    std::unordered_map<std::string, std::size_t> index;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_tabs(line);
        if (cols.size() != 2)
            throw Error("lexicon '" + name + "': expected 'category TAB word': " +
                        line);
        auto [it, fresh] = index.emplace(cols[0], lex.categories.size());
        if (fresh) lex.categories.emplace_back(cols[0], std::vector<LexiconEntry>{});
        lex.categories[it->second].second.push_back(make_entry(cols[1], cols[0]));
    }
    return lex;
}

void validate_and_dedupe(CategoryLexicon& lex) {
    if (lex.categories.empty())
        throw Error("lexicon '" + lex.name + "' has no categories");
    for (auto& [cat, entries] : lex.categories) {
        if (entries.empty())
            throw Error("lexicon '" + lex.name + "': empty category '" + cat + "'");
        std::unordered_set<std::string> seen;
        std::vector<LexiconEntry> unique;
        unique.reserve(entries.size());
        for (auto& e : entries) {
            std::string key = e.value + (e.is_prefix ? "*" : "");
            if (seen.insert(key).second)
                unique.push_back(std::move(e));
            else
                ++lex.warnings_deduplicated;
        }
        entries = std::move(unique);
    }
}

} // namespace

CategoryLexicon parse_category_lexicon(const std::string& content,
                                       const std::string& name) {
    std::istringstream in(content);
    // sniff: a .dic starts with a lone '%'
    std::string first;
    std::streampos pos = in.tellg();
    while (std::getline(in, first)) {
        first = strip_cr(first);
        if (!first.empty()) break;
    }
    in.clear();
    in.seekg(pos);
    CategoryLexicon lex =
        first == "%" ? parse_dic(in, name) : parse_tsv(in, name);
    validate_and_dedupe(lex);
    return lex;
}

CategoryLexicon load_category_lexicon(const std::string& path,
                                      const std::string& name) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string lex_name = name;
    if (lex_name.empty()) {
        auto slash = path.find_last_of("/\\");
        lex_name = slash == std::string::npos ? path : path.substr(slash + 1);
        auto dot = lex_name.find_last_of('.');
        if (dot != std::string::npos) lex_name.resize(dot);
    }
    return parse_category_lexicon(buf.str(), lex_name);
}

bool match_category(const std::vector<std::string>& normalized_words,
                    const std::vector<LexiconEntry>& entries) {
    for (const auto& w : normalized_words)
        for (const auto& e : entries) {
            if (e.is_prefix) {
                if (w.size() >= e.value.size() &&
                    w.compare(0, e.value.size(), e.value) == 0)
                    return true;
            } else if (w == e.value) {
                return true;
            }
        }
    return false;
}

std::vector<UserCategoryProfile> category_profiles(const Corpus& corpus,
                                                   const std::string& class_label,
                                                   const CategoryLexicon& lexicon,
                                                   const ScanOptions& opts) {
    const auto& users = corpus.cohort(class_label);
    const std::size_t ncat = lexicon.categories.size();
    std::vector<UserCategoryProfile> result(users.size());
    parallel_for(users.size(), worker_threads(), [&](std::size_t i) {
        const auto& user = users[i];
        auto& prof = result[i];
        prof.user_id = user.user_id;
        prof.class_label = class_label;
        prof.proportions.assign(ncat, 0.0);
        if (user.documents.empty()) return;
        std::vector<std::size_t> hits(ncat, 0);
        for (const auto& doc : user.documents) {
            TokenStream ts = tokenize(doc.text, opts);
            for (std::size_t c = 0; c < ncat; ++c)
                if (match_category(ts.normalized_words,
                                   lexicon.categories[c].second))
                    ++hits[c];
        }
        for (std::size_t c = 0; c < ncat; ++c)
            prof.proportions[c] =
                static_cast<double>(hits[c]) / user.documents.size();
    });
    // users with zero documents are excluded
    std::vector<UserCategoryProfile> out;
    out.reserve(result.size());
    for (std::size_t i = 0; i < users.size(); ++i)
        if (!users[i].documents.empty()) out.push_back(std::move(result[i]));
    return out;
}

const std::array<const char*, kEmotionCount> kEmotionLabels = {
    "joy",  "sadness",  "anger",        "fear",     "disgust",
    "surprise", "trust", "anticipation", "positive", "negative"};

int emotion_index(const std::string& label) {
    for (std::size_t i = 0; i < kEmotionCount; ++i)
        if (label == kEmotionLabels[i]) return static_cast<int>(i);
    return -1;
}

std::uint16_t EmotionLexicon::lookup(const std::string& word) const {
    auto it = associations.find(word);
    return it == associations.end() ? 0 : it->second;
}

EmotionLexicon parse_emotion_lexicon(const std::string& content) {
    EmotionLexicon lex;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_tabs(line);
        if (cols.size() != 3)
            throw Error("emotion lexicon line " + std::to_string(line_no) +
                        ": expected 'word TAB label TAB 0/1'");
        int idx = emotion_index(cols[1]);
        if (idx < 0)
            throw Error("emotion lexicon line " + std::to_string(line_no) +
                        ": unknown label '" + cols[1] + "'");
        if (cols[2] != "0" && cols[2] != "1")
            throw Error("emotion lexicon line " + std::to_string(line_no) +
                        ": flag must be 0 or 1");
        auto& mask = lex.associations[to_lower_ascii(cols[0])];
        if (cols[2] == "1") mask |= static_cast<std::uint16_t>(1u << idx);
    }
    if (lex.associations.empty()) throw Error("emotion lexicon has no entries");
    return lex;
}

EmotionLexicon load_emotion_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open emotion lexicon: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_emotion_lexicon(buf.str());
}

std::vector<UserEmotionStats> emotion_document_stats(const Corpus& corpus,
                                                     const std::string& class_label,
                                                     const EmotionLexicon& lexicon,
                                                     const ScanOptions& opts) {
    const auto& users = corpus.cohort(class_label);
    std::vector<UserEmotionStats> result(users.size());
    parallel_for(users.size(), worker_threads(), [&](std::size_t i) {
        const auto& user = users[i];
        auto& st = result[i];
        st.user_id = user.user_id;
        st.class_label = class_label;
        st.document_count = user.documents.size();
        for (const auto& doc : user.documents) {
            TokenStream ts = tokenize(doc.text, opts);
            std::uint16_t doc_mask = 0;
            for (const auto& w : ts.normalized_words) doc_mask |= lexicon.lookup(w);
            for (std::size_t e = 0; e < kEmotionCount; ++e)
                if (doc_mask & (1u << e)) ++st.doc_counts[e];
        }
        if (st.document_count > 0)
            for (std::size_t e = 0; e < kEmotionCount; ++e)
                st.doc_fractions[e] =
                    static_cast<double>(st.doc_counts[e]) / st.document_count;
    });
    std::erase_if(result,
                  [](const UserEmotionStats& s) { return s.document_count == 0; });
    return result;
}

std::array<double, kEmotionCount> emotion_class_mean_counts(
    const std::vector<UserEmotionStats>& stats) {
    std::array<double, kEmotionCount> mean{};
    if (stats.empty()) return mean;
    for (const auto& s : stats)
        for (std::size_t e = 0; e < kEmotionCount; ++e)
            mean[e] += static_cast<double>(s.doc_counts[e]);
    for (auto& m : mean) m /= static_cast<double>(stats.size());
    return mean;
}

} // namespace psycholex
