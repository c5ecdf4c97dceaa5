#ifndef PSYCHOLEX_LEXICONS_HPP
#define PSYCHOLEX_LEXICONS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "psycholex/corpus.hpp"
#include "psycholex/textscan.hpp"

namespace psycholex {

/// A lexicon entry: a literal word or a prefix pattern written "stem*".
struct LexiconEntry {
    std::string value;   // literal word, or stem without the trailing '*'
    bool is_prefix = false;
};

class CategoryLexicon {
public:
    std::string name;
    // category -> entries, insertion-ordered for stable output
    std::vector<std::pair<std::string, std::vector<LexiconEntry>>> categories;

    std::vector<std::string> category_names() const;
    const std::vector<LexiconEntry>* find(const std::string& category) const;
    std::size_t warnings_deduplicated = 0;
};

/// Loads LIWC-style .dic (categories between '%' lines, then word TAB id...)
/// or two-column TSV "category TAB word". Format is sniffed from the first
/// non-empty line.
CategoryLexicon load_category_lexicon(const std::string& path,
                                      const std::string& name = "");
CategoryLexicon parse_category_lexicon(const std::string& content,
                                       const std::string& name);

bool match_category(const std::vector<std::string>& normalized_words,
                    const std::vector<LexiconEntry>& entries);

struct UserCategoryProfile {
    std::string user_id;
    std::string class_label;
    // parallel to the lexicon's category order
    std::vector<double> proportions;
};

std::vector<UserCategoryProfile> category_profiles(const Corpus& corpus,
                                                   const std::string& class_label,
                                                   const CategoryLexicon& lexicon,
                                                   const ScanOptions& opts = {});

inline constexpr std::size_t kEmotionCount = 10;
/// Plutchik's eight plus the two polarities, fixed order.
extern const std::array<const char*, kEmotionCount> kEmotionLabels;
int emotion_index(const std::string& label);  // -1 if unknown

class EmotionLexicon {
public:
    // word -> bitmask over kEmotionLabels
    std::unordered_map<std::string, std::uint16_t> associations;

    std::uint16_t lookup(const std::string& word) const;
};

/// NRC convention: word TAB label TAB 0/1, one association per line.
EmotionLexicon load_emotion_lexicon(const std::string& path);
EmotionLexicon parse_emotion_lexicon(const std::string& content);

struct UserEmotionStats {
    std::string user_id;
    std::string class_label;
    std::size_t document_count = 0;
    std::array<std::uint64_t, kEmotionCount> doc_counts{};  // docs with >=1 word of that emotion
    std::array<double, kEmotionCount> doc_fractions{};
};

std::vector<UserEmotionStats> emotion_document_stats(const Corpus& corpus,
                                                     const std::string& class_label,
                                                     const EmotionLexicon& lexicon,
                                                     const ScanOptions& opts = {});

/// Class-level mean of per-user document counts (the radar-chart value).
std::array<double, kEmotionCount> emotion_class_mean_counts(
    const std::vector<UserEmotionStats>& stats);

} // namespace psycholex

#endif
