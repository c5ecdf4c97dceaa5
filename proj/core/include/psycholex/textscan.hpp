#ifndef PSYCHOLEX_TEXTSCAN_HPP
#define PSYCHOLEX_TEXTSCAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "psycholex/corpus.hpp"

namespace psycholex {

enum class TokenKind {
    word,
    hashtag,
    mention,
    url,
    emoji,
    ascii_emoticon,
    number,
    punctuation
};

const char* to_string(TokenKind k);

struct Token {
    std::string surface;
    TokenKind kind = TokenKind::word;
    std::size_t offset = 0;   // byte offset into the source text
};

struct TokenStream {
    std::vector<Token> tokens;

    /// Lowercased NFC word tokens; hashtag/mention forms appear with the
    /// sigil stripped when include_sigiled is set on the scanner.
    std::vector<std::string> normalized_words;

    std::size_t count(TokenKind k) const;
};

/// Per-document engagement markers.
struct MarkerProfile {
    std::uint32_t mentions = 0;
    std::uint32_t hashtags = 0;
    std::uint32_t all_caps = 0;
    std::uint32_t ascii_emoticons = 0;
    std::uint32_t emojis = 0;
    std::uint32_t emphasis = 0;
    std::uint32_t censored = 0;
    std::uint32_t repeated_words = 0;
    bool retweet = false;             // twitter only
    bool submission_is_comment = false; // reddit only
    double hashtag_ratio = 0.0;       // hashtag tokens / non-punctuation tokens
    double mention_ratio = 0.0;
};

/// Fixed emoticon pattern list, matched before word segmentation.
/// Patterns are matched longest-first at each position.
class EmoticonSet {
public:
    EmoticonSet() = default;
    static EmoticonSet builtin();
    static EmoticonSet load(const std::string& path);

    void add(const std::string& pattern);
    /// Longest pattern matching text at pos, or 0.
    std::size_t match_at(const std::string& text, std::size_t pos) const;
    std::size_t size() const { return patterns_.size(); }

private:
    std::vector<std::string> patterns_;  // kept sorted by descending length
};

struct ScanOptions {
    const EmoticonSet* emoticons = nullptr;  // nullptr -> builtin list
    bool sigiled_words_in_vocab = true;  // hashtags/mentions contribute sigil-stripped words
};

TokenStream tokenize(const std::string& text, const ScanOptions& opts = {});

MarkerProfile scan_markers(const Document& doc, const ScanOptions& opts = {});
MarkerProfile scan_markers(const TokenStream& ts, const Document& doc);

} // namespace psycholex

#endif
