#include "psycholex/textscan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace psycholex {

const char* to_string(TokenKind k) {
    switch (k) {
        case TokenKind::word: return "word";
        case TokenKind::hashtag: return "hashtag";
        case TokenKind::mention: return "mention";
        case TokenKind::url: return "url";
        case TokenKind::emoji: return "emoji";
        case TokenKind::ascii_emoticon: return "ascii_emoticon";
        case TokenKind::number: return "number";
        default: return "punctuation";
    }
}

std::size_t TokenStream::count(TokenKind k) const {
    return static_cast<std::size_t>(
        std::count_if(tokens.begin(), tokens.end(),
                      [k](const Token& t) { return t.kind == k; }));
}

namespace {

// Patterns are matched before word segmentation, longest-first.
const char* kBuiltinEmoticons[] = {
    ":)", ":-)", ":))", ":(", ":-(", ":D", ":-D", ":P", ":-P", ":p", ":-p",
    ":O", ":-O", ":o", ":-o", ":|", ":-|", ":/", ":-/", ":\\", ":-\\",
    ":*", ":-*", ":$", ":-$", ":@", ":-@", ":s", ":-s", ":S", ":-S",
    ";)", ";-)", ";D", ";-D", ";P", ";-P", ";p",
    "=)", "=(", "=D", "=P", "=/", "=\\", "=|",
    "8)", "8-)", "8D", "8-D",
    "B)", "B-)",
    "D:", "D-:", "D8",
    ">:(", ">:-(", ">:)", ">:-)", ">:O", ">:/",
    "<3", "</3",
    "^^", "^_^", "^-^", "-_-", "o_O", "O_o", "o_o", "O_O",
    "T_T", "T.T", ";_;", ":'(", ":'-(", ":')",
    "xD", "XD", "xP", "XP",
    "\\o/", "\\m/", "o/",
};

bool is_ascii_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9');
}

// UTF-8 decode; returns codepoint and advances len. Invalid bytes decode as
// themselves (latin-1 fallback) so the scan always makes progress.
std::uint32_t decode_utf8(const std::string& s, std::size_t i, std::size_t& len) {
    const unsigned char c = s[i];
    if (c < 0x80) {
        len = 1;
        return c;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((c & 0xE0) == 0xC0 && cont(1)) {
        const std::uint32_t cp = ((c & 0x1Fu) << 6) | (s[i + 1] & 0x3Fu);
        if (cp >= 0x80) {  // reject overlong forms
            len = 2;
            return cp;
        }
    }
    if ((c & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        const std::uint32_t cp = ((c & 0x0Fu) << 12) |
                                 ((s[i + 1] & 0x3Fu) << 6) | (s[i + 2] & 0x3Fu);
        if (cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF)) {
            len = 3;
            return cp;
        }
    }
    if ((c & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        const std::uint32_t cp = ((c & 0x07u) << 18) |
                                 ((s[i + 1] & 0x3Fu) << 12) |
                                 ((s[i + 2] & 0x3Fu) << 6) | (s[i + 3] & 0x3Fu);
        if (cp >= 0x10000 && cp <= 0x10FFFF) {
            len = 4;
            return cp;
        }
    }
    len = 1;
    return c;
}

bool is_space_cp(std::uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' ||
           cp == '\f' || cp == 0xA0 || (cp >= 0x2000 && cp <= 0x200A) ||
           cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
           cp == 0x3000;
}

bool is_emoji_cp(std::uint32_t cp) {
    return (cp >= 0x1F300 && cp <= 0x1F5FF) ||   // Misc Symbols & Pictographs
           (cp >= 0x1F600 && cp <= 0x1F64F) ||   // Emoticons
           (cp >= 0x1F680 && cp <= 0x1F6FF) ||   // Transport & Map
           (cp >= 0x1F900 && cp <= 0x1F9FF) ||   // Supplemental Symbols
           (cp >= 0x2600 && cp <= 0x27BF);       // Misc Symbols / Dingbats
}

bool is_emoji_extension_cp(std::uint32_t cp) {
    return cp == 0x200D ||                        // ZWJ
           cp == 0xFE0F || cp == 0xFE0E ||        // variation selectors
           (cp >= 0x1F3FB && cp <= 0x1F3FF);      // skin tone modifiers
}

bool is_letter_cp(std::uint32_t cp) {
    if (cp < 0x80)
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (cp >= 0xC0 && cp <= 0x2AF) return cp != 0xD7 && cp != 0xF7;
    if (cp >= 0x370 && cp <= 0x1FFF) return true;   // Greek, Cyrillic, ...
    if (cp >= 0x2C00 && cp <= 0xD7FF) return !is_emoji_cp(cp);
    if (cp >= 0xF900 && cp <= 0xFDCF) return true;
    if (cp >= 0xFE70 && cp <= 0xFEFC) return true;
    if (cp >= 0x10000 && cp <= 0x2FA1F) return !is_emoji_cp(cp);
    return false;
}

bool is_digit_cp(std::uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_word_cp(std::uint32_t cp) {
    return is_letter_cp(cp) || is_digit_cp(cp) || cp == '_' || cp == '\'' ||
           cp == '*';
}

bool starts_with_ci(const std::string& s, std::size_t pos, const char* prefix) {
    for (std::size_t k = 0; prefix[k]; ++k) {
        if (pos + k >= s.size()) return false;
        if (std::tolower(static_cast<unsigned char>(s[pos + k])) != prefix[k])
            return false;
    }
    return true;
}

void append_lower_cp(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
        return;
    }
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) cp += 0x20;  // Latin-1 capitals
    else if (cp >= 0x100 && cp <= 0x17F && (cp & 1) == 0) cp += 1;  // Latin Ext-A pairs
    else if (cp >= 0x410 && cp <= 0x42F) cp += 0x20;  // Cyrillic
    else if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) cp += 0x20;  // Greek
    // encode back to UTF-8
    if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string normalize_word(const std::string& surface) {
    // strip wrapping/leading/trailing asterisks, keep interior ones
    std::size_t b = 0, e = surface.size();
    while (b < e && surface[b] == '*') ++b;
    while (e > b && surface[e - 1] == '*') --e;
    std::string out;
    out.reserve(e - b);
    std::size_t i = b;
    while (i < e) {
        std::size_t len;
        std::uint32_t cp = decode_utf8(surface, i, len);
        append_lower_cp(out, cp);
        i += len;
    }
    return out;
}

} // namespace

EmoticonSet EmoticonSet::builtin() {
    EmoticonSet set;
    for (const char* p : kBuiltinEmoticons) set.add(p);
    return set;
}

EmoticonSet EmoticonSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open emoticon file: " + path);
    EmoticonSet set;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (!line.empty() && line[0] != '#') set.add(line);
    }
    return set;
}

void EmoticonSet::add(const std::string& pattern) {
    patterns_.push_back(pattern);
    std::sort(patterns_.begin(), patterns_.end(),
              [](const std::string& a, const std::string& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
}

std::size_t EmoticonSet::match_at(const std::string& text, std::size_t pos) const {
    for (const auto& p : patterns_) {
        if (text.compare(pos, p.size(), p) == 0) {
            // a pattern ending in a letter/digit must not run into a word
            if (is_ascii_alnum(p.back()) && pos + p.size() < text.size() &&
                is_ascii_alnum(text[pos + p.size()]))
                continue;
            return p.size();
        }
    }
    return 0;
}

TokenStream tokenize(const std::string& text, const ScanOptions& opts) {
    static const EmoticonSet default_emoticons = EmoticonSet::builtin();
    const EmoticonSet& emoticons = opts.emoticons ? *opts.emoticons : default_emoticons;

    TokenStream ts;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto push = [&](std::size_t begin, std::size_t end, TokenKind kind) {
        ts.tokens.push_back({text.substr(begin, end - begin), kind, begin});
    };

    while (i < n) {
        std::size_t len;
        std::uint32_t cp = decode_utf8(text, i, len);
        if (is_space_cp(cp)) {
            i += len;
            continue;
        }

        // URLs: scheme prefix, consume to whitespace
        if (starts_with_ci(text, i, "http://") || starts_with_ci(text, i, "https://")) {
            std::size_t j = i;
            while (j < n) {
                std::size_t l2;
                std::uint32_t c2 = decode_utf8(text, j, l2);
                if (is_space_cp(c2)) break;
                j += l2;
            }
            push(i, j, TokenKind::url);
            i = j;
            continue;
        }

        if (std::size_t m = emoticons.match_at(text, i); m > 0) {
            push(i, i + m, TokenKind::ascii_emoticon);
            i += m;
            continue;
        }

        // mention: @ then [A-Za-z0-9_]+
        if (cp == '@' && i + 1 < n &&
            (is_ascii_alnum(text[i + 1]) || text[i + 1] == '_')) {
            std::size_t j = i + 1;
            while (j < n && (is_ascii_alnum(text[j]) || text[j] == '_')) ++j;
            push(i, j, TokenKind::mention);
            if (opts.sigiled_words_in_vocab)
                ts.normalized_words.push_back(
                    normalize_word(text.substr(i + 1, j - i - 1)));
            i = j;
            continue;
        }

        // hashtag: # then letter/underscore then letters/digits/underscore
        if (cp == '#' && i + 1 < n) {
            std::size_t l2;
            std::uint32_t c2 = decode_utf8(text, i + 1, l2);
            if (is_letter_cp(c2) || c2 == '_') {
                std::size_t j = i + 1;
                while (j < n) {
                    std::size_t l3;
                    std::uint32_t c3 = decode_utf8(text, j, l3);
                    if (!(is_letter_cp(c3) || is_digit_cp(c3) || c3 == '_')) break;
                    j += l3;
                }
                push(i, j, TokenKind::hashtag);
                if (opts.sigiled_words_in_vocab)
                    ts.normalized_words.push_back(
                        normalize_word(text.substr(i + 1, j - i - 1)));
                i = j;
                continue;
            }
        }

        if (is_emoji_cp(cp)) {
            std::size_t j = i + len;
            while (j < n) {
                std::size_t l2;
                std::uint32_t c2 = decode_utf8(text, j, l2);
                if (is_emoji_extension_cp(c2)) {
                    j += l2;
                    // a ZWJ must be followed by another emoji codepoint
                    if (c2 == 0x200D && j < n) {
                        std::size_t l3;
                        std::uint32_t c3 = decode_utf8(text, j, l3);
                        if (is_emoji_cp(c3)) j += l3;
                    }
                } else if (is_emoji_cp(c2)) {
                    break;  // adjacent emoji are separate tokens
                } else {
                    break;
                }
            }
            push(i, j, TokenKind::emoji);
            i = j;
            continue;
        }

        if (is_digit_cp(cp)) {
            std::size_t j = i;
            while (j < n && is_digit_cp(static_cast<unsigned char>(text[j]))) ++j;
            // decimal/thousands separators between digit runs
            while (j + 1 < n && (text[j] == '.' || text[j] == ',') &&
                   is_digit_cp(static_cast<unsigned char>(text[j + 1]))) {
                ++j;
                while (j < n && is_digit_cp(static_cast<unsigned char>(text[j]))) ++j;
            }
            push(i, j, TokenKind::number);
            i = j;
            continue;
        }

        if (is_word_cp(cp)) {
            std::size_t j = i;
            bool has_letter_or_digit = false;
            while (j < n) {
                std::size_t l2;
                std::uint32_t c2 = decode_utf8(text, j, l2);
                if (!is_word_cp(c2) || is_emoji_cp(c2)) break;
                if (is_letter_cp(c2) || is_digit_cp(c2)) has_letter_or_digit = true;
                j += l2;
            }
            if (has_letter_or_digit) {
                push(i, j, TokenKind::word);
                std::string norm = normalize_word(text.substr(i, j - i));
                if (!norm.empty()) ts.normalized_words.push_back(std::move(norm));
                i = j;
                continue;
            }
            // pure sigil run (e.g. "***"): fall through as punctuation
            push(i, j, TokenKind::punctuation);
            i = j;
            continue;
        }

        // punctuation: run of the identical codepoint
        std::size_t j = i + len;
        while (j < n) {
            std::size_t l2;
            std::uint32_t c2 = decode_utf8(text, j, l2);
            if (c2 != cp) break;
            j += l2;
        }
        push(i, j, TokenKind::punctuation);
        i = j;
    }
    return ts;
}

namespace {

bool is_all_caps(const std::string& surface) {
    // alphabetic token, >= 2 letters, every letter an ASCII capital
    std::size_t letters = 0;
    for (char c : surface) {
        if (c >= 'A' && c <= 'Z') {
            ++letters;
        } else if (c == '\'') {
            continue;  // allow "DON'T"
        } else {
            return false;
        }
    }
    return letters >= 2;
}

bool is_emphasis(const std::string& s) {
    // wrapped in a single pair of asterisks, no interior asterisk
    if (s.size() < 3 || s.front() != '*' || s.back() != '*') return false;
    return s.find('*', 1) == s.size() - 1;
}

bool is_censored(const std::string& s) {
    // letters around >= 2 consecutive interior asterisks
    auto pos = s.find("**");
    if (pos == std::string::npos || pos == 0) return false;
    std::size_t end = pos;
    while (end < s.size() && s[end] == '*') ++end;
    if (end >= s.size()) return false;
    auto is_alpha = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    };
    return is_alpha(s[pos - 1]) && is_alpha(s[end]);
}

} // namespace

MarkerProfile scan_markers(const TokenStream& ts, const Document& doc) {
    MarkerProfile mp;
    mp.mentions = static_cast<std::uint32_t>(ts.count(TokenKind::mention));
    mp.hashtags = static_cast<std::uint32_t>(ts.count(TokenKind::hashtag));
    mp.emojis = static_cast<std::uint32_t>(ts.count(TokenKind::emoji));
    mp.ascii_emoticons =
        static_cast<std::uint32_t>(ts.count(TokenKind::ascii_emoticon));

    std::string prev_norm;
    std::size_t run = 1;
    for (const auto& tok : ts.tokens) {
        if (tok.kind != TokenKind::word) continue;
        if (is_all_caps(tok.surface)) ++mp.all_caps;
        if (is_emphasis(tok.surface)) ++mp.emphasis;
        if (is_censored(tok.surface)) ++mp.censored;
        std::string norm = normalize_word(tok.surface);
        if (!norm.empty() && norm == prev_norm) {
            ++run;
            if (run == 2) ++mp.repeated_words;  // count each run once
        } else {
            run = 1;
        }
        prev_norm = std::move(norm);
    }

    if (doc.platform == Platform::twitter && !ts.tokens.empty() &&
        ts.tokens.front().kind == TokenKind::word &&
        ts.tokens.front().surface == "RT")
        mp.retweet = true;
    if (doc.platform == Platform::reddit && doc.submission_type &&
        *doc.submission_type == SubmissionType::comment)
        mp.submission_is_comment = true;

    // ratios are over content tokens; punctuation does not count
    const std::size_t total = ts.tokens.size() - ts.count(TokenKind::punctuation);
    if (total > 0) {
        mp.hashtag_ratio = static_cast<double>(mp.hashtags) / total;
        mp.mention_ratio = static_cast<double>(mp.mentions) / total;
    }
    return mp;
}

MarkerProfile scan_markers(const Document& doc, const ScanOptions& opts) {
    return scan_markers(tokenize(doc.text, opts), doc);
}

} // namespace psycholex
