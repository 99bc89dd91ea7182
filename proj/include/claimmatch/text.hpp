#pragma once

#include <cctype>
#include <string>
#include <unordered_set>
#include <vector>

#include "claimmatch/util.hpp"

namespace claimmatch {

namespace detail {

inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Words that end in a period without terminating a sentence.
inline const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> abbr = {
        "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc",
        "e.g", "i.e", "cf", "al", "fig", "eq", "dept", "inc", "ltd", "co",
        "approx", "est", "resp", "ca",
    };
    return abbr;
}

// The word immediately preceding position `end` (letters and internal dots).
inline std::string word_before(const std::string& s, size_t end) {
    size_t b = end;
    while (b > 0) {
        char c = s[b - 1];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '.')
            --b;
        else
            break;
    }
    std::string w = s.substr(b, end - b);
    while (!w.empty() && w.back() == '.') w.pop_back();
    while (!w.empty() && w.front() == '.') w.erase(w.begin());
    return lowercase_ascii(w);
}

}  // namespace detail

// Rule-based sentence segmentation: split after a run of .?! followed by
// whitespace and an uppercase letter, unless the preceding word is a known
// abbreviation. Joining the segments reproduces the input up to whitespace.
inline std::vector<std::string> segment_sentences(const std::string& text) {
    using namespace detail;
    std::vector<std::string> out;
    size_t start = 0;
    size_t i = 0;
    const size_t n = text.size();
    auto flush = [&](size_t end) {
        std::string seg = trim(text.substr(start, end - start));
        if (!seg.empty()) out.push_back(seg);
        start = end;
    };
    while (i < n) {
        char c = text[i];
        if (c == '.' || c == '?' || c == '!') {
            size_t run_begin = i;
            while (i < n && (text[i] == '.' || text[i] == '?' || text[i] == '!')) ++i;
            size_t j = i;
            while (j < n && is_space(text[j])) ++j;
            bool boundary = j > i && j < n && is_upper(text[j]);
            if (boundary && text[run_begin] == '.' && i - run_begin == 1 &&
                abbreviations().count(word_before(text, run_begin)))
                boundary = false;
            if (boundary) flush(i);
        } else {
            ++i;
        }
    }
    flush(n);
    return out;
}

// Lowercases and splits on whitespace and punctuation; hyphens between
// alphanumeric characters are kept inside the token.
inline std::vector<std::string> tokenize(const std::string& text) {
    using namespace detail;
    std::vector<std::string> out;
    std::string cur;
    const size_t n = text.size();
    for (size_t i = 0; i < n; ++i) {
        char c = text[i];
        if (is_alnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (c == '-' && !cur.empty() && i + 1 < n && is_alnum(text[i + 1])) {
            cur.push_back('-');
        } else {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace claimmatch
