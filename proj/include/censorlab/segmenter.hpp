#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace censorlab::segmenter {

struct SegmentDictionary {
    std::unordered_map<std::string, uint64_t> entries;
    uint64_t total = 0;
    size_t max_word_len = 0;  // longest entry in code points; 0 = not yet computed

    void finalize();  // recomputes total and max_word_len from entries
};

struct TokenizedPost {
    std::string id;
    std::vector<std::string> tokens;
    bool censored = false;
};

struct DictionaryLoadResult {
    SegmentDictionary dict;
    size_t malformed_lines = 0;
};

using StopwordSet = std::unordered_set<std::string>;

// CJK code point ranges used by has_chinese(); CJK Unified Ideographs
// plus Extension A by default.
struct CjkRanges {
    std::vector<std::pair<char32_t, char32_t>> ranges = {{0x4E00, 0x9FFF}, {0x3400, 0x4DBF}};
    bool contains(char32_t cp) const {
        for (auto [lo, hi] : ranges)
            if (cp >= lo && cp <= hi) return true;
        return false;
    }
};

// Dictionary file: one `word<TAB>frequency` line per entry, UTF-8.
// Duplicate words keep the larger frequency. An empty dictionary is an error.
DictionaryLoadResult load_dictionary(const std::string& path);

void save_dictionary(const SegmentDictionary& dict, const std::string& path);

// Stopword file: one token per line. Missing file is an error; empty set is fine.
StopwordSet load_stopwords(const std::string& path);

// Dictionary segmentation: a DAG of dictionary words starting at each code
// point (plus single-character fallback edges, pseudo-frequency 1 when
// out-of-dictionary), resolved by the max-sum-of-log-relative-frequency
// path. Ties prefer fewer tokens, then the lexicographically earlier
// token sequence. Concatenating the output reproduces the input.
std::vector<std::string> segment(const std::string& text, const SegmentDictionary& dict);

// Drops @mention and http(s) URL runs from raw text before segmentation.
std::string strip_noise(const std::string& text);

// Removes stopwords, tokens without a CJK character, and mention/URL
// fragments. Order preserved; idempotent.
std::vector<std::string> clean(const std::vector<std::string>& tokens,
                               const StopwordSet& stopwords,
                               const CjkRanges& cjk = CjkRanges{});

bool has_chinese(const std::string& text, const CjkRanges& cjk = CjkRanges{});

}  // namespace censorlab::segmenter
