#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "censorlab/segmenter.hpp"

namespace censorlab::lexicon {

struct WordStats {
    uint64_t total = 0;     // n(w): occurrences across all posts
    uint64_t censored = 0;  // c(w): occurrences within censored posts
    bool operator==(const WordStats&) const = default;
};

struct CensorLexicon {
    // Ordered map keeps every persisted and reported view deterministic.
    std::map<std::string, WordStats> stats;
    std::string built_from;
};

// Occurrence counting with multiplicity: a word repeated inside one post
// counts once per occurrence.
CensorLexicon build(const std::vector<segmenter::TokenizedPost>& posts);

// Field-wise sum; merging shard lexica equals building on the concatenation.
CensorLexicon merge(const CensorLexicon& a, const CensorLexicon& b);

// c(w)/n(w), or 0.0 for unseen words (no smoothing).
double probability(const CensorLexicon& lex, const std::string& word);

// Top words by censored-occurrence count, ties broken by word ascending.
std::vector<std::pair<std::string, uint64_t>> top_by_count(const CensorLexicon& lex, size_t k);

// Top words by censorship probability among words with n(w) >= min_count;
// ties by n(w) descending then word ascending.
std::vector<std::pair<std::string, double>> top_by_probability(const CensorLexicon& lex, size_t k,
                                                               uint64_t min_count);

// TSV persistence: `word<TAB>total<TAB>censored`, sorted by word.
void save(const CensorLexicon& lex, const std::string& path);
CensorLexicon load(const std::string& path);

}  // namespace censorlab::lexicon
