#pragma once

#include <cstdint>
#include <string>

#include "censorlab/corpus.hpp"
#include "censorlab/segmenter.hpp"

namespace censorlab::synthetic {

// Desk-scale stand-in for a scraped blog corpus: uniform token draws over
// a CJK-rendered vocabulary, with censorship driven by a sensitive-token
// subset.
struct SyntheticSpec {
    size_t vocab_size = 1000;
    size_t sensitive_count = 50;
    size_t min_post_len = 3;
    size_t max_post_len = 10;
    double censor_prob_sensitive = 0.9;   // P(censored | post has a sensitive token)
    double censor_prob_background = 0.02; // P(censored | no sensitive token)
    size_t post_count = 10000;
    uint64_t seed = 42;
};

void validate(const SyntheticSpec& spec);

// Vocabulary index -> single CJK character (U+4E00 onward); indices
// [0, sensitive_count) are the sensitive tokens.
std::string vocab_token(size_t index);

// Posts draw a length uniformly in [min, max], then tokens uniformly with
// replacement; text is the concatenation (no separators), so the
// segmentation path gets exercised end to end.
corpus::Corpus generate(const SyntheticSpec& spec);

// Single-character dictionary covering the vocabulary.
segmenter::SegmentDictionary make_dictionary(const SyntheticSpec& spec);

// Analytic E[censored fraction] under the spec, for sanity bounds.
double expected_censored_fraction(const SyntheticSpec& spec);

}  // namespace censorlab::synthetic
