#include "censorlab/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "censorlab/errors.hpp"
#include "censorlab/rng.hpp"
#include "censorlab/utf8.hpp"

namespace censorlab::synthetic {

void validate(const SyntheticSpec& spec) {
    if (spec.vocab_size == 0 || spec.vocab_size > 20000)
        throw ConfigError("vocab_size must lie in [1, 20000]");
    if (spec.sensitive_count > spec.vocab_size)
        throw ConfigError("sensitive_count cannot exceed vocab_size");
    if (spec.min_post_len == 0 || spec.min_post_len > spec.max_post_len)
        throw ConfigError("post length range is degenerate");
    if (spec.censor_prob_sensitive < 0 || spec.censor_prob_sensitive > 1 ||
        spec.censor_prob_background < 0 || spec.censor_prob_background > 1)
        throw ConfigError("censor probabilities must lie in [0, 1]");
}

std::string vocab_token(size_t index) {
    return utf8::encode(static_cast<char32_t>(0x4E00 + index));
}

corpus::Corpus generate(const SyntheticSpec& spec) {
    validate(spec);
    std::mt19937_64 gen(spec.seed);

    corpus::Corpus out;
    out.provenance.source = "synthetic";
    out.provenance.sample_seed = spec.seed;
    out.posts.reserve(spec.post_count);

    for (size_t i = 0; i < spec.post_count; ++i) {
        size_t len = spec.min_post_len +
                     static_cast<size_t>(rng::below(gen, spec.max_post_len - spec.min_post_len + 1));
        std::string text;
        bool has_sensitive = false;
        for (size_t t = 0; t < len; ++t) {
            size_t idx = static_cast<size_t>(rng::below(gen, spec.vocab_size));
            if (idx < spec.sensitive_count) has_sensitive = true;
            text += vocab_token(idx);
        }
        double p = has_sensitive ? spec.censor_prob_sensitive : spec.censor_prob_background;
        bool censored = rng::uniform01(gen) < p;

        corpus::Post post;
        char id[16];
        std::snprintf(id, sizeof(id), "s%08zu", i);
        post.id = id;
        post.text = std::move(text);
        post.censored = censored;
        out.posts.push_back(std::move(post));
    }
    return out;
}

segmenter::SegmentDictionary make_dictionary(const SyntheticSpec& spec) {
    validate(spec);
    segmenter::SegmentDictionary dict;
    for (size_t i = 0; i < spec.vocab_size; ++i) dict.entries.emplace(vocab_token(i), 100);
    dict.finalize();
    return dict;
}

double expected_censored_fraction(const SyntheticSpec& spec) {
    validate(spec);
    double p_bg_token =
        1.0 - static_cast<double>(spec.sensitive_count) / static_cast<double>(spec.vocab_size);
    double lengths = static_cast<double>(spec.max_post_len - spec.min_post_len + 1);
    double acc = 0.0;
    for (size_t len = spec.min_post_len; len <= spec.max_post_len; ++len) {
        double p_no_sensitive = std::pow(p_bg_token, static_cast<double>(len));
        acc += (1.0 - p_no_sensitive) * spec.censor_prob_sensitive +
               p_no_sensitive * spec.censor_prob_background;
    }
    return acc / lengths;
}

}  // namespace censorlab::synthetic
