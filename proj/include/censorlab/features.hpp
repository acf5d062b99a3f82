#pragma once

#include <string>
#include <vector>

#include "censorlab/lexicon.hpp"

namespace censorlab::features {

// Per-token censorship probabilities, multiplicity preserved and aligned
// with the token sequence.
using ProbVector = std::vector<double>;

enum class ModelKind { kMax, kTopK, kNorm, kCosine };

constexpr size_t kTopKLength = 8;

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);
size_t feature_dim(ModelKind kind);

struct FeatureRow {
    std::vector<double> features;
    bool label = false;
};

ProbVector prob_vector(const std::vector<std::string>& tokens, const lexicon::CensorLexicon& lex);

// Largest per-word probability; [0.0] for empty input.
std::vector<double> feat_max(const ProbVector& pv);

// Probabilities sorted descending, truncated/zero-padded to length k.
std::vector<double> feat_topk(const ProbVector& pv, size_t k = kTopKLength);

// Euclidean norm of the probability vector.
std::vector<double> feat_norm(const ProbVector& pv);

// Cosine similarity against the all-ones vector of matching length;
// [0.0] for empty or all-zero input.
std::vector<double> feat_cosine_ones(const ProbVector& pv);

std::vector<double> extract(ModelKind kind, const ProbVector& pv);

}  // namespace censorlab::features
