#include "censorlab/features.hpp"

#include <algorithm>
#include <cmath>

#include "censorlab/errors.hpp"

namespace censorlab::features {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::kMax: return "max";
        case ModelKind::kTopK: return "topk";
        case ModelKind::kNorm: return "norm";
        case ModelKind::kCosine: return "cosine";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "max") return ModelKind::kMax;
    if (name == "topk") return ModelKind::kTopK;
    if (name == "norm") return ModelKind::kNorm;
    if (name == "cosine") return ModelKind::kCosine;
    throw ConfigError("unknown model kind: " + name);
}

size_t feature_dim(ModelKind kind) {
    return kind == ModelKind::kTopK ? kTopKLength : 1;
}

ProbVector prob_vector(const std::vector<std::string>& tokens, const lexicon::CensorLexicon& lex) {
    ProbVector pv;
    pv.reserve(tokens.size());
    for (const auto& token : tokens) pv.push_back(lexicon::probability(lex, token));
    return pv;
}

std::vector<double> feat_max(const ProbVector& pv) {
    if (pv.empty()) return {0.0};
    return {*std::max_element(pv.begin(), pv.end())};
}

std::vector<double> feat_topk(const ProbVector& pv, size_t k) {
    std::vector<double> sorted(pv);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    sorted.resize(k, 0.0);
    return sorted;
}

std::vector<double> feat_norm(const ProbVector& pv) {
    double sumsq = 0.0;
    for (double p : pv) sumsq += p * p;
    return {std::sqrt(sumsq)};
}

std::vector<double> feat_cosine_ones(const ProbVector& pv) {
    if (pv.empty()) return {0.0};
    double sum = 0.0;
    double sumsq = 0.0;
    for (double p : pv) {
        sum += p;
        sumsq += p * p;
    }
    if (sumsq == 0.0) return {0.0};
    double n = static_cast<double>(pv.size());
    return {sum / (std::sqrt(sumsq) * std::sqrt(n))};
}

std::vector<double> extract(ModelKind kind, const ProbVector& pv) {
    switch (kind) {
        case ModelKind::kMax: return feat_max(pv);
        case ModelKind::kTopK: return feat_topk(pv);
        case ModelKind::kNorm: return feat_norm(pv);
        case ModelKind::kCosine: return feat_cosine_ones(pv);
    }
    throw DataError("unreachable model kind");
}

}  // namespace censorlab::features
