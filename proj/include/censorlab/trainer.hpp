#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "censorlab/features.hpp"

namespace censorlab::trainer {

struct Hyperparams {
    double learning_rate = 0.1;
    size_t max_epochs = 1000;
    double tolerance = 1e-8;
    double l2 = 0.0;
    uint64_t seed = 0;  // unused by the deterministic full-batch trainer
};

struct ClassWeights {
    double w_pos = 1.0;
    double w_neg = 1.0;
    double weight(bool label) const { return label ? w_pos : w_neg; }
};

struct LogRegModel {
    std::vector<double> weights;
    double bias = 0.0;
    features::ModelKind model_kind = features::ModelKind::kMax;
    Hyperparams hyper;
    std::vector<double> train_loss_trace;
};

// Balanced weighting: w_c = N / (2 * N_c), so both classes contribute
// equally to the loss. Requires both classes present.
ClassWeights class_weights(const std::vector<bool>& labels);

// Numerically stable logistic: never overflows, never returns exact 0/1
// for finite input.
double sigmoid(double z);

// Mean class-weighted binary cross-entropy; scores clamped to
// [1e-12, 1 - 1e-12] before the logs.
double weighted_bce(const std::vector<double>& scores, const std::vector<bool>& labels,
                    const ClassWeights& cw);

// Gradient of the weighted BCE + (l2/2)*||w||^2 objective at the model's
// current parameters. Layout: one slot per weight, bias last.
std::vector<double> gradient(const LogRegModel& model,
                             const std::vector<features::FeatureRow>& rows,
                             const ClassWeights& cw);

// Full-batch gradient descent from zero initialization; stops at
// max_epochs or when the epoch-to-epoch loss delta drops below tolerance.
LogRegModel fit(const std::vector<features::FeatureRow>& rows, const Hyperparams& hyper,
                features::ModelKind kind = features::ModelKind::kMax);

double predict_proba(const LogRegModel& model, const std::vector<double>& features);

// JSON persistence; config_hash travels in the provenance block.
void save(const LogRegModel& model, const std::string& path, const std::string& config_hash);
LogRegModel load(const std::string& path, std::string* config_hash = nullptr);

}  // namespace censorlab::trainer
