#include "censorlab/trainer.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "censorlab/errors.hpp"

namespace censorlab::trainer {

namespace {

constexpr double kScoreClamp = 1e-12;

double clamp_score(double s) {
    if (s < kScoreClamp) return kScoreClamp;
    if (s > 1.0 - kScoreClamp) return 1.0 - kScoreClamp;
    return s;
}

void validate_rows(const std::vector<features::FeatureRow>& rows) {
    if (rows.size() < 2) throw DataError("training needs at least 2 rows");
    size_t dim = rows.front().features.size();
    bool has_pos = false;
    bool has_neg = false;
    for (const auto& row : rows) {
        if (row.features.size() != dim)
            throw DataError("inconsistent feature dimension in training data");
        for (double v : row.features)
            if (!std::isfinite(v)) throw DataError("non-finite feature value in training data");
        (row.label ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) throw DataError("training data holds a single class");
}

}  // namespace

ClassWeights class_weights(const std::vector<bool>& labels) {
    size_t n_pos = 0;
    for (bool y : labels)
        if (y) ++n_pos;
    size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) throw DataError("class weights need both classes present");
    double n = static_cast<double>(labels.size());
    return {n / (2.0 * static_cast<double>(n_pos)), n / (2.0 * static_cast<double>(n_neg))};
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

double weighted_bce(const std::vector<double>& scores, const std::vector<bool>& labels,
                    const ClassWeights& cw) {
    if (scores.size() != labels.size())
        throw DataError("score/label length mismatch in BCE");
    double sum = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
        double s = clamp_score(scores[i]);
        double term = labels[i] ? -std::log(s) : -std::log(1.0 - s);
        sum += cw.weight(labels[i]) * term;
    }
    return sum / static_cast<double>(scores.size());
}

std::vector<double> gradient(const LogRegModel& model,
                             const std::vector<features::FeatureRow>& rows,
                             const ClassWeights& cw) {
    validate_rows(rows);
    size_t dim = rows.front().features.size();
    if (model.weights.size() != dim)
        throw DataError("model/feature dimension mismatch in gradient");

    std::vector<double> grad(dim + 1, 0.0);
    for (const auto& row : rows) {
        double z = model.bias;
        for (size_t j = 0; j < dim; ++j) z += model.weights[j] * row.features[j];
        double s = clamp_score(sigmoid(z));
        double y = row.label ? 1.0 : 0.0;
        // d/ds of the clamped BCE times ds/dz; equals w*(s - y) away from
        // the clamp boundary, which the finite-difference oracle also sees.
        double residual = cw.weight(row.label) * (s - y);
        for (size_t j = 0; j < dim; ++j) grad[j] += residual * row.features[j];
        grad[dim] += residual;
    }
    double n = static_cast<double>(rows.size());
    for (double& g : grad) g /= n;
    for (size_t j = 0; j < dim; ++j) grad[j] += model.hyper.l2 * model.weights[j];
    return grad;
}

LogRegModel fit(const std::vector<features::FeatureRow>& rows, const Hyperparams& hyper,
                features::ModelKind kind) {
    validate_rows(rows);
    if (hyper.learning_rate <= 0 || hyper.max_epochs == 0 || hyper.tolerance <= 0 || hyper.l2 < 0)
        throw ConfigError("invalid hyperparameters");

    size_t dim = rows.front().features.size();
    LogRegModel model;
    model.model_kind = kind;
    model.hyper = hyper;
    model.weights.assign(dim, 0.0);
    model.bias = 0.0;

    std::vector<bool> labels;
    labels.reserve(rows.size());
    for (const auto& row : rows) labels.push_back(row.label);
    ClassWeights cw = class_weights(labels);

    std::vector<double> scores(rows.size());
    double prev_loss = 0.0;
    for (size_t epoch = 0; epoch < hyper.max_epochs; ++epoch) {
        for (size_t i = 0; i < rows.size(); ++i) {
            double z = model.bias;
            for (size_t j = 0; j < dim; ++j) z += model.weights[j] * rows[i].features[j];
            scores[i] = sigmoid(z);
        }
        double reg = 0.0;
        for (double w : model.weights) reg += w * w;
        double loss = weighted_bce(scores, labels, cw) + 0.5 * hyper.l2 * reg;
        model.train_loss_trace.push_back(loss);

        if (epoch > 0 && std::abs(loss - prev_loss) < hyper.tolerance) break;
        prev_loss = loss;

        std::vector<double> grad = gradient(model, rows, cw);
        for (size_t j = 0; j < dim; ++j) model.weights[j] -= hyper.learning_rate * grad[j];
        model.bias -= hyper.learning_rate * grad[dim];
    }
    return model;
}

double predict_proba(const LogRegModel& model, const std::vector<double>& features) {
    if (features.size() != model.weights.size())
        throw DataError("feature dimension mismatch in predict_proba");
    double z = model.bias;
    for (size_t j = 0; j < features.size(); ++j) z += model.weights[j] * features[j];
    return sigmoid(z);
}

void save(const LogRegModel& model, const std::string& path, const std::string& config_hash) {
    nlohmann::ordered_json doc;
    doc["model_kind"] = features::to_string(model.model_kind);
    doc["weights"] = model.weights;
    doc["bias"] = model.bias;
    doc["hyperparameters"] = {{"learning_rate", model.hyper.learning_rate},
                              {"max_epochs", model.hyper.max_epochs},
                              {"tolerance", model.hyper.tolerance},
                              {"l2", model.hyper.l2},
                              {"seed", model.hyper.seed}};
    doc["final_loss"] =
        model.train_loss_trace.empty() ? 0.0 : model.train_loss_trace.back();
    doc["epochs_run"] = model.train_loss_trace.size();
    doc["provenance"] = {{"config_hash", config_hash}};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

LogRegModel load(const std::string& path, std::string* config_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed model file " + path + ": " + e.what());
    }
    LogRegModel model;
    model.model_kind = features::model_kind_from_string(doc.at("model_kind").get<std::string>());
    model.weights = doc.at("weights").get<std::vector<double>>();
    model.bias = doc.at("bias").get<double>();
    const auto& h = doc.at("hyperparameters");
    model.hyper.learning_rate = h.at("learning_rate").get<double>();
    model.hyper.max_epochs = h.at("max_epochs").get<size_t>();
    model.hyper.tolerance = h.at("tolerance").get<double>();
    model.hyper.l2 = h.at("l2").get<double>();
    model.hyper.seed = h.at("seed").get<uint64_t>();
    if (config_hash && doc.contains("provenance"))
        *config_hash = doc["provenance"].value("config_hash", "");
    return model;
}

}  // namespace censorlab::trainer
