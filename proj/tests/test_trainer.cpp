#include <doctest.h>

#include <cmath>
#include <random>

#include "censorlab/errors.hpp"
#include "censorlab/trainer.hpp"

#include "test_helpers.hpp"

using namespace censorlab;
using features::FeatureRow;
using test_helpers::TempDir;

namespace {

// Loss evaluated the same way fit() sees it, for finite differencing.
double objective(const std::vector<double>& weights, double bias,
                 const std::vector<FeatureRow>& rows, const trainer::ClassWeights& cw,
                 double l2) {
    std::vector<double> scores;
    std::vector<bool> labels;
    for (const auto& row : rows) {
        double z = bias;
        for (size_t j = 0; j < weights.size(); ++j) z += weights[j] * row.features[j];
        scores.push_back(trainer::sigmoid(z));
        labels.push_back(row.label);
    }
    double reg = 0.0;
    for (double w : weights) reg += w * w;
    return trainer::weighted_bce(scores, labels, cw) + 0.5 * l2 * reg;
}

std::vector<FeatureRow> random_rows(std::mt19937_64& gen, size_t dim, size_t n) {
    std::vector<FeatureRow> rows;
    bool has_pos = false;
    bool has_neg = false;
    for (size_t i = 0; i < n; ++i) {
        FeatureRow row;
        for (size_t j = 0; j < dim; ++j)
            row.features.push_back(static_cast<double>(gen() % 2001) / 1000.0 - 1.0);
        row.label = gen() % 2 == 0;
        // force both classes on the last two rows
        if (i == n - 2 && !has_pos) row.label = true;
        if (i == n - 1 && !has_neg) row.label = false;
        (row.label ? has_pos : has_neg) = true;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("class_weights hand cases") {
    std::vector<bool> balanced(100);
    for (size_t i = 0; i < 50; ++i) balanced[i] = true;
    auto cw = trainer::class_weights(balanced);
    CHECK(cw.w_pos == doctest::Approx(1.0));
    CHECK(cw.w_neg == doctest::Approx(1.0));

    std::vector<bool> imbalanced(100);
    for (size_t i = 0; i < 3; ++i) imbalanced[i] = true;
    auto icw = trainer::class_weights(imbalanced);
    CHECK(icw.w_pos == doctest::Approx(100.0 / 6.0));
    CHECK(icw.w_neg == doctest::Approx(100.0 / 194.0));

    auto pair = trainer::class_weights({true, false});
    CHECK(pair.w_pos == 1.0);
    CHECK(pair.w_neg == 1.0);

    CHECK_THROWS_AS(trainer::class_weights({true, true}), DataError);
}

TEST_CASE("property: w_pos*N_pos == w_neg*N_neg on random label sets") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 100; ++trial) {
        size_t n = 2 + gen() % 2000;
        size_t n_pos = 1 + gen() % (n - 1);
        std::vector<bool> labels(n);
        for (size_t i = 0; i < n_pos; ++i) labels[i] = true;
        auto cw = trainer::class_weights(labels);
        double lhs = cw.w_pos * static_cast<double>(n_pos);
        double rhs = cw.w_neg * static_cast<double>(n - n_pos);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, rhs));
    }
    // heavy real-world-scale imbalance: 9755 positives of 274356
    std::vector<bool> skewed(274356);
    for (size_t i = 0; i < 9755; ++i) skewed[i] = true;
    auto cw = trainer::class_weights(skewed);
    CHECK(std::abs(cw.w_pos * 9755.0 - cw.w_neg * 264601.0) <= 1e-12 * cw.w_pos * 9755.0);
}

TEST_CASE("sigmoid: analytic points, symmetry, extreme stability") {
    CHECK(trainer::sigmoid(0.0) == 0.5);
    for (double z : {0.1, 1.0, 5.0, 17.0, 30.0})
        CHECK(trainer::sigmoid(z) + trainer::sigmoid(-z) == doctest::Approx(1.0).epsilon(1e-15));
    double tiny = trainer::sigmoid(-1000.0);
    CHECK(tiny >= 0.0);
    CHECK(std::isfinite(tiny));
    CHECK(trainer::sigmoid(1000.0) <= 1.0);
    CHECK(std::isfinite(trainer::sigmoid(1000.0)));
}

TEST_CASE("weighted_bce analytic cases") {
    trainer::ClassWeights unit{1.0, 1.0};
    CHECK(trainer::weighted_bce({0.5}, {true}, unit) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(trainer::weighted_bce({0.9, 0.1}, {true, false}, unit) ==
          doctest::Approx(-std::log(0.9)).epsilon(1e-12));
    // perfect scores clamp without blowing up
    CHECK(trainer::weighted_bce({1.0, 0.0}, {true, false}, unit) ==
          doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(trainer::weighted_bce({0.5}, {true, false}, unit), DataError);
}

TEST_CASE("gradient matches central finite differences on random instances") {
    std::mt19937_64 gen(37);
    const double step = 1e-5;
    for (int trial = 0; trial < 120; ++trial) {
        size_t dim = trial % 2 == 0 ? 1 : 8;
        auto rows = random_rows(gen, dim, 4 + gen() % 20);

        trainer::LogRegModel model;
        model.hyper.l2 = (gen() % 2) * 0.05;
        for (size_t j = 0; j < dim; ++j)
            model.weights.push_back(static_cast<double>(gen() % 2001) / 1000.0 - 1.0);
        model.bias = static_cast<double>(gen() % 2001) / 1000.0 - 1.0;

        std::vector<bool> labels;
        for (const auto& row : rows) labels.push_back(row.label);
        auto cw = trainer::class_weights(labels);
        auto grad = trainer::gradient(model, rows, cw);
        REQUIRE(grad.size() == dim + 1);

        for (size_t j = 0; j <= dim; ++j) {
            auto wp = model.weights;
            auto wm = model.weights;
            double bp = model.bias;
            double bm = model.bias;
            if (j < dim) {
                wp[j] += step;
                wm[j] -= step;
            } else {
                bp += step;
                bm -= step;
            }
            double fd = (objective(wp, bp, rows, cw, model.hyper.l2) -
                         objective(wm, bm, rows, cw, model.hyper.l2)) /
                        (2.0 * step);
            double denom = std::max({std::abs(fd), std::abs(grad[j]), 1e-8});
            CHECK(std::abs(fd - grad[j]) / denom <= 1e-6);
        }
    }
}

TEST_CASE("gradient includes the l2 term exactly") {
    std::mt19937_64 gen(41);
    auto rows = random_rows(gen, 3, 12);
    trainer::LogRegModel model;
    model.weights = {0.4, -0.2, 0.9};
    model.bias = 0.1;
    std::vector<bool> labels;
    for (const auto& row : rows) labels.push_back(row.label);
    auto cw = trainer::class_weights(labels);

    model.hyper.l2 = 0.0;
    auto g0 = trainer::gradient(model, rows, cw);
    model.hyper.l2 = 0.3;
    auto g1 = trainer::gradient(model, rows, cw);
    for (size_t j = 0; j < 3; ++j)
        CHECK(g1[j] - g0[j] == doctest::Approx(0.3 * model.weights[j]).epsilon(1e-12));
    CHECK(g1[3] == doctest::Approx(g0[3]));  // bias is not regularized
}

TEST_CASE("zero model on balanced symmetric data has zero bias gradient") {
    std::vector<FeatureRow> rows = {{{1.0}, true}, {{-1.0}, false}};
    trainer::LogRegModel model;
    model.weights = {0.0};
    auto cw = trainer::class_weights({true, false});
    auto grad = trainer::gradient(model, rows, cw);
    CHECK(grad[1] == doctest::Approx(0.0));
}

TEST_CASE("fit separates linearly separable data") {
    std::vector<FeatureRow> rows;
    for (int i = 0; i < 100; ++i) {
        rows.push_back({{0.0}, false});
        rows.push_back({{1.0}, true});
    }
    auto model = trainer::fit(rows, {});
    CHECK(trainer::predict_proba(model, {1.0}) > 0.9);
    CHECK(trainer::predict_proba(model, {0.0}) < 0.1);
}

TEST_CASE("fit on all-zero features with balanced classes keeps parameters at zero") {
    std::vector<FeatureRow> rows = {{{0.0}, true}, {{0.0}, false}};
    auto model = trainer::fit(rows, {});
    CHECK(model.weights[0] == 0.0);
    CHECK(model.bias == doctest::Approx(0.0));
}

TEST_CASE("fit is deterministic") {
    std::mt19937_64 gen(43);
    auto rows = random_rows(gen, 8, 60);
    auto a = trainer::fit(rows, {});
    auto b = trainer::fit(rows, {});
    CHECK(a.weights == b.weights);
    CHECK(a.bias == b.bias);
    CHECK(a.train_loss_trace == b.train_loss_trace);
}

TEST_CASE("loss trace is non-increasing at default hyperparameters") {
    std::mt19937_64 gen(47);
    for (int trial = 0; trial < 10; ++trial) {
        auto rows = random_rows(gen, trial % 2 ? 8 : 1, 30 + gen() % 50);
        auto model = trainer::fit(rows, {});
        for (size_t e = 1; e < model.train_loss_trace.size(); ++e)
            CHECK(model.train_loss_trace[e] <= model.train_loss_trace[e - 1] + 1e-12);
    }
}

TEST_CASE("fit rejects bad inputs") {
    CHECK_THROWS_AS(trainer::fit({{{1.0}, true}}, {}), DataError);
    CHECK_THROWS_AS(trainer::fit({{{1.0}, true}, {{0.5}, true}}, {}), DataError);
    CHECK_THROWS_AS(trainer::fit({{{1.0}, true}, {{0.5, 0.1}, false}}, {}), DataError);
    std::vector<FeatureRow> nan_rows = {{{std::nan("")}, true}, {{0.5}, false}};
    CHECK_THROWS_AS(trainer::fit(nan_rows, {}), DataError);
    trainer::Hyperparams bad;
    bad.learning_rate = -1;
    CHECK_THROWS_AS(trainer::fit({{{1.0}, true}, {{0.0}, false}}, bad), ConfigError);
}

TEST_CASE("predict_proba hand cases and dimension check") {
    trainer::LogRegModel zero;
    zero.weights = {0.0, 0.0};
    CHECK(trainer::predict_proba(zero, {0.3, 0.7}) == 0.5);

    trainer::LogRegModel m;
    m.weights = {2.0};
    m.bias = -1.0;
    CHECK(trainer::predict_proba(m, {1.0}) == doctest::Approx(0.731059).epsilon(1e-6));
    CHECK_THROWS_AS(trainer::predict_proba(m, {1.0, 2.0}), DataError);
}

TEST_CASE("model JSON round trip") {
    TempDir dir("model");
    std::mt19937_64 gen(53);
    auto rows = random_rows(gen, 8, 40);
    auto model = trainer::fit(rows, {}, features::ModelKind::kTopK);
    trainer::save(model, dir.file("m.json"), "deadbeef00000000");
    std::string hash;
    auto loaded = trainer::load(dir.file("m.json"), &hash);
    CHECK(hash == "deadbeef00000000");
    CHECK(loaded.model_kind == features::ModelKind::kTopK);
    CHECK(loaded.weights == model.weights);
    CHECK(loaded.bias == model.bias);
    CHECK(loaded.hyper.learning_rate == model.hyper.learning_rate);
}
