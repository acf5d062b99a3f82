#include <doctest.h>

#include <cmath>
#include <random>

#include "censorlab/features.hpp"

using namespace censorlab;
using features::ProbVector;

namespace {

ProbVector random_pv(std::mt19937_64& gen, size_t max_len) {
    ProbVector pv;
    for (size_t i = 0, n = gen() % (max_len + 1); i < n; ++i)
        pv.push_back(static_cast<double>(gen() % 1001) / 1000.0);
    return pv;
}

}  // namespace

TEST_CASE("prob_vector looks up per-token probabilities in order") {
    lexicon::CensorLexicon lex;
    lex.stats["w"] = {2, 1};
    CHECK(features::prob_vector({"w"}, lex) == ProbVector{0.5});
    CHECK(features::prob_vector({"w", "u"}, lex) == ProbVector{0.5, 0.0});
    CHECK(features::prob_vector({}, lex).empty());
    CHECK(features::prob_vector({"w", "w"}, lex) == ProbVector{0.5, 0.5});
}

TEST_CASE("feat_max hand cases, including its blindness to the tail") {
    CHECK(features::feat_max({0.8, 0.2, 0.1, 0.0}) == std::vector<double>{0.8});
    CHECK(features::feat_max({0.8, 0.8, 0.7, 0.6}) == std::vector<double>{0.8});
    CHECK(features::feat_max({}) == std::vector<double>{0.0});
}

TEST_CASE("feat_topk sorts desc, truncates, and zero-pads") {
    CHECK(features::feat_topk({0.9, 0.3}) ==
          std::vector<double>{0.9, 0.3, 0, 0, 0, 0, 0, 0});
    ProbVector ten;
    for (int i = 1; i <= 10; ++i) ten.push_back(i / 10.0);
    auto top = features::feat_topk(ten);
    REQUIRE(top.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(top[i] == doctest::Approx((10 - i) / 10.0));
    CHECK(features::feat_topk({}) == std::vector<double>(8, 0.0));
}

TEST_CASE("feat_norm hand cases separate the tail-heavy text") {
    auto a = features::feat_norm({0.8, 0.2, 0.1, 0.0});
    CHECK(a[0] == doctest::Approx(std::sqrt(0.69)).epsilon(1e-12));
    auto b = features::feat_norm({0.8, 0.8, 0.7, 0.6});
    CHECK(b[0] == doctest::Approx(std::sqrt(2.13)).epsilon(1e-12));
    CHECK(b[0] > a[0]);  // the two texts tie under feat_max but not here
    CHECK(features::feat_norm({1.0}) == std::vector<double>{1.0});
    CHECK(features::feat_norm({}) == std::vector<double>{0.0});
}

TEST_CASE("feat_cosine_ones hand cases") {
    auto v = features::feat_cosine_ones({0.8, 0.2, 0.1, 0.0});
    CHECK(v[0] == doctest::Approx(1.1 / (std::sqrt(0.69) * 2.0)).epsilon(1e-12));
    CHECK(features::feat_cosine_ones({0.3, 0.3, 0.3})[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(features::feat_cosine_ones({0.0, 0.0}) == std::vector<double>{0.0});
    CHECK(features::feat_cosine_ones({}) == std::vector<double>{0.0});
}

TEST_CASE("property: extractor identities over random probability vectors") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 300; ++trial) {
        auto pv = random_pv(gen, 20);
        auto fmax = features::feat_max(pv);
        auto ftop = features::feat_topk(pv);
        auto fnorm = features::feat_norm(pv);
        auto fcos = features::feat_cosine_ones(pv);

        if (!pv.empty()) {
            CHECK(ftop[0] == fmax[0]);
            CHECK(fnorm[0] >= fmax[0] - 1e-15);
            CHECK(fnorm[0] <= std::sqrt(static_cast<double>(pv.size())) + 1e-12);
        }
        CHECK(fcos[0] >= 0.0);
        CHECK(fcos[0] <= 1.0 + 1e-12);

        // positive scaling: max and norm scale linearly, cosine is invariant
        double lambda = 0.25 + 0.75 * static_cast<double>(gen() % 1000) / 999.0;
        ProbVector scaled;
        for (double p : pv) scaled.push_back(lambda * p);
        CHECK(features::feat_max(scaled)[0] == doctest::Approx(lambda * fmax[0]).epsilon(1e-12));
        CHECK(features::feat_norm(scaled)[0] == doctest::Approx(lambda * fnorm[0]).epsilon(1e-12));
        bool all_zero = true;
        for (double p : pv)
            if (p != 0.0) all_zero = false;
        if (!all_zero)
            CHECK(features::feat_cosine_ones(scaled)[0] == doctest::Approx(fcos[0]).epsilon(1e-12));
    }
}

TEST_CASE("single-token identities: max = norm = p, cosine = 1 when p > 0") {
    for (double p : {0.1, 0.5, 0.9, 1.0}) {
        CHECK(features::feat_max({p})[0] == doctest::Approx(p));
        CHECK(features::feat_norm({p})[0] == doctest::Approx(p));
        CHECK(features::feat_cosine_ones({p})[0] == doctest::Approx(1.0));
    }
    CHECK(features::feat_cosine_ones({0.0})[0] == 0.0);
}

TEST_CASE("model kind names round trip and dims are fixed") {
    using features::ModelKind;
    for (auto kind :
         {ModelKind::kMax, ModelKind::kTopK, ModelKind::kNorm, ModelKind::kCosine}) {
        CHECK(features::model_kind_from_string(features::to_string(kind)) == kind);
        auto dim = features::feature_dim(kind);
        CHECK(dim == (kind == ModelKind::kTopK ? 8u : 1u));
        CHECK(features::extract(kind, {0.5, 0.2}).size() == dim);
    }
}
