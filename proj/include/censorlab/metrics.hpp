#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace censorlab::metrics {

struct ConfusionMatrix {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t tn = 0;
    uint64_t fn = 0;
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;
};

struct EvalReport {
    std::string model_kind;
    double macro_f1 = 0.0;
    double auc = 0.0;
    ConfusionMatrix confusion;
    RocCurve curve;
    double threshold = 0.5;
};

// Predict positive iff score >= threshold.
ConfusionMatrix confusion(const std::vector<bool>& labels, const std::vector<double>& scores,
                          double threshold);

// Unweighted mean of positive-class and negative-class F1; 0/0 ratios
// count as 0.
double macro_f1(const ConfusionMatrix& cm);

// Threshold sweep over distinct scores descending, tied scores grouped
// into a single step. Starts at (0,0), ends at (1,1).
RocCurve roc_curve(const std::vector<bool>& labels, const std::vector<double>& scores);

// Trapezoidal integral of TPR over FPR.
double auc(const RocCurve& curve);

// One `fpr,tpr` CSV per curve (path_prefix + "_" + name + ".csv") plus a
// combined SVG overlay (path_prefix + ".svg") with legend and chance
// diagonal.
void export_roc(const std::vector<std::pair<std::string, RocCurve>>& curves,
                const std::string& path_prefix);

std::string render_roc_svg(const std::vector<std::pair<std::string, RocCurve>>& curves);

}  // namespace censorlab::metrics
