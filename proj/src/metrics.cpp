#include "censorlab/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "censorlab/errors.hpp"

namespace censorlab::metrics {

namespace {

std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ConfusionMatrix confusion(const std::vector<bool>& labels, const std::vector<double>& scores,
                          double threshold) {
    if (labels.size() != scores.size())
        throw DataError("label/score length mismatch in confusion");
    if (labels.empty()) throw DataError("confusion needs at least one row");
    ConfusionMatrix cm;
    for (size_t i = 0; i < labels.size(); ++i) {
        bool pred = scores[i] >= threshold;
        if (labels[i]) (pred ? cm.tp : cm.fn)++;
        else (pred ? cm.fp : cm.tn)++;
    }
    return cm;
}

double macro_f1(const ConfusionMatrix& cm) {
    auto f1 = [](uint64_t tp, uint64_t fp, uint64_t fn) {
        double denom = static_cast<double>(2 * tp + fp + fn);
        if (denom == 0.0) return 0.0;
        return 2.0 * static_cast<double>(tp) / denom;
    };
    double pos = f1(cm.tp, cm.fp, cm.fn);
    double neg = f1(cm.tn, cm.fn, cm.fp);  // negative class: swap roles
    return 0.5 * (pos + neg);
}

RocCurve roc_curve(const std::vector<bool>& labels, const std::vector<double>& scores) {
    if (labels.size() != scores.size())
        throw DataError("label/score length mismatch in roc_curve");
    uint64_t n_pos = 0;
    for (bool y : labels)
        if (y) ++n_pos;
    uint64_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw DataError("ROC needs both classes present");

    std::vector<size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    uint64_t tp = 0;
    uint64_t fp = 0;
    size_t i = 0;
    while (i < order.size()) {
        double s = scores[order[i]];
        // One step per tie group: equal scores produce a single diagonal segment.
        while (i < order.size() && scores[order[i]] == s) {
            if (labels[order[i]]) ++tp;
            else ++fp;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                                static_cast<double>(tp) / static_cast<double>(n_pos)});
    }
    if (curve.points.back().fpr != 1.0 || curve.points.back().tpr != 1.0)
        curve.points.push_back({1.0, 1.0});
    return curve;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint& a = curve.points[i - 1];
        const RocPoint& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

std::string render_roc_svg(const std::vector<std::pair<std::string, RocCurve>>& curves) {
    constexpr int kSize = 480;
    constexpr int kMargin = 48;
    constexpr int kPlot = kSize - 2 * kMargin;
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    auto px = [&](double fpr) { return kMargin + fpr * kPlot; };
    auto py = [&](double tpr) { return kSize - kMargin - tpr * kPlot; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
        << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    svg << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPlot
        << "\" height=\"" << kPlot << "\" fill=\"none\" stroke=\"#333\"/>\n";
    svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
        << py(1) << "\" stroke=\"#999\" stroke-dasharray=\"5,5\"/>\n";
    svg << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 10
        << "\" text-anchor=\"middle\" font-size=\"13\">False positive rate</text>\n";
    svg << "<text x=\"14\" y=\"" << kSize / 2 << "\" text-anchor=\"middle\" font-size=\"13\""
        << " transform=\"rotate(-90 14 " << kSize / 2 << ")\">True positive rate</text>\n";

    size_t idx = 0;
    for (const auto& [name, curve] : curves) {
        const char* color = kColors[idx % (sizeof(kColors) / sizeof(kColors[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (const auto& p : curve.points) svg << px(p.fpr) << "," << py(p.tpr) << " ";
        svg << "\"/>\n";
        double ly = kMargin + 16.0 + 16.0 * static_cast<double>(idx);
        svg << "<line x1=\"" << kMargin + kPlot - 130 << "\" y1=\"" << ly << "\" x2=\""
            << kMargin + kPlot - 108 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.6\"/>\n";
        svg << "<text x=\"" << kMargin + kPlot - 102 << "\" y=\"" << ly + 4
            << "\" font-size=\"12\">" << name << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

void export_roc(const std::vector<std::pair<std::string, RocCurve>>& curves,
                const std::string& path_prefix) {
    if (curves.empty()) throw DataError("export_roc needs at least one curve");
    for (const auto& [name, curve] : curves) {
        std::string path = path_prefix + "_" + name + ".csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write ROC CSV: " + path);
        out << "fpr,tpr\n";
        for (const auto& p : curve.points)
            out << full_precision(p.fpr) << ',' << full_precision(p.tpr) << '\n';
        if (!out) throw IoError("write failed: " + path);
    }
    std::string svg_path = path_prefix + ".svg";
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw IoError("cannot write ROC SVG: " + svg_path);
    out << render_roc_svg(curves);
    if (!out) throw IoError("write failed: " + svg_path);
}

}  // namespace censorlab::metrics
