#include "censorlab/posenc.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "censorlab/errors.hpp"

namespace censorlab::posenc {

TokenIdSequence pad_truncate(const std::vector<uint32_t>& ids, size_t max_len) {
    if (max_len == 0) throw ConfigError("max_len must be positive");
    TokenIdSequence out;
    out.ids.assign(ids.begin(),
                   ids.size() > max_len ? ids.begin() + static_cast<long>(max_len) : ids.end());
    out.ids.resize(max_len, kPadId);
    return out;
}

PEMatrix positional_encoding(size_t max_len, size_t d_model) {
    if (max_len == 0 || d_model == 0) throw ConfigError("PE dimensions must be positive");
    if (d_model % 2 != 0) throw ConfigError("d_model must be even");

    PEMatrix pe;
    pe.max_len = max_len;
    pe.d_model = d_model;
    pe.data.resize(max_len * d_model);
    for (size_t pos = 0; pos < max_len; ++pos) {
        for (size_t i = 0; i < d_model; i += 2) {
            double divisor =
                std::pow(10000.0, static_cast<double>(i) / static_cast<double>(d_model));
            double angle = static_cast<double>(pos) / divisor;
            pe.data[pos * d_model + i] = std::sin(angle);
            pe.data[pos * d_model + i + 1] = std::cos(angle);
        }
    }
    return pe;
}

void export_csv(const PEMatrix& pe, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write PE matrix: " + path);
    char buf[32];
    for (size_t pos = 0; pos < pe.max_len; ++pos) {
        for (size_t col = 0; col < pe.d_model; ++col) {
            if (col) out.put(',');
            std::snprintf(buf, sizeof(buf), "%.17g", pe.at(pos, col));
            out << buf;
        }
        out.put('\n');
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace censorlab::posenc
