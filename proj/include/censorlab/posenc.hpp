#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace censorlab::posenc {

constexpr uint32_t kPadId = 0;
constexpr size_t kDefaultMaxLen = 200;

struct TokenIdSequence {
    std::vector<uint32_t> ids;  // length exactly max_len after preparation
};

// Sinusoidal position matrix: entry (pos, 2i) = sin(pos / 10000^(2i/d)),
// entry (pos, 2i+1) = cos of the same argument.
struct PEMatrix {
    size_t max_len = 0;
    size_t d_model = 0;
    std::vector<double> data;  // position-major
    double at(size_t pos, size_t col) const { return data[pos * d_model + col]; }
};

// Keeps the first max_len ids, right-pads shorter sequences with kPadId.
// Real vocabulary ids must start at 1 so the pad id stays reserved.
TokenIdSequence pad_truncate(const std::vector<uint32_t>& ids, size_t max_len = kDefaultMaxLen);

PEMatrix positional_encoding(size_t max_len, size_t d_model);

// Position-major CSV dump for inspection.
void export_csv(const PEMatrix& pe, const std::string& path);

}  // namespace censorlab::posenc
