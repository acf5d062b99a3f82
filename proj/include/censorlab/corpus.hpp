#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace censorlab::corpus {

struct Post {
    std::string id;
    std::string text;
    bool censored = false;
    std::optional<std::string> timestamp;
};

struct Provenance {
    std::string source;
    uint64_t sample_seed = 0;
    double sample_fraction = 1.0;
};

struct Corpus {
    std::vector<Post> posts;
    Provenance provenance;
};

struct ColumnMapping {
    std::string id = "mid";
    std::string text = "text";
    std::string flag = "permission_denied";
    std::string timestamp = "created_at";  // optional; ignored when absent
};

struct LoadResult {
    Corpus corpus;
    size_t rejected_rows = 0;
};

struct SplitRatios {
    double train = 0.6;
    double dev = 0.2;
    double test = 0.2;
};

struct SplitSet {
    Corpus train;
    Corpus dev;
    Corpus test;
    uint64_t seed = 0;
};

struct CorpusProfile {
    size_t total_rows = 0;
    size_t censored_rows = 0;
    double censored_fraction = 0.0;
};

// Streams a UTF-8 RFC-4180 CSV into a corpus. Rows whose flag column is
// neither 0/1/true/false are skipped and counted in rejected_rows.
LoadResult load_corpus(const std::string& path, const ColumnMapping& schema);

void save_corpus(const Corpus& corpus, const std::string& path, const ColumnMapping& schema);

// Keeps each row independently with probability `fraction`; order preserved.
Corpus sample_fraction(const Corpus& corpus, double fraction, uint64_t seed);

// Seeded shuffle then contiguous partition. Sizes are floor(n*train),
// floor(n*dev), remainder to test.
SplitSet split(const Corpus& corpus, const SplitRatios& ratios, uint64_t seed);

CorpusProfile profile(const Corpus& corpus);

}  // namespace censorlab::corpus
