#include "censorlab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_map>

#include "censorlab/csv.hpp"
#include "censorlab/errors.hpp"
#include "censorlab/rng.hpp"

namespace censorlab::corpus {

namespace {

std::optional<bool> parse_flag(const std::string& raw) {
    if (raw == "1" || raw == "true" || raw == "True" || raw == "TRUE") return true;
    if (raw == "0" || raw == "false" || raw == "False" || raw == "FALSE") return false;
    return std::nullopt;
}

}  // namespace

LoadResult load_corpus(const std::string& path, const ColumnMapping& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);

    csv::Reader reader(in);
    auto header = reader.next();
    if (!header) throw DataError("corpus file has no header row: " + path);

    std::unordered_map<std::string, size_t> col;
    for (size_t i = 0; i < header->size(); ++i) col[(*header)[i]] = i;

    auto require = [&](const std::string& name) {
        auto it = col.find(name);
        if (it == col.end())
            throw DataError("corpus file " + path + " is missing column '" + name + "'");
        return it->second;
    };
    size_t id_col = require(schema.id);
    size_t text_col = require(schema.text);
    size_t flag_col = require(schema.flag);
    std::optional<size_t> ts_col;
    if (auto it = col.find(schema.timestamp); it != col.end()) ts_col = it->second;

    LoadResult result;
    result.corpus.provenance.source = path;
    while (auto row = reader.next()) {
        size_t needed = std::max({id_col, text_col, flag_col});
        if (row->size() <= needed || (*row)[id_col].empty()) {
            ++result.rejected_rows;
            continue;
        }
        auto flag = parse_flag((*row)[flag_col]);
        if (!flag) {
            ++result.rejected_rows;
            continue;
        }
        Post post;
        post.id = (*row)[id_col];
        post.text = (*row)[text_col];
        post.censored = *flag;
        if (ts_col && *ts_col < row->size() && !(*row)[*ts_col].empty())
            post.timestamp = (*row)[*ts_col];
        result.corpus.posts.push_back(std::move(post));
    }
    return result;
}

void save_corpus(const Corpus& corpus, const std::string& path, const ColumnMapping& schema) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file: " + path);
    csv::write_row(out, {schema.id, schema.text, schema.flag, schema.timestamp});
    for (const auto& post : corpus.posts) {
        csv::write_row(out, {post.id, post.text, post.censored ? "1" : "0",
                             post.timestamp.value_or("")});
    }
    if (!out) throw IoError("write failed: " + path);
}

Corpus sample_fraction(const Corpus& corpus, double fraction, uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw ConfigError("sample fraction must lie in (0, 1]");

    Corpus out;
    out.provenance = corpus.provenance;
    out.provenance.sample_seed = seed;
    out.provenance.sample_fraction = fraction;

    std::mt19937_64 gen(seed);
    for (const auto& post : corpus.posts) {
        // One draw per row regardless of outcome keeps the kept-set a
        // deterministic function of (row index, seed).
        double u = rng::uniform01(gen);
        if (fraction >= 1.0 || u < fraction) out.posts.push_back(post);
    }
    return out;
}

SplitSet split(const Corpus& corpus, const SplitRatios& ratios, uint64_t seed) {
    if (ratios.train <= 0 || ratios.dev <= 0 || ratios.test <= 0)
        throw ConfigError("split ratios must all be positive");
    double sum = ratios.train + ratios.dev + ratios.test;
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("split ratios must sum to 1");

    std::vector<size_t> order(corpus.posts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 gen(seed);
    rng::shuffle(order, gen);

    size_t n = order.size();
    size_t n_train = static_cast<size_t>(std::floor(static_cast<double>(n) * ratios.train));
    size_t n_dev = static_cast<size_t>(std::floor(static_cast<double>(n) * ratios.dev));

    SplitSet out;
    out.seed = seed;
    out.train.provenance = corpus.provenance;
    out.dev.provenance = corpus.provenance;
    out.test.provenance = corpus.provenance;
    for (size_t i = 0; i < n; ++i) {
        const Post& post = corpus.posts[order[i]];
        if (i < n_train) out.train.posts.push_back(post);
        else if (i < n_train + n_dev) out.dev.posts.push_back(post);
        else out.test.posts.push_back(post);
    }
    return out;
}

CorpusProfile profile(const Corpus& corpus) {
    CorpusProfile p;
    p.total_rows = corpus.posts.size();
    for (const auto& post : corpus.posts)
        if (post.censored) ++p.censored_rows;
    p.censored_fraction =
        p.total_rows == 0 ? 0.0
                          : static_cast<double>(p.censored_rows) / static_cast<double>(p.total_rows);
    return p;
}

}  // namespace censorlab::corpus
