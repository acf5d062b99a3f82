#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "censorlab/corpus.hpp"
#include "censorlab/features.hpp"
#include "censorlab/metrics.hpp"
#include "censorlab/segmenter.hpp"
#include "censorlab/trainer.hpp"

namespace censorlab::pipeline {

struct PipelineConfig {
    std::string input;
    corpus::ColumnMapping columns;
    double sample_fraction = 1.0;
    uint64_t sample_seed = 1;
    corpus::SplitRatios split_ratios;
    uint64_t split_seed = 2;
    std::string dictionary;
    std::string stopwords;  // optional; empty path = no stopword filtering
    uint64_t lexicon_min_count = 5;
    size_t report_top_k = 20;
    std::vector<features::ModelKind> models = {
        features::ModelKind::kMax, features::ModelKind::kTopK, features::ModelKind::kNorm,
        features::ModelKind::kCosine};
    trainer::Hyperparams hyper;
    std::string eval_split = "dev";  // dev | test
    double threshold = 0.5;
    std::string out_dir = "out";
};

// Reads a JSON config file; unknown keys are rejected so typos surface.
PipelineConfig load_config(const std::string& path);

// Canonical JSON rendering of a config; hashing this pins provenance.
std::string config_to_json(const PipelineConfig& cfg);
std::string config_hash(const PipelineConfig& cfg);

// Tokenize one post: strip mentions/URLs, drop non-CJK rows, segment,
// clean. Returns false when the row is dropped.
bool tokenize_post(const corpus::Post& post, const segmenter::SegmentDictionary& dict,
                   const segmenter::StopwordSet& stopwords, segmenter::TokenizedPost* out);

std::vector<segmenter::TokenizedPost> tokenize_corpus(const corpus::Corpus& corpus,
                                                      const segmenter::SegmentDictionary& dict,
                                                      const segmenter::StopwordSet& stopwords);

// Tokenized-post TSV: `id<TAB>censored<TAB>space-joined tokens`.
void save_tokenized(const std::vector<segmenter::TokenizedPost>& posts, const std::string& path);
std::vector<segmenter::TokenizedPost> load_tokenized(const std::string& path);

struct RunResult {
    corpus::CorpusProfile profile;
    std::vector<metrics::EvalReport> reports;
};

// Full workflow: ingest, sample, split, tokenize, build lexicon,
// featurize, train, and evaluate each configured model; all artifacts
// land under cfg.out_dir stamped with the config hash.
RunResult run_all(const PipelineConfig& cfg);

// Re-renders the comparison table and ROC overlay from eval reports in
// run_dir/eval. Refuses to mix reports from different config hashes.
void report(const std::string& run_dir);

void save_eval_report(const metrics::EvalReport& report, const std::string& path,
                      const std::string& config_hash);
metrics::EvalReport load_eval_report(const std::string& path, std::string* config_hash = nullptr);

}  // namespace censorlab::pipeline
