// censorlab: censorship-classification pipeline over labeled blog corpora.
//
// Subcommands cover each pipeline stage plus run-all; see README.md.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "censorlab/corpus.hpp"
#include "censorlab/errors.hpp"
#include "censorlab/features.hpp"
#include "censorlab/lexicon.hpp"
#include "censorlab/metrics.hpp"
#include "censorlab/pipeline.hpp"
#include "censorlab/posenc.hpp"
#include "censorlab/segmenter.hpp"
#include "censorlab/synthetic.hpp"
#include "censorlab/trainer.hpp"

namespace {

using namespace censorlab;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;
constexpr int kExitInternal = 5;

struct CommonOpts {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> models_csv;
    std::optional<std::string> eval_split;
};

pipeline::PipelineConfig resolve_config(const CommonOpts& opts) {
    pipeline::PipelineConfig cfg;
    if (!opts.config_path.empty()) cfg = pipeline::load_config(opts.config_path);
    if (opts.seed) {
        cfg.sample_seed = *opts.seed;
        cfg.split_seed = *opts.seed;
        cfg.hyper.seed = *opts.seed;
    }
    if (opts.out_dir) cfg.out_dir = *opts.out_dir;
    if (opts.models_csv) {
        cfg.models.clear();
        std::stringstream ss(*opts.models_csv);
        std::string name;
        while (std::getline(ss, name, ','))
            if (!name.empty()) cfg.models.push_back(features::model_kind_from_string(name));
        if (cfg.models.empty()) throw ConfigError("--models selects no models");
    }
    if (opts.eval_split) {
        if (*opts.eval_split != "dev" && *opts.eval_split != "test")
            throw ConfigError("--eval-split must be dev or test");
        cfg.eval_split = *opts.eval_split;
    }
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* c = cmd->add_option("--config", opts.config_path, "pipeline config JSON");
    if (config_required) c->required();
    cmd->add_option("--seed", opts.seed, "override sample/split/trainer seeds");
    cmd->add_option("--out", opts.out_dir, "override output directory");
    cmd->add_option("--models", opts.models_csv, "comma list: max,topk,norm,cosine");
    cmd->add_option("--eval-split", opts.eval_split, "dev|test");
}

segmenter::StopwordSet load_stopwords_opt(const pipeline::PipelineConfig& cfg) {
    if (cfg.stopwords.empty()) return {};
    return segmenter::load_stopwords(cfg.stopwords);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"censorship-classification pipeline"};
    app.require_subcommand(1);

    CommonOpts opts;

    // generate-synthetic
    auto* gen_cmd = app.add_subcommand("generate-synthetic", "emit a seeded synthetic corpus");
    synthetic::SyntheticSpec spec;
    std::string gen_out;
    std::string gen_dict_out;
    std::string gen_stop_out;
    gen_cmd->add_option("--out-csv", gen_out, "corpus CSV path")->required();
    gen_cmd->add_option("--dict-out", gen_dict_out, "also write a matching dictionary");
    gen_cmd->add_option("--stopwords-out", gen_stop_out, "also write an (empty) stopword file");
    gen_cmd->add_option("--posts", spec.post_count, "number of posts");
    gen_cmd->add_option("--vocab", spec.vocab_size, "vocabulary size");
    gen_cmd->add_option("--sensitive", spec.sensitive_count, "sensitive token count");
    gen_cmd->add_option("--min-len", spec.min_post_len, "minimum post length");
    gen_cmd->add_option("--max-len", spec.max_post_len, "maximum post length");
    gen_cmd->add_option("--censor-prob", spec.censor_prob_sensitive,
                        "P(censored | sensitive token present)");
    gen_cmd->add_option("--background-prob", spec.censor_prob_background,
                        "P(censored | no sensitive token)");
    gen_cmd->add_option("--gen-seed", spec.seed, "generator seed");

    // per-stage and whole-pipeline commands
    auto* ingest_cmd = app.add_subcommand("ingest", "load + validate the input corpus");
    auto* sample_cmd = app.add_subcommand("sample", "Bernoulli-sample the corpus");
    auto* split_cmd = app.add_subcommand("split", "shuffle and partition train/dev/test");
    auto* tokenize_cmd = app.add_subcommand("tokenize", "segment and clean each split");
    auto* lexicon_cmd = app.add_subcommand("build-lexicon", "censorship lexicon from train split");
    auto* featurize_cmd = app.add_subcommand("featurize", "emit feature CSVs per model");
    auto* train_cmd = app.add_subcommand("train", "fit logistic models per feature kind");
    auto* evaluate_cmd = app.add_subcommand("evaluate", "score models on the eval split");
    auto* run_cmd = app.add_subcommand("run-all", "full workflow end to end");
    for (auto* cmd :
         {ingest_cmd, sample_cmd, split_cmd, tokenize_cmd, lexicon_cmd, featurize_cmd, train_cmd,
          evaluate_cmd, run_cmd})
        add_common(cmd, opts);

    auto* report_cmd = app.add_subcommand("report", "re-render comparison table + ROC overlay");
    std::string report_dir;
    report_cmd->add_option("--run-dir", report_dir, "run-all output directory")->required();

    auto* posenc_cmd = app.add_subcommand("positional-encoding", "dump a sinusoidal PE matrix");
    size_t pe_len = posenc::kDefaultMaxLen;
    size_t pe_dim = 64;
    std::string pe_out;
    posenc_cmd->add_option("--max-len", pe_len, "positions");
    posenc_cmd->add_option("--d-model", pe_dim, "even embedding width");
    posenc_cmd->add_option("--out-csv", pe_out, "CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            auto corpus = synthetic::generate(spec);
            corpus::save_corpus(corpus, gen_out, corpus::ColumnMapping{});
            if (!gen_dict_out.empty())
                segmenter::save_dictionary(synthetic::make_dictionary(spec), gen_dict_out);
            if (!gen_stop_out.empty()) {
                std::ofstream stop(gen_stop_out, std::ios::binary);
                if (!stop) throw IoError("cannot write stopword file: " + gen_stop_out);
            }
            auto prof = corpus::profile(corpus);
            std::printf("wrote %zu posts (%zu censored, expected fraction %.4f) to %s\n",
                        prof.total_rows, prof.censored_rows,
                        synthetic::expected_censored_fraction(spec), gen_out.c_str());
            return 0;
        }
        if (report_cmd->parsed()) {
            pipeline::report(report_dir);
            std::printf("report written under %s/report\n", report_dir.c_str());
            return 0;
        }
        if (posenc_cmd->parsed()) {
            posenc::export_csv(posenc::positional_encoding(pe_len, pe_dim), pe_out);
            return 0;
        }

        auto cfg = resolve_config(opts);
        std::filesystem::create_directories(cfg.out_dir);
        const std::string hash = pipeline::config_hash(cfg);

        if (run_cmd->parsed()) {
            auto result = pipeline::run_all(cfg);
            std::printf("corpus: %zu rows, %zu censored (%.4f)\n", result.profile.total_rows,
                        result.profile.censored_rows, result.profile.censored_fraction);
            std::ifstream table(cfg.out_dir + "/report/comparison.txt");
            std::cout << table.rdbuf();
            return 0;
        }

        // Stage commands share the artifact layout of run-all so any prefix
        // of the pipeline can be rerun incrementally.
        if (ingest_cmd->parsed() || sample_cmd->parsed()) {
            auto loaded = corpus::load_corpus(cfg.input, cfg.columns);
            std::printf("loaded %zu rows (%zu rejected)\n", loaded.corpus.posts.size(),
                        loaded.rejected_rows);
            auto out = ingest_cmd->parsed()
                           ? loaded.corpus
                           : corpus::sample_fraction(loaded.corpus, cfg.sample_fraction,
                                                     cfg.sample_seed);
            corpus::save_corpus(out, cfg.out_dir + "/sampled.csv", cfg.columns);
            auto prof = corpus::profile(out);
            std::printf("kept %zu rows, %zu censored (%.4f)\n", prof.total_rows,
                        prof.censored_rows, prof.censored_fraction);
            return 0;
        }
        if (split_cmd->parsed()) {
            auto loaded = corpus::load_corpus(cfg.out_dir + "/sampled.csv", cfg.columns);
            auto splits = corpus::split(loaded.corpus, cfg.split_ratios, cfg.split_seed);
            std::filesystem::create_directories(cfg.out_dir + "/split");
            corpus::save_corpus(splits.train, cfg.out_dir + "/split/train.csv", cfg.columns);
            corpus::save_corpus(splits.dev, cfg.out_dir + "/split/dev.csv", cfg.columns);
            corpus::save_corpus(splits.test, cfg.out_dir + "/split/test.csv", cfg.columns);
            std::printf("split sizes: %zu/%zu/%zu\n", splits.train.posts.size(),
                        splits.dev.posts.size(), splits.test.posts.size());
            return 0;
        }
        if (tokenize_cmd->parsed()) {
            auto dict = segmenter::load_dictionary(cfg.dictionary).dict;
            auto stopwords = load_stopwords_opt(cfg);
            std::filesystem::create_directories(cfg.out_dir + "/tokens");
            for (const char* name : {"train", "dev", "test"}) {
                auto loaded = corpus::load_corpus(
                    cfg.out_dir + "/split/" + name + ".csv", cfg.columns);
                auto tok = pipeline::tokenize_corpus(loaded.corpus, dict, stopwords);
                pipeline::save_tokenized(tok, cfg.out_dir + "/tokens/" + name + ".tsv");
                std::printf("%s: %zu/%zu rows tokenized\n", name, tok.size(),
                            loaded.corpus.posts.size());
            }
            return 0;
        }
        if (lexicon_cmd->parsed()) {
            auto train_tok = pipeline::load_tokenized(cfg.out_dir + "/tokens/train.tsv");
            auto lex = lexicon::build(train_tok);
            lexicon::save(lex, cfg.out_dir + "/lexicon.tsv");
            std::printf("lexicon: %zu words\n", lex.stats.size());
            return 0;
        }
        if (featurize_cmd->parsed() || train_cmd->parsed() || evaluate_cmd->parsed()) {
            // These stages recompute from the stored tokens; run-all keeps
            // everything in memory instead.
            auto lex = lexicon::load(cfg.out_dir + "/lexicon.tsv");
            auto train_tok = pipeline::load_tokenized(cfg.out_dir + "/tokens/train.tsv");
            auto eval_tok =
                pipeline::load_tokenized(cfg.out_dir + "/tokens/" + cfg.eval_split + ".tsv");
            std::filesystem::create_directories(cfg.out_dir + "/features");
            std::filesystem::create_directories(cfg.out_dir + "/models");
            std::filesystem::create_directories(cfg.out_dir + "/eval");

            std::vector<metrics::EvalReport> reports;
            for (auto kind : cfg.models) {
                const std::string name = features::to_string(kind);
                auto rows_of = [&](const std::vector<segmenter::TokenizedPost>& posts) {
                    std::vector<features::FeatureRow> rows;
                    for (const auto& post : posts)
                        rows.push_back({features::extract(
                                            kind, features::prob_vector(post.tokens, lex)),
                                        post.censored});
                    return rows;
                };
                auto train_rows = rows_of(train_tok);
                if (featurize_cmd->parsed()) {
                    std::printf("%s: %zu train rows, dim %zu\n", name.c_str(), train_rows.size(),
                                features::feature_dim(kind));
                    continue;
                }
                if (train_cmd->parsed()) {
                    auto model = trainer::fit(train_rows, cfg.hyper, kind);
                    trainer::save(model, cfg.out_dir + "/models/" + name + ".json", hash);
                    std::printf("%s: trained, final loss %.6f\n", name.c_str(),
                                model.train_loss_trace.back());
                    continue;
                }
                auto model = trainer::load(cfg.out_dir + "/models/" + name + ".json");
                std::vector<bool> labels;
                std::vector<double> scores;
                for (const auto& row : rows_of(eval_tok)) {
                    labels.push_back(row.label);
                    scores.push_back(trainer::predict_proba(model, row.features));
                }
                metrics::EvalReport report;
                report.model_kind = name;
                report.threshold = cfg.threshold;
                report.confusion = metrics::confusion(labels, scores, cfg.threshold);
                report.macro_f1 = metrics::macro_f1(report.confusion);
                report.curve = metrics::roc_curve(labels, scores);
                report.auc = metrics::auc(report.curve);
                pipeline::save_eval_report(report, cfg.out_dir + "/eval/" + name + ".json", hash);
                std::printf("%s: macro-F1 %.3f, AUC %.3f\n", name.c_str(), report.macro_f1,
                            report.auc);
                reports.push_back(std::move(report));
            }
            return 0;
        }
        std::fprintf(stderr, "no subcommand handled\n");
        return kExitInternal;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
}
