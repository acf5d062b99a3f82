#include "censorlab/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "censorlab/errors.hpp"
#include "censorlab/lexicon.hpp"

namespace censorlab::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_known_keys(const json& obj, std::initializer_list<const char*> known,
                      const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("unknown config key '" + key + "' in " + where);
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

void write_sidecar(const std::string& artifact_path, const std::string& hash) {
    ordered_json meta;
    meta["config_hash"] = hash;
    write_text_file(artifact_path + ".meta.json", meta.dump(2) + "\n");
}

}  // namespace

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("malformed config " + path + ": " + e.what());
    }

    check_known_keys(doc,
                     {"input", "columns", "sample", "split", "dictionary", "stopwords", "lexicon",
                      "models", "hyper", "eval_split", "threshold", "out_dir"},
                     path);

    PipelineConfig cfg;
    cfg.input = doc.value("input", "");
    if (doc.contains("columns")) {
        const auto& c = doc["columns"];
        check_known_keys(c, {"id", "text", "flag", "timestamp"}, "columns");
        cfg.columns.id = c.value("id", cfg.columns.id);
        cfg.columns.text = c.value("text", cfg.columns.text);
        cfg.columns.flag = c.value("flag", cfg.columns.flag);
        cfg.columns.timestamp = c.value("timestamp", cfg.columns.timestamp);
    }
    if (doc.contains("sample")) {
        const auto& s = doc["sample"];
        check_known_keys(s, {"fraction", "seed"}, "sample");
        cfg.sample_fraction = s.value("fraction", cfg.sample_fraction);
        cfg.sample_seed = s.value("seed", cfg.sample_seed);
    }
    if (doc.contains("split")) {
        const auto& s = doc["split"];
        check_known_keys(s, {"train", "dev", "test", "seed"}, "split");
        cfg.split_ratios.train = s.value("train", cfg.split_ratios.train);
        cfg.split_ratios.dev = s.value("dev", cfg.split_ratios.dev);
        cfg.split_ratios.test = s.value("test", cfg.split_ratios.test);
        cfg.split_seed = s.value("seed", cfg.split_seed);
    }
    cfg.dictionary = doc.value("dictionary", "");
    cfg.stopwords = doc.value("stopwords", "");
    if (doc.contains("lexicon")) {
        const auto& l = doc["lexicon"];
        check_known_keys(l, {"min_count", "top_k"}, "lexicon");
        cfg.lexicon_min_count = l.value("min_count", cfg.lexicon_min_count);
        cfg.report_top_k = l.value("top_k", cfg.report_top_k);
    }
    if (doc.contains("models")) {
        cfg.models.clear();
        for (const auto& name : doc["models"])
            cfg.models.push_back(features::model_kind_from_string(name.get<std::string>()));
        if (cfg.models.empty()) throw ConfigError("config selects no models");
    }
    if (doc.contains("hyper")) {
        const auto& h = doc["hyper"];
        check_known_keys(h, {"learning_rate", "max_epochs", "tolerance", "l2", "seed"}, "hyper");
        cfg.hyper.learning_rate = h.value("learning_rate", cfg.hyper.learning_rate);
        cfg.hyper.max_epochs = h.value("max_epochs", cfg.hyper.max_epochs);
        cfg.hyper.tolerance = h.value("tolerance", cfg.hyper.tolerance);
        cfg.hyper.l2 = h.value("l2", cfg.hyper.l2);
        cfg.hyper.seed = h.value("seed", cfg.hyper.seed);
    }
    cfg.eval_split = doc.value("eval_split", cfg.eval_split);
    if (cfg.eval_split != "dev" && cfg.eval_split != "test")
        throw ConfigError("eval_split must be 'dev' or 'test'");
    cfg.threshold = doc.value("threshold", cfg.threshold);
    cfg.out_dir = doc.value("out_dir", cfg.out_dir);
    return cfg;
}

std::string config_to_json(const PipelineConfig& cfg) {
    ordered_json doc;
    doc["input"] = cfg.input;
    doc["columns"] = {{"id", cfg.columns.id},
                      {"text", cfg.columns.text},
                      {"flag", cfg.columns.flag},
                      {"timestamp", cfg.columns.timestamp}};
    doc["sample"] = {{"fraction", cfg.sample_fraction}, {"seed", cfg.sample_seed}};
    doc["split"] = {{"train", cfg.split_ratios.train},
                    {"dev", cfg.split_ratios.dev},
                    {"test", cfg.split_ratios.test},
                    {"seed", cfg.split_seed}};
    doc["dictionary"] = cfg.dictionary;
    doc["stopwords"] = cfg.stopwords;
    doc["lexicon"] = {{"min_count", cfg.lexicon_min_count}, {"top_k", cfg.report_top_k}};
    std::vector<std::string> models;
    for (auto kind : cfg.models) models.push_back(features::to_string(kind));
    doc["models"] = models;
    doc["hyper"] = {{"learning_rate", cfg.hyper.learning_rate},
                    {"max_epochs", cfg.hyper.max_epochs},
                    {"tolerance", cfg.hyper.tolerance},
                    {"l2", cfg.hyper.l2},
                    {"seed", cfg.hyper.seed}};
    doc["eval_split"] = cfg.eval_split;
    doc["threshold"] = cfg.threshold;
    doc["out_dir"] = cfg.out_dir;
    return doc.dump(2);
}

std::string config_hash(const PipelineConfig& cfg) {
    // FNV-1a 64 over the canonical rendering.
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : config_to_json(cfg)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool tokenize_post(const corpus::Post& post, const segmenter::SegmentDictionary& dict,
                   const segmenter::StopwordSet& stopwords, segmenter::TokenizedPost* out) {
    std::string text = segmenter::strip_noise(post.text);
    if (!segmenter::has_chinese(text)) return false;
    auto tokens = segmenter::clean(segmenter::segment(text, dict), stopwords);
    if (tokens.empty()) return false;
    out->id = post.id;
    out->tokens = std::move(tokens);
    out->censored = post.censored;
    return true;
}

std::vector<segmenter::TokenizedPost> tokenize_corpus(const corpus::Corpus& corpus,
                                                      const segmenter::SegmentDictionary& dict,
                                                      const segmenter::StopwordSet& stopwords) {
    std::vector<segmenter::TokenizedPost> out;
    out.reserve(corpus.posts.size());
    segmenter::TokenizedPost tp;
    for (const auto& post : corpus.posts)
        if (tokenize_post(post, dict, stopwords, &tp)) out.push_back(tp);
    return out;
}

void save_tokenized(const std::vector<segmenter::TokenizedPost>& posts, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write tokenized posts: " + path);
    for (const auto& post : posts) {
        out << post.id << '\t' << (post.censored ? '1' : '0') << '\t';
        for (size_t i = 0; i < post.tokens.size(); ++i) {
            if (i) out.put(' ');
            out << post.tokens[i];
        }
        out.put('\n');
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<segmenter::TokenizedPost> load_tokenized(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open tokenized posts: " + path);
    std::vector<segmenter::TokenizedPost> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw DataError("malformed tokenized line " + std::to_string(lineno) + " in " + path);
        segmenter::TokenizedPost post;
        post.id = line.substr(0, t1);
        post.censored = line.substr(t1 + 1, t2 - t1 - 1) == "1";
        std::istringstream tokens(line.substr(t2 + 1));
        std::string token;
        while (tokens >> token) post.tokens.push_back(token);
        if (post.tokens.empty())
            throw DataError("tokenized line " + std::to_string(lineno) + " has no tokens");
        out.push_back(std::move(post));
    }
    return out;
}

void save_eval_report(const metrics::EvalReport& report, const std::string& path,
                      const std::string& config_hash) {
    ordered_json doc;
    doc["model_kind"] = report.model_kind;
    doc["macro_f1"] = report.macro_f1;
    doc["auc"] = report.auc;
    doc["threshold"] = report.threshold;
    doc["confusion"] = {{"tp", report.confusion.tp},
                        {"fp", report.confusion.fp},
                        {"tn", report.confusion.tn},
                        {"fn", report.confusion.fn}};
    json points = json::array();
    for (const auto& p : report.curve.points) points.push_back({p.fpr, p.tpr});
    doc["roc_points"] = points;
    doc["provenance"] = {{"config_hash", config_hash}};
    write_text_file(path, doc.dump(2) + "\n");
}

metrics::EvalReport load_eval_report(const std::string& path, std::string* config_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open eval report: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError("malformed eval report " + path + ": " + e.what());
    }
    metrics::EvalReport report;
    report.model_kind = doc.at("model_kind").get<std::string>();
    report.macro_f1 = doc.at("macro_f1").get<double>();
    report.auc = doc.at("auc").get<double>();
    report.threshold = doc.at("threshold").get<double>();
    const auto& cm = doc.at("confusion");
    report.confusion = {cm.at("tp").get<uint64_t>(), cm.at("fp").get<uint64_t>(),
                        cm.at("tn").get<uint64_t>(), cm.at("fn").get<uint64_t>()};
    for (const auto& p : doc.at("roc_points"))
        report.curve.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (config_hash && doc.contains("provenance"))
        *config_hash = doc["provenance"].value("config_hash", "");
    return report;
}

namespace {

std::string render_comparison_text(const std::vector<metrics::EvalReport>& reports) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof(line), "%-10s %-10s %-10s\n", "model", "macro-F1", "AUC");
    out << line;
    out << "---------- ---------- ----------\n";
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line), "%-10s %-10.3f %-10.3f\n", r.model_kind.c_str(),
                      r.macro_f1, r.auc);
        out << line;
    }
    return out.str();
}

std::string render_comparison_csv(const std::vector<metrics::EvalReport>& reports) {
    std::ostringstream out;
    out << "model,macro_f1,auc\n";
    for (const auto& r : reports)
        out << r.model_kind << ',' << full_precision(r.macro_f1) << ','
            << full_precision(r.auc) << '\n';
    return out.str();
}

void emit_report_files(const std::vector<metrics::EvalReport>& reports,
                       const std::string& report_dir) {
    fs::create_directories(report_dir);
    write_text_file(report_dir + "/comparison.txt", render_comparison_text(reports));
    write_text_file(report_dir + "/comparison.csv", render_comparison_csv(reports));
    std::vector<std::pair<std::string, metrics::RocCurve>> curves;
    for (const auto& r : reports) curves.emplace_back(r.model_kind, r.curve);
    metrics::export_roc(curves, report_dir + "/roc");
}

}  // namespace

RunResult run_all(const PipelineConfig& cfg) {
    const std::string hash = config_hash(cfg);
    fs::create_directories(cfg.out_dir);
    fs::create_directories(cfg.out_dir + "/split");
    fs::create_directories(cfg.out_dir + "/tokens");
    fs::create_directories(cfg.out_dir + "/features");
    fs::create_directories(cfg.out_dir + "/models");
    fs::create_directories(cfg.out_dir + "/eval");

    // ingest + sample
    auto loaded = corpus::load_corpus(cfg.input, cfg.columns);
    auto sampled = corpus::sample_fraction(loaded.corpus, cfg.sample_fraction, cfg.sample_seed);
    corpus::save_corpus(sampled, cfg.out_dir + "/sampled.csv", cfg.columns);
    write_sidecar(cfg.out_dir + "/sampled.csv", hash);
    auto prof = corpus::profile(sampled);

    // split
    auto splits = corpus::split(sampled, cfg.split_ratios, cfg.split_seed);
    corpus::save_corpus(splits.train, cfg.out_dir + "/split/train.csv", cfg.columns);
    corpus::save_corpus(splits.dev, cfg.out_dir + "/split/dev.csv", cfg.columns);
    corpus::save_corpus(splits.test, cfg.out_dir + "/split/test.csv", cfg.columns);

    // tokenize
    auto dict_load = segmenter::load_dictionary(cfg.dictionary);
    segmenter::StopwordSet stopwords;
    if (!cfg.stopwords.empty()) stopwords = segmenter::load_stopwords(cfg.stopwords);
    auto train_tok = tokenize_corpus(splits.train, dict_load.dict, stopwords);
    auto dev_tok = tokenize_corpus(splits.dev, dict_load.dict, stopwords);
    auto test_tok = tokenize_corpus(splits.test, dict_load.dict, stopwords);
    save_tokenized(train_tok, cfg.out_dir + "/tokens/train.tsv");
    save_tokenized(dev_tok, cfg.out_dir + "/tokens/dev.tsv");
    save_tokenized(test_tok, cfg.out_dir + "/tokens/test.tsv");

    // lexicon (train split only, so dev/test labels never leak into features)
    auto lex = lexicon::build(train_tok);
    lex.built_from = cfg.out_dir + "/tokens/train.tsv";
    lexicon::save(lex, cfg.out_dir + "/lexicon.tsv");
    write_sidecar(cfg.out_dir + "/lexicon.tsv", hash);
    {
        std::ostringstream top;
        for (const auto& [word, count] : lexicon::top_by_count(lex, cfg.report_top_k))
            top << word << "\t\t" << count << '\n';
        write_text_file(cfg.out_dir + "/top_censored_count.tsv", top.str());
        std::ostringstream topp;
        for (const auto& [word, p] :
             lexicon::top_by_probability(lex, cfg.report_top_k, cfg.lexicon_min_count))
            topp << word << "\t\t" << full_precision(p) << '\n';
        write_text_file(cfg.out_dir + "/top_censored_probability.tsv", topp.str());
    }

    const auto& eval_tok = cfg.eval_split == "test" ? test_tok : dev_tok;

    RunResult result;
    result.profile = prof;
    for (auto kind : cfg.models) {
        const std::string name = features::to_string(kind);

        auto featurize = [&](const std::vector<segmenter::TokenizedPost>& posts,
                             const std::string& path) {
            std::vector<features::FeatureRow> rows;
            rows.reserve(posts.size());
            std::ofstream out(path, std::ios::binary);
            if (!out) throw IoError("cannot write feature file: " + path);
            out << "id";
            for (size_t j = 0; j < features::feature_dim(kind); ++j) out << ",f" << (j + 1);
            out << ",label\n";
            for (const auto& post : posts) {
                auto pv = features::prob_vector(post.tokens, lex);
                features::FeatureRow row{features::extract(kind, pv), post.censored};
                out << post.id;
                for (double f : row.features) out << ',' << full_precision(f);
                out << ',' << (post.censored ? '1' : '0') << '\n';
                rows.push_back(std::move(row));
            }
            if (!out) throw IoError("write failed: " + path);
            write_sidecar(path, hash);
            return rows;
        };
        auto train_rows = featurize(train_tok, cfg.out_dir + "/features/" + name + "_train.csv");
        auto eval_rows =
            featurize(eval_tok, cfg.out_dir + "/features/" + name + "_" + cfg.eval_split + ".csv");

        auto model = trainer::fit(train_rows, cfg.hyper, kind);
        trainer::save(model, cfg.out_dir + "/models/" + name + ".json", hash);

        std::vector<bool> labels;
        std::vector<double> scores;
        labels.reserve(eval_rows.size());
        for (const auto& row : eval_rows) {
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
        save_eval_report(report, cfg.out_dir + "/eval/" + name + ".json", hash);
        result.reports.push_back(std::move(report));
    }

    emit_report_files(result.reports, cfg.out_dir + "/report");

    ordered_json meta;
    meta["config_hash"] = hash;
    meta["config"] = json::parse(config_to_json(cfg));
    meta["rejected_rows"] = loaded.rejected_rows;
    meta["dictionary_malformed_lines"] = dict_load.malformed_lines;
    meta["profile"] = {{"total_rows", prof.total_rows},
                       {"censored_rows", prof.censored_rows},
                       {"censored_fraction", prof.censored_fraction}};
    meta["split_sizes"] = {{"train", splits.train.posts.size()},
                           {"dev", splits.dev.posts.size()},
                           {"test", splits.test.posts.size()}};
    write_text_file(cfg.out_dir + "/run_meta.json", meta.dump(2) + "\n");
    return result;
}

void report(const std::string& run_dir) {
    const std::string eval_dir = run_dir + "/eval";
    if (!fs::is_directory(eval_dir))
        throw IoError("run directory has no eval reports: " + run_dir);

    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(eval_dir))
        if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw DataError("no eval reports found in " + eval_dir);

    std::vector<metrics::EvalReport> reports;
    std::string first_hash;
    for (const auto& path : paths) {
        std::string hash;
        reports.push_back(load_eval_report(path, &hash));
        if (reports.size() == 1) first_hash = hash;
        else if (hash != first_hash)
            throw DataError("eval reports in " + eval_dir + " come from different configs");
    }
    emit_report_files(reports, run_dir + "/report");
}

}  // namespace censorlab::pipeline
