#include "censorlab/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "censorlab/errors.hpp"

namespace censorlab::lexicon {

CensorLexicon build(const std::vector<segmenter::TokenizedPost>& posts) {
    CensorLexicon lex;
    for (const auto& post : posts) {
        for (const auto& token : post.tokens) {
            WordStats& ws = lex.stats[token];
            ++ws.total;
            if (post.censored) ++ws.censored;
        }
    }
    return lex;
}

CensorLexicon merge(const CensorLexicon& a, const CensorLexicon& b) {
    CensorLexicon out = a;
    for (const auto& [word, ws] : b.stats) {
        WordStats& dst = out.stats[word];
        dst.total += ws.total;
        dst.censored += ws.censored;
    }
    return out;
}

double probability(const CensorLexicon& lex, const std::string& word) {
    auto it = lex.stats.find(word);
    if (it == lex.stats.end()) return 0.0;
    return static_cast<double>(it->second.censored) / static_cast<double>(it->second.total);
}

std::vector<std::pair<std::string, uint64_t>> top_by_count(const CensorLexicon& lex, size_t k) {
    std::vector<std::pair<std::string, uint64_t>> items;
    items.reserve(lex.stats.size());
    for (const auto& [word, ws] : lex.stats) items.emplace_back(word, ws.censored);
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (items.size() > k) items.resize(k);
    return items;
}

std::vector<std::pair<std::string, double>> top_by_probability(const CensorLexicon& lex, size_t k,
                                                               uint64_t min_count) {
    struct Row {
        std::string word;
        double p;
        uint64_t total;
    };
    std::vector<Row> rows;
    for (const auto& [word, ws] : lex.stats) {
        if (ws.total < min_count) continue;
        rows.push_back({word, static_cast<double>(ws.censored) / static_cast<double>(ws.total),
                        ws.total});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.p != b.p) return a.p > b.p;
        if (a.total != b.total) return a.total > b.total;
        return a.word < b.word;
    });
    if (rows.size() > k) rows.resize(k);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(rows.size());
    for (auto& row : rows) out.emplace_back(std::move(row.word), row.p);
    return out;
}

void save(const CensorLexicon& lex, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write lexicon file: " + path);
    for (const auto& [word, ws] : lex.stats)
        out << word << '\t' << ws.total << '\t' << ws.censored << '\n';
    if (!out) throw IoError("write failed: " + path);
}

CensorLexicon load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file: " + path);
    CensorLexicon lex;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw DataError("malformed lexicon line " + std::to_string(lineno) + " in " + path);
        WordStats ws;
        ws.total = std::stoull(line.substr(t1 + 1, t2 - t1 - 1));
        ws.censored = std::stoull(line.substr(t2 + 1));
        if (ws.censored > ws.total || ws.total == 0)
            throw DataError("inconsistent counts on lexicon line " + std::to_string(lineno));
        lex.stats.emplace(line.substr(0, t1), ws);
    }
    return lex;
}

}  // namespace censorlab::lexicon
