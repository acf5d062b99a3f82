#include "censorlab/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <regex>

#include "censorlab/errors.hpp"
#include "censorlab/utf8.hpp"

namespace censorlab::segmenter {

void SegmentDictionary::finalize() {
    total = 0;
    max_word_len = 1;
    for (const auto& [word, freq] : entries) {
        total += freq;
        size_t len = utf8::decode(word).size();
        if (len > max_word_len) max_word_len = len;
    }
}

DictionaryLoadResult load_dictionary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dictionary file: " + path);

    DictionaryLoadResult result;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            ++result.malformed_lines;
            continue;
        }
        std::string word = line.substr(0, tab);
        uint64_t freq = 0;
        try {
            freq = std::stoull(line.substr(tab + 1));
        } catch (const std::exception&) {
            ++result.malformed_lines;
            continue;
        }
        if (freq == 0) {
            ++result.malformed_lines;
            continue;
        }
        auto [it, inserted] = result.dict.entries.emplace(word, freq);
        if (!inserted && freq > it->second) it->second = freq;
    }
    if (result.dict.entries.empty())
        throw DataError("dictionary file holds no valid entries: " + path);
    result.dict.finalize();
    return result;
}

void save_dictionary(const SegmentDictionary& dict, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write dictionary file: " + path);
    for (const auto& [word, freq] : dict.entries) out << word << '\t' << freq << '\n';
    if (!out) throw IoError("write failed: " + path);
}

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stopword file: " + path);
    StopwordSet out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.insert(line);
    }
    return out;
}

std::vector<std::string> segment(const std::string& text, const SegmentDictionary& dict) {
    auto chars = utf8::split_code_points(text);
    size_t n = chars.size();
    if (n == 0) return {};

    const double log_total = std::log(static_cast<double>(dict.total));
    // Longest dictionary word, in code points, bounds the DAG edge length.
    size_t max_word_len = dict.max_word_len;
    if (max_word_len == 0) {
        max_word_len = 1;
        for (const auto& [word, freq] : dict.entries)
            max_word_len = std::max(max_word_len, utf8::decode(word).size());
    }

    struct Node {
        double score = -std::numeric_limits<double>::infinity();
        size_t token_count = 0;
        size_t next = 0;       // end position of the chosen word
        std::string word;
    };
    std::vector<Node> best(n + 1);
    best[n].score = 0.0;

    for (size_t i = n; i-- > 0;) {
        std::string word;
        for (size_t j = i + 1; j <= n && j - i <= max_word_len; ++j) {
            word += chars[j - 1];
            uint64_t freq = 0;
            if (auto it = dict.entries.find(word); it != dict.entries.end()) freq = it->second;
            else if (j - i > 1) continue;  // multi-char edges exist only for dictionary words
            else freq = 1;                 // single-char fallback
            double score = std::log(static_cast<double>(freq)) - log_total + best[j].score;

            const Node& cur = best[i];
            bool better;
            if (score > cur.score + 1e-12) {
                better = true;
            } else if (score < cur.score - 1e-12) {
                better = false;
            } else {
                size_t count = 1 + best[j].token_count;
                if (count != cur.token_count) better = count < cur.token_count;
                else better = word < cur.word;  // distinct ends give prefix-distinct words
            }
            if (better) {
                best[i].score = score;
                best[i].token_count = 1 + best[j].token_count;
                best[i].next = j;
                best[i].word = word;
            }
        }
    }

    std::vector<std::string> tokens;
    tokens.reserve(best[0].token_count);
    for (size_t i = 0; i < n; i = best[i].next) tokens.push_back(best[i].word);
    return tokens;
}

namespace {

const std::regex kNoiseRun(R"((@\S+|https?://\S+))");

bool is_noise_token(const std::string& token) {
    static const std::regex pattern(R"(^(@\S+|https?://\S+)$)");
    return std::regex_match(token, pattern);
}

}  // namespace

std::string strip_noise(const std::string& text) {
    return std::regex_replace(text, kNoiseRun, "");
}

std::vector<std::string> clean(const std::vector<std::string>& tokens,
                               const StopwordSet& stopwords,
                               const CjkRanges& cjk) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        if (stopwords.contains(token)) continue;
        if (!has_chinese(token, cjk)) continue;
        if (is_noise_token(token)) continue;
        out.push_back(token);
    }
    return out;
}

bool has_chinese(const std::string& text, const CjkRanges& cjk) {
    for (char32_t cp : utf8::decode(text))
        if (cjk.contains(cp)) return true;
    return false;
}

}  // namespace censorlab::segmenter
