#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "claimmatch/types.hpp"
#include "claimmatch/util.hpp"

namespace claimmatch {

constexpr int kEmbeddingDim = 200;

using DenseVec = std::vector<double>;

// Sparse concept-weight vector, items sorted by concept id.
struct SparseVec {
    std::vector<std::pair<int, double>> items;

    void add(int id, double w) {
        for (auto& it : items) {
            if (it.first == id) {
                it.second += w;
                return;
            }
        }
        items.emplace_back(id, w);
    }
    void sort() {
        std::sort(items.begin(), items.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
};

// Multi-word concept strings with ids; the same id may appear under several
// alias strings. Spotting is greedy longest-match over lemmatized tokens,
// left to right, non-overlapping.
class ConceptLexicon {
public:
    void add(const std::string& id, const std::string& surface) {
        std::vector<std::string> toks = tokenize(surface);
        if (toks.empty()) return;
        max_len_ = std::max(max_len_, toks.size());
        entries_[join(toks, " ")] = id;
        aliases_[id].push_back(join(toks, " "));
    }

    bool empty() const { return entries_.empty(); }
    size_t size() const { return entries_.size(); }

    // Concept id for an exact (tokenized, lowercased) string, if any.
    std::optional<std::string> lookup(const std::string& text) const {
        auto it = entries_.find(join(tokenize(text), " "));
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<std::string>& aliases_of(const std::string& id) const {
        static const std::vector<std::string> none;
        auto it = aliases_.find(id);
        return it == aliases_.end() ? none : it->second;
    }

    std::vector<std::string> spot(const std::vector<Token>& tokens) const {
        std::vector<std::string> found;
        if (entries_.empty()) return found;
        size_t i = 0;
        const size_t n = tokens.size();
        while (i < n) {
            size_t best = 0;
            const std::string* best_id = nullptr;
            std::string key;
            for (size_t len = 1; len <= max_len_ && i + len <= n; ++len) {
                if (len == 1)
                    key = tokens[i].lemma;
                else
                    key += " " + tokens[i + len - 1].lemma;
                auto it = entries_.find(key);
                if (it != entries_.end()) {
                    best = len;
                    best_id = &it->second;
                }
            }
            if (best_id) {
                found.push_back(*best_id);
                i += best;
            } else {
                ++i;
            }
        }
        return found;
    }

private:
    std::unordered_map<std::string, std::string> entries_;  // alias tokens -> id
    std::unordered_map<std::string, std::vector<std::string>> aliases_;
    size_t max_len_ = 0;
};

struct ResourceBundle {
    std::vector<std::string> vocab;
    std::vector<DenseVec> vectors;  // parallel to vocab, each of dim 200
    std::unordered_map<std::string, int> vocab_index;
    std::unordered_map<std::string, double> idf;
    double max_idf = 0.0;
    std::unordered_set<std::string> stopwords;
    ConceptLexicon lexicon;
    std::unordered_map<std::string, SparseVec> esa;

    void add_embedding(const std::string& word, DenseVec v) {
        if (static_cast<int>(v.size()) != kEmbeddingDim)
            throw std::runtime_error("embedding for '" + word + "' has dimension " +
                                     std::to_string(v.size()) + ", expected " +
                                     std::to_string(kEmbeddingDim));
        auto [it, inserted] = vocab_index.emplace(word, static_cast<int>(vocab.size()));
        if (!inserted) throw std::runtime_error("duplicate embedding for '" + word + "'");
        vocab.push_back(word);
        vectors.push_back(std::move(v));
    }

    void set_idf(const std::string& word, double value) {
        if (value < 0.0)
            throw std::runtime_error("negative idf for '" + word + "'");
        idf[word] = value;
        max_idf = std::max(max_idf, value);
    }

    std::optional<int> embedding_id(const std::string& word) const {
        auto it = vocab_index.find(word);
        if (it == vocab_index.end()) return std::nullopt;
        return it->second;
    }

    const DenseVec* embedding(const std::string& word) const {
        auto it = vocab_index.find(word);
        return it == vocab_index.end() ? nullptr : &vectors[it->second];
    }

    const DenseVec* token_embedding(const Token& t) const {
        if (t.embedding_id && *t.embedding_id >= 0 &&
            *t.embedding_id < static_cast<int>(vectors.size()))
            return &vectors[*t.embedding_id];
        return embedding(t.surface);
    }

    // Unseen words get the maximum idf in the table.
    double idf_of(const std::string& word) const {
        auto it = idf.find(word);
        return it == idf.end() ? max_idf : it->second;
    }

    bool is_stop(const std::string& word) const { return stopwords.count(word) > 0; }

    const SparseVec* esa_vector(const std::string& word) const {
        auto it = esa.find(word);
        return it == esa.end() ? nullptr : &it->second;
    }
};

struct ResourcePaths {
    std::filesystem::path embeddings;
    std::filesystem::path idf;
    std::filesystem::path stopwords;
    std::filesystem::path concepts;
    std::filesystem::path esa;

    static ResourcePaths from_dir(const std::filesystem::path& dir) {
        return ResourcePaths{dir / "embeddings.txt", dir / "idf.tsv", dir / "stopwords.txt",
                             dir / "concepts.tsv", dir / "esa.jsonl"};
    }
};

namespace detail {

inline std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing resource file: " + path.string());
    return in;
}

}  // namespace detail

// embeddings.txt: "word v1 ... v200", space separated.
inline void load_embeddings(const std::filesystem::path& path, ResourceBundle& b) {
    std::ifstream in = detail::open_or_throw(path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::istringstream iss(line);
        std::string word;
        iss >> word;
        DenseVec v;
        v.reserve(kEmbeddingDim);
        double x;
        while (iss >> x) v.push_back(x);
        if (static_cast<int>(v.size()) != kEmbeddingDim)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": embedding for '" + word + "' has dimension " +
                                     std::to_string(v.size()) + ", expected " +
                                     std::to_string(kEmbeddingDim));
        b.add_embedding(word, std::move(v));
    }
}

// idf.tsv: "word<TAB>idf".
inline void load_idf(const std::filesystem::path& path, ResourceBundle& b) {
    std::ifstream in = detail::open_or_throw(path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cols = split_char(trim(line), '\t');
        if (cols.size() != 2)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 2 tab-separated columns");
        try {
            b.set_idf(cols[0], std::stod(cols[1]));
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": bad idf value '" + cols[1] + "'");
        }
    }
}

inline void load_stopwords(const std::filesystem::path& path, ResourceBundle& b) {
    std::ifstream in = detail::open_or_throw(path);
    std::string line;
    while (std::getline(in, line)) {
        std::string w = trim(line);
        if (!w.empty()) b.stopwords.insert(lowercase_ascii(w));
    }
}

// concepts.tsv: "id<TAB>surface"; repeated ids define aliases.
inline void load_concepts(const std::filesystem::path& path, ResourceBundle& b) {
    std::ifstream in = detail::open_or_throw(path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cols = split_char(trim(line), '\t');
        if (cols.size() != 2)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 2 tab-separated columns");
        b.lexicon.add(cols[0], cols[1]);
    }
}

// esa.jsonl: {"word": "...", "concepts": [[concept_id, weight], ...]}.
inline void load_esa(const std::filesystem::path& path, ResourceBundle& b) {
    std::ifstream in = detail::open_or_throw(path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
        std::string word = j.at("word").get<std::string>();
        SparseVec v;
        for (auto& item : j.at("concepts")) {
            int cid = item.at(0).get<int>();
            double w = item.at(1).get<double>();
            if (w < 0.0)
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": negative concept weight for '" + word + "'");
            v.add(cid, w);
        }
        v.sort();
        b.esa[word] = std::move(v);
    }
}

inline ResourceBundle load_resources(const ResourcePaths& paths) {
    ResourceBundle b;
    load_embeddings(paths.embeddings, b);
    load_idf(paths.idf, b);
    load_stopwords(paths.stopwords, b);
    load_concepts(paths.concepts, b);
    load_esa(paths.esa, b);
    return b;
}

// --- Resource-aware annotation of loaded corpus values -----------------

inline void annotate(std::vector<Token>& tokens, const ResourceBundle& b) {
    for (auto& t : tokens) {
        t.is_stopword = b.is_stop(t.surface);
        t.embedding_id = b.embedding_id(t.surface);
    }
}

inline void annotate(Sentence& s, const ResourceBundle& b) {
    annotate(s.tokens, b);
    s.concepts = b.lexicon.spot(s.tokens);
}

inline void annotate(Speech& sp, const ResourceBundle& b) {
    for (auto& s : sp.sentences) annotate(s, b);
}

inline void annotate(Claim& c, const ResourceBundle& b) {
    annotate(c.tokens, b);
    c.concepts = b.lexicon.spot(c.tokens);
}

inline void annotate(Dataset& d, const ResourceBundle& b) {
    for (auto& sp : d.speeches) annotate(sp, b);
    for (auto& c : d.claims) annotate(c, b);
}

}  // namespace claimmatch
