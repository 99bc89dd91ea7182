#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "claimmatch/resources.hpp"
#include "claimmatch/textrep.hpp"
#include "claimmatch/types.hpp"

namespace claimmatch {

// --- Harmonic means ---------------------------------------------------------
// Inputs are clamped to [0, 1]; any zero component forces a zero result.

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

inline double hm2(double a, double b) {
    a = clamp01(a);
    b = clamp01(b);
    if (a == 0.0 || b == 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
}

inline double hm3(double a, double b, double c) {
    a = clamp01(a);
    b = clamp01(b);
    c = clamp01(c);
    if (a == 0.0 || b == 0.0 || c == 0.0) return 0.0;
    return 3.0 / (1.0 / a + 1.0 / b + 1.0 / c);
}

// --- Concept Coverage -------------------------------------------------------

// Fraction of the claim's concepts found in the sentence; 0 when the claim
// has no identified concepts.
inline double concept_coverage(const std::vector<std::string>& claim_concepts,
                               const std::vector<std::string>& sentence_concepts) {
    if (claim_concepts.empty()) return 0.0;
    std::set<std::string> cs(claim_concepts.begin(), claim_concepts.end());
    std::set<std::string> ss(sentence_concepts.begin(), sentence_concepts.end());
    int hits = 0;
    for (auto& c : cs)
        if (ss.count(c)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(cs.size());
}

inline double concept_coverage(const Claim& claim, const Sentence& sentence) {
    return concept_coverage(claim.concepts, sentence.concepts);
}

// --- Parse Pairs -------------------------------------------------------------

namespace detail {

// Cosine between two tokens' embeddings, negatives clamped to 0.
// Tokens without an embedding behave as zero vectors.
inline double token_cos(const Token& a, const Token& b, const ResourceBundle& r) {
    const DenseVec* va = r.token_embedding(a);
    const DenseVec* vb = r.token_embedding(b);
    if (!va || !vb) return 0.0;
    return std::max(0.0, cosine(*va, *vb));
}

}  // namespace detail

// Each claim edge takes its best harmonic-mean similarity against the
// sentence edges (parent-parent and child-child embedding cosines); the
// score is the mean over claim edges. 0 when either tree has no edges.
inline double parse_pairs(const ParseTree& claim_tree, const std::vector<Token>& claim_tokens,
                          const ParseTree& sentence_tree,
                          const std::vector<Token>& sentence_tokens, const ResourceBundle& r) {
    if (claim_tree.edges.empty() || sentence_tree.edges.empty()) return 0.0;
    double sum = 0.0;
    for (auto& ce : claim_tree.edges) {
        double best = 0.0;
        for (auto& se : sentence_tree.edges) {
            double p = detail::token_cos(claim_tokens[ce.parent], sentence_tokens[se.parent], r);
            double c = detail::token_cos(claim_tokens[ce.child], sentence_tokens[se.child], r);
            best = std::max(best, hm2(p, c));
        }
        sum += best;
    }
    return sum / static_cast<double>(claim_tree.edges.size());
}

inline double parse_pairs(const Claim& claim, const Sentence& sentence, const ResourceBundle& r) {
    if (!claim.parse || !sentence.parse) return 0.0;
    return parse_pairs(*claim.parse, claim.tokens, *sentence.parse, sentence.tokens, r);
}

// --- Explicit Semantic Analysis ----------------------------------------------

// idf-weighted sum of the tokens' sparse concept vectors.
inline SparseVec esa_vector(const std::vector<Token>& tokens, const ResourceBundle& r) {
    std::map<int, double> acc;
    for (auto& t : tokens) {
        if (r.is_stop(t.surface)) continue;
        const SparseVec* v = r.esa_vector(t.surface);
        if (!v) continue;
        double w = r.idf_of(t.surface);
        for (auto& [cid, cw] : v->items) acc[cid] += w * cw;
    }
    SparseVec out;
    out.items.assign(acc.begin(), acc.end());
    return out;
}

inline double sparse_cosine(const SparseVec& a, const SparseVec& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    size_t i = 0, j = 0;
    while (i < a.items.size() && j < b.items.size()) {
        if (a.items[i].first == b.items[j].first) {
            dot += a.items[i].second * b.items[j].second;
            ++i;
            ++j;
        } else if (a.items[i].first < b.items[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    for (auto& [id, w] : a.items) na += w * w;
    for (auto& [id, w] : b.items) nb += w * w;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline double esa_similarity(const std::vector<Token>& claim_tokens,
                             const std::vector<Token>& sentence_tokens,
                             const ResourceBundle& r) {
    return sparse_cosine(esa_vector(claim_tokens, r), esa_vector(sentence_tokens, r));
}

// --- The HM feature triple ---------------------------------------------------

struct HmFeatures {
    double concept_coverage = 0.0;  // [0, 1]
    double parse_pairs = 0.0;       // [0, 1]
    double esa = 0.0;               // [-1, 1]
    double hm = 0.0;                // [0, 1]
};

inline HmFeatures hm_features(const Claim& claim, const Sentence& sentence,
                              const ResourceBundle& r) {
    HmFeatures f;
    f.concept_coverage = concept_coverage(claim, sentence);
    f.parse_pairs = parse_pairs(claim, sentence, r);
    f.esa = esa_similarity(claim.tokens, sentence.tokens, r);
    f.hm = hm3(f.concept_coverage, f.parse_pairs, f.esa);
    return f;
}

// --- The 23-feature LR vector -------------------------------------------------
//
// The schema is fixed and versioned; the groups and their sizes are
//   w2v (5), parse (6), POS (5), concept (2), lexical (5).
// Every fraction uses the convention empty-source-set -> 0.

constexpr int kLrFeatureCount = 23;
constexpr const char* kLrSchemaVersion = "lr23-v1";

inline const std::array<const char*, kLrFeatureCount>& lr_feature_names() {
    static const std::array<const char*, kLrFeatureCount> names = {
        "w2v_avgmax_cs", "w2v_avgmax_sc", "w2v_max", "w2v_mean", "w2v_avgmax_cs_idf",
        "parse_edge_avgmax_cs", "parse_edge_avgmax_sc", "parse_node_avgmax_cs",
        "parse_node_avgmax_sc", "parse_edge_min_cs", "parse_root_cos",
        "pos_noun_cover", "pos_verb_cover", "pos_noun_avgmax", "pos_verb_avgmax",
        "pos_adj_avgmax",
        "concept_cover_cs", "concept_cover_sc",
        "lex_1gram_surface", "lex_1gram_lemma", "lex_2gram_surface", "lex_2gram_lemma",
        "lex_3gram_lemma",
    };
    return names;
}

struct LrFeatureVector {
    std::array<double, kLrFeatureCount> values{};
    bool parse_missing = false;
};

namespace detail {

inline std::vector<const DenseVec*> content_vectors(const std::vector<Token>& toks,
                                                    const ResourceBundle& r,
                                                    std::vector<double>* idf = nullptr) {
    std::vector<const DenseVec*> out;
    for (auto& t : toks) {
        if (r.is_stop(t.surface)) continue;
        const DenseVec* v = r.token_embedding(t);
        if (!v) continue;
        out.push_back(v);
        if (idf) idf->push_back(r.idf_of(t.surface));
    }
    return out;
}

inline double avg_of_max_cos(const std::vector<const DenseVec*>& from,
                             const std::vector<const DenseVec*>& to,
                             const std::vector<double>* weights = nullptr) {
    if (from.empty() || to.empty()) return 0.0;
    double sum = 0.0, wsum = 0.0;
    for (size_t i = 0; i < from.size(); ++i) {
        double best = -1.0;
        for (auto* v : to) best = std::max(best, cosine(*from[i], *v));
        double w = weights ? (*weights)[i] : 1.0;
        sum += w * best;
        wsum += w;
    }
    return wsum > 0.0 ? sum / wsum : 0.0;
}

// POS classes used by the POS feature group.
inline bool is_noun(Pos p) { return p == Pos::NOUN || p == Pos::PROPN; }
inline bool is_verb(Pos p) { return p == Pos::VERB; }
inline bool is_adj(Pos p) { return p == Pos::ADJ; }

template <typename Pred>
std::vector<const Token*> tokens_with(const std::vector<Token>& toks, Pred pred) {
    std::vector<const Token*> out;
    for (auto& t : toks)
        if (pred(t.pos)) out.push_back(&t);
    return out;
}

// Fraction of `from` tokens whose lemma occurs among `to` lemmas.
inline double lemma_coverage(const std::vector<const Token*>& from,
                             const std::vector<Token>& to) {
    if (from.empty()) return 0.0;
    std::set<std::string> lemmas;
    for (auto& t : to) lemmas.insert(t.lemma);
    int hits = 0;
    for (auto* t : from)
        if (lemmas.count(t->lemma)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(from.size());
}

template <typename Pred>
double pos_avgmax(const std::vector<Token>& claim, const std::vector<Token>& sentence,
                  const ResourceBundle& r, Pred pred) {
    std::vector<const DenseVec*> cv, sv;
    for (auto& t : claim)
        if (pred(t.pos))
            if (auto* v = r.token_embedding(t)) cv.push_back(v);
    for (auto& t : sentence)
        if (pred(t.pos))
            if (auto* v = r.token_embedding(t)) sv.push_back(v);
    return avg_of_max_cos(cv, sv);
}

// n-grams over the non-stopword token sequence; each n-gram is embedded as
// the tf-idf-weighted mean of its member-word embeddings (surface or lemma
// keys, per variant).
inline std::vector<DenseVec> ngram_vectors(const std::vector<Token>& toks, int n, bool use_lemma,
                                           const ResourceBundle& r) {
    std::vector<const Token*> content;
    for (auto& t : toks)
        if (!r.is_stop(t.surface)) content.push_back(&t);
    std::vector<DenseVec> out;
    if (static_cast<int>(content.size()) < n) return out;
    for (size_t i = 0; i + n <= content.size(); ++i) {
        DenseVec acc(kEmbeddingDim, 0.0);
        double wsum = 0.0;
        for (int k = 0; k < n; ++k) {
            const std::string& key = use_lemma ? content[i + k]->lemma : content[i + k]->surface;
            const DenseVec* v = r.embedding(key);
            if (!v) continue;
            double w = r.idf_of(key);
            if (w <= 0.0) continue;
            for (int d = 0; d < kEmbeddingDim; ++d) acc[d] += w * (*v)[d];
            wsum += w;
        }
        if (wsum > 0.0)
            for (double& x : acc) x /= wsum;
        out.push_back(std::move(acc));
    }
    return out;
}

inline double ngram_avgmax(const std::vector<Token>& claim, const std::vector<Token>& sentence,
                           int n, bool use_lemma, const ResourceBundle& r) {
    std::vector<DenseVec> cg = ngram_vectors(claim, n, use_lemma, r);
    if (cg.empty()) return 0.0;
    std::vector<DenseVec> sg = ngram_vectors(sentence, n, use_lemma, r);
    double sum = 0.0;
    for (auto& c : cg) {
        double best = 0.0;
        for (auto& s : sg) best = std::max(best, cosine(c, s));
        sum += best;
    }
    return sum / static_cast<double>(cg.size());
}

// Directional edge-level score with a pluggable combiner for the
// (parent-cos, child-cos) pair.
template <typename Combine>
double edge_avgmax(const ParseTree& from_tree, const std::vector<Token>& from_toks,
                   const ParseTree& to_tree, const std::vector<Token>& to_toks,
                   const ResourceBundle& r, Combine combine) {
    if (from_tree.edges.empty() || to_tree.edges.empty()) return 0.0;
    double sum = 0.0;
    for (auto& fe : from_tree.edges) {
        double best = 0.0;
        for (auto& te : to_tree.edges) {
            double p = token_cos(from_toks[fe.parent], to_toks[te.parent], r);
            double c = token_cos(from_toks[fe.child], to_toks[te.child], r);
            best = std::max(best, combine(p, c));
        }
        sum += best;
    }
    return sum / static_cast<double>(from_tree.edges.size());
}

// Node-level avg-of-max over all parse nodes (stopwords included).
inline double node_avgmax(const std::vector<Token>& from, const std::vector<Token>& to,
                          const ResourceBundle& r) {
    std::vector<const DenseVec*> fv, tv;
    for (auto& t : from)
        if (auto* v = r.token_embedding(t)) fv.push_back(v);
    for (auto& t : to)
        if (auto* v = r.token_embedding(t)) tv.push_back(v);
    return avg_of_max_cos(fv, tv);
}

}  // namespace detail

inline LrFeatureVector lr_features(const Claim& claim, const Sentence& sentence,
                                   const ResourceBundle& r) {
    using namespace detail;
    LrFeatureVector f;
    const std::vector<Token>& ct = claim.tokens;
    const std::vector<Token>& st = sentence.tokens;

    // w2v group
    std::vector<double> c_idf;
    std::vector<const DenseVec*> cv = content_vectors(ct, r, &c_idf);
    std::vector<const DenseVec*> sv = content_vectors(st, r);
    f.values[0] = avg_of_max_cos(cv, sv);
    f.values[1] = avg_of_max_cos(sv, cv);
    double mx = 0.0, mean = 0.0;
    if (!cv.empty() && !sv.empty()) {
        double best = -1.0, sum = 0.0;
        for (auto* a : cv)
            for (auto* b : sv) {
                double cs = cosine(*a, *b);
                best = std::max(best, cs);
                sum += cs;
            }
        mx = best;
        mean = sum / static_cast<double>(cv.size() * sv.size());
    }
    f.values[2] = mx;
    f.values[3] = mean;
    f.values[4] = avg_of_max_cos(cv, sv, &c_idf);

    // parse group
    if (claim.parse && sentence.parse) {
        auto hm = [](double p, double c) { return hm2(p, c); };
        auto mn = [](double p, double c) { return std::min(p, c); };
        f.values[5] = edge_avgmax(*claim.parse, ct, *sentence.parse, st, r, hm);
        f.values[6] = edge_avgmax(*sentence.parse, st, *claim.parse, ct, r, hm);
        f.values[7] = node_avgmax(ct, st, r);
        f.values[8] = node_avgmax(st, ct, r);
        f.values[9] = edge_avgmax(*claim.parse, ct, *sentence.parse, st, r, mn);
        f.values[10] = token_cos(ct[claim.parse->root], st[sentence.parse->root], r);
    } else {
        f.parse_missing = true;
    }

    // POS group
    f.values[11] = lemma_coverage(tokens_with(ct, is_noun), st);
    f.values[12] = lemma_coverage(tokens_with(ct, is_verb), st);
    f.values[13] = pos_avgmax(ct, st, r, is_noun);
    f.values[14] = pos_avgmax(ct, st, r, is_verb);
    f.values[15] = pos_avgmax(ct, st, r, is_adj);

    // concept group
    f.values[16] = concept_coverage(claim.concepts, sentence.concepts);
    f.values[17] = concept_coverage(sentence.concepts, claim.concepts);

    // lexical group
    f.values[18] = ngram_avgmax(ct, st, 1, false, r);
    f.values[19] = ngram_avgmax(ct, st, 1, true, r);
    f.values[20] = ngram_avgmax(ct, st, 2, false, r);
    f.values[21] = ngram_avgmax(ct, st, 2, true, r);
    f.values[22] = ngram_avgmax(ct, st, 3, true, r);

    return f;
}

}  // namespace claimmatch
