#pragma once

#include <cmath>
#include <vector>

#include "claimmatch/resources.hpp"
#include "claimmatch/types.hpp"

namespace claimmatch {

// idf-weighted embedding average of a text's non-stopword tokens.
// support counts the contributing tokens; a text without any is all-zero.
struct TextVector {
    DenseVec values = DenseVec(kEmbeddingDim, 0.0);
    int support = 0;
};

inline TextVector text_vector(const std::vector<Token>& tokens, const ResourceBundle& b) {
    TextVector v;
    double weight_sum = 0.0;
    for (auto& t : tokens) {
        if (b.is_stop(t.surface)) continue;
        const DenseVec* e = b.token_embedding(t);
        if (!e) continue;  // out-of-vocabulary words add nothing to the normalizer
        double w = b.idf_of(t.surface);
        if (w <= 0.0) continue;  // idf 0 carries no weight either
        for (int d = 0; d < kEmbeddingDim; ++d) v.values[d] += w * (*e)[d];
        weight_sum += w;
        v.support++;
    }
    if (weight_sum > 0.0)
        for (double& x : v.values) x /= weight_sum;
    return v;
}

inline double dot(const DenseVec& a, const DenseVec& b) {
    double s = 0.0;
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const DenseVec& a) { return std::sqrt(dot(a, a)); }

// Cosine similarity; 0 when either vector has zero norm, so an empty
// representation never passes the similarity pre-filter.
inline double cosine(const DenseVec& a, const DenseVec& b) {
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot(a, b) / (na * nb);
}

inline double cosine(const TextVector& a, const TextVector& b) {
    return cosine(a.values, b.values);
}

}  // namespace claimmatch
