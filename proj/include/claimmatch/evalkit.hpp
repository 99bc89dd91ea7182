#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "claimmatch/annotations.hpp"
#include "claimmatch/types.hpp"

namespace claimmatch {

// (score, binary label) pairs
using Scored = std::vector<std::pair<double, int>>;

namespace detail {

inline void require_two_classes(const Scored& scores) {
    bool pos = false, neg = false;
    for (auto& [s, y] : scores) (y ? pos : neg) = true;
    if (!pos || !neg)
        throw std::runtime_error("metric requires at least one positive and one negative");
}

}  // namespace detail

// ROC-AUC as the Mann-Whitney concordance probability: ties between a
// positive and a negative score count 0.5. Computed via average ranks.
inline double roc_auc(Scored scores) {
    if (scores.empty()) throw std::runtime_error("roc_auc: empty input");
    detail::require_two_classes(scores);
    std::sort(scores.begin(), scores.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const size_t n = scores.size();
    double pos_rank_sum = 0.0;
    size_t positives = 0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[j].first == scores[i].first) ++j;
        double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (size_t k = i; k < j; ++k) {
            if (scores[k].second) {
                pos_rank_sum += avg_rank;
                ++positives;
            }
        }
        i = j;
    }
    size_t negatives = n - positives;
    double u = pos_rank_sum - 0.5 * static_cast<double>(positives) *
                                  static_cast<double>(positives + 1);
    return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

struct PrPoint {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

// One point per distinct score (predict positive when score >= threshold),
// plus a final point above the maximum where recall is 0 and precision is
// 1.0 by convention. Points are sorted by ascending threshold.
inline std::vector<PrPoint> pr_curve(Scored scores) {
    if (scores.empty()) throw std::runtime_error("pr_curve: empty input");
    detail::require_two_classes(scores);
    std::sort(scores.begin(), scores.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const size_t n = scores.size();
    size_t total_pos = 0;
    for (auto& [s, y] : scores) total_pos += y ? 1 : 0;

    std::vector<PrPoint> curve;
    size_t below_pos = 0, below_all = 0;  // strictly below the current threshold
    size_t i = 0;
    while (i < n) {
        double t = scores[i].first;
        size_t tp = total_pos - below_pos;
        size_t predicted = n - below_all;
        PrPoint p;
        p.threshold = t;
        p.precision = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 1.0;
        p.recall = static_cast<double>(tp) / static_cast<double>(total_pos);
        curve.push_back(p);
        while (i < n && scores[i].first == t) {
            below_pos += scores[i].second ? 1 : 0;
            ++below_all;
            ++i;
        }
    }
    PrPoint top;
    top.threshold = std::nextafter(scores.back().first, std::numeric_limits<double>::infinity());
    top.precision = 1.0;
    top.recall = 0.0;
    curve.push_back(top);
    return curve;
}

// (substitutions + insertions + deletions) / |reference| under a unit-cost
// minimum-edit-distance alignment.
inline double word_error_rate(const std::vector<std::string>& hypothesis,
                              const std::vector<std::string>& reference) {
    if (reference.empty()) throw std::runtime_error("word_error_rate: empty reference");
    const size_t h = hypothesis.size(), r = reference.size();
    std::vector<size_t> prev(r + 1), cur(r + 1);
    for (size_t j = 0; j <= r; ++j) prev[j] = j;
    for (size_t i = 1; i <= h; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= r; ++j) {
            size_t sub = prev[j - 1] + (hypothesis[i - 1] == reference[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return static_cast<double>(prev[r]) / static_cast<double>(r);
}

// Normalization applied before WER: lowercase, strip punctuation.
inline std::vector<std::string> wer_tokens(const std::string& text) { return tokenize(text); }

inline double word_error_rate(const std::string& hypothesis, const std::string& reference) {
    return word_error_rate(wer_tokens(hypothesis), wer_tokens(reference));
}

// --- Dataset statistics -------------------------------------------------------

struct DatasetStats {
    size_t pairs = 0;
    size_t speeches = 0;
    size_t claims_annotated = 0;
    double pct_mentioned = 0.0;           // of annotated pairs
    double pct_explicit = 0.0;            // of annotated pairs
    double mean_mentioned_per_speech = 0.0;
    double pct_agree_5of7 = 0.0;          // binarized agreement >= 5/7 of the group
    double pct_claims_mentioned_once = 0.0;
    double pct_speeches_with_mention = 0.0;
    double pct_speeches_no_claims = 0.0;
    std::optional<double> mean_wer;       // ASR speeches with a reference transcript
    double mean_sentences_per_speech = 0.0;
    double mean_tokens_per_speech = 0.0;
    double mean_claims_per_speech = 0.0;
    bool empty_labels = false;
};

inline DatasetStats dataset_stats(const Dataset& d, const LabelMap& labels) {
    DatasetStats st;
    st.pairs = labels.size();
    st.speeches = d.speeches.size();
    st.empty_labels = labels.empty();

    size_t mentioned = 0, explicit_n = 0, agree = 0;
    std::map<std::string, size_t> mentioned_per_speech;
    std::set<std::string> claims_seen, claims_mentioned;
    for (auto& [key, label] : labels) {
        claims_seen.insert(key.second);
        size_t total = label.explicit_count + label.implicit_count + label.not_mentioned_count;
        size_t m = label.explicit_count + label.implicit_count;
        if (label.mentioned) {
            ++mentioned;
            mentioned_per_speech[key.first]++;
            claims_mentioned.insert(key.second);
        }
        if (label.value == Mention::Explicit) ++explicit_n;
        if (total > 0) {
            size_t modal = std::max(m, label.not_mentioned_count);
            if (7.0 * static_cast<double>(modal) >= 5.0 * static_cast<double>(total)) ++agree;
        }
    }
    st.claims_annotated = claims_seen.size();
    if (st.pairs > 0) {
        st.pct_mentioned = 100.0 * static_cast<double>(mentioned) / static_cast<double>(st.pairs);
        st.pct_explicit = 100.0 * static_cast<double>(explicit_n) / static_cast<double>(st.pairs);
        st.pct_agree_5of7 = 100.0 * static_cast<double>(agree) / static_cast<double>(st.pairs);
    }
    if (!claims_seen.empty())
        st.pct_claims_mentioned_once = 100.0 * static_cast<double>(claims_mentioned.size()) /
                                       static_cast<double>(claims_seen.size());

    std::map<std::string, size_t> claims_per_motion;
    for (auto& c : d.claims) claims_per_motion[c.motion_id]++;

    size_t speeches_with_mention = 0, speeches_no_claims = 0;
    size_t sentence_total = 0, token_total = 0, claim_total = 0;
    double wer_sum = 0.0;
    size_t wer_n = 0;
    for (auto& sp : d.speeches) {
        auto it = mentioned_per_speech.find(sp.id);
        if (it != mentioned_per_speech.end() && it->second > 0) ++speeches_with_mention;
        if (claims_per_motion[sp.motion_id] == 0) ++speeches_no_claims;
        claim_total += claims_per_motion[sp.motion_id];
        sentence_total += sp.sentences.size();
        for (auto& s : sp.sentences) token_total += s.tokens.size();
        if (sp.source == TranscriptSource::ASR && sp.reference_transcript) {
            std::vector<std::string> hyp;
            for (auto& s : sp.sentences) {
                auto t = wer_tokens(s.text);
                hyp.insert(hyp.end(), t.begin(), t.end());
            }
            auto ref = wer_tokens(*sp.reference_transcript);
            if (!ref.empty()) {
                wer_sum += word_error_rate(hyp, ref);
                ++wer_n;
            }
        }
    }
    if (st.speeches > 0) {
        double ns = static_cast<double>(st.speeches);
        st.mean_mentioned_per_speech = static_cast<double>(mentioned) / ns;
        st.pct_speeches_with_mention = 100.0 * static_cast<double>(speeches_with_mention) / ns;
        st.pct_speeches_no_claims = 100.0 * static_cast<double>(speeches_no_claims) / ns;
        st.mean_sentences_per_speech = static_cast<double>(sentence_total) / ns;
        st.mean_tokens_per_speech = static_cast<double>(token_total) / ns;
        st.mean_claims_per_speech = static_cast<double>(claim_total) / ns;
    }
    if (wer_n > 0) st.mean_wer = wer_sum / static_cast<double>(wer_n);
    return st;
}

}  // namespace claimmatch
