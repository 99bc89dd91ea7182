#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimmatch/annotations.hpp"
#include "claimmatch/evalkit.hpp"
#include "claimmatch/lr.hpp"
#include "claimmatch/simfeat.hpp"
#include "claimmatch/textrep.hpp"
#include "claimmatch/types.hpp"
#include "claimmatch/util.hpp"

namespace claimmatch {

enum class Method { HM, LR };

inline std::string to_string(Method m) { return m == Method::HM ? "hm" : "lr"; }

inline Method method_from_string(const std::string& s) {
    if (s == "hm") return Method::HM;
    if (s == "lr") return Method::LR;
    throw std::runtime_error("unknown method: " + s);
}

struct MatcherConfig {
    int k = 3;                     // top-k sentences kept after ranking
    double cosine_threshold = 0.6; // similarity pre-filter
    Method method = Method::HM;
};

struct SentenceScore {
    int index = 0;
    HmFeatures features;
};

// Sentences passing the cosine pre-filter, ranked by the harmonic mean of
// the three similarity features (ties broken by ascending index) and
// truncated to k. May return fewer than k, including none.
inline std::vector<SentenceScore> select_sentences(const Speech& speech, const Claim& claim,
                                                   const MatcherConfig& config,
                                                   const ResourceBundle& r) {
    TextVector claim_vec = text_vector(claim.tokens, r);
    std::vector<SentenceScore> candidates;
    for (auto& s : speech.sentences) {
        if (cosine(claim_vec, text_vector(s.tokens, r)) < config.cosine_threshold) continue;
        candidates.push_back(SentenceScore{s.index, hm_features(claim, s, r)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.features.hm != b.features.hm) return a.features.hm > b.features.hm;
        return a.index < b.index;
    });
    if (static_cast<int>(candidates.size()) > config.k) candidates.resize(config.k);
    return candidates;
}

// Mean of the selected sentences' harmonic-mean scores; 0 when nothing
// survives the pre-filter.
inline double score_hm(const Speech& speech, const Claim& claim, const MatcherConfig& config,
                       const ResourceBundle& r) {
    std::vector<SentenceScore> sel = select_sentences(speech, claim, config, r);
    if (sel.empty()) return 0.0;
    double sum = 0.0;
    for (auto& s : sel) sum += s.features.hm;
    return sum / static_cast<double>(sel.size());
}

// Per-measure average of the 23 similarity features over the selected
// sentences; a pair with an empty selection gets the zero vector.
inline std::array<double, kLrFeatureCount> averaged_lr_features(
    const Speech& speech, const Claim& claim, const MatcherConfig& config,
    const ResourceBundle& r, bool* parse_missing = nullptr) {
    std::vector<SentenceScore> sel = select_sentences(speech, claim, config, r);
    std::array<double, kLrFeatureCount> avg{};
    if (parse_missing) *parse_missing = false;
    if (sel.empty()) return avg;
    for (auto& s : sel) {
        LrFeatureVector f = lr_features(claim, speech.sentences[s.index], r);
        if (parse_missing && f.parse_missing) *parse_missing = true;
        for (int j = 0; j < kLrFeatureCount; ++j) avg[j] += f.values[j];
    }
    for (double& v : avg) v /= static_cast<double>(sel.size());
    return avg;
}

struct LrModel {
    std::vector<double> weights;  // dimension matches the feature schema
    double bias = 0.0;
    std::string feature_schema_version = kLrSchemaVersion;
    int k = 3;
    double cosine_threshold = 0.6;
    double l2_lambda = 0.1;
    int iterations = 0;
    int folds = 0;
    uint64_t seed = 0;
};

inline nlohmann::json model_to_json(const LrModel& m) {
    return nlohmann::json{{"schema_version", m.feature_schema_version},
                          {"weights", m.weights},
                          {"bias", m.bias},
                          {"k", m.k},
                          {"cosine_threshold", m.cosine_threshold},
                          {"l2_lambda", m.l2_lambda},
                          {"iterations", m.iterations},
                          {"folds", m.folds},
                          {"seed", m.seed}};
}

inline LrModel model_from_json(const nlohmann::json& j) {
    LrModel m;
    m.feature_schema_version = j.at("schema_version").get<std::string>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.k = j.at("k").get<int>();
    m.cosine_threshold = j.at("cosine_threshold").get<double>();
    m.l2_lambda = j.at("l2_lambda").get<double>();
    m.iterations = j.value("iterations", 0);
    m.folds = j.value("folds", 0);
    m.seed = j.value("seed", uint64_t{0});
    return m;
}

inline void check_model_schema(const LrModel& m) {
    if (m.feature_schema_version != kLrSchemaVersion)
        throw std::runtime_error("model schema '" + m.feature_schema_version +
                                 "' does not match '" + kLrSchemaVersion + "'");
    if (static_cast<int>(m.weights.size()) != kLrFeatureCount)
        throw std::runtime_error("model has " + std::to_string(m.weights.size()) +
                                 " weights, expected " + std::to_string(kLrFeatureCount));
}

// Logistic of the averaged feature vector under the model.
inline double score_lr(const Speech& speech, const Claim& claim, const LrModel& model,
                       const ResourceBundle& r) {
    check_model_schema(model);
    MatcherConfig config;
    config.k = model.k;
    config.cosine_threshold = model.cosine_threshold;
    config.method = Method::LR;
    std::array<double, kLrFeatureCount> x = averaged_lr_features(speech, claim, config, r);
    double z = model.bias;
    for (int j = 0; j < kLrFeatureCount; ++j) z += model.weights[j] * x[j];
    return sigmoid(z);
}

struct ScoredMatch {
    std::string speech_id;
    std::string claim_id;
    Method method = Method::HM;
    double score = 0.0;
    std::vector<std::pair<int, double>> selected;  // (sentence index, hm), hm descending
};

// One match per claim, ordered by score descending then claim id ascending.
inline std::vector<ScoredMatch> match_speech(const Speech& speech,
                                             const std::vector<Claim>& claims,
                                             const MatcherConfig& config, const ResourceBundle& r,
                                             const LrModel* model = nullptr) {
    if (config.method == Method::LR && !model)
        throw std::runtime_error("LR scoring requires a trained model");
    std::vector<ScoredMatch> out;
    out.reserve(claims.size());
    for (auto& claim : claims) {
        ScoredMatch m;
        m.speech_id = speech.id;
        m.claim_id = claim.id;
        m.method = config.method;
        MatcherConfig cfg = config;
        if (config.method == Method::LR) {
            cfg.k = model->k;
            cfg.cosine_threshold = model->cosine_threshold;
        }
        for (auto& s : select_sentences(speech, claim, cfg, r))
            m.selected.emplace_back(s.index, s.features.hm);
        m.score = config.method == Method::HM ? score_hm(speech, claim, cfg, r)
                                              : score_lr(speech, claim, *model, r);
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const ScoredMatch& a, const ScoredMatch& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.claim_id < b.claim_id;
    });
    return out;
}

inline nlohmann::json to_json(const ScoredMatch& m) {
    nlohmann::json sel = nlohmann::json::array();
    for (auto& [idx, hm] : m.selected) sel.push_back({idx, hm});
    return nlohmann::json{{"speech_id", m.speech_id},
                          {"claim_id", m.claim_id},
                          {"method", to_string(m.method)},
                          {"score", m.score},
                          {"selected", sel}};
}

// --- Training ------------------------------------------------------------------

struct LabeledPair {
    const Speech* speech = nullptr;
    const Claim* claim = nullptr;
    int label = 0;
};

struct TrainOptions {
    std::vector<int> k_grid = {1, 3, 5};
    std::vector<double> lambda_grid = {0.01, 0.1, 1.0, 10.0};
    int folds = 5;
    double cosine_threshold = 0.6;
    uint64_t seed = 0;
    double tol = 1e-7;
    int max_iter = 5000;
};

struct CvCell {
    int k = 0;
    double lambda = 0.0;
    double mean_auc = 0.0;
};

namespace detail {

// Per-sentence feature rows for the top-max(k) selection of a pair; the
// averaged vector for any smaller k is a prefix mean.
struct PairFeatureRows {
    std::vector<std::array<double, kLrFeatureCount>> rows;

    std::vector<double> averaged(int k) const {
        std::vector<double> avg(kLrFeatureCount, 0.0);
        int n = std::min<int>(k, static_cast<int>(rows.size()));
        if (n == 0) return avg;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < kLrFeatureCount; ++j) avg[j] += rows[i][j];
        for (double& v : avg) v /= static_cast<double>(n);
        return avg;
    }
};

}  // namespace detail

// Trains the logistic-regression matcher on labeled (speech, claim) pairs.
// k and the regularization strength are selected by cross-validation over
// motion-level folds, ranked by mean fold AUC; the model is then refit on
// all pairs with the winning settings.
inline LrModel train_lr(const std::vector<LabeledPair>& pairs, const ResourceBundle& r,
                        const TrainOptions& opt = {}, std::vector<CvCell>* cv_table = nullptr,
                        unsigned workers = 1) {
    if (pairs.empty()) throw std::runtime_error("train_lr: no training pairs");
    bool has_pos = false, has_neg = false;
    for (auto& p : pairs) (p.label ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw std::runtime_error("train_lr: training data contains a single class");

    int k_max = *std::max_element(opt.k_grid.begin(), opt.k_grid.end());
    MatcherConfig sel_cfg;
    sel_cfg.k = k_max;
    sel_cfg.cosine_threshold = opt.cosine_threshold;

    std::vector<detail::PairFeatureRows> features(pairs.size());
    parallel_for(pairs.size(), workers, [&](size_t i) {
        const LabeledPair& p = pairs[i];
        for (auto& s : select_sentences(*p.speech, *p.claim, sel_cfg, r)) {
            LrFeatureVector f = lr_features(*p.claim, p.speech->sentences[s.index], r);
            features[i].rows.push_back(f.values);
        }
    });

    // Motion-level folds, deterministically shuffled.
    std::vector<std::string> motions;
    for (auto& p : pairs) motions.push_back(p.speech->motion_id);
    std::sort(motions.begin(), motions.end());
    motions.erase(std::unique(motions.begin(), motions.end()), motions.end());
    Rng rng(opt.seed);
    shuffle(motions, rng);
    std::map<std::string, int> fold_of;
    int folds = std::max(2, std::min<int>(opt.folds, static_cast<int>(motions.size())));
    for (size_t i = 0; i < motions.size(); ++i)
        fold_of[motions[i]] = static_cast<int>(i % folds);

    std::vector<int> labels(pairs.size());
    std::vector<int> fold(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        labels[i] = pairs[i].label;
        fold[i] = fold_of[pairs[i].speech->motion_id];
    }

    double best_auc = -1.0;
    int best_k = opt.k_grid.front();
    double best_lambda = opt.lambda_grid.front();
    for (int k : opt.k_grid) {
        std::vector<std::vector<double>> x(pairs.size());
        for (size_t i = 0; i < pairs.size(); ++i) x[i] = features[i].averaged(k);
        for (double lambda : opt.lambda_grid) {
            double auc_sum = 0.0;
            int auc_n = 0;
            for (int f = 0; f < folds; ++f) {
                std::vector<std::vector<double>> train_x;
                std::vector<int> train_y;
                Scored held;
                for (size_t i = 0; i < pairs.size(); ++i) {
                    if (fold[i] == f) continue;
                    train_x.push_back(x[i]);
                    train_y.push_back(labels[i]);
                }
                bool tp = false, tn = false;
                for (int yv : train_y) (yv ? tp : tn) = true;
                if (train_x.empty() || !tp || !tn) continue;
                LrFit fit = lr_fit(train_x, train_y, lambda, opt.tol, opt.max_iter);
                bool hp = false, hn = false;
                for (size_t i = 0; i < pairs.size(); ++i) {
                    if (fold[i] != f) continue;
                    double z = fit.bias;
                    for (int j = 0; j < kLrFeatureCount; ++j) z += fit.weights[j] * x[i][j];
                    held.emplace_back(sigmoid(z), labels[i]);
                    (labels[i] ? hp : hn) = true;
                }
                if (!hp || !hn) continue;  // degenerate fold, skipped
                auc_sum += roc_auc(held);
                ++auc_n;
            }
            double mean_auc = auc_n > 0 ? auc_sum / auc_n : 0.0;
            if (cv_table) cv_table->push_back(CvCell{k, lambda, mean_auc});
            if (mean_auc > best_auc) {
                best_auc = mean_auc;
                best_k = k;
                best_lambda = lambda;
            }
        }
    }

    std::vector<std::vector<double>> x(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) x[i] = features[i].averaged(best_k);
    LrFit fit = lr_fit(x, labels, best_lambda, opt.tol, opt.max_iter);

    LrModel model;
    model.weights = fit.weights;
    model.bias = fit.bias;
    model.k = best_k;
    model.cosine_threshold = opt.cosine_threshold;
    model.l2_lambda = best_lambda;
    model.iterations = fit.iterations;
    model.folds = folds;
    model.seed = opt.seed;
    return model;
}

}  // namespace claimmatch
