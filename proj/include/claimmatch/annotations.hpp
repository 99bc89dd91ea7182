#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "claimmatch/types.hpp"

namespace claimmatch {

struct MentionLabel {
    Mention value = Mention::NotMentioned;
    bool mentioned = false;
    size_t explicit_count = 0;
    size_t implicit_count = 0;
    size_t not_mentioned_count = 0;
};

// A claim is mentioned when a strict majority of the answers are Explicit
// or Implicit (>= 4 of 7); a mentioned claim is Explicit only when its
// explicit count strictly exceeds its implicit count.
inline MentionLabel aggregate_label(const std::vector<Mention>& answers) {
    if (answers.empty()) throw std::runtime_error("aggregate_label: no answers");
    MentionLabel label;
    for (Mention a : answers) {
        switch (a) {
            case Mention::Explicit: ++label.explicit_count; break;
            case Mention::Implicit: ++label.implicit_count; break;
            case Mention::NotMentioned: ++label.not_mentioned_count; break;
        }
    }
    size_t total = answers.size();
    size_t m = label.explicit_count + label.implicit_count;
    label.mentioned = 2 * m > total;  // strict majority
    if (!label.mentioned)
        label.value = Mention::NotMentioned;
    else
        label.value = label.explicit_count > label.implicit_count ? Mention::Explicit
                                                                  : Mention::Implicit;
    return label;
}

// (speech_id, claim_id) -> aggregated label
using LabelMap = std::map<std::pair<std::string, std::string>, MentionLabel>;

inline LabelMap aggregate_all(const std::vector<AnnotationRecord>& records,
                              bool skip_test = true) {
    std::map<std::pair<std::string, std::string>, std::vector<Mention>> groups;
    for (auto& r : records) {
        if (skip_test && r.is_test) continue;
        groups[{r.speech_id, r.claim_id}].push_back(r.answer);
    }
    LabelMap out;
    for (auto& [key, answers] : groups) out[key] = aggregate_label(answers);
    return out;
}

// Cohen's kappa over binarized (mentioned / not) label pairs, with
// marginal-product chance agreement. Degenerate tables where chance
// agreement is 1 yield kappa 1 under perfect agreement and 0 otherwise.
inline double cohen_kappa(const std::vector<std::pair<bool, bool>>& pairs) {
    if (pairs.empty()) throw std::runtime_error("cohen_kappa: no pairs");
    const double n = static_cast<double>(pairs.size());
    double agree = 0.0, a_pos = 0.0, b_pos = 0.0;
    for (auto& [a, b] : pairs) {
        if (a == b) agree += 1.0;
        if (a) a_pos += 1.0;
        if (b) b_pos += 1.0;
    }
    double po = agree / n;
    double pa = a_pos / n, pb = b_pos / n;
    double pe = pa * pb + (1.0 - pa) * (1.0 - pb);
    if (pe >= 1.0) return po >= 1.0 ? 1.0 : 0.0;
    return (po - pe) / (1.0 - pe);
}

struct TestClaimExpectation {
    std::string speech_id;
    std::string claim_id;
    bool expected_mentioned = false;
};

struct AnnotatorScore {
    std::string id;
    std::optional<double> kappa;  // mean kappa over qualifying peers
    int qualifying_peers = 0;     // peers sharing > 20 common questions
    bool eligible = false;        // >= 5 qualifying peers
    size_t test_answers = 0;
    size_t test_errors = 0;
    std::optional<double> test_error_rate;
};

struct AgreementReport {
    std::string common_definition;  // "questions" when every record has a page id, else "pairs"
    std::vector<AnnotatorScore> annotators;
    std::optional<double> overall;  // mean score over eligible annotators
    std::optional<double> macro_test_error;
    std::optional<double> micro_test_error;
};

constexpr int kMinCommonQuestions = 20;  // strictly more required
constexpr int kMinQualifyingPeers = 5;

inline AgreementReport agreement_report(const std::vector<AnnotationRecord>& records,
                                        const std::vector<TestClaimExpectation>& test_claims = {}) {
    AgreementReport rep;

    bool all_have_pages = !records.empty();
    for (auto& r : records)
        if (!r.question_id) all_have_pages = false;
    rep.common_definition = all_have_pages ? "questions" : "pairs";

    // Per annotator: item -> binarized answer, and the set of answered questions.
    std::map<std::string, std::map<std::pair<std::string, std::string>, bool>> items;
    std::map<std::string, std::set<std::string>> questions;
    for (auto& r : records) {
        bool mentioned = r.answer != Mention::NotMentioned;
        items[r.annotator_id][{r.speech_id, r.claim_id}] = mentioned;
        if (all_have_pages)
            questions[r.annotator_id].insert(*r.question_id);
        else
            questions[r.annotator_id].insert(r.speech_id + "\x1f" + r.claim_id);
    }

    std::map<std::pair<std::string, std::string>, bool> expectations;
    for (auto& t : test_claims) expectations[{t.speech_id, t.claim_id}] = t.expected_mentioned;

    std::vector<std::string> ids;
    for (auto& [id, m] : items) ids.push_back(id);

    double overall_sum = 0.0;
    size_t overall_n = 0;
    size_t total_test_answers = 0, total_test_errors = 0;
    double macro_sum = 0.0;
    size_t macro_n = 0;

    for (auto& id : ids) {
        AnnotatorScore score;
        score.id = id;
        double kappa_sum = 0.0;
        int kappa_n = 0;
        for (auto& peer : ids) {
            if (peer == id) continue;
            size_t common_questions = 0;
            for (auto& q : questions[id])
                if (questions[peer].count(q)) ++common_questions;
            if (common_questions <= kMinCommonQuestions) continue;
            std::vector<std::pair<bool, bool>> pairs;
            for (auto& [item, answer] : items[id]) {
                auto it = items[peer].find(item);
                if (it != items[peer].end()) pairs.emplace_back(answer, it->second);
            }
            if (pairs.empty()) continue;
            score.qualifying_peers++;
            kappa_sum += cohen_kappa(pairs);
            kappa_n++;
        }
        if (kappa_n > 0) score.kappa = kappa_sum / kappa_n;
        score.eligible = score.qualifying_peers >= kMinQualifyingPeers;
        if (score.eligible && score.kappa) {
            overall_sum += *score.kappa;
            ++overall_n;
        }
        for (auto& [item, answer] : items[id]) {
            auto it = expectations.find(item);
            if (it == expectations.end()) continue;
            score.test_answers++;
            if (answer != it->second) score.test_errors++;
        }
        if (score.test_answers > 0) {
            score.test_error_rate = static_cast<double>(score.test_errors) /
                                    static_cast<double>(score.test_answers);
            macro_sum += *score.test_error_rate;
            ++macro_n;
            total_test_answers += score.test_answers;
            total_test_errors += score.test_errors;
        }
        rep.annotators.push_back(std::move(score));
    }

    if (overall_n > 0) rep.overall = overall_sum / static_cast<double>(overall_n);
    if (macro_n > 0) rep.macro_test_error = macro_sum / static_cast<double>(macro_n);
    if (total_test_answers > 0)
        rep.micro_test_error =
            static_cast<double>(total_test_errors) / static_cast<double>(total_test_answers);
    return rep;
}

}  // namespace claimmatch
