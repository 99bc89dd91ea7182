#pragma once

#include <set>
#include <string>
#include <vector>

#include "claimmatch/resources.hpp"
#include "claimmatch/types.hpp"

namespace claimmatch {

struct FilterConfig {
    int max_tokens = 10;
    std::set<std::string> demonstratives = {"this", "that", "these", "those", "such"};
};

namespace detail {

inline bool is_clause_boundary(const Token& t) {
    if (t.pos != Pos::PUNCT) return false;
    return t.surface == "," || t.surface == ";" || t.surface == ":" || t.surface == "." ||
           t.surface == "!" || t.surface == "?";
}

// Names under which an entity counts as the motion's own topic: the
// tokenized concept string plus every lexicon alias sharing its id.
inline std::set<std::string> topic_names(const Motion& motion, const ConceptLexicon* lexicon) {
    std::set<std::string> names;
    std::string canon = join(tokenize(motion.topic), " ");
    if (!canon.empty()) names.insert(canon);
    if (lexicon) {
        if (auto id = lexicon->lookup(motion.topic)) {
            for (auto& alias : lexicon->aliases_of(*id)) names.insert(alias);
        }
    }
    return names;
}

}  // namespace detail

// Applies the three pre-matching rejection rules. Reported reasons follow
// the fixed precedence length > NER > demonstrative; retention itself is
// the conjunction and order-independent.
inline FilterStatus filter_claim(const Claim& claim, const Motion& motion,
                                 const FilterConfig& config,
                                 const ConceptLexicon* lexicon = nullptr) {
    if (claim.tokens.empty())
        throw std::runtime_error("claim '" + claim.id + "' has no token annotation");

    // (i) length: more than max_tokens word tokens
    int words = 0;
    for (auto& t : claim.tokens)
        if (t.pos != Pos::PUNCT) ++words;
    if (words > config.max_tokens) return FilterStatus::RejectedLength;

    // (ii) named entities other than the topic itself
    if (!claim.entities.empty()) {
        std::set<std::string> topic = detail::topic_names(motion, lexicon);
        for (auto& e : claim.entities) {
            std::vector<std::string> lemmas;
            for (int i = e.first; i <= e.last && i < static_cast<int>(claim.tokens.size()); ++i)
                lemmas.push_back(claim.tokens[i].lemma);
            if (!topic.count(join(lemmas, " "))) return FilterStatus::RejectedNER;
        }
    }

    // (iii) unresolved demonstratives: claim-initial, or pronominal use
    // (no following noun within the clause). The pronominal test needs POS
    // tags; without any it is skipped and only the claim-initial rule applies.
    bool has_pos = false;
    for (auto& t : claim.tokens)
        if (t.pos != Pos::X) has_pos = true;
    const size_t n = claim.tokens.size();
    for (size_t i = 0; i < n; ++i) {
        const Token& t = claim.tokens[i];
        if (!config.demonstratives.count(t.surface)) continue;
        if (i == 0) return FilterStatus::RejectedDemonstrative;
        if (!has_pos) continue;
        bool resolved = false;
        for (size_t j = i + 1; j < n; ++j) {
            if (detail::is_clause_boundary(claim.tokens[j])) break;
            if (claim.tokens[j].pos == Pos::NOUN || claim.tokens[j].pos == Pos::PROPN) {
                resolved = true;
                break;
            }
        }
        if (!resolved) return FilterStatus::RejectedDemonstrative;
    }

    return FilterStatus::Retained;
}

inline void filter_claims(std::vector<Claim>& claims, const Motion& motion,
                          const FilterConfig& config, const ConceptLexicon* lexicon = nullptr) {
    for (auto& c : claims) c.filter_status = filter_claim(c, motion, config, lexicon);
}

}  // namespace claimmatch
