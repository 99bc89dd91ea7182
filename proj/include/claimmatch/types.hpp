#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "claimmatch/text.hpp"

namespace claimmatch {

enum class TranscriptSource { ASR, Reference };

enum class FilterStatus { Retained, RejectedLength, RejectedNER, RejectedDemonstrative };

// Annotator answer; also used as the aggregated label value.
enum class Mention { Explicit, Implicit, NotMentioned };

enum class SplitTag { Dev, Test };

// Coarse POS tags (UPOS). X covers tokens with no sidecar annotation.
enum class Pos {
    ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM,
    PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X,
};

inline std::string to_string(TranscriptSource s) {
    return s == TranscriptSource::ASR ? "asr" : "reference";
}

inline TranscriptSource source_from_string(const std::string& s) {
    if (s == "asr") return TranscriptSource::ASR;
    if (s == "reference") return TranscriptSource::Reference;
    throw std::runtime_error("unknown transcript source: " + s);
}

inline std::string to_string(FilterStatus s) {
    switch (s) {
        case FilterStatus::Retained: return "retained";
        case FilterStatus::RejectedLength: return "rejected_length";
        case FilterStatus::RejectedNER: return "rejected_ner";
        case FilterStatus::RejectedDemonstrative: return "rejected_demonstrative";
    }
    return "";
}

inline FilterStatus filter_status_from_string(const std::string& s) {
    if (s == "retained") return FilterStatus::Retained;
    if (s == "rejected_length") return FilterStatus::RejectedLength;
    if (s == "rejected_ner") return FilterStatus::RejectedNER;
    if (s == "rejected_demonstrative") return FilterStatus::RejectedDemonstrative;
    throw std::runtime_error("unknown filter status: " + s);
}

inline std::string to_string(Mention m) {
    switch (m) {
        case Mention::Explicit: return "explicit";
        case Mention::Implicit: return "implicit";
        case Mention::NotMentioned: return "not_mentioned";
    }
    return "";
}

inline Mention mention_from_string(const std::string& s) {
    if (s == "explicit") return Mention::Explicit;
    if (s == "implicit") return Mention::Implicit;
    if (s == "not_mentioned") return Mention::NotMentioned;
    throw std::runtime_error("unknown answer: " + s);
}

inline std::string to_string(Pos p) {
    static const char* names[] = {"ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET",
                                  "INTJ", "NOUN", "NUM", "PART", "PRON", "PROPN",
                                  "PUNCT", "SCONJ", "SYM", "VERB", "X"};
    return names[static_cast<int>(p)];
}

inline Pos pos_from_string(const std::string& s) {
    static const std::unordered_map<std::string, Pos> map = {
        {"ADJ", Pos::ADJ},     {"ADP", Pos::ADP},   {"ADV", Pos::ADV},
        {"AUX", Pos::AUX},     {"CCONJ", Pos::CCONJ}, {"DET", Pos::DET},
        {"INTJ", Pos::INTJ},   {"NOUN", Pos::NOUN}, {"NUM", Pos::NUM},
        {"PART", Pos::PART},   {"PRON", Pos::PRON}, {"PROPN", Pos::PROPN},
        {"PUNCT", Pos::PUNCT}, {"SCONJ", Pos::SCONJ}, {"SYM", Pos::SYM},
        {"VERB", Pos::VERB},   {"X", Pos::X},       {"_", Pos::X},
    };
    auto it = map.find(s);
    if (it == map.end()) throw std::runtime_error("unknown POS tag: " + s);
    return it->second;
}

struct Token {
    std::string surface;  // lowercased
    std::string lemma;    // lowercased; falls back to surface
    Pos pos = Pos::X;
    bool is_stopword = false;
    std::optional<int> embedding_id;
};

inline std::vector<Token> make_tokens(const std::string& text) {
    std::vector<Token> out;
    for (auto& w : tokenize(text)) out.push_back(Token{w, w, Pos::X, false, std::nullopt});
    return out;
}

struct ParseEdge {
    int parent = -1;
    int child = -1;
    std::string relation;
};

// Dependency tree over a sentence's tokens. Node ids are token indices.
struct ParseTree {
    int node_count = 0;
    int root = -1;
    std::vector<ParseEdge> edges;
};

// Builds a tree from per-token head indices (-1 marks the root).
// Validates: single root, heads in range, acyclic.
inline ParseTree parse_tree_from_heads(const std::vector<int>& heads,
                                       const std::vector<std::string>& relations) {
    ParseTree t;
    t.node_count = static_cast<int>(heads.size());
    for (int i = 0; i < t.node_count; ++i) {
        int h = heads[i];
        if (h == -1) {
            if (t.root != -1) throw std::runtime_error("parse tree has multiple roots");
            t.root = i;
        } else if (h < 0 || h >= t.node_count) {
            throw std::runtime_error("parse head out of range");
        } else {
            t.edges.push_back(ParseEdge{h, i, i < static_cast<int>(relations.size())
                                                   ? relations[i]
                                                   : std::string()});
        }
    }
    if (t.node_count > 0 && t.root == -1) throw std::runtime_error("parse tree has no root");
    for (int i = 0; i < t.node_count; ++i) {
        int cur = i, steps = 0;
        while (cur != t.root) {
            cur = heads[cur] == -1 ? t.root : heads[cur];
            if (++steps > t.node_count) throw std::runtime_error("parse tree contains a cycle");
        }
    }
    return t;
}

struct EntitySpan {
    int first = 0;  // token index, inclusive
    int last = 0;   // token index, inclusive
    std::string type;
};

struct Sentence {
    int index = 0;
    std::string text;
    std::vector<Token> tokens;
    std::optional<ParseTree> parse;
    std::vector<std::string> concepts;  // concept-lexicon ids
};

struct Motion {
    std::string id;
    std::string text;
    std::string topic;  // the single Wikipedia concept the motion focuses on
};

struct Speech {
    std::string id;
    std::string motion_id;
    std::string speaker_id;
    TranscriptSource source = TranscriptSource::ASR;
    std::vector<Sentence> sentences;
    std::optional<std::string> audio_path;
    std::optional<std::string> transcript;            // raw, as loaded
    std::optional<std::string> reference_transcript;  // manual transcript, for WER
};

struct Claim {
    std::string id;
    std::string motion_id;
    std::string text;
    std::vector<Token> tokens;
    std::optional<ParseTree> parse;
    std::vector<std::string> concepts;
    std::vector<EntitySpan> entities;
    std::optional<bool> is_valid_claim;
    std::optional<bool> stance_correct;
    std::optional<FilterStatus> filter_status;
};

struct AnnotationRecord {
    std::string speech_id;
    std::string claim_id;
    std::string annotator_id;
    Mention answer = Mention::NotMentioned;
    std::optional<std::string> question_id;  // annotation page; at most 20 claims each
    bool is_test = false;
};

struct Dataset {
    std::vector<Motion> motions;
    std::vector<Speech> speeches;
    std::vector<Claim> claims;
    std::vector<AnnotationRecord> annotations;
    std::unordered_map<std::string, SplitTag> split;  // motion_id -> tag

    const Motion* find_motion(const std::string& id) const {
        for (auto& m : motions)
            if (m.id == id) return &m;
        return nullptr;
    }
    const Speech* find_speech(const std::string& id) const {
        for (auto& s : speeches)
            if (s.id == id) return &s;
        return nullptr;
    }
    const Claim* find_claim(const std::string& id) const {
        for (auto& c : claims)
            if (c.id == id) return &c;
        return nullptr;
    }
};

}  // namespace claimmatch
