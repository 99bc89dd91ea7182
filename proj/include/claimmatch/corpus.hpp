#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "claimmatch/resources.hpp"
#include "claimmatch/types.hpp"
#include "claimmatch/util.hpp"

namespace claimmatch {

using nlohmann::json;

namespace detail {

template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
        try {
            fn(j, lineno);
        } catch (const json::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
}

inline std::optional<std::string> opt_string(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<std::string>();
}

inline std::optional<bool> opt_bool(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<bool>();
}

}  // namespace detail

// --- Loading ------------------------------------------------------------

// motions.jsonl: {"id", "text", "concept"}
inline std::vector<Motion> load_motions(const std::filesystem::path& path) {
    std::vector<Motion> out;
    std::unordered_set<std::string> seen;
    detail::for_each_jsonl(path, [&](const json& j, size_t) {
        Motion m;
        m.id = j.at("id").get<std::string>();
        m.text = j.at("text").get<std::string>();
        m.topic = j.at("concept").get<std::string>();
        if (m.topic.empty()) throw std::runtime_error("motion '" + m.id + "' has empty concept");
        if (!seen.insert(m.id).second)
            throw std::runtime_error("duplicate motion id '" + m.id + "'");
        out.push_back(std::move(m));
    });
    return out;
}

// speeches.jsonl: {"id", "motion_id", "speaker_id", "source",
//                  "transcript" | "sentences": [..], "audio_path"?,
//                  "reference_transcript"?}
// Raw transcripts are segmented by the rule-based segmenter.
inline std::vector<Speech> load_speeches(const std::filesystem::path& path) {
    std::vector<Speech> out;
    std::unordered_set<std::string> seen;
    detail::for_each_jsonl(path, [&](const json& j, size_t) {
        Speech sp;
        sp.id = j.at("id").get<std::string>();
        if (!seen.insert(sp.id).second)
            throw std::runtime_error("duplicate speech id '" + sp.id + "'");
        sp.motion_id = j.at("motion_id").get<std::string>();
        sp.speaker_id = j.at("speaker_id").get<std::string>();
        sp.source = source_from_string(j.at("source").get<std::string>());
        sp.audio_path = detail::opt_string(j, "audio_path");
        sp.reference_transcript = detail::opt_string(j, "reference_transcript");

        std::vector<std::string> texts;
        if (j.contains("sentences")) {
            for (auto& s : j.at("sentences")) {
                std::string t = trim(s.get<std::string>());
                if (!t.empty()) texts.push_back(t);
            }
        } else {
            std::string raw = j.at("transcript").get<std::string>();
            sp.transcript = raw;
            texts = segment_sentences(raw);
        }
        if (texts.empty()) throw std::runtime_error("empty speech '" + sp.id + "'");
        int idx = 0;
        for (auto& t : texts) {
            Sentence s;
            s.index = idx++;
            s.text = t;
            s.tokens = make_tokens(t);
            sp.sentences.push_back(std::move(s));
        }
        out.push_back(std::move(sp));
    });
    return out;
}

// claims.jsonl: {"id", "motion_id", "text", "is_valid_claim"?,
//                "stance_correct"?, "filter_status"?}
inline std::vector<Claim> load_claims(const std::filesystem::path& path) {
    std::vector<Claim> out;
    std::unordered_set<std::string> seen;
    detail::for_each_jsonl(path, [&](const json& j, size_t) {
        Claim c;
        c.id = j.at("id").get<std::string>();
        if (!seen.insert(c.id).second)
            throw std::runtime_error("duplicate claim id '" + c.id + "'");
        c.motion_id = j.at("motion_id").get<std::string>();
        c.text = j.at("text").get<std::string>();
        c.tokens = make_tokens(c.text);
        c.is_valid_claim = detail::opt_bool(j, "is_valid_claim");
        c.stance_correct = detail::opt_bool(j, "stance_correct");
        if (auto s = detail::opt_string(j, "filter_status"))
            c.filter_status = filter_status_from_string(*s);
        out.push_back(std::move(c));
    });
    return out;
}

// annotations.jsonl: {"speech_id", "claim_id", "annotator_id", "answer",
//                     "question_id"?, "is_test"?}
inline std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
    std::vector<AnnotationRecord> out;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    detail::for_each_jsonl(path, [&](const json& j, size_t) {
        AnnotationRecord r;
        r.speech_id = j.at("speech_id").get<std::string>();
        r.claim_id = j.at("claim_id").get<std::string>();
        r.annotator_id = j.at("annotator_id").get<std::string>();
        r.answer = mention_from_string(j.at("answer").get<std::string>());
        r.question_id = detail::opt_string(j, "question_id");
        if (auto t = detail::opt_bool(j, "is_test")) r.is_test = *t;
        if (!seen.insert({r.speech_id, r.claim_id, r.annotator_id}).second)
            throw std::runtime_error("duplicate annotation for (" + r.speech_id + ", " +
                                     r.claim_id + ", " + r.annotator_id + ")");
        out.push_back(std::move(r));
    });
    return out;
}

// Records grouped by (speech, claim). Groups with fewer answers than the
// seven used in collection are flagged incomplete, not rejected.
constexpr int kAnnotatorsPerQuestion = 7;

struct AnnotationGroup {
    std::string speech_id;
    std::string claim_id;
    std::vector<Mention> answers;
    bool is_test = false;
    bool complete() const { return static_cast<int>(answers.size()) >= kAnnotatorsPerQuestion; }
};

inline std::vector<AnnotationGroup> group_annotations(const std::vector<AnnotationRecord>& records) {
    std::map<std::pair<std::string, std::string>, AnnotationGroup> groups;
    for (auto& r : records) {
        auto& g = groups[{r.speech_id, r.claim_id}];
        g.speech_id = r.speech_id;
        g.claim_id = r.claim_id;
        g.answers.push_back(r.answer);
        g.is_test = g.is_test || r.is_test;
    }
    std::vector<AnnotationGroup> out;
    out.reserve(groups.size());
    for (auto& [k, g] : groups) out.push_back(std::move(g));
    return out;
}

// --- CoNLL-U sidecars -----------------------------------------------------
//
// Simplified CoNLL-U: one token per line with tab-separated columns
//   index  surface  lemma  upos  head  relation  [ner]
// where index is 1-based, head 0 marks the root, and the optional 7th
// column carries BIO entity tags (B-TYPE / I-TYPE / O or _). Blocks are
// separated by blank lines and keyed by comments:
//   # speech_id = <id>     + # sentence = <index>   (speech sentences)
//   # claim_id = <id>                               (claims)

struct ConlluBlock {
    std::map<std::string, std::string> keys;
    std::vector<Token> tokens;
    ParseTree parse;
    std::vector<EntitySpan> entities;
};

inline std::vector<ConlluBlock> read_conllu(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::vector<ConlluBlock> blocks;

    std::map<std::string, std::string> keys;
    std::vector<Token> tokens;
    std::vector<int> heads;
    std::vector<std::string> relations;
    std::vector<std::string> ner;
    size_t lineno = 0, block_start = 0;

    auto fail = [&](size_t ln, const std::string& msg) {
        throw std::runtime_error(path.string() + ":" + std::to_string(ln) + ": " + msg);
    };
    auto flush = [&] {
        if (tokens.empty()) {
            keys.clear();
            return;
        }
        ConlluBlock b;
        b.keys = keys;
        try {
            b.parse = parse_tree_from_heads(heads, relations);
        } catch (const std::runtime_error& e) {
            fail(block_start, e.what());
        }
        // BIO tags to spans
        for (size_t i = 0; i < ner.size(); ++i) {
            if (ner[i].rfind("B-", 0) == 0) {
                EntitySpan span;
                span.first = static_cast<int>(i);
                span.last = static_cast<int>(i);
                span.type = ner[i].substr(2);
                while (span.last + 1 < static_cast<int>(ner.size()) &&
                       ner[span.last + 1] == "I-" + span.type)
                    span.last++;
                i = static_cast<size_t>(span.last);
                b.entities.push_back(std::move(span));
            }
        }
        b.tokens = std::move(tokens);
        blocks.push_back(std::move(b));
        keys.clear();
        tokens.clear();
        heads.clear();
        relations.clear();
        ner.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) {
            flush();
            continue;
        }
        if (t[0] == '#') {
            size_t eq = t.find('=');
            if (eq != std::string::npos)
                keys[trim(t.substr(1, eq - 1))] = trim(t.substr(eq + 1));
            continue;
        }
        if (tokens.empty()) block_start = lineno;
        auto cols = split_char(t, '\t');
        if (cols.size() < 6) fail(lineno, "expected at least 6 tab-separated columns");
        int index = 0, head = 0;
        try {
            index = std::stoi(cols[0]);
            head = std::stoi(cols[4]);
        } catch (const std::exception&) {
            fail(lineno, "bad token or head index");
        }
        if (index != static_cast<int>(tokens.size()) + 1)
            fail(lineno, "token indices must be consecutive from 1");
        Token tok;
        tok.surface = lowercase_ascii(cols[1]);
        tok.lemma = cols[2] == "_" || cols[2].empty() ? tok.surface : lowercase_ascii(cols[2]);
        tok.pos = pos_from_string(cols[3]);
        tokens.push_back(std::move(tok));
        heads.push_back(head - 1);  // 0 (root) becomes -1
        relations.push_back(cols[5] == "_" ? "" : cols[5]);
        ner.push_back(cols.size() > 6 && cols[6] != "_" ? cols[6] : "O");
    }
    flush();
    return blocks;
}

// Replaces the rule-tokenized content of speech sentences with sidecar
// tokens, parses and POS tags. Unmatched blocks are an error; unmatched
// sentences keep their rule-based tokens.
inline void attach_speech_parses(std::vector<Speech>& speeches,
                                 const std::filesystem::path& path) {
    std::unordered_map<std::string, Speech*> by_id;
    for (auto& sp : speeches) by_id[sp.id] = &sp;
    for (auto& b : read_conllu(path)) {
        auto sid = b.keys.find("speech_id");
        auto sent = b.keys.find("sentence");
        if (sid == b.keys.end() || sent == b.keys.end())
            throw std::runtime_error(path.string() +
                                     ": block missing '# speech_id' or '# sentence' key");
        auto it = by_id.find(sid->second);
        if (it == by_id.end())
            throw std::runtime_error("parse block references unknown speech '" + sid->second + "'");
        int index = std::stoi(sent->second);
        if (index < 0 || index >= static_cast<int>(it->second->sentences.size()))
            throw std::runtime_error("parse block references sentence " + sent->second +
                                     " out of range for speech '" + sid->second + "'");
        Sentence& s = it->second->sentences[index];
        s.tokens = b.tokens;
        s.parse = b.parse;
    }
}

inline void attach_claim_parses(std::vector<Claim>& claims, const std::filesystem::path& path) {
    std::unordered_map<std::string, Claim*> by_id;
    for (auto& c : claims) by_id[c.id] = &c;
    for (auto& b : read_conllu(path)) {
        auto cid = b.keys.find("claim_id");
        if (cid == b.keys.end())
            throw std::runtime_error(path.string() + ": block missing '# claim_id' key");
        auto it = by_id.find(cid->second);
        if (it == by_id.end())
            throw std::runtime_error("parse block references unknown claim '" + cid->second + "'");
        it->second->tokens = b.tokens;
        it->second->parse = b.parse;
        it->second->entities = b.entities;
    }
}

// --- Serialization --------------------------------------------------------

inline json to_json(const Motion& m) {
    return json{{"id", m.id}, {"text", m.text}, {"concept", m.topic}};
}

inline json to_json(const Speech& sp) {
    json j{{"id", sp.id},
           {"motion_id", sp.motion_id},
           {"speaker_id", sp.speaker_id},
           {"source", to_string(sp.source)}};
    json sents = json::array();
    for (auto& s : sp.sentences) sents.push_back(s.text);
    j["sentences"] = sents;
    if (sp.transcript) j["transcript"] = *sp.transcript;
    if (sp.audio_path) j["audio_path"] = *sp.audio_path;
    if (sp.reference_transcript) j["reference_transcript"] = *sp.reference_transcript;
    return j;
}

inline json to_json(const Claim& c) {
    json j{{"id", c.id}, {"motion_id", c.motion_id}, {"text", c.text}};
    if (c.is_valid_claim) j["is_valid_claim"] = *c.is_valid_claim;
    if (c.stance_correct) j["stance_correct"] = *c.stance_correct;
    if (c.filter_status) j["filter_status"] = to_string(*c.filter_status);
    return j;
}

inline json to_json(const AnnotationRecord& r) {
    json j{{"speech_id", r.speech_id},
           {"claim_id", r.claim_id},
           {"annotator_id", r.annotator_id},
           {"answer", to_string(r.answer)}};
    if (r.question_id) j["question_id"] = *r.question_id;
    if (r.is_test) j["is_test"] = true;
    return j;
}

template <typename T>
std::string to_jsonl(const std::vector<T>& items) {
    std::string out;
    for (auto& item : items) {
        out += to_json(item).dump();
        out += '\n';
    }
    return out;
}

// --- Validation -----------------------------------------------------------

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_dataset(const Dataset& d, int retained_max_tokens = 10) {
    ValidationReport rep;
    auto add = [&](const std::string& v) { rep.violations.push_back(v); };

    std::unordered_set<std::string> motion_ids, speech_ids, claim_ids;
    for (auto& m : d.motions) {
        if (!motion_ids.insert(m.id).second) add("duplicate motion id '" + m.id + "'");
        if (m.topic.empty()) add("motion '" + m.id + "' has empty concept");
    }
    for (auto& sp : d.speeches) {
        if (!speech_ids.insert(sp.id).second) add("duplicate speech id '" + sp.id + "'");
        if (!motion_ids.count(sp.motion_id))
            add("speech '" + sp.id + "' references unknown motion '" + sp.motion_id + "'");
        if (sp.sentences.empty()) add("speech '" + sp.id + "' has no sentences");
        for (size_t i = 0; i < sp.sentences.size(); ++i) {
            const Sentence& s = sp.sentences[i];
            if (s.index != static_cast<int>(i)) {
                add("speech '" + sp.id + "' sentence indices not consecutive from 0");
                break;
            }
            if (s.parse && s.parse->node_count != static_cast<int>(s.tokens.size()))
                add("speech '" + sp.id + "' sentence " + std::to_string(i) +
                    ": parse node count differs from token count");
        }
    }
    for (auto& c : d.claims) {
        if (!claim_ids.insert(c.id).second) add("duplicate claim id '" + c.id + "'");
        if (!motion_ids.count(c.motion_id))
            add("claim '" + c.id + "' references unknown motion '" + c.motion_id + "'");
        if (c.parse && c.parse->node_count != static_cast<int>(c.tokens.size()))
            add("claim '" + c.id + "': parse node count differs from token count");
        int words = 0;
        for (auto& t : c.tokens)
            if (t.pos != Pos::PUNCT) ++words;
        if (c.filter_status == FilterStatus::Retained && words > retained_max_tokens)
            add("claim '" + c.id + "' retained with " + std::to_string(words) + " tokens");
    }
    for (auto& r : d.annotations) {
        if (!speech_ids.count(r.speech_id))
            add("annotation references unknown speech '" + r.speech_id + "'");
        if (!claim_ids.count(r.claim_id) && !r.is_test)
            add("annotation references unknown claim '" + r.claim_id + "'");
    }
    // Split must partition motions. Keying the split by motion id makes a
    // per-speech divergence unrepresentable; a split file built over speech
    // ids surfaces here as unknown-motion violations.
    if (!d.split.empty()) {
        for (auto& [mid, tag] : d.split) {
            (void)tag;
            if (!motion_ids.count(mid)) add("split references unknown motion '" + mid + "'");
        }
        for (auto& m : d.motions)
            if (!d.split.count(m.id)) add("motion '" + m.id + "' missing from split");
    }
    return rep;
}

// --- Motion-level split -----------------------------------------------------

// Random equal split of motions into Dev/Test. Ids are sorted before
// shuffling so the result depends only on the id set and the seed.
inline std::unordered_map<std::string, SplitTag> make_split(std::vector<std::string> motion_ids,
                                                            uint64_t seed) {
    std::sort(motion_ids.begin(), motion_ids.end());
    motion_ids.erase(std::unique(motion_ids.begin(), motion_ids.end()), motion_ids.end());
    Rng rng(seed);
    shuffle(motion_ids, rng);
    std::unordered_map<std::string, SplitTag> split;
    size_t dev_n = (motion_ids.size() + 1) / 2;
    for (size_t i = 0; i < motion_ids.size(); ++i)
        split[motion_ids[i]] = i < dev_n ? SplitTag::Dev : SplitTag::Test;
    return split;
}

inline std::unordered_map<std::string, SplitTag> load_split(const std::filesystem::path& dev_path,
                                                            const std::filesystem::path& test_path) {
    std::unordered_map<std::string, SplitTag> split;
    auto read_ids = [&](const std::filesystem::path& p, SplitTag tag) {
        std::ifstream in(p);
        if (!in) throw std::runtime_error("cannot open file: " + p.string());
        std::string line;
        while (std::getline(in, line)) {
            std::string id = trim(line);
            if (id.empty()) continue;
            if (!split.emplace(id, tag).second)
                throw std::runtime_error("motion '" + id + "' appears in both split files");
        }
    };
    read_ids(dev_path, SplitTag::Dev);
    read_ids(test_path, SplitTag::Test);
    return split;
}

}  // namespace claimmatch
