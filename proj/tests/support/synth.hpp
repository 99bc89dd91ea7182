#pragma once

// Seeded synthetic benchmark: paraphrased claims planted into generated
// speeches. Word resources (embeddings, idf, concept lexicon, ESA) are built
// from "synonym families" — groups of variant words sharing a nearby
// embedding direction, a concept id and an ESA profile — so a paraphrase
// stays close to its source claim under every similarity the matcher uses
// while unrelated text stays far away.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "claimmatch/corpus.hpp"
#include "claimmatch/matcher.hpp"
#include "claimmatch/resources.hpp"
#include "oracles.hpp"

namespace synth {

using namespace claimmatch;

struct Config {
    uint64_t seed = 7;
    int motions = 20;
    int speeches_per_motion = 5;  // 100 speeches at the defaults
    int claims_per_motion = 5;
    int planted_per_speech = 2;        // positive pairs per speech
    int hard_negatives_per_speech = 2;  // sentences borrowing half a non-planted claim
    int distractors_per_speech = 6;
    int claim_content_words = 5;     // content families per claim, plus the topic word
    double substitution_rate = 0.3;  // fraction of claim words swapped in a paraphrase
    double asr_noise_rate = 0.1;     // word swaps applied to ASR sentences
    int asr_every = 2;               // every n-th speech is ASR with a reference transcript
    bool with_rejected_claims = true;  // adds one overlong claim per motion
};

constexpr int kVariants = 3;
constexpr int kContentFamilies = 30;
constexpr int kDistractorFamilies = 12;

// Family f, variant v -> a distinct lowercase word the tokenizer keeps whole.
inline std::string family_word(int family, int variant) {
    std::string w = "w";
    w += static_cast<char>('a' + family / 26 % 26);
    w += static_cast<char>('a' + family % 26);
    w += static_cast<char>('a' + variant);
    return w;
}

// Inverse of family_word.
inline std::pair<int, int> word_family(const std::string& w) {
    return {(w[1] - 'a') * 26 + (w[2] - 'a'), w[3] - 'a'};
}

inline const std::vector<std::string>& stop_list() {
    static const std::vector<std::string> words = {"the", "a",  "of",   "to", "and",
                                                   "is",  "in", "that", "we", "it"};
    return words;
}

inline DenseVec random_unit(Rng& rng) {
    DenseVec v(kEmbeddingDim);
    double norm2 = 0.0;
    for (double& x : v) {
        x = rng.normal();
        norm2 += x * x;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    return v;
}

inline Pos family_pos(int family, int topic_families) {
    if (family < topic_families) return Pos::NOUN;
    switch (family % 3) {
        case 0: return Pos::NOUN;
        case 1: return Pos::VERB;
        default: return Pos::ADJ;
    }
}

struct Benchmark {
    Config cfg;
    ResourceBundle resources;
    Dataset dataset;
    std::vector<LabeledPair> pairs;  // one per (speech, retained claim of its motion)
    int total_families = 0;
};

namespace detail {

// Variants of one family sit within ~20 degrees of a shared direction;
// distinct families are near-orthogonal in 200 dimensions.
inline void build_resources(Benchmark& b, Rng& rng) {
    const int families = b.total_families;
    for (int f = 0; f < families; ++f) {
        DenseVec base = random_unit(rng);
        for (int v = 0; v < kVariants; ++v) {
            DenseVec noise = random_unit(rng);
            DenseVec e(kEmbeddingDim);
            double norm2 = 0.0;
            for (int d = 0; d < kEmbeddingDim; ++d) {
                e[d] = base[d] + 0.25 * noise[d];
                norm2 += e[d] * e[d];
            }
            double inv = 1.0 / std::sqrt(norm2);
            for (double& x : e) x *= inv;
            std::string word = family_word(f, v);
            b.resources.add_embedding(word, std::move(e));
            b.resources.set_idf(word, 3.0 + 2.0 * rng.uniform_real());
            b.resources.lexicon.add("c" + std::to_string(f), word);
            SparseVec sv;
            sv.add(f, 1.0);
            sv.add(1000 + f % 7, 0.2);
            sv.sort();
            b.resources.esa[word] = std::move(sv);
        }
    }
    for (auto& w : stop_list()) {
        b.resources.add_embedding(w, random_unit(rng));
        b.resources.set_idf(w, 0.1);
        b.resources.stopwords.insert(w);
    }
}

inline ParseTree random_tree(size_t n, Rng& rng) {
    static const std::vector<std::string> rels = {"nsubj", "obj", "amod", "advmod", "obl", "nmod"};
    std::vector<int> heads(n);
    std::vector<std::string> relations(n);
    heads[0] = -1;
    for (size_t i = 1; i < n; ++i) {
        heads[i] = static_cast<int>(rng.uniform_int(i));  // earlier token: acyclic by design
        relations[i] = rels[rng.uniform_int(rels.size())];
    }
    return parse_tree_from_heads(heads, relations);
}

inline Token family_token(int family, int variant, int topic_families) {
    std::string w = family_word(family, variant);
    return Token{w, w, family_pos(family, topic_families), false, std::nullopt};
}

inline Token stop_token(Rng& rng) {
    const std::string& w = stop_list()[rng.uniform_int(stop_list().size())];
    return Token{w, w, Pos::DET, true, std::nullopt};
}

inline std::string text_of(const std::vector<Token>& tokens) {
    std::vector<std::string> surfaces;
    for (auto& t : tokens) surfaces.push_back(t.surface);
    return join(surfaces, " ");
}

// Swaps <= substitution_rate of the claim's words for family variants and
// wraps the result in a couple of stopwords and distractor words. The
// claim's parse edges survive intact at a fixed offset.
inline Sentence paraphrase(const Claim& c, const Config& cfg, int first_distractor_family,
                           Rng& rng) {
    std::vector<Token> body = c.tokens;
    size_t n_sub = static_cast<size_t>(std::floor(static_cast<double>(body.size()) *
                                                  cfg.substitution_rate));
    std::vector<size_t> positions(body.size());
    for (size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    shuffle(positions, rng);
    for (size_t i = 0; i < n_sub; ++i) {
        Token& t = body[positions[i]];
        auto [family, variant] = word_family(t.surface);
        int next = (variant + 1 + static_cast<int>(rng.uniform_int(kVariants - 1))) % kVariants;
        std::string w = family_word(family, next);
        t.surface = w;
        t.lemma = w;
    }

    size_t prefix = 1 + rng.uniform_int(2), suffix = 1 + rng.uniform_int(2);
    std::vector<Token> tokens;
    for (size_t i = 0; i < prefix; ++i) tokens.push_back(stop_token(rng));
    tokens.insert(tokens.end(), body.begin(), body.end());
    for (size_t i = 0; i < suffix; ++i) {
        int family = first_distractor_family + static_cast<int>(rng.uniform_int(kDistractorFamilies));
        tokens.push_back(family_token(family, static_cast<int>(rng.uniform_int(kVariants)),
                                      /*topic_families=*/0));
    }

    const ParseTree& ct = *c.parse;
    int offset = static_cast<int>(prefix);
    int root = ct.root + offset;
    std::vector<int> heads(tokens.size(), root);
    std::vector<std::string> relations(tokens.size(), "discourse");
    heads[root] = -1;
    relations[root] = "";
    for (auto& e : ct.edges) {
        heads[e.child + offset] = e.parent + offset;
        relations[e.child + offset] = e.relation;
    }

    Sentence s;
    s.tokens = std::move(tokens);
    s.text = text_of(s.tokens);
    s.parse = parse_tree_from_heads(heads, relations);
    return s;
}

// Half the claim's words verbatim, padded with distractors: confusable on
// word level while missing too much content to count as a mention.
inline Sentence hard_negative(const Claim& c, int first_distractor_family, Rng& rng) {
    std::vector<size_t> positions(c.tokens.size());
    for (size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    shuffle(positions, rng);
    positions.resize((c.tokens.size() + 1) / 2);
    std::sort(positions.begin(), positions.end());
    std::vector<Token> tokens;
    for (size_t p : positions) tokens.push_back(c.tokens[p]);
    size_t pad = 2 + rng.uniform_int(3);
    for (size_t i = 0; i < pad; ++i) {
        int family =
            first_distractor_family + static_cast<int>(rng.uniform_int(kDistractorFamilies));
        tokens.push_back(family_token(family, static_cast<int>(rng.uniform_int(kVariants)),
                                      /*topic_families=*/0));
    }
    Sentence s;
    s.tokens = std::move(tokens);
    s.text = text_of(s.tokens);
    s.parse = random_tree(s.tokens.size(), rng);
    return s;
}

inline Sentence distractor(const Config& cfg, int first_distractor_family, Rng& rng) {
    size_t len = 6 + rng.uniform_int(4);
    std::vector<Token> tokens;
    for (size_t i = 0; i < len; ++i) {
        if (rng.uniform_real() < 0.2) {
            tokens.push_back(stop_token(rng));
        } else {
            int family =
                first_distractor_family + static_cast<int>(rng.uniform_int(kDistractorFamilies));
            tokens.push_back(family_token(family, static_cast<int>(rng.uniform_int(kVariants)),
                                          /*topic_families=*/0));
        }
    }
    Sentence s;
    s.tokens = std::move(tokens);
    s.text = text_of(s.tokens);
    s.parse = random_tree(s.tokens.size(), rng);
    return s;
}

}  // namespace detail

// Deterministic in cfg.seed: same configuration, same corpus.
inline Benchmark build(const Config& cfg = {}) {
    Benchmark b;
    b.cfg = cfg;
    const int topic_families = cfg.motions;
    const int first_content = topic_families;
    const int first_distractor = topic_families + kContentFamilies;
    b.total_families = first_distractor + kDistractorFamilies;
    Rng rng(cfg.seed);
    detail::build_resources(b, rng);

    for (int i = 0; i < cfg.motions; ++i) {
        Motion m;
        m.id = "m" + std::to_string(i);
        m.topic = family_word(i, 0);
        m.text = "we should support " + m.topic;
        b.dataset.motions.push_back(std::move(m));
    }

    // Claims: topic word + content words from families private to the claim
    // within its motion.
    for (int i = 0; i < cfg.motions; ++i) {
        for (int j = 0; j < cfg.claims_per_motion; ++j) {
            Claim c;
            c.id = "m" + std::to_string(i) + "-c" + std::to_string(j);
            c.motion_id = "m" + std::to_string(i);
            c.tokens.push_back(detail::family_token(i, j % kVariants, topic_families));
            for (int t = 0; t < cfg.claim_content_words; ++t) {
                int family = first_content + (j * cfg.claim_content_words + t) % kContentFamilies;
                c.tokens.push_back(detail::family_token(
                    family, static_cast<int>(rng.uniform_int(kVariants)), topic_families));
            }
            c.text = detail::text_of(c.tokens);
            c.parse = detail::random_tree(c.tokens.size(), rng);
            b.dataset.claims.push_back(std::move(c));
        }
        if (cfg.with_rejected_claims) {
            // Overlong: dropped by the length filter, never annotated.
            Claim c;
            c.id = "m" + std::to_string(i) + "-cx";
            c.motion_id = "m" + std::to_string(i);
            for (int t = 0; t < 12; ++t) {
                int family = first_content + static_cast<int>(rng.uniform_int(kContentFamilies));
                c.tokens.push_back(detail::family_token(
                    family, static_cast<int>(rng.uniform_int(kVariants)), topic_families));
            }
            c.text = detail::text_of(c.tokens);
            c.parse = detail::random_tree(c.tokens.size(), rng);
            b.dataset.claims.push_back(std::move(c));
        }
    }

    // Speeches: planted paraphrases shuffled among distractor sentences.
    // Speech r of a motion paraphrases claims (r), (r+1), ... mod the claim
    // count, so every claim lands in the same number of speeches.
    std::map<std::pair<std::string, std::string>, int> planted;
    for (int i = 0; i < cfg.motions; ++i) {
        for (int r = 0; r < cfg.speeches_per_motion; ++r) {
            Speech sp;
            sp.id = "m" + std::to_string(i) + "-s" + std::to_string(r);
            sp.motion_id = "m" + std::to_string(i);
            sp.speaker_id = "spk" + std::to_string((i * cfg.speeches_per_motion + r) % 37);
            sp.source = (cfg.asr_every > 0 && r % cfg.asr_every == 0) ? TranscriptSource::ASR
                                                                      : TranscriptSource::Reference;

            std::vector<Sentence> sentences;
            for (int t = 0; t < cfg.planted_per_speech; ++t) {
                int j = (r + t) % cfg.claims_per_motion;
                std::string claim_id = "m" + std::to_string(i) + "-c" + std::to_string(j);
                const Claim* c = b.dataset.find_claim(claim_id);
                sentences.push_back(detail::paraphrase(*c, cfg, first_distractor, rng));
                planted[{sp.id, claim_id}] = 1;
            }
            for (int t = 0; t < cfg.distractors_per_speech; ++t)
                sentences.push_back(detail::distractor(cfg, first_distractor, rng));
            shuffle(sentences, rng);
            for (size_t t = 0; t < sentences.size(); ++t) sentences[t].index = static_cast<int>(t);

            if (sp.source == TranscriptSource::ASR) {
                // Reference keeps the clean text; the sentences then take
                // word-swap noise standing in for recognition errors.
                std::vector<std::string> clean;
                for (auto& s : sentences) clean.push_back(s.text);
                sp.reference_transcript = join(clean, " ");
                for (auto& s : sentences) {
                    for (auto& tok : s.tokens) {
                        if (tok.is_stopword || rng.uniform_real() >= cfg.asr_noise_rate) continue;
                        auto [family, variant] = word_family(tok.surface);
                        int next =
                            (variant + 1 + static_cast<int>(rng.uniform_int(kVariants - 1))) %
                            kVariants;
                        tok.surface = family_word(family, next);
                        tok.lemma = tok.surface;
                    }
                    s.text = detail::text_of(s.tokens);
                }
            }
            sp.sentences = std::move(sentences);
            b.dataset.speeches.push_back(std::move(sp));
        }
    }

    annotate(b.dataset, b.resources);

    // Labeled pairs over retained claims only.
    for (auto& sp : b.dataset.speeches) {
        for (auto& c : b.dataset.claims) {
            if (c.motion_id != sp.motion_id) continue;
            if (c.id.size() >= 2 && c.id.substr(c.id.size() - 2) == "cx") continue;
            LabeledPair p;
            p.speech = &sp;
            p.claim = &c;
            p.label = planted.count({sp.id, c.id}) ? 1 : 0;
            b.pairs.push_back(p);
        }
    }

    // Seven annotators answer every pair, mostly agreeing with the plant.
    for (auto& p : b.pairs) {
        for (int a = 1; a <= 7; ++a) {
            AnnotationRecord rec;
            rec.speech_id = p.speech->id;
            rec.claim_id = p.claim->id;
            rec.annotator_id = "a" + std::to_string(a);
            rec.question_id = p.speech->id + "-q0";
            if (p.label) {
                rec.answer = rng.uniform_real() < 0.9
                                 ? (rng.uniform_real() < 0.4 ? Mention::Explicit
                                                             : Mention::Implicit)
                                 : Mention::NotMentioned;
            } else {
                rec.answer =
                    rng.uniform_real() < 0.92 ? Mention::NotMentioned : Mention::Implicit;
            }
            b.dataset.annotations.push_back(std::move(rec));
        }
    }

    return b;
}

// Corpus, sidecar parses and resource files for runs through the CLI.
inline void write_files(const Benchmark& b, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "resources");

    atomic_write_file(dir / "motions.jsonl", to_jsonl(b.dataset.motions));
    atomic_write_file(dir / "speeches.jsonl", to_jsonl(b.dataset.speeches));
    atomic_write_file(dir / "claims.jsonl", to_jsonl(b.dataset.claims));
    atomic_write_file(dir / "annotations.jsonl", to_jsonl(b.dataset.annotations));

    auto conllu_rows = [](const std::vector<Token>& tokens, const ParseTree& parse) {
        std::vector<int> heads(tokens.size(), 0);
        std::vector<std::string> rels(tokens.size(), "_");
        for (auto& e : parse.edges) {
            heads[e.child] = e.parent + 1;
            rels[e.child] = e.relation.empty() ? "_" : e.relation;
        }
        std::string out;
        for (size_t i = 0; i < tokens.size(); ++i) {
            out += std::to_string(i + 1) + "\t" + tokens[i].surface + "\t" + tokens[i].lemma +
                   "\t" + to_string(tokens[i].pos) + "\t" + std::to_string(heads[i]) + "\t" +
                   rels[i] + "\n";
        }
        return out;
    };

    std::string speech_parses;
    for (auto& sp : b.dataset.speeches)
        for (auto& s : sp.sentences) {
            speech_parses += "# speech_id = " + sp.id + "\n# sentence = " +
                             std::to_string(s.index) + "\n";
            speech_parses += conllu_rows(s.tokens, *s.parse);
            speech_parses += "\n";
        }
    atomic_write_file(dir / "speech_parses.conllu", speech_parses);

    std::string claim_parses;
    for (auto& c : b.dataset.claims) {
        claim_parses += "# claim_id = " + c.id + "\n";
        claim_parses += conllu_rows(c.tokens, *c.parse);
        claim_parses += "\n";
    }
    atomic_write_file(dir / "claim_parses.conllu", claim_parses);

    const ResourceBundle& r = b.resources;
    std::string emb;
    for (size_t i = 0; i < r.vocab.size(); ++i) {
        emb += r.vocab[i];
        char buf[32];
        for (double x : r.vectors[i]) {
            std::snprintf(buf, sizeof buf, " %.9g", x);
            emb += buf;
        }
        emb += "\n";
    }
    atomic_write_file(dir / "resources/embeddings.txt", emb);

    std::string idf;
    for (auto& w : r.vocab) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s\t%.9g\n", w.c_str(), r.idf.at(w));
        idf += buf;
    }
    atomic_write_file(dir / "resources/idf.tsv", idf);

    std::string stops;
    for (auto& w : stop_list()) stops += w + "\n";
    atomic_write_file(dir / "resources/stopwords.txt", stops);

    std::string concepts;
    for (int f = 0; f < b.total_families; ++f)
        for (int v = 0; v < kVariants; ++v)
            concepts += "c" + std::to_string(f) + "\t" + family_word(f, v) + "\n";
    atomic_write_file(dir / "resources/concepts.tsv", concepts);

    std::string esa;
    for (int f = 0; f < b.total_families; ++f)
        for (int v = 0; v < kVariants; ++v) {
            nlohmann::json j;
            j["word"] = family_word(f, v);
            j["concepts"] = nlohmann::json::array();
            const SparseVec& sv = r.esa.at(family_word(f, v));
            for (auto& [id, w] : sv.items) j["concepts"].push_back({id, w});
            esa += j.dump() + "\n";
        }
    atomic_write_file(dir / "resources/esa.jsonl", esa);
}

// --- Annotation-statistics corpus ------------------------------------------
//
// A larger corpus with no embedding resources, used to validate label
// aggregation and dataset statistics against counts recorded while the
// annotations were drawn.

struct StatsConfig {
    uint64_t seed = 11;
    int motions = 200;
    int speeches_per_motion = 2;  // 400 speeches at the defaults
    int claims_per_motion = 7;
    double claimless_motions = 0.065;  // fraction of motions with no claims
    double p_mentioned = 0.35;
    double p_explicit_given_mentioned = 0.16;
    double p_correct = 0.95;
    int asr_every = 4;
};

// Every figure below is a direct count over the drawn answers, kept while
// drawing them — an independent path from aggregate_all + dataset_stats.
struct PlantedStats {
    size_t pairs = 0;
    size_t mentioned = 0;
    size_t explicit_n = 0;
    size_t agree_5of7 = 0;
    size_t claims_annotated = 0;
    size_t claims_mentioned = 0;
    size_t speeches = 0;
    size_t speeches_with_mention = 0;
    size_t speeches_no_claims = 0;
    size_t sentence_total = 0;
    size_t token_total = 0;
    size_t claim_slot_total = 0;  // claims of the speech's motion, summed
    double wer_sum = 0.0;
    size_t wer_count = 0;
};

struct StatsBenchmark {
    Dataset dataset;
    PlantedStats expected;
};

inline StatsBenchmark build_stats(const StatsConfig& cfg = {}) {
    StatsBenchmark b;
    Rng rng(cfg.seed);
    static const std::vector<std::string> vocab = {
        "policy", "reform", "vote",  "school", "health", "tax",   "debate",
        "public", "market", "right", "law",    "trade",  "energy"};

    const int claimless = static_cast<int>(std::ceil(cfg.claimless_motions * cfg.motions));

    for (int i = 0; i < cfg.motions; ++i) {
        Motion m;
        m.id = "m" + std::to_string(i);
        m.topic = vocab[i % vocab.size()];
        m.text = "we should reform " + m.topic;
        b.dataset.motions.push_back(std::move(m));
        if (i >= claimless) {
            for (int j = 0; j < cfg.claims_per_motion; ++j) {
                Claim c;
                c.id = "m" + std::to_string(i) + "-c" + std::to_string(j);
                c.motion_id = "m" + std::to_string(i);
                std::vector<std::string> words;
                for (int t = 0; t < 4; ++t) words.push_back(vocab[rng.uniform_int(vocab.size())]);
                c.text = join(words, " ");
                c.tokens = make_tokens(c.text);
                b.dataset.claims.push_back(std::move(c));
            }
        }
    }

    for (int i = 0; i < cfg.motions; ++i) {
        const bool has_claims = i >= claimless;
        for (int r = 0; r < cfg.speeches_per_motion; ++r) {
            Speech sp;
            sp.id = "m" + std::to_string(i) + "-s" + std::to_string(r);
            sp.motion_id = "m" + std::to_string(i);
            sp.speaker_id = "spk" + std::to_string(rng.uniform_int(60));
            int speech_index = i * cfg.speeches_per_motion + r;
            sp.source = (speech_index % cfg.asr_every == 0) ? TranscriptSource::ASR
                                                            : TranscriptSource::Reference;
            size_t n_sent = 2 + rng.uniform_int(3);
            for (size_t t = 0; t < n_sent; ++t) {
                Sentence s;
                s.index = static_cast<int>(t);
                std::vector<std::string> words;
                size_t n_words = 3 + rng.uniform_int(4);
                for (size_t u = 0; u < n_words; ++u)
                    words.push_back(vocab[rng.uniform_int(vocab.size())]);
                s.text = join(words, " ");
                s.tokens = make_tokens(s.text);
                b.expected.token_total += s.tokens.size();
                sp.sentences.push_back(std::move(s));
            }
            b.expected.sentence_total += n_sent;
            if (sp.source == TranscriptSource::ASR) {
                // Reference differs from the spoken text by one swapped word
                // per sentence; the expectation uses the brute-force aligner.
                std::vector<std::string> ref_words, hyp_words;
                for (auto& s : sp.sentences) {
                    std::vector<std::string> words;
                    for (auto& t : s.tokens) words.push_back(t.surface);
                    std::vector<std::string> changed = words;
                    changed[rng.uniform_int(changed.size())] =
                        vocab[rng.uniform_int(vocab.size())];
                    ref_words.insert(ref_words.end(), changed.begin(), changed.end());
                    hyp_words.insert(hyp_words.end(), words.begin(), words.end());
                }
                sp.reference_transcript = join(ref_words, " ");
                b.expected.wer_sum += oracles::wer(hyp_words, ref_words);
                b.expected.wer_count++;
            }
            b.expected.speeches++;
            if (!has_claims) b.expected.speeches_no_claims++;
            b.expected.claim_slot_total += has_claims ? cfg.claims_per_motion : 0;
            b.dataset.speeches.push_back(std::move(sp));
        }
    }

    // Annotations: 7 answers per (speech, claim-of-motion) pair, sampled
    // around a hidden truth; counts accumulate over the realized answers.
    std::set<std::string> claims_seen, claims_mentioned;
    for (auto& sp : b.dataset.speeches) {
        size_t speech_mentions = 0;
        int claim_slot = 0;  // annotation pages hold at most 20 claims
        for (auto& c : b.dataset.claims) {
            if (c.motion_id != sp.motion_id) continue;
            std::string question = sp.id + "-q" + std::to_string(claim_slot++ / 20);
            bool truth_mentioned = rng.uniform_real() < cfg.p_mentioned;
            bool truth_explicit =
                truth_mentioned && rng.uniform_real() < cfg.p_explicit_given_mentioned;
            size_t n_e = 0, n_i = 0, n_nm = 0;
            for (int a = 1; a <= 7; ++a) {
                AnnotationRecord rec;
                rec.speech_id = sp.id;
                rec.claim_id = c.id;
                rec.annotator_id = "a" + std::to_string(a);
                rec.question_id = question;
                bool correct = rng.uniform_real() < cfg.p_correct;
                if (truth_mentioned) {
                    if (correct)
                        rec.answer = rng.uniform_real() < (truth_explicit ? 0.8 : 0.25)
                                         ? Mention::Explicit
                                         : Mention::Implicit;
                    else
                        rec.answer = Mention::NotMentioned;
                } else {
                    rec.answer = correct ? Mention::NotMentioned : Mention::Implicit;
                }
                switch (rec.answer) {
                    case Mention::Explicit: ++n_e; break;
                    case Mention::Implicit: ++n_i; break;
                    case Mention::NotMentioned: ++n_nm; break;
                }
                b.dataset.annotations.push_back(std::move(rec));
            }
            b.expected.pairs++;
            claims_seen.insert(c.id);
            size_t m = n_e + n_i;
            if (2 * m > 7) {
                b.expected.mentioned++;
                speech_mentions++;
                claims_mentioned.insert(c.id);
                if (n_e > n_i) b.expected.explicit_n++;
            }
            if (std::max(m, n_nm) >= 5) b.expected.agree_5of7++;
        }
        if (speech_mentions > 0) b.expected.speeches_with_mention++;
    }
    b.expected.claims_annotated = claims_seen.size();
    b.expected.claims_mentioned = claims_mentioned.size();
    return b;
}

}  // namespace synth
