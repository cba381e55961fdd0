#include "clear/inverted_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "clear/io.hpp"

namespace clear {

namespace {
constexpr char kMagic[4] = {'C', 'L', 'I', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

void validate_params(double k1, double b) {
    if (!(k1 > 0.0)) throw std::invalid_argument("BM25 k1 must be > 0");
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("BM25 b must be in [0,1]");
}
}  // namespace

double rsj_weight(std::uint64_t df, std::uint64_t doc_count) {
    if (df == 0) throw std::invalid_argument("rsj weight undefined for df = 0");
    double w = std::log((static_cast<double>(doc_count) - static_cast<double>(df) + 0.5) /
                        (static_cast<double>(df) + 0.5));
    return w > 0.0 ? w : 0.0;
}

InvertedIndex InvertedIndex::build(const std::vector<Document>& docs, Vocabulary vocab,
                                   double k1, double b) {
    validate_params(k1, b);

    InvertedIndex index;
    index.vocab_ = std::move(vocab);
    index.k1_ = k1;
    index.b_ = b;
    index.postings_.resize(index.vocab_.size());
    index.doc_lengths_.reserve(docs.size());
    index.doc_ids_.reserve(docs.size());

    std::vector<std::uint32_t> tf(index.vocab_.size(), 0);
    std::vector<TokenId> touched;
    for (const auto& doc : docs) {
        auto d = static_cast<DocIdx>(index.doc_ids_.size());
        index.doc_ids_.push_back(doc.doc_id);
        index.doc_lengths_.push_back(doc.tokens.size());
        touched.clear();
        for (TokenId t : doc.tokens) {
            if (t == kOovTokenId) continue;
            if (tf[t]++ == 0) touched.push_back(t);
        }
        // Posting lists stay sorted because docs arrive in internal-id order.
        std::sort(touched.begin(), touched.end());
        for (TokenId t : touched) {
            index.postings_[t].push_back(Posting{d, tf[t]});
            tf[t] = 0;
        }
    }

    index.rebuild_lookup();
    return index;
}

void InvertedIndex::rebuild_lookup() {
    doc_idx_.clear();
    doc_idx_.reserve(doc_ids_.size());
    for (DocIdx d = 0; d < doc_ids_.size(); ++d) {
        if (!doc_idx_.emplace(doc_ids_[d], d).second) {
            throw std::runtime_error("duplicate doc_id in collection: " + doc_ids_[d]);
        }
    }
    std::vector<DocIdx> order(doc_ids_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](DocIdx a, DocIdx b) {
        return doc_ids_[a] < doc_ids_[b];
    });
    id_rank_.assign(doc_ids_.size(), 0);
    for (std::uint32_t r = 0; r < order.size(); ++r) id_rank_[order[r]] = r;
}

void InvertedIndex::set_params(double k1, double b) {
    validate_params(k1, b);
    k1_ = k1;
    b_ = b;
}

std::optional<DocIdx> InvertedIndex::doc_idx(const std::string& doc_id) const {
    auto it = doc_idx_.find(doc_id);
    if (it == doc_idx_.end()) return std::nullopt;
    return it->second;
}

double InvertedIndex::bm25_score(const std::vector<TokenId>& query_tokens, DocIdx d) const {
    if (d >= doc_ids_.size()) throw std::out_of_range("document not in index");

    // Eq. sums over the term *set* q ∩ d, so duplicates are dropped.
    std::vector<TokenId> terms;
    terms.reserve(query_tokens.size());
    for (TokenId t : query_tokens) {
        if (t != kOovTokenId && t < postings_.size()) terms.push_back(t);
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    const double len_norm = (1.0 - b_) + b_ * static_cast<double>(doc_lengths_[d]) /
                                              vocab_.avg_doc_len();
    double score = 0.0;
    for (TokenId t : terms) {
        const auto& plist = postings_[t];
        auto it = std::lower_bound(plist.begin(), plist.end(), d,
                                   [](const Posting& p, DocIdx doc) { return p.doc < doc; });
        if (it == plist.end() || it->doc != d) continue;
        double tf = it->tf;
        score += rsj_weight(vocab_.df(t), vocab_.doc_count()) * tf / (tf + k1_ * len_norm);
    }
    return score;
}

ScoredList InvertedIndex::search(const std::vector<TokenId>& query_tokens,
                                 std::size_t k) const {
    struct Cursor {
        const std::vector<Posting>* plist;
        std::size_t pos;
        double rsj;
    };

    std::vector<TokenId> terms;
    terms.reserve(query_tokens.size());
    for (TokenId t : query_tokens) {
        if (t != kOovTokenId && t < postings_.size() && !postings_[t].empty()) {
            terms.push_back(t);
        }
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    std::vector<Cursor> cursors;
    cursors.reserve(terms.size());
    for (TokenId t : terms) {
        cursors.push_back(Cursor{&postings_[t], 0,
                                 rsj_weight(vocab_.df(t), vocab_.doc_count())});
    }

    struct Candidate {
        double score;
        std::uint32_t id_rank;
        DocIdx doc;
    };
    // Heap keeps the current worst on top: lower score first, then larger
    // id rank, so the retained set matches the ScoredList tie-break.
    auto better = [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id_rank < b.id_rank;
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(better)> heap(better);

    const double avg_len = vocab_.avg_doc_len();
    while (!cursors.empty()) {
        DocIdx d = std::numeric_limits<DocIdx>::max();
        for (const auto& c : cursors) {
            d = std::min(d, (*c.plist)[c.pos].doc);
        }
        const double len_norm =
            (1.0 - b_) + b_ * static_cast<double>(doc_lengths_[d]) / avg_len;
        double score = 0.0;
        for (auto& c : cursors) {
            const Posting& p = (*c.plist)[c.pos];
            if (p.doc == d) {
                double tf = p.tf;
                score += c.rsj * tf / (tf + k1_ * len_norm);
                ++c.pos;
            }
        }
        std::erase_if(cursors, [](const Cursor& c) { return c.pos >= c.plist->size(); });

        if (score > 0.0) {
            Candidate cand{score, id_rank_[d], d};
            if (heap.size() < k) {
                heap.push(cand);
            } else if (better(heap.top(), cand)) {
                heap.pop();
                heap.push(cand);
            }
        }
    }

    ScoredList out(heap.size());
    for (std::size_t i = heap.size(); i-- > 0;) {
        out[i] = ScoredEntry{doc_ids_[heap.top().doc], heap.top().score};
        heap.pop();
    }
    return out;
}

void InvertedIndex::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write(kMagic, 4);
    io::write_u32(out, kFormatVersion);
    io::write_f64(out, k1_);
    io::write_f64(out, b_);
    vocab_.write(out);
    io::write_varint(out, doc_ids_.size());
    for (const auto& id : doc_ids_) io::write_string(out, id);
    for (auto len : doc_lengths_) io::write_varint(out, len);
    for (const auto& plist : postings_) {
        io::write_varint(out, plist.size());
        DocIdx prev = 0;
        for (const auto& p : plist) {
            io::write_varint(out, p.doc - prev);  // delta-encoded doc gaps
            io::write_varint(out, p.tf);
            prev = p.doc;
        }
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

InvertedIndex InvertedIndex::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    io::expect_magic(in, kMagic, path);
    auto version = io::read_u32(in);
    if (version != kFormatVersion) {
        throw std::runtime_error(path + ": unsupported index format version " +
                                 std::to_string(version));
    }
    InvertedIndex index;
    index.k1_ = io::read_f64(in);
    index.b_ = io::read_f64(in);
    index.vocab_ = Vocabulary::read(in);
    auto n_docs = io::read_varint(in);
    index.doc_ids_.reserve(n_docs);
    for (std::uint64_t i = 0; i < n_docs; ++i) index.doc_ids_.push_back(io::read_string(in));
    index.doc_lengths_.reserve(n_docs);
    for (std::uint64_t i = 0; i < n_docs; ++i) index.doc_lengths_.push_back(io::read_varint(in));
    index.postings_.resize(index.vocab_.size());
    for (auto& plist : index.postings_) {
        auto len = io::read_varint(in);
        plist.reserve(len);
        DocIdx prev = 0;
        for (std::uint64_t i = 0; i < len; ++i) {
            auto gap = static_cast<DocIdx>(io::read_varint(in));
            auto tf = static_cast<std::uint32_t>(io::read_varint(in));
            DocIdx doc = prev + gap;
            plist.push_back(Posting{doc, tf});
            prev = doc;
        }
    }
    index.rebuild_lookup();
    return index;
}

}  // namespace clear
