#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "clear/corpus.hpp"
#include "clear/types.hpp"

namespace clear {

/// Robertson-Sparck Jones weight ln((N - df + 0.5) / (df + 0.5)), clamped
/// below at 0. Throws for df = 0; callers skip unseen terms.
double rsj_weight(std::uint64_t df, std::uint64_t doc_count);

/// Inverted index over a tokenized collection, scored with BM25.
/// Immutable after build; concurrent searches need no synchronization.
class InvertedIndex {
public:
    struct Posting {
        DocIdx doc;
        std::uint32_t tf;
    };

    /// Postings sorted ascending by internal id, one entry per (term, doc).
    /// Throws on k1 <= 0, b outside [0,1], or duplicate doc ids.
    static InvertedIndex build(const std::vector<Document>& docs, Vocabulary vocab,
                               double k1, double b);

    double k1() const { return k1_; }
    double b() const { return b_; }

    /// Query-time override of the stored BM25 parameters.
    void set_params(double k1, double b);

    const Vocabulary& vocab() const { return vocab_; }
    std::size_t doc_count() const { return doc_ids_.size(); }
    const std::string& doc_id(DocIdx d) const { return doc_ids_.at(d); }
    std::optional<DocIdx> doc_idx(const std::string& doc_id) const;
    std::uint64_t doc_length(DocIdx d) const { return doc_lengths_.at(d); }
    const std::vector<Posting>& postings(TokenId t) const { return postings_.at(t); }

    /// BM25 over the deduplicated query terms present in document d.
    /// Disjoint query and document score 0.
    double bm25_score(const std::vector<TokenId>& query_tokens, DocIdx d) const;
    double bm25_score(const Query& q, DocIdx d) const { return bm25_score(q.tokens, d); }

    /// Exact top-k by BM25, document-at-a-time over merged postings with a
    /// bounded min-heap. Only documents with score > 0 are returned.
    ScoredList search(const std::vector<TokenId>& query_tokens, std::size_t k) const;
    ScoredList search(const Query& q, std::size_t k) const { return search(q.tokens, k); }

    /// Position of document d when all external ids are sorted ascending;
    /// used as the deterministic tie-break everywhere.
    std::uint32_t id_rank(DocIdx d) const { return id_rank_.at(d); }

    void save(const std::string& path) const;
    static InvertedIndex load(const std::string& path);

private:
    InvertedIndex() = default;
    void rebuild_lookup();

    Vocabulary vocab_;
    std::vector<std::vector<Posting>> postings_;
    std::vector<std::uint64_t> doc_lengths_;
    std::vector<std::string> doc_ids_;
    std::unordered_map<std::string, DocIdx> doc_idx_;
    std::vector<std::uint32_t> id_rank_;
    double k1_ = 0.82;
    double b_ = 0.68;
};

}  // namespace clear
