#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "clear/types.hpp"

namespace clear {

using Vector = std::vector<double>;

/// Dot product with 64-bit accumulation. Throws on dimension mismatch.
double score_emb(const Vector& v_q, const Vector& v_d);

/// Sparse per-row gradient of a loss with respect to the embedding table.
/// Rows iterate in ascending row order so accumulation is deterministic.
class SparseGradient {
public:
    explicit SparseGradient(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    bool empty() const { return rows_.empty(); }
    std::size_t row_count() const { return rows_.size(); }

    /// row += scale * v (v must have length dim).
    void accumulate(std::uint32_t row, std::span<const double> v, double scale);
    void add(const SparseGradient& other, double scale);
    void scale(double s);

    const std::map<std::uint32_t, std::vector<double>>& rows() const { return rows_; }

private:
    std::size_t dim_;
    std::map<std::uint32_t, std::vector<double>> rows_;
};

/// Learnable embedding table over the vocabulary plus the two special
/// prefix tokens. A single parameter set is shared by query and document
/// encoding; the sides differ only through their special row.
class EmbeddingModel {
public:
    /// Entries i.i.d. uniform in [-1/sqrt(dim), +1/sqrt(dim)] from the
    /// seeded generator; deterministic given the seed. dim must be >= 1.
    static EmbeddingModel init(std::size_t dim, std::size_t vocab_size,
                               std::uint64_t seed);

    std::size_t dim() const { return dim_; }
    std::size_t vocab_size() const { return vocab_size_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t row_count() const { return vocab_size_ + 2; }

    std::uint32_t qry_row() const { return static_cast<std::uint32_t>(vocab_size_); }
    std::uint32_t doc_row() const { return static_cast<std::uint32_t>(vocab_size_) + 1; }

    std::span<const double> row(std::uint32_t r) const;
    std::span<double> row_mut(std::uint32_t r);

    /// Mean of the special row and the rows of the in-vocabulary tokens
    /// (OOV skipped, repeats counted). With no usable tokens the result is
    /// the special row alone.
    Vector encode_query(const std::vector<TokenId>& tokens) const;
    Vector encode_document(const std::vector<TokenId>& tokens) const;
    Vector encode_query(const Query& q) const { return encode_query(q.tokens); }
    Vector encode_document(const Document& d) const { return encode_document(d.tokens); }

    /// Rows pooled for one side: the special row followed by in-vocabulary
    /// token rows in sequence order.
    std::vector<std::uint32_t> pooled_rows_query(const std::vector<TokenId>& tokens) const;
    std::vector<std::uint32_t> pooled_rows_document(const std::vector<TokenId>& tokens) const;

    /// Hash binding dependent artifacts (the dense index) to these
    /// parameters. Computed over the 32-bit serialized form, so a model
    /// and its save/load round-trip fingerprint identically.
    std::uint64_t fingerprint() const;

    void save(const std::string& path) const;
    static EmbeddingModel load(const std::string& path);

private:
    EmbeddingModel() = default;
    Vector pooled_mean(std::uint32_t special_row,
                       const std::vector<TokenId>& tokens) const;

    std::size_t dim_ = 0;
    std::size_t vocab_size_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> table_;  // (vocab_size + 2) x dim, row-major
};

/// Gradient of `upstream * (s_emb(q,d-) - s_emb(q,d+))`, the linear part
/// of the triplet hinge, restricted to the touched rows. With the hinge
/// inactive callers pass upstream = 0 and get an all-zero gradient.
SparseGradient grad_encode(const EmbeddingModel& model,
                           const std::vector<TokenId>& query_tokens,
                           const std::vector<TokenId>& pos_tokens,
                           const std::vector<TokenId>& neg_tokens, double upstream);

}  // namespace clear
