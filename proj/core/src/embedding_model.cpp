#include "clear/embedding_model.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "clear/io.hpp"
#include "clear/rng.hpp"

namespace clear {

namespace {
constexpr char kMagic[4] = {'C', 'L', 'E', 'M'};
constexpr std::uint32_t kFormatVersion = 1;
}  // namespace

double score_emb(const Vector& v_q, const Vector& v_d) {
    if (v_q.size() != v_d.size()) {
        throw std::invalid_argument("embedding dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < v_q.size(); ++i) s += v_q[i] * v_d[i];
    return s;
}

void SparseGradient::accumulate(std::uint32_t row, std::span<const double> v,
                                double scale) {
    auto [it, inserted] = rows_.try_emplace(row, dim_, 0.0);
    auto& g = it->second;
    for (std::size_t i = 0; i < dim_; ++i) g[i] += scale * v[i];
}

void SparseGradient::add(const SparseGradient& other, double s) {
    for (const auto& [row, v] : other.rows_) {
        accumulate(row, v, s);
    }
}

void SparseGradient::scale(double s) {
    for (auto& [row, v] : rows_) {
        for (auto& x : v) x *= s;
    }
}

EmbeddingModel EmbeddingModel::init(std::size_t dim, std::size_t vocab_size,
                                    std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("embedding dim must be >= 1");

    EmbeddingModel model;
    model.dim_ = dim;
    model.vocab_size_ = vocab_size;
    model.seed_ = seed;
    model.table_.resize((vocab_size + 2) * dim);

    Rng rng(seed);
    const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
    for (auto& x : model.table_) {
        x = (2.0 * uniform_double01(rng) - 1.0) * bound;
    }
    return model;
}

std::span<const double> EmbeddingModel::row(std::uint32_t r) const {
    if (r >= row_count()) throw std::out_of_range("embedding row out of range");
    return {table_.data() + static_cast<std::size_t>(r) * dim_, dim_};
}

std::span<double> EmbeddingModel::row_mut(std::uint32_t r) {
    if (r >= row_count()) throw std::out_of_range("embedding row out of range");
    return {table_.data() + static_cast<std::size_t>(r) * dim_, dim_};
}

Vector EmbeddingModel::pooled_mean(std::uint32_t special_row,
                                   const std::vector<TokenId>& tokens) const {
    Vector sum(dim_, 0.0);
    auto add_row = [&](std::uint32_t r) {
        auto v = row(r);
        for (std::size_t i = 0; i < dim_; ++i) sum[i] += v[i];
    };
    add_row(special_row);
    std::size_t n = 1;
    for (TokenId t : tokens) {
        if (t == kOovTokenId || t >= vocab_size_) continue;  // OOV excluded from pooling
        add_row(t);
        ++n;
    }
    for (auto& x : sum) x /= static_cast<double>(n);
    return sum;
}

Vector EmbeddingModel::encode_query(const std::vector<TokenId>& tokens) const {
    return pooled_mean(qry_row(), tokens);
}

Vector EmbeddingModel::encode_document(const std::vector<TokenId>& tokens) const {
    return pooled_mean(doc_row(), tokens);
}

std::vector<std::uint32_t> EmbeddingModel::pooled_rows_query(
    const std::vector<TokenId>& tokens) const {
    std::vector<std::uint32_t> rows{qry_row()};
    for (TokenId t : tokens) {
        if (t != kOovTokenId && t < vocab_size_) rows.push_back(t);
    }
    return rows;
}

std::vector<std::uint32_t> EmbeddingModel::pooled_rows_document(
    const std::vector<TokenId>& tokens) const {
    std::vector<std::uint32_t> rows{doc_row()};
    for (TokenId t : tokens) {
        if (t != kOovTokenId && t < vocab_size_) rows.push_back(t);
    }
    return rows;
}

std::uint64_t EmbeddingModel::fingerprint() const {
    // FNV-1a over the float32 serialized form plus the shape fields.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_bytes = [&](const void* p, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    auto mix_u64 = [&](std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        mix_bytes(b, 8);
    };
    mix_u64(dim_);
    mix_u64(vocab_size_);
    mix_u64(seed_);
    for (double x : table_) {
        auto f = static_cast<float>(x);
        std::uint32_t bits;
        static_assert(sizeof(bits) == sizeof(f));
        std::memcpy(&bits, &f, sizeof(bits));
        unsigned char b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
        mix_bytes(b, 4);
    }
    return h;
}

void EmbeddingModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write(kMagic, 4);
    io::write_u32(out, kFormatVersion);
    io::write_u32(out, static_cast<std::uint32_t>(dim_));
    io::write_u64(out, vocab_size_);
    io::write_u64(out, seed_);
    for (double x : table_) io::write_f32(out, static_cast<float>(x));
    if (!out) throw std::runtime_error(path + ": write failed");
}

EmbeddingModel EmbeddingModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    io::expect_magic(in, kMagic, path);
    auto version = io::read_u32(in);
    if (version != kFormatVersion) {
        throw std::runtime_error(path + ": unsupported model format version " +
                                 std::to_string(version));
    }
    EmbeddingModel model;
    model.dim_ = io::read_u32(in);
    model.vocab_size_ = io::read_u64(in);
    model.seed_ = io::read_u64(in);
    if (model.dim_ == 0) throw std::runtime_error(path + ": zero embedding dim");
    model.table_.resize((model.vocab_size_ + 2) * model.dim_);
    for (auto& x : model.table_) x = io::read_f32(in);
    return model;
}

SparseGradient grad_encode(const EmbeddingModel& model,
                           const std::vector<TokenId>& query_tokens,
                           const std::vector<TokenId>& pos_tokens,
                           const std::vector<TokenId>& neg_tokens, double upstream) {
    SparseGradient grad(model.dim());
    if (upstream == 0.0) return grad;

    Vector v_q = model.encode_query(query_tokens);
    Vector v_pos = model.encode_document(pos_tokens);
    Vector v_neg = model.encode_document(neg_tokens);

    Vector neg_minus_pos(model.dim());
    for (std::size_t i = 0; i < model.dim(); ++i) {
        neg_minus_pos[i] = v_neg[i] - v_pos[i];
    }

    auto q_rows = model.pooled_rows_query(query_tokens);
    auto pos_rows = model.pooled_rows_document(pos_tokens);
    auto neg_rows = model.pooled_rows_document(neg_tokens);

    // d(-s+ + s-)/dv_q = v- - v+, split evenly over the pooled rows;
    // d/dv+ = -v_q, d/dv- = +v_q likewise. Repeated rows accumulate.
    const double wq = upstream / static_cast<double>(q_rows.size());
    for (auto r : q_rows) grad.accumulate(r, neg_minus_pos, wq);
    const double wp = -upstream / static_cast<double>(pos_rows.size());
    for (auto r : pos_rows) grad.accumulate(r, v_q, wp);
    const double wn = upstream / static_cast<double>(neg_rows.size());
    for (auto r : neg_rows) grad.accumulate(r, v_q, wn);
    return grad;
}

}  // namespace clear
