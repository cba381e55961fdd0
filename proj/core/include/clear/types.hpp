#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace clear {

using TokenId = std::uint32_t;
using DocIdx = std::uint32_t;  // internal document index, dense in [0, N)

/// Reserved id for tokens outside the vocabulary. OOV tokens contribute
/// nothing to BM25 and are excluded from embedding pooling.
inline constexpr TokenId kOovTokenId = std::numeric_limits<TokenId>::max();

struct ScoredEntry {
    std::string doc_id;
    double score = 0.0;
};

/// Ranked retrieval output: sorted by score descending, ties broken by
/// doc_id ascending, no duplicate doc_id.
using ScoredList = std::vector<ScoredEntry>;

/// Canonical ordering used by every ranked list in the engine.
inline bool ranks_before(const ScoredEntry& a, const ScoredEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
}

struct Document {
    std::string doc_id;
    std::string text;
    std::vector<TokenId> tokens;
};

struct Query {
    std::string query_id;
    std::string text;
    std::vector<TokenId> tokens;
};

}  // namespace clear
