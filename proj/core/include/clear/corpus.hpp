#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clear/types.hpp"

namespace clear {

/// Token <-> id mapping plus the collection statistics BM25 needs.
/// Ids are contiguous from 0 in first-occurrence order of the build input.
class Vocabulary {
public:
    std::optional<TokenId> lookup(std::string_view token) const;

    /// lookup() that maps unknown tokens to kOovTokenId.
    TokenId id_or_oov(std::string_view token) const;

    const std::string& token(TokenId id) const { return tokens_.at(id); }
    std::size_t size() const { return tokens_.size(); }

    /// Documents containing the token at least once.
    std::uint64_t df(TokenId id) const { return df_.at(id); }

    std::uint64_t doc_count() const { return doc_count_; }
    double avg_doc_len() const { return avg_doc_len_; }

    /// Tokenizes text and maps to ids; unknown tokens become kOovTokenId.
    std::vector<TokenId> encode(std::string_view text) const;

    void write(std::ostream& out) const;
    static Vocabulary read(std::istream& in);

    friend Vocabulary build_vocabulary(const std::vector<Document>& docs);

private:
    std::unordered_map<std::string, TokenId> token_to_id_;
    std::vector<std::string> tokens_;
    std::vector<std::uint64_t> df_;
    std::uint64_t doc_count_ = 0;
    double avg_doc_len_ = 0.0;
};

/// Tokenizes every document and derives df, N and the average document
/// length. Each document bumps a token's df at most once.
/// Throws on an empty collection.
Vocabulary build_vocabulary(const std::vector<Document>& docs);

/// Fills doc.tokens / query.tokens from the raw text against vocab.
void tokenize_collection(std::vector<Document>& docs, const Vocabulary& vocab);
void tokenize_queries(std::vector<Query>& queries, const Vocabulary& vocab);

/// Relevance judgments. Absent pairs have grade 0.
class Qrels {
public:
    void add(const std::string& query_id, const std::string& doc_id, int grade);

    int grade(const std::string& query_id, const std::string& doc_id) const;
    bool is_relevant(const std::string& query_id, const std::string& doc_id) const {
        return grade(query_id, doc_id) > 0;
    }

    /// Doc ids judged with grade > 0 for the query (empty if none).
    std::vector<std::string> relevant_docs(const std::string& query_id) const;
    std::size_t relevant_count(const std::string& query_id) const;

    /// All (doc_id, grade) judgments recorded for the query.
    const std::unordered_map<std::string, int>* judgments(const std::string& query_id) const;

    std::size_t query_count() const { return by_query_.size(); }

private:
    std::unordered_map<std::string, std::unordered_map<std::string, int>> by_query_;
};

// File loaders. All are fatal on missing files and malformed records; the
// diagnostics carry "<path>:<line>".
//   collection / queries:  TSV  id<TAB>text
//   qrels:                 whitespace-separated  qid 0 docid grade
//   pairs:                 TSV  query_id<TAB>doc_id
std::vector<Document> load_collection(const std::string& path);
std::vector<Query> load_queries(const std::string& path);
Qrels load_qrels(const std::string& path);
std::vector<std::pair<std::string, std::string>> load_pairs(const std::string& path);

}  // namespace clear
