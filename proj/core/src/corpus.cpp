#include "clear/corpus.hpp"

#include <fstream>
#include <stdexcept>

#include "clear/io.hpp"
#include "clear/tokenizer.hpp"

namespace clear {

std::optional<TokenId> Vocabulary::lookup(std::string_view token) const {
    auto it = token_to_id_.find(std::string(token));
    if (it == token_to_id_.end()) return std::nullopt;
    return it->second;
}

TokenId Vocabulary::id_or_oov(std::string_view token) const {
    auto id = lookup(token);
    return id ? *id : kOovTokenId;
}

std::vector<TokenId> Vocabulary::encode(std::string_view text) const {
    std::vector<TokenId> ids;
    for (const auto& tok : tokenize(text)) {
        ids.push_back(id_or_oov(tok));
    }
    return ids;
}

Vocabulary build_vocabulary(const std::vector<Document>& docs) {
    if (docs.empty()) throw std::runtime_error("empty collection");

    Vocabulary vocab;
    vocab.doc_count_ = docs.size();

    std::uint64_t total_tokens = 0;
    std::vector<std::uint64_t> last_seen_doc;  // per token id, for df dedup

    for (std::size_t d = 0; d < docs.size(); ++d) {
        auto tokens = tokenize(docs[d].text);
        total_tokens += tokens.size();
        for (auto& tok : tokens) {
            auto [it, inserted] = vocab.token_to_id_.try_emplace(
                std::move(tok), static_cast<TokenId>(vocab.tokens_.size()));
            if (inserted) {
                vocab.tokens_.push_back(it->first);
                vocab.df_.push_back(0);
                last_seen_doc.push_back(docs.size());  // sentinel: never seen
            }
            TokenId id = it->second;
            if (last_seen_doc[id] != d) {
                last_seen_doc[id] = d;
                ++vocab.df_[id];
            }
        }
    }

    vocab.avg_doc_len_ =
        static_cast<double>(total_tokens) / static_cast<double>(docs.size());
    return vocab;
}

void Vocabulary::write(std::ostream& out) const {
    io::write_u64(out, doc_count_);
    io::write_f64(out, avg_doc_len_);
    io::write_varint(out, tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        io::write_string(out, tokens_[i]);
        io::write_varint(out, df_[i]);
    }
}

Vocabulary Vocabulary::read(std::istream& in) {
    Vocabulary vocab;
    vocab.doc_count_ = io::read_u64(in);
    vocab.avg_doc_len_ = io::read_f64(in);
    auto n = io::read_varint(in);
    vocab.tokens_.reserve(n);
    vocab.df_.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::string tok = io::read_string(in);
        vocab.df_.push_back(io::read_varint(in));
        vocab.token_to_id_.emplace(tok, static_cast<TokenId>(i));
        vocab.tokens_.push_back(std::move(tok));
    }
    return vocab;
}

void tokenize_collection(std::vector<Document>& docs, const Vocabulary& vocab) {
    for (auto& doc : docs) doc.tokens = vocab.encode(doc.text);
}

void tokenize_queries(std::vector<Query>& queries, const Vocabulary& vocab) {
    for (auto& q : queries) q.tokens = vocab.encode(q.text);
}

void Qrels::add(const std::string& query_id, const std::string& doc_id, int grade) {
    if (grade < 0) throw std::invalid_argument("relevance grade must be >= 0");
    by_query_[query_id][doc_id] = grade;
}

int Qrels::grade(const std::string& query_id, const std::string& doc_id) const {
    auto qit = by_query_.find(query_id);
    if (qit == by_query_.end()) return 0;
    auto dit = qit->second.find(doc_id);
    return dit == qit->second.end() ? 0 : dit->second;
}

std::vector<std::string> Qrels::relevant_docs(const std::string& query_id) const {
    std::vector<std::string> out;
    auto qit = by_query_.find(query_id);
    if (qit == by_query_.end()) return out;
    for (const auto& [doc_id, g] : qit->second) {
        if (g > 0) out.push_back(doc_id);
    }
    return out;
}

std::size_t Qrels::relevant_count(const std::string& query_id) const {
    std::size_t n = 0;
    auto qit = by_query_.find(query_id);
    if (qit == by_query_.end()) return 0;
    for (const auto& [doc_id, g] : qit->second) {
        if (g > 0) ++n;
    }
    return n;
}

const std::unordered_map<std::string, int>* Qrels::judgments(
    const std::string& query_id) const {
    auto qit = by_query_.find(query_id);
    return qit == by_query_.end() ? nullptr : &qit->second;
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    return in;
}

[[noreturn]] void malformed(const std::string& path, std::size_t line_no,
                            const std::string& why) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                             ": malformed record (" + why + ")");
}

// Reads lines, tolerating a trailing \r; skips fully empty lines.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    auto in = open_or_throw(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fn(line, line_no);
    }
}

std::pair<std::string, std::string> split_tsv2(const std::string& line,
                                               const std::string& path,
                                               std::size_t line_no) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) malformed(path, line_no, "expected id<TAB>text");
    std::string id = line.substr(0, tab);
    if (id.empty()) malformed(path, line_no, "empty id field");
    return {std::move(id), line.substr(tab + 1)};
}

}  // namespace

std::vector<Document> load_collection(const std::string& path) {
    std::vector<Document> docs;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        auto [id, text] = split_tsv2(line, path, line_no);
        docs.push_back(Document{std::move(id), std::move(text), {}});
    });
    return docs;
}

std::vector<Query> load_queries(const std::string& path) {
    std::vector<Query> queries;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        auto [id, text] = split_tsv2(line, path, line_no);
        queries.push_back(Query{std::move(id), std::move(text), {}});
    });
    return queries;
}

Qrels load_qrels(const std::string& path) {
    Qrels qrels;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        std::vector<std::string> fields;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            if (i > start) fields.push_back(line.substr(start, i - start));
        }
        if (fields.size() != 4) malformed(path, line_no, "expected qid 0 docid grade");
        int grade = 0;
        try {
            std::size_t pos = 0;
            grade = std::stoi(fields[3], &pos);
            if (pos != fields[3].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            malformed(path, line_no, "grade is not an integer");
        }
        if (grade < 0) malformed(path, line_no, "negative grade");
        qrels.add(fields[0], fields[2], grade);
    });
    return qrels;
}

std::vector<std::pair<std::string, std::string>> load_pairs(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for_each_line(path, [&](const std::string& line, std::size_t line_no) {
        auto [qid, docid] = split_tsv2(line, path, line_no);
        if (docid.empty() || docid.find('\t') != std::string::npos) {
            malformed(path, line_no, "expected query_id<TAB>doc_id");
        }
        pairs.emplace_back(std::move(qid), std::move(docid));
    });
    return pairs;
}

}  // namespace clear
