#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "synsearch/document.hpp"
#include "synsearch/term.hpp"

namespace synsearch {

// One document's entry under a term: frequency plus strictly increasing
// token positions (term_freq == positions.size()).
struct Posting {
    std::uint32_t doc_id = 0;
    std::uint32_t term_freq = 0;
    std::vector<std::uint32_t> positions;

    bool operator==(const Posting&) const = default;
};

struct DocEntry {
    std::string source;
    std::string title;
    std::uint32_t length = 0;  // token count of title + description + body
};

// Positional inverted index over single-word tokens. Title, meta
// description, and body form one continuous position stream per document.
// Multi-word terms are answered by on-the-fly adjacency matching over the
// stored positions. Building is single-writer; a built index is safe for
// concurrent reads.
class InvertedIndex {
public:
    // Throws DuplicateDocument when doc.doc_id is already indexed.
    void index_document(const Document& doc);

    // Stored postings for one word; nullptr when the word is unknown.
    const std::vector<Posting>* postings(const std::string& word) const;

    // Postings for an ordered word sequence. A document qualifies iff the
    // words occur at consecutive positions; term_freq counts adjacency
    // matches and positions hold the start offsets. For a single word this
    // equals the stored postings.
    std::vector<Posting> phrase_postings(const std::vector<std::string>& words) const;
    std::vector<Posting> phrase_postings(const Term& term) const;

    // Number of documents the (possibly multi-word) term matches.
    std::size_t doc_freq(const Term& term) const;

    // ln(1 + (N - df + 0.5) / (df + 0.5)); df = 0 yields the corpus maximum.
    double idf(const Term& term) const;
    double idf_for_df(std::size_t df) const;

    std::size_t doc_count() const { return docs_.size(); }
    double avg_doc_length() const;
    std::uint32_t doc_length(std::uint32_t doc_id) const;
    const DocEntry* doc(std::uint32_t doc_id) const;
    const std::map<std::uint32_t, DocEntry>& docs() const { return docs_; }
    const std::map<std::string, std::vector<Posting>>& terms() const { return postings_; }
    std::size_t term_count() const { return postings_.size(); }

    // Reassembles an index from persisted state, validating that postings
    // are sorted and unique per term, positions strictly increase, and the
    // term frequencies of each document sum to its stored length.
    static InvertedIndex restore(std::map<std::uint32_t, DocEntry> docs,
                                 std::map<std::string, std::vector<Posting>> postings);

private:
    std::map<std::string, std::vector<Posting>> postings_;
    std::map<std::uint32_t, DocEntry> docs_;
    std::uint64_t total_tokens_ = 0;
};

// Builds an index over documents in order, assigning nothing: doc_ids come
// from the documents themselves.
InvertedIndex build_index(const std::vector<Document>& docs);

// Line-oriented text persistence, lossless for postings and doc entries.
InvertedIndex load_index(const std::filesystem::path& path);
void save_index(const InvertedIndex& index, const std::filesystem::path& path);

}  // namespace synsearch
