#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "synsearch/term.hpp"

namespace synsearch {

struct ExpansionOptions {
    // Also include keywords whose chain contains an input term.
    bool symmetric = false;
    // 1 = direct synonyms only; d > 1 follows synonym-of-synonym links.
    int transitive_depth = 1;
    // Cap on synonyms contributed per input term.
    int max_synonyms_per_term = 16;
};

// One element of an expansion result.
struct ExpandedTerm {
    Term term;
    bool original = false;  // term was in the input set
    Term origin;            // for synonyms: the input term it expands
};

struct ChainStats {
    std::size_t bucket_count = 0;
    std::size_t entry_count = 0;
    std::size_t max_chain_len = 0;
    double mean_chain_len = 0.0;  // entry_count / bucket_count
    // bucket chain length -> number of buckets with that length
    std::map<std::size_t, std::size_t> histogram;
};

struct LookupResult {
    std::vector<Term> synonyms;
    // Keyword entries examined in the bucket chain. For a hit this is the
    // 1-based position of the keyword within its bucket.
    std::size_t probes = 0;
};

// Hash table mapping a keyword to an ordered chain of its synonyms.
//
// The structure is kept explicit rather than delegated to std::unordered_map:
// buckets hold singly linked keyword entries (collision chains), and each
// keyword entry heads a singly linked synonym chain that terminates at a
// null link. Nodes live in index pools; -1 plays the null pointer. This
// keeps probe counts and chain statistics observable.
//
// Mutation is single-writer; a fully built table is safe for concurrent
// reads.
class SynonymTable {
public:
    static constexpr std::size_t kInitialBuckets = 16;
    static constexpr double kMaxLoadFactor = 0.75;

    SynonymTable();

    // Appends synonym to keyword's chain unless already present.
    // Throws SelfSynonym when keyword == synonym.
    void insert(const Term& keyword, const Term& synonym);

    // Chain for keyword in insertion order; empty when absent.
    std::vector<Term> lookup(const Term& keyword) const;
    LookupResult lookup_with_probes(const Term& keyword) const;
    bool contains(const Term& keyword) const;

    // Expands a set of terms per the options. Every input term appears
    // tagged original; synonyms carry the input term they expand. An
    // original is never re-tagged as a synonym. Symmetric expansion scans
    // all chains, so it costs O(table size) per call.
    std::vector<ExpandedTerm> expand_terms(const std::vector<Term>& terms,
                                           const ExpansionOptions& opts = {}) const;

    ChainStats chain_stats() const;

    std::size_t entry_count() const { return keywords_.size(); }
    std::size_t bucket_count() const { return buckets_.size(); }

    // All (keyword, chain) rows in keyword insertion order.
    std::vector<std::pair<Term, std::vector<Term>>> rows() const;

private:
    static constexpr std::int32_t kNull = -1;

    struct SynonymNode {
        Term term;
        std::int32_t next = kNull;
    };
    struct KeywordNode {
        Term keyword;
        std::int32_t chain_head = kNull;
        std::int32_t chain_tail = kNull;
        std::int32_t next_in_bucket = kNull;
    };

    std::size_t bucket_index(const Term& keyword) const;
    std::int32_t find_slot(const Term& keyword, std::size_t* probes) const;
    std::int32_t find_or_add_slot(const Term& keyword);
    void grow_if_needed();
    void rehash(std::size_t new_bucket_count);
    std::vector<Term> chain_of(std::int32_t slot) const;

    std::vector<std::int32_t> buckets_;  // head slot per bucket, kNull when empty
    std::vector<KeywordNode> keywords_;  // keyword entries in insertion order
    std::vector<SynonymNode> synonyms_;  // synonym chain nodes
};

// Plain-text persistence: one `keyword<TAB>syn1,syn2,...` row per line,
// `#` starts a comment, terms normalized on load. Save writes rows sorted
// by keyword so identical tables serialize to identical bytes.
SynonymTable load_table(const std::filesystem::path& path);
void save_table(const SynonymTable& table, const std::filesystem::path& path);

}  // namespace synsearch
