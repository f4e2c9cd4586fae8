#pragma once

#include <map>
#include <string>
#include <vector>

#include "synsearch/inverted_index.hpp"
#include "synsearch/query.hpp"

namespace synsearch {

// Tuning constants for scoring. k1/b shape term saturation and length
// normalization; synonym_weight discounts synonym matches below exact
// matches; popularity_blend mixes link popularity into the final score.
struct RankParams {
    double k1 = 1.2;
    double b = 0.75;
    double synonym_weight = 0.7;
    double popularity_blend = 0.2;
};

// One query-group member's match against one document.
struct MatchedTerm {
    std::string term;
    std::string origin;  // the query term whose group this member belongs to
    double weight = 1.0;
    std::uint32_t term_freq = 0;
    double weighted_score = 0.0;  // weight * per-member relevancy
    bool chosen = false;          // true when this member set its group's contribution
};

struct ScoredDoc {
    std::uint32_t doc_id = 0;
    double final_score = 0.0;
    double relevancy_score = 0.0;
    double popularity_score = 0.0;
    std::vector<MatchedTerm> matched_terms;  // group order, then member order
};

// Term-frequency relevancy of one (possibly multi-word) term for a document
// of length doc_len: idf * tf*(k1+1) / (tf + k1*(1 - b + b*doc_len/avg_len)).
double bm25_score(double idf, std::uint32_t tf, std::uint32_t doc_len, double avg_len,
                  const RankParams& params);

// Scores every document matching at least one member of at least one group.
// A group contributes the maximum weighted member score (a document stuffed
// with synonyms never beats the exact keyword); relevancy is the sum over
// groups. With popularity present, final = (1-a)*rel/max_rel + a*pop/max_pop
// over the candidate set, skipping a normalization when its max is 0.
// Result is sorted by final score descending, doc_id ascending on ties.
std::vector<ScoredDoc> score_documents(const InvertedIndex& index,
                                       const ExpandedQuery& query,
                                       const std::vector<double>* popularity,
                                       const RankParams& params);

// Maps url-keyed rank scores onto doc ids via each document's source;
// missing sources score 0.
std::vector<double> popularity_by_doc(const InvertedIndex& index,
                                      const std::map<std::string, double>& url_scores);

struct Serp {
    int page_number = 1;
    int page_size = 10;
    std::size_t total_hits = 0;
    std::vector<ScoredDoc> results;
};

// Slice [(page-1)*page_size, page*page_size). A page past the end yields an
// empty Serp with total_hits still set.
Serp paginate(const std::vector<ScoredDoc>& scored, int page, int page_size = 10);

}  // namespace synsearch
