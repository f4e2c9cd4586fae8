#include "synsearch/scorer.hpp"

#include <algorithm>

namespace synsearch {

double bm25_score(double idf, std::uint32_t tf, std::uint32_t doc_len, double avg_len,
                  const RankParams& params) {
    if (tf == 0) return 0.0;
    double norm = 1.0 - params.b + params.b * (avg_len > 0.0 ? doc_len / avg_len : 1.0);
    double f = static_cast<double>(tf);
    return idf * (f * (params.k1 + 1.0)) / (f + params.k1 * norm);
}

std::vector<ScoredDoc> score_documents(const InvertedIndex& index,
                                       const ExpandedQuery& query,
                                       const std::vector<double>* popularity,
                                       const RankParams& params) {
    const double avg_len = index.avg_doc_length();

    // Candidates keyed by doc_id; std::map keeps accumulation order stable.
    std::map<std::uint32_t, ScoredDoc> candidates;

    for (const auto& group : query.groups) {
        // Every member match for this group, keyed by doc.
        std::map<std::uint32_t, std::vector<MatchedTerm>> matches;
        for (const auto& member : group.members) {
            std::vector<Posting> postings = index.phrase_postings(member.term);
            if (postings.empty()) continue;
            double idf = index.idf_for_df(postings.size());
            for (const auto& posting : postings) {
                MatchedTerm match;
                match.term = member.term.text();
                match.origin = group.original.text();
                match.weight = member.weight;
                match.term_freq = posting.term_freq;
                match.weighted_score = member.weight *
                                       bm25_score(idf, posting.term_freq,
                                                  index.doc_length(posting.doc_id),
                                                  avg_len, params);
                matches[posting.doc_id].push_back(std::move(match));
            }
        }
        // The group contributes its best member only; a document matching
        // both a keyword and its synonyms is not double counted.
        for (auto& [doc_id, list] : matches) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < list.size(); ++i) {
                if (list[i].weighted_score > list[best].weighted_score) best = i;
            }
            list[best].chosen = true;
            ScoredDoc& doc = candidates[doc_id];
            doc.doc_id = doc_id;
            doc.relevancy_score += list[best].weighted_score;
            for (auto& match : list) doc.matched_terms.push_back(std::move(match));
        }
    }

    std::vector<ScoredDoc> scored;
    scored.reserve(candidates.size());
    for (auto& [doc_id, doc] : candidates) {
        if (popularity && doc_id < popularity->size()) {
            doc.popularity_score = (*popularity)[doc_id];
        }
        scored.push_back(std::move(doc));
    }

    if (popularity) {
        double max_rel = 0.0, max_pop = 0.0;
        for (const auto& doc : scored) {
            max_rel = std::max(max_rel, doc.relevancy_score);
            max_pop = std::max(max_pop, doc.popularity_score);
        }
        const double alpha = params.popularity_blend;
        for (auto& doc : scored) {
            double rel = max_rel > 0.0 ? doc.relevancy_score / max_rel : doc.relevancy_score;
            double pop = max_pop > 0.0 ? doc.popularity_score / max_pop : doc.popularity_score;
            doc.final_score = (1.0 - alpha) * rel + alpha * pop;
        }
    } else {
        for (auto& doc : scored) doc.final_score = doc.relevancy_score;
    }

    std::sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.final_score != b.final_score) return a.final_score > b.final_score;
        return a.doc_id < b.doc_id;
    });
    return scored;
}

std::vector<double> popularity_by_doc(const InvertedIndex& index,
                                      const std::map<std::string, double>& url_scores) {
    std::size_t max_id = 0;
    for (const auto& [doc_id, entry] : index.docs()) {
        max_id = std::max(max_id, static_cast<std::size_t>(doc_id));
    }
    std::vector<double> scores(index.doc_count() == 0 ? 0 : max_id + 1, 0.0);
    for (const auto& [doc_id, entry] : index.docs()) {
        auto it = url_scores.find(entry.source);
        if (it != url_scores.end()) scores[doc_id] = it->second;
    }
    return scores;
}

Serp paginate(const std::vector<ScoredDoc>& scored, int page, int page_size) {
    Serp serp;
    serp.page_number = page;
    serp.page_size = page_size;
    serp.total_hits = scored.size();
    if (page < 1 || page_size < 1) return serp;
    std::size_t begin = static_cast<std::size_t>(page - 1) * static_cast<std::size_t>(page_size);
    if (begin >= scored.size()) return serp;
    std::size_t end = std::min(scored.size(), begin + static_cast<std::size_t>(page_size));
    serp.results.assign(scored.begin() + begin, scored.begin() + end);
    return serp;
}

}  // namespace synsearch
