#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "synsearch/scorer.hpp"
#include "synsearch/synonym_table.hpp"

namespace synsearch {

struct Judgment {
    std::string query;
    std::set<std::string> relevant_sources;
};

struct JudgmentSet {
    std::vector<Judgment> entries;
};

// `query<TAB>source1,source2,...` per line, `#` comments allowed.
JudgmentSet load_judgments(const std::filesystem::path& path);

// precision = |top-k ∩ relevant| / min(k, |ranked|); an empty ranking scores 0.
double precision_at_k(const std::vector<std::string>& ranked_sources,
                      const std::set<std::string>& relevant, std::size_t k);

// recall = |top-k ∩ relevant| / |relevant|; throws UndefinedRecall when the
// relevant set is empty.
double recall_at_k(const std::vector<std::string>& ranked_sources,
                   const std::set<std::string>& relevant, std::size_t k);

struct EvalRow {
    std::string query;
    std::string mode;  // "keyword-only" or "expanded"
    std::map<std::size_t, std::size_t> hits_at_k;
    std::map<std::size_t, double> precision_at_k;
    std::map<std::size_t, double> recall_at_k;
    std::size_t total_hits = 0;
};

struct EvalReport {
    std::vector<std::size_t> k_list;
    std::vector<EvalRow> rows;  // two per judged query, keyword-only first
    // mode -> k -> mean over queries
    std::map<std::string, std::map<std::size_t, double>> mean_precision;
    std::map<std::string, std::map<std::size_t, double>> mean_recall;
};

// Runs every judged query in both modes through the full query pipeline and
// scores the rankings against the judgments. Throws BrokenJudgment when a
// judgment references a source absent from the index.
EvalReport evaluate(const InvertedIndex& index, const SynonymTable& table,
                    const JudgmentSet& judgments, const RankParams& params,
                    const std::vector<std::size_t>& k_list = {5, 10},
                    const ExpansionOptions& opts = {});

std::string render_report_text(const EvalReport& report);
// Machine-readable lines: query<TAB>mode<TAB>k<TAB>hits<TAB>precision<TAB>recall.
std::string render_report_records(const EvalReport& report);

}  // namespace synsearch
