#include "synsearch/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "synsearch/errors.hpp"
#include "synsearch/query.hpp"

namespace synsearch {

JudgmentSet load_judgments(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.generic_string());
    JudgmentSet set;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(path.generic_string(), line_no, "expected query<TAB>sources");
        }
        Judgment judgment;
        judgment.query = line.substr(0, tab);
        if (judgment.query.empty()) {
            throw ParseError(path.generic_string(), line_no, "empty query");
        }
        std::string rest = line.substr(tab + 1);
        std::size_t start = 0;
        for (std::size_t i = 0; i <= rest.size(); ++i) {
            if (i == rest.size() || rest[i] == ',') {
                std::string source = rest.substr(start, i - start);
                // Trim surrounding spaces so judgment files can breathe.
                while (!source.empty() && source.front() == ' ') source.erase(source.begin());
                while (!source.empty() && source.back() == ' ') source.pop_back();
                if (!source.empty()) judgment.relevant_sources.insert(source);
                start = i + 1;
            }
        }
        if (judgment.relevant_sources.empty()) {
            throw ParseError(path.generic_string(), line_no, "no relevant sources listed");
        }
        set.entries.push_back(std::move(judgment));
    }
    return set;
}

double precision_at_k(const std::vector<std::string>& ranked_sources,
                      const std::set<std::string>& relevant, std::size_t k) {
    if (ranked_sources.empty()) return 0.0;
    std::size_t window = std::min(k, ranked_sources.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < window; ++i) {
        if (relevant.count(ranked_sources[i])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(std::min(k, ranked_sources.size()));
}

double recall_at_k(const std::vector<std::string>& ranked_sources,
                   const std::set<std::string>& relevant, std::size_t k) {
    if (relevant.empty()) throw UndefinedRecall("recall needs a non-empty relevant set");
    std::size_t window = std::min(k, ranked_sources.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < window; ++i) {
        if (relevant.count(ranked_sources[i])) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

namespace {

std::vector<std::string> ranked_sources_for(const InvertedIndex& index,
                                            const std::vector<ScoredDoc>& scored) {
    std::vector<std::string> sources;
    sources.reserve(scored.size());
    for (const auto& doc : scored) {
        const DocEntry* entry = index.doc(doc.doc_id);
        sources.push_back(entry ? entry->source : "");
    }
    return sources;
}

EvalRow make_row(const std::string& query_text, const std::string& mode,
                 const std::vector<std::string>& ranked,
                 const std::set<std::string>& relevant,
                 const std::vector<std::size_t>& k_list) {
    EvalRow row;
    row.query = query_text;
    row.mode = mode;
    row.total_hits = ranked.size();
    for (std::size_t k : k_list) {
        std::size_t window = std::min(k, ranked.size());
        std::size_t hits = 0;
        for (std::size_t i = 0; i < window; ++i) {
            if (relevant.count(ranked[i])) ++hits;
        }
        row.hits_at_k[k] = hits;
        row.precision_at_k[k] = precision_at_k(ranked, relevant, k);
        row.recall_at_k[k] = recall_at_k(ranked, relevant, k);
    }
    return row;
}

}  // namespace

EvalReport evaluate(const InvertedIndex& index, const SynonymTable& table,
                    const JudgmentSet& judgments, const RankParams& params,
                    const std::vector<std::size_t>& k_list,
                    const ExpansionOptions& opts) {
    std::set<std::string> known_sources;
    for (const auto& [doc_id, entry] : index.docs()) known_sources.insert(entry.source);
    for (const auto& judgment : judgments.entries) {
        for (const auto& source : judgment.relevant_sources) {
            if (!known_sources.count(source)) {
                throw BrokenJudgment("judgment for \"" + judgment.query +
                                     "\" references unknown source " + source);
            }
        }
    }

    EvalReport report;
    report.k_list = k_list;
    for (const auto& judgment : judgments.entries) {
        Query query = parse_query(judgment.query, table);

        auto run = [&](const ExpandedQuery& eq) {
            std::vector<ScoredDoc> scored = score_documents(index, eq, nullptr, params);
            return ranked_sources_for(index, scored);
        };
        std::vector<std::string> keyword_ranked = run(keyword_only_query(query));
        std::vector<std::string> expanded_ranked =
            run(expand_query(query, table, opts, params.synonym_weight));

        report.rows.push_back(make_row(judgment.query, "keyword-only", keyword_ranked,
                                       judgment.relevant_sources, k_list));
        report.rows.push_back(make_row(judgment.query, "expanded", expanded_ranked,
                                       judgment.relevant_sources, k_list));
    }

    for (const auto& mode : {std::string("keyword-only"), std::string("expanded")}) {
        for (std::size_t k : k_list) {
            double precision_sum = 0.0, recall_sum = 0.0;
            std::size_t n = 0;
            for (const auto& row : report.rows) {
                if (row.mode != mode) continue;
                precision_sum += row.precision_at_k.at(k);
                recall_sum += row.recall_at_k.at(k);
                ++n;
            }
            if (n > 0) {
                report.mean_precision[mode][k] = precision_sum / static_cast<double>(n);
                report.mean_recall[mode][k] = recall_sum / static_cast<double>(n);
            }
        }
    }
    return report;
}

namespace {

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

}  // namespace

std::string render_report_text(const EvalReport& report) {
    std::ostringstream out;
    out << "query\tmode";
    for (std::size_t k : report.k_list) {
        out << "\thits@" << k << "\tprec@" << k << "\trecall@" << k;
    }
    out << '\n';
    for (const auto& row : report.rows) {
        out << row.query << '\t' << row.mode;
        for (std::size_t k : report.k_list) {
            out << '\t' << row.hits_at_k.at(k) << '\t' << format_real(row.precision_at_k.at(k))
                << '\t' << format_real(row.recall_at_k.at(k));
        }
        out << '\n';
    }
    for (const auto& mode : {std::string("keyword-only"), std::string("expanded")}) {
        if (!report.mean_precision.count(mode)) continue;
        out << "mean\t" << mode;
        for (std::size_t k : report.k_list) {
            out << "\t-\t" << format_real(report.mean_precision.at(mode).at(k)) << '\t'
                << format_real(report.mean_recall.at(mode).at(k));
        }
        out << '\n';
    }
    return out.str();
}

std::string render_report_records(const EvalReport& report) {
    std::ostringstream out;
    for (const auto& row : report.rows) {
        for (std::size_t k : report.k_list) {
            out << row.query << '\t' << row.mode << '\t' << k << '\t' << row.hits_at_k.at(k)
                << '\t' << format_real(row.precision_at_k.at(k)) << '\t'
                << format_real(row.recall_at_k.at(k)) << '\n';
        }
    }
    return out.str();
}

}  // namespace synsearch
