#include "synsearch/link_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "synsearch/errors.hpp"

namespace synsearch {

int LinkGraph::id_of(const std::string& url) const {
    auto it = std::find(nodes.begin(), nodes.end(), url);
    return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

LinkGraph build_graph(const std::vector<std::string>& fetched_urls,
                      const std::vector<std::pair<std::string, std::string>>& edges) {
    LinkGraph graph;
    graph.nodes = fetched_urls;
    std::map<std::string, int> id_by_url;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        id_by_url[graph.nodes[i]] = static_cast<int>(i);
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& [from, to] : edges) {
        auto f = id_by_url.find(from);
        auto t = id_by_url.find(to);
        if (f == id_by_url.end() || t == id_by_url.end()) continue;
        if (f->second == t->second) continue;
        if (seen.insert({f->second, t->second}).second) {
            graph.edges.emplace_back(f->second, t->second);
        }
    }
    return graph;
}

LinkGraph build_graph(const CrawlResult& crawl) {
    std::vector<std::string> fetched;
    fetched.reserve(crawl.documents.size());
    for (const auto& doc : crawl.documents) fetched.push_back(doc.source);
    return build_graph(fetched, crawl.link_edges);
}

RankVector pagerank(const LinkGraph& graph, double damping, double eps, int max_iter) {
    const std::size_t n = graph.size();
    if (n == 0) throw EmptyGraph("pagerank needs at least one node");

    std::vector<std::vector<int>> out(n);
    for (const auto& [from, to] : graph.edges) out[from].push_back(to);

    RankVector result;
    result.scores.assign(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);

    for (int iter = 1; iter <= max_iter; ++iter) {
        double dangling_mass = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (out[v].empty()) dangling_mass += result.scores[v];
        }
        const double base = (1.0 - damping) / static_cast<double>(n) +
                            damping * dangling_mass / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (std::size_t v = 0; v < n; ++v) {
            if (out[v].empty()) continue;
            double share = damping * result.scores[v] / static_cast<double>(out[v].size());
            for (int target : out[v]) next[target] += share;
        }

        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) delta += std::fabs(next[v] - result.scores[v]);
        result.scores.swap(next);
        result.iterations_used = iter;
        if (delta < eps) {
            result.converged = true;
            break;
        }
    }

    // Float drift from the closed-form sum is re-normalized away so the
    // sum-to-one contract holds exactly as tested.
    double total = 0.0;
    for (double s : result.scores) total += s;
    if (total > 0.0) {
        for (double& s : result.scores) s /= total;
    }
    return result;
}

std::map<std::string, double> url_scores(const LinkGraph& graph, const RankVector& ranks) {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        out[graph.nodes[i]] = ranks.scores[i];
    }
    return out;
}

void save_ranks(const std::map<std::string, double>& scores, const std::string& path) {
    std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    char buf[64];
    for (const auto& [url, score] : rows) {
        std::snprintf(buf, sizeof(buf), "%.12f", score);
        out << url << '\t' << buf << '\n';
    }
}

std::map<std::string, double> load_ranks(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::map<std::string, double> scores;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(path, line_no, "expected a tab");
        try {
            scores[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
        } catch (const std::exception&) {
            throw ParseError(path, line_no, "bad score");
        }
    }
    return scores;
}

}  // namespace synsearch
