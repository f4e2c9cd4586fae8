#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "synsearch/crawler.hpp"

namespace synsearch {

// Directed graph over crawled URLs with dense integer ids. Self-loops are
// dropped and duplicate edges collapsed on build.
struct LinkGraph {
    std::vector<std::string> nodes;              // index == node id
    std::vector<std::pair<int, int>> edges;      // (from_id, to_id)

    int id_of(const std::string& url) const;     // -1 when absent
    std::size_t size() const { return nodes.size(); }
};

// Nodes are the fetched documents (in fetch order); edges keep only pairs
// where both endpoints were fetched.
LinkGraph build_graph(const CrawlResult& crawl);
LinkGraph build_graph(const std::vector<std::string>& fetched_urls,
                      const std::vector<std::pair<std::string, std::string>>& edges);

struct RankVector {
    std::vector<double> scores;  // node id -> score, sums to 1
    int iterations_used = 0;
    bool converged = false;
};

// Power iteration of the random-surfer model from the uniform vector.
// Dangling nodes spread their mass uniformly each step; convergence is an
// L1 change below eps. Throws EmptyGraph on a node-less graph.
RankVector pagerank(const LinkGraph& graph, double damping = 0.85, double eps = 1e-8,
                    int max_iter = 200);

// url -> score map for the graph the vector was computed over.
std::map<std::string, double> url_scores(const LinkGraph& graph, const RankVector& ranks);

// `url<TAB>score` per line, score descending, url ascending on ties.
void save_ranks(const std::map<std::string, double>& scores, const std::string& path);
std::map<std::string, double> load_ranks(const std::string& path);

}  // namespace synsearch
