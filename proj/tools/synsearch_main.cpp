// Command-line front end: crawl, index, rank, synonyms, query, eval, bench.
// All pipeline artifacts live in one workspace directory.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "synsearch/config.hpp"
#include "synsearch/crawler.hpp"
#include "synsearch/errors.hpp"
#include "synsearch/evaluation.hpp"
#include "synsearch/html_parse.hpp"
#include "synsearch/link_graph.hpp"
#include "synsearch/query.hpp"
#include "synsearch/scorer.hpp"
#include "synsearch/synonym_table.hpp"
#include "synsearch/url.hpp"

namespace fs = std::filesystem;
using namespace synsearch;

namespace {

// Exit codes: 0 success, 1 usage error, 2 missing or invalid input artifact,
// 3 runtime failure.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kBadArtifact = 2;
constexpr int kRuntime = 3;

struct Workspace {
    fs::path root;

    fs::path corpus_dir() const { return root / "corpus"; }
    fs::path manifest() const { return root / "crawl.manifest"; }
    fs::path links() const { return root / "links.tsv"; }
    fs::path index_file() const { return root / "index.dat"; }
    fs::path synonyms() const { return root / "synonyms.tsv"; }
    fs::path ranks() const { return root / "ranks.tsv"; }
    fs::path config() const { return root / "config.txt"; }
};

int missing(const fs::path& artifact, const std::string& hint) {
    std::cerr << "error: missing " << artifact.generic_string() << " (" << hint << ")\n";
    return kBadArtifact;
}

SynonymTable table_or_empty(const Workspace& ws) {
    std::error_code ec;
    if (!fs::exists(ws.synonyms(), ec)) return SynonymTable{};
    return load_table(ws.synonyms());
}

std::string fixed(double value, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

// ---- crawl ----

struct CrawlArgs {
    Workspace ws;
    CrawlConfig config;
    std::string fetcher = "auto";  // auto | local | http
    std::int64_t fixed_fetch_time = -1;
};

int cmd_crawl(CrawlArgs& args) {
    std::string kind = args.fetcher;
    if (kind == "auto") {
        kind = (!args.config.seeds.empty() && is_http_url(args.config.seeds.front()))
                   ? "http"
                   : "local";
    }
    std::unique_ptr<Fetcher> fetcher;
    if (kind == "local") {
        fetcher = std::make_unique<LocalFetcher>();
    } else if (kind == "http") {
        fetcher = std::make_unique<HttpFetcher>();
    } else {
        std::cerr << "error: unknown fetcher \"" << kind << "\"\n";
        return kUsage;
    }

    Clock clock;
    if (args.fixed_fetch_time >= 0) {
        clock = [t = args.fixed_fetch_time] { return t; };
    }

    CrawlResult result = crawl(args.config, *fetcher, clock);
    fs::create_directories(args.ws.root);
    save_crawl(result, args.ws.root.generic_string());

    std::size_t ok = result.documents.size();
    std::cout << "crawled " << result.records.size() << " urls, " << ok << " ok, "
              << result.link_edges.size() << " links\n";
    return kOk;
}

// ---- index ----

// Sources are recorded relative to the corpus directory so judgment files
// and saved indexes stay valid wherever the corpus is checked out.
std::vector<Document> documents_from_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string type = content_type_for_path(entry.path().generic_string());
        if (type == "text/html" || type == "text/plain") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Document> docs;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw IoError("cannot open " + file.generic_string());
        std::ostringstream buf;
        buf << in.rdbuf();
        bool is_html = content_type_for_path(file.generic_string()) == "text/html";
        std::string source = file.lexically_relative(dir).generic_string();
        docs.push_back(document_from_page(static_cast<int>(docs.size()), source, buf.str(),
                                          is_html));
    }
    return docs;
}

struct IndexArgs {
    Workspace ws;
    std::string corpus_dir;  // explicit directory; default is the crawl output
    bool stats = false;
};

int cmd_index(IndexArgs& args) {
    std::vector<Document> docs;
    if (!args.corpus_dir.empty()) {
        std::error_code ec;
        if (!fs::is_directory(args.corpus_dir, ec)) {
            return missing(args.corpus_dir, "corpus directory");
        }
        docs = documents_from_dir(args.corpus_dir);
    } else {
        std::error_code ec;
        if (!fs::exists(args.ws.manifest(), ec)) {
            return missing(args.ws.manifest(), "run crawl first or pass --corpus");
        }
        docs = load_crawl(args.ws.root.generic_string()).documents;
    }
    if (docs.empty()) {
        std::cerr << "error: no indexable documents found\n";
        return kBadArtifact;
    }
    InvertedIndex index = build_index(docs);
    fs::create_directories(args.ws.root);
    save_index(index, args.ws.index_file());
    std::cout << "indexed " << index.doc_count() << " documents, " << index.term_count()
              << " terms\n";
    if (args.stats) {
        std::cout << "doc_count\t" << index.doc_count() << '\n'
                  << "term_count\t" << index.term_count() << '\n'
                  << "avg_doc_length\t" << fixed(index.avg_doc_length(), 4) << '\n';
    }
    return kOk;
}

// ---- rank ----

struct RankArgs {
    Workspace ws;
    double damping = 0.85;
    double eps = 1e-8;
    int max_iter = 200;
};

int cmd_rank(RankArgs& args) {
    std::error_code ec;
    if (!fs::exists(args.ws.manifest(), ec)) {
        return missing(args.ws.manifest(), "run crawl first");
    }
    std::vector<FetchRecord> records = load_manifest(args.ws.manifest().generic_string());
    std::vector<std::string> fetched;
    for (const auto& record : records) {
        if (record.status == FetchStatus::Ok) fetched.push_back(record.url);
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (fs::exists(args.ws.links(), ec)) {
        edges = load_links(args.ws.links().generic_string());
    }
    LinkGraph graph = build_graph(fetched, edges);
    RankVector ranks = pagerank(graph, args.damping, args.eps, args.max_iter);
    save_ranks(url_scores(graph, ranks), args.ws.ranks().generic_string());
    std::cout << "ranked " << graph.size() << " pages in " << ranks.iterations_used
              << " iterations" << (ranks.converged ? "" : " (not converged)") << '\n';
    return kOk;
}

// ---- synonyms ----

struct SynonymsArgs {
    Workspace ws;
    std::string keyword;
    std::string synonym;
    std::string import_file;
};

int cmd_synonyms_add(SynonymsArgs& args) {
    SynonymTable table = table_or_empty(args.ws);
    table.insert(normalize_term(args.keyword), normalize_term(args.synonym));
    fs::create_directories(args.ws.root);
    save_table(table, args.ws.synonyms());
    return kOk;
}

int cmd_synonyms_list(SynonymsArgs& args) {
    SynonymTable table = table_or_empty(args.ws);
    if (!args.keyword.empty()) {
        for (const auto& synonym : table.lookup(normalize_term(args.keyword))) {
            std::cout << synonym.text() << '\n';
        }
        return kOk;
    }
    auto rows = table.rows();
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [keyword, synonyms] : rows) {
        std::cout << keyword.text() << '\t';
        for (std::size_t i = 0; i < synonyms.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << synonyms[i].text();
        }
        std::cout << '\n';
    }
    return kOk;
}

int cmd_synonyms_import(SynonymsArgs& args) {
    std::error_code ec;
    if (!fs::exists(args.import_file, ec)) {
        return missing(args.import_file, "synonyms file to import");
    }
    SynonymTable incoming = load_table(args.import_file);
    SynonymTable table = table_or_empty(args.ws);
    for (const auto& [keyword, synonyms] : incoming.rows()) {
        for (const auto& synonym : synonyms) table.insert(keyword, synonym);
    }
    fs::create_directories(args.ws.root);
    save_table(table, args.ws.synonyms());
    std::cout << "imported, table now holds " << table.entry_count() << " keywords\n";
    return kOk;
}

int cmd_synonyms_stats(SynonymsArgs& args) {
    SynonymTable table = table_or_empty(args.ws);
    ChainStats stats = table.chain_stats();
    std::cout << "keywords\t" << stats.entry_count << '\n'
              << "buckets\t" << stats.bucket_count << '\n'
              << "load_factor\t"
              << fixed(static_cast<double>(stats.entry_count) /
                           static_cast<double>(stats.bucket_count),
                       4)
              << '\n'
              << "max_chain\t" << stats.max_chain_len << '\n'
              << "mean_chain\t" << fixed(stats.mean_chain_len, 4) << '\n';
    for (const auto& [len, buckets] : stats.histogram) {
        std::cout << "chain_len\t" << len << '\t' << buckets << '\n';
    }
    return kOk;
}

// ---- query ----

struct QueryArgs {
    Workspace ws;
    std::string text;
    bool no_expand = false;
    bool explain = false;
    int page = 1;
    std::string format = "table";  // table | records
};

void print_serp_table(const Serp& serp, const InvertedIndex& index, bool explain) {
    std::cout << "page " << serp.page_number << ", " << serp.total_hits << " hit"
              << (serp.total_hits == 1 ? "" : "s") << '\n';
    if (serp.results.empty()) {
        std::cout << "no results on this page\n";
        return;
    }
    int rank = (serp.page_number - 1) * serp.page_size;
    for (const auto& doc : serp.results) {
        const DocEntry* entry = index.doc(doc.doc_id);
        std::string title = entry && !entry->title.empty() ? entry->title : "(untitled)";
        std::cout << ++rank << ". " << title << '\n'
                  << "   " << (entry ? entry->source : "?") << '\n'
                  << "   score " << fixed(doc.final_score) << "  relevancy "
                  << fixed(doc.relevancy_score) << "  popularity "
                  << fixed(doc.popularity_score) << '\n';
        if (explain) {
            for (const auto& match : doc.matched_terms) {
                std::cout << "   match \"" << match.term << "\" (for \"" << match.origin
                          << "\") weight " << fixed(match.weight, 2) << " tf "
                          << match.term_freq << " contributes " << fixed(match.weighted_score)
                          << (match.chosen ? "  <- counted" : "  (shadowed)") << '\n';
            }
        }
    }
}

void print_serp_records(const Serp& serp, const InvertedIndex& index) {
    int rank = (serp.page_number - 1) * serp.page_size;
    for (const auto& doc : serp.results) {
        const DocEntry* entry = index.doc(doc.doc_id);
        std::string matched;
        for (const auto& match : doc.matched_terms) {
            if (!match.chosen) continue;
            if (!matched.empty()) matched += ',';
            matched += match.term;
        }
        std::cout << ++rank << '\t' << fixed(doc.final_score) << '\t'
                  << fixed(doc.relevancy_score) << '\t' << fixed(doc.popularity_score) << '\t'
                  << (entry ? entry->source : "?") << '\t' << (entry ? entry->title : "")
                  << '\t' << matched << '\n';
    }
}

int cmd_query(QueryArgs& args) {
    std::error_code ec;
    if (!fs::exists(args.ws.index_file(), ec)) {
        return missing(args.ws.index_file(), "run index first");
    }
    InvertedIndex index = load_index(args.ws.index_file());
    SynonymTable table = table_or_empty(args.ws);
    EngineConfig config = load_config(args.ws.config());

    Query query = parse_query(args.text, table);
    ExpandedQuery expanded =
        args.no_expand ? keyword_only_query(query)
                       : expand_query(query, table, config.expansion,
                                      config.rank.synonym_weight);

    std::vector<double> popularity;
    bool have_ranks = fs::exists(args.ws.ranks(), ec);
    if (have_ranks) {
        popularity = popularity_by_doc(index, load_ranks(args.ws.ranks().generic_string()));
    }

    std::vector<ScoredDoc> scored = score_documents(
        index, expanded, have_ranks ? &popularity : nullptr, config.rank);
    Serp serp = paginate(scored, args.page, config.page_size);

    if (args.format == "records") {
        print_serp_records(serp, index);
    } else {
        std::cout << "query: " << args.text << '\n';
        if (!args.no_expand) {
            for (const auto& group : expanded.groups) {
                if (group.members.size() < 2) continue;
                std::cout << "expanded \"" << group.original.text() << "\":";
                for (std::size_t i = 1; i < group.members.size(); ++i) {
                    std::cout << (i == 1 ? " " : ", ") << group.members[i].term.text();
                }
                std::cout << '\n';
            }
        }
        print_serp_table(serp, index, args.explain);
    }
    return kOk;
}

// ---- eval ----

struct EvalArgs {
    Workspace ws;
    std::string judgments_file;
    std::string k_spec = "5,10";
    std::string out_file;
};

int cmd_eval(EvalArgs& args) {
    std::error_code ec;
    if (!fs::exists(args.ws.index_file(), ec)) {
        return missing(args.ws.index_file(), "run index first");
    }
    if (!fs::exists(args.judgments_file, ec)) {
        return missing(args.judgments_file, "judgments file");
    }

    std::vector<std::size_t> k_list;
    std::stringstream ks(args.k_spec);
    std::string piece;
    while (std::getline(ks, piece, ',')) {
        try {
            int k = std::stoi(piece);
            if (k < 1) throw std::invalid_argument(piece);
            k_list.push_back(static_cast<std::size_t>(k));
        } catch (const std::exception&) {
            std::cerr << "error: bad --k value \"" << piece << "\"\n";
            return kUsage;
        }
    }
    if (k_list.empty()) {
        std::cerr << "error: --k lists no cutoffs\n";
        return kUsage;
    }

    InvertedIndex index = load_index(args.ws.index_file());
    SynonymTable table = table_or_empty(args.ws);
    EngineConfig config = load_config(args.ws.config());
    JudgmentSet judgments = load_judgments(args.judgments_file);

    EvalReport report =
        evaluate(index, table, judgments, config.rank, k_list, config.expansion);
    std::cout << render_report_text(report);

    fs::path records_path = args.out_file.empty()
                                ? args.ws.root / "eval.records.tsv"
                                : fs::path(args.out_file);
    std::ofstream out(records_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + records_path.generic_string());
    out << render_report_records(report);
    return kOk;
}

// ---- bench ----

struct BenchArgs {
    Workspace ws;
    int generate = 100000;
    int lookups = 10000;
    unsigned seed = 42;
};

int cmd_bench(BenchArgs& args) {
    if (args.lookups < 1) {
        std::cerr << "error: --lookups must be at least 1\n";
        return kUsage;
    }

    std::mt19937_64 rng(args.seed);
    auto random_word = [&rng](int min_len, int max_len) {
        std::uniform_int_distribution<int> len_dist(min_len, max_len);
        std::uniform_int_distribution<int> ch_dist(0, 25);
        int len = len_dist(rng);
        std::string word;
        word.reserve(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) word.push_back(static_cast<char>('a' + ch_dist(rng)));
        return word;
    };

    SynonymTable table;
    std::vector<Term> keys;
    keys.reserve(static_cast<std::size_t>(std::max(args.generate, 0)));
    while (static_cast<int>(keys.size()) < args.generate) {
        Term keyword = normalize_term(random_word(4, 12) + std::to_string(keys.size()));
        table.insert(keyword, normalize_term(random_word(4, 12)));
        keys.push_back(keyword);
    }

    if (keys.empty()) {
        std::cout << "empty table, 0 lookups\n";
        return kOk;
    }

    std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
    std::vector<std::size_t> probes;
    probes.reserve(static_cast<std::size_t>(args.lookups));
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < args.lookups; ++i) {
        probes.push_back(table.lookup_with_probes(keys[pick(rng)]).probes);
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    std::sort(probes.begin(), probes.end());
    double mean = 0.0;
    for (std::size_t p : probes) mean += static_cast<double>(p);
    mean /= static_cast<double>(probes.size());

    ChainStats stats = table.chain_stats();
    std::cout << "keywords\t" << stats.entry_count << '\n'
              << "buckets\t" << stats.bucket_count << '\n'
              << "load_factor\t"
              << fixed(static_cast<double>(stats.entry_count) /
                           static_cast<double>(stats.bucket_count),
                       4)
              << '\n'
              << "lookups\t" << probes.size() << '\n'
              << "mean_probes\t" << fixed(mean, 4) << '\n'
              << "p50_probes\t" << probes[probes.size() / 2] << '\n'
              << "p95_probes\t" << probes[probes.size() * 95 / 100] << '\n'
              << "max_probes\t" << probes.back() << '\n'
              << "elapsed_us\t" << elapsed << '\n';
    return kOk;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const EmptyQuery& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidTerm& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SelfSynonym& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArtifact;
    } catch (const BrokenJudgment& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArtifact;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synonym-expansion search engine"};
    app.require_subcommand(1);

    std::string workspace = ".";
    app.add_option("-w,--workspace", workspace, "workspace directory")
        ->capture_default_str();

    CrawlArgs crawl_args;
    auto* crawl_cmd = app.add_subcommand("crawl", "fetch pages and record the link graph");
    crawl_cmd->add_option("--seed", crawl_args.config.seeds, "seed URL or path (repeatable)")
        ->required();
    crawl_cmd->add_option("--max-pages", crawl_args.config.max_pages, "fetch budget")
        ->capture_default_str();
    crawl_cmd->add_option("--max-depth", crawl_args.config.max_depth, "link depth limit")
        ->capture_default_str();
    crawl_cmd
        ->add_flag("--any-host,!--same-host-only", crawl_args.config.same_host_only,
                   "follow links off the seed hosts")
        ->capture_default_str();
    crawl_cmd
        ->add_option("--politeness", crawl_args.config.politeness_delay_ms,
                     "per-host delay, ms")
        ->capture_default_str();
    crawl_cmd
        ->add_option("--revisit-interval", crawl_args.config.revisit_interval_s,
                     "revisit interval, seconds")
        ->capture_default_str();
    crawl_cmd
        ->add_option("--parallel", crawl_args.config.parallel_fetches,
                     "parallel fetches per batch")
        ->capture_default_str();
    crawl_cmd->add_option("--fetcher", crawl_args.fetcher, "auto, local, or http")
        ->capture_default_str();
    crawl_cmd->add_option("--fixed-fetch-time", crawl_args.fixed_fetch_time,
                          "record this epoch time instead of the wall clock");

    IndexArgs index_args;
    auto* index_cmd = app.add_subcommand("index", "build the inverted index");
    index_cmd->add_option("--corpus", index_args.corpus_dir,
                          "index this directory instead of the crawl output");
    index_cmd->add_flag("--stats", index_args.stats, "print index statistics");

    RankArgs rank_args;
    auto* rank_cmd = app.add_subcommand("rank", "compute link popularity scores");
    rank_cmd->add_option("--damping", rank_args.damping, "damping factor")
        ->capture_default_str();
    rank_cmd->add_option("--eps", rank_args.eps, "convergence threshold")
        ->capture_default_str();
    rank_cmd->add_option("--max-iter", rank_args.max_iter, "iteration cap")
        ->capture_default_str();

    SynonymsArgs syn_args;
    auto* syn_cmd = app.add_subcommand("synonyms", "manage the synonym table");
    syn_cmd->require_subcommand(1);
    auto* syn_add = syn_cmd->add_subcommand("add", "add one keyword-synonym pair");
    syn_add->add_option("keyword", syn_args.keyword, "keyword")->required();
    syn_add->add_option("synonym", syn_args.synonym, "synonym")->required();
    auto* syn_list = syn_cmd->add_subcommand("list", "list synonyms");
    syn_list->add_option("keyword", syn_args.keyword, "keyword to list (all when absent)");
    auto* syn_import = syn_cmd->add_subcommand("import", "merge a synonyms file");
    syn_import->add_option("file", syn_args.import_file, "tab-separated synonyms file")
        ->required();
    auto* syn_stats = syn_cmd->add_subcommand("stats", "hash table statistics");

    QueryArgs query_args;
    auto* query_cmd = app.add_subcommand("query", "search the index");
    query_cmd->add_option("text", query_args.text, "query text")->required();
    query_cmd->add_flag("--no-expand", query_args.no_expand, "disable synonym expansion");
    query_cmd->add_flag("--explain", query_args.explain, "show per-term score breakdown");
    query_cmd->add_option("--page", query_args.page, "result page, 1-based")
        ->capture_default_str();
    query_cmd->add_option("--format", query_args.format, "table or records")
        ->capture_default_str();

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "compare keyword-only vs expanded retrieval");
    eval_cmd->add_option("--judgments", eval_args.judgments_file, "judgments file")
        ->required();
    eval_cmd->add_option("--k", eval_args.k_spec, "comma-separated cutoffs")
        ->capture_default_str();
    eval_cmd->add_option("--out", eval_args.out_file,
                         "records file (default <workspace>/eval.records.tsv)");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "synonym table lookup benchmark");
    bench_cmd->add_option("--generate", bench_args.generate, "keywords to generate")
        ->capture_default_str();
    bench_cmd->add_option("--lookups", bench_args.lookups, "lookups to time")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_args.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    Workspace ws{fs::path(workspace)};
    crawl_args.ws = ws;
    index_args.ws = ws;
    rank_args.ws = ws;
    syn_args.ws = ws;
    query_args.ws = ws;
    eval_args.ws = ws;
    bench_args.ws = ws;

    if (crawl_cmd->parsed()) return guarded([&] { return cmd_crawl(crawl_args); });
    if (index_cmd->parsed()) return guarded([&] { return cmd_index(index_args); });
    if (rank_cmd->parsed()) return guarded([&] { return cmd_rank(rank_args); });
    if (syn_cmd->parsed()) {
        if (syn_add->parsed()) return guarded([&] { return cmd_synonyms_add(syn_args); });
        if (syn_list->parsed()) return guarded([&] { return cmd_synonyms_list(syn_args); });
        if (syn_import->parsed())
            return guarded([&] { return cmd_synonyms_import(syn_args); });
        if (syn_stats->parsed()) return guarded([&] { return cmd_synonyms_stats(syn_args); });
    }
    if (query_cmd->parsed()) return guarded([&] { return cmd_query(query_args); });
    if (eval_cmd->parsed()) return guarded([&] { return cmd_eval(eval_args); });
    if (bench_cmd->parsed()) return guarded([&] { return cmd_bench(bench_args); });

    std::cerr << "error: no command\n";
    return kUsage;
}
