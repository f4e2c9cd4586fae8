#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "synsearch/document.hpp"
#include "synsearch/fetcher.hpp"

namespace synsearch {

struct CrawlConfig {
    std::vector<std::string> seeds;
    int max_pages = 100;
    int max_depth = 32;
    bool same_host_only = true;
    int politeness_delay_ms = 200;   // per host; hostless (local file) fetches are exempt
    std::int64_t revisit_interval_s = 86400;
    int parallel_fetches = 4;
};

enum class FetchStatus { Ok, HttpError, Unreachable, Skipped };

std::string to_string(FetchStatus status);
FetchStatus fetch_status_from_string(const std::string& text);

struct FetchRecord {
    std::string url;
    FetchStatus status = FetchStatus::Unreachable;
    int status_code = 0;              // HTTP status when one was received
    std::int64_t fetch_time = 0;      // epoch seconds
    int depth = 0;
    std::uint64_t content_hash = 0;   // meaningful only when status == Ok
    std::string local_body_path;      // filled in by save_crawl / load_manifest
};

// Raw fetched bytes kept alongside the parsed Document so save_crawl can
// write the corpus exactly as fetched.
struct PagePayload {
    std::string raw;
    bool is_html = false;
};

struct CrawlResult {
    std::vector<Document> documents;      // one per ok fetch, in fetch order
    std::vector<PagePayload> payloads;    // parallel to documents
    std::vector<FetchRecord> records;     // one per attempted URL, attempt order
    std::vector<std::pair<std::string, std::string>> link_edges;  // anchors of fetched pages
    std::vector<std::string> graph_nodes; // fetched + discovered, discovery order
};

// Injectable time source (epoch seconds) so manifests are reproducible in tests.
using Clock = std::function<std::int64_t()>;

// Breadth-first crawl from the seeds. Visit order is the FIFO discovery
// order; fetches may run in parallel batches (distinct hosts per batch) but
// results are recorded in dequeue order, so output is deterministic for a
// deterministic fetcher. Throws EmptyCrawl when no seed yields a document.
CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher, Clock clock = {});

bool due_for_revisit(const FetchRecord& record, const CrawlConfig& config,
                     std::int64_t now);

// Re-fetches one previously-ok record if its revisit interval has elapsed.
// Returns true when the body actually changed (caller should re-index);
// an unchanged body only refreshes fetch_time.
bool revisit_if_due(FetchRecord& record, const CrawlConfig& config, Fetcher& fetcher,
                    std::int64_t now, std::string* new_body = nullptr);

// Builds a Document from a fetched page: title/meta from the markup for
// HTML, whole text as body for plain text.
Document document_from_page(int doc_id, const std::string& url, const std::string& body,
                            bool is_html);

// Persistence. save_crawl writes corpus/NNNN.html|.txt bodies, the manifest
// and the link file under workspace_dir, filling local_body_path in.
void save_crawl(CrawlResult& crawl, const std::string& workspace_dir);
std::vector<FetchRecord> load_manifest(const std::string& path);
void save_manifest(const std::vector<FetchRecord>& records, const std::string& path);
std::vector<std::pair<std::string, std::string>> load_links(const std::string& path);
// Rebuilds documents (and payload flags) from a saved manifest + corpus.
CrawlResult load_crawl(const std::string& workspace_dir);

std::uint64_t content_hash(std::string_view body);

}  // namespace synsearch
