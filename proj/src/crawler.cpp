#include "synsearch/crawler.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "synsearch/errors.hpp"
#include "synsearch/html_parse.hpp"
#include "synsearch/term.hpp"
#include "synsearch/url.hpp"

namespace fs = std::filesystem;

namespace synsearch {

std::uint64_t content_hash(std::string_view body) { return fnv1a64(body); }

std::string to_string(FetchStatus status) {
    switch (status) {
        case FetchStatus::Ok: return "ok";
        case FetchStatus::HttpError: return "http_error";
        case FetchStatus::Unreachable: return "unreachable";
        case FetchStatus::Skipped: return "skipped";
    }
    return "unreachable";
}

FetchStatus fetch_status_from_string(const std::string& text) {
    if (text == "ok") return FetchStatus::Ok;
    if (text == "http_error") return FetchStatus::HttpError;
    if (text == "skipped") return FetchStatus::Skipped;
    return FetchStatus::Unreachable;
}

Document document_from_page(int doc_id, const std::string& url, const std::string& body,
                            bool is_html) {
    Document doc;
    doc.doc_id = doc_id;
    doc.source = url;
    if (is_html) {
        PageMeta meta = extract_meta(body);
        doc.title = meta.title;
        doc.meta_description = meta.meta_description;
        doc.body = html_to_text(body);
        doc.outlinks = extract_links(body, url);
    } else {
        doc.body = body;
    }
    return doc;
}

namespace {

struct FrontierItem {
    std::string url;
    int depth = 0;
};

std::int64_t default_now() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

bool is_html_type(const std::string& content_type) {
    return content_type == "text/html";
}

}  // namespace

CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher, Clock clock) {
    if (config.seeds.empty()) throw EmptyCrawl("no seeds given");
    if (config.max_pages < 1) throw EmptyCrawl("max_pages must be at least 1");
    if (!clock) clock = default_now;

    CrawlResult result;
    std::deque<FrontierItem> frontier;
    std::set<std::string> seen;        // enqueued or attempted
    std::set<std::string> seed_hosts;  // same_host_only boundary
    std::set<std::string> node_set;

    auto note_node = [&](const std::string& url) {
        if (node_set.insert(url).second) result.graph_nodes.push_back(url);
    };

    for (const auto& raw_seed : config.seeds) {
        std::string seed = strip_fragment(fetcher.canonical_seed(raw_seed));
        if (seed.empty() || !seen.insert(seed).second) continue;
        frontier.push_back({seed, 0});
        seed_hosts.insert(url_host(seed));
        note_node(seed);
    }

    std::map<std::string, std::chrono::steady_clock::time_point> last_fetch;
    int attempted = 0;
    const int parallel = std::max(1, config.parallel_fetches);

    while (!frontier.empty() && attempted < config.max_pages) {
        // One batch: up to `parallel` frontier items with pairwise-distinct
        // hosts, taken in FIFO order. Recording stays in dequeue order so the
        // crawl output is independent of fetch completion order.
        std::vector<FrontierItem> batch;
        std::set<std::string> batch_hosts;
        std::deque<FrontierItem> held_back;
        while (!frontier.empty() &&
               static_cast<int>(batch.size()) < parallel &&
               attempted + static_cast<int>(batch.size()) < config.max_pages) {
            FrontierItem item = frontier.front();
            frontier.pop_front();
            std::string host = url_host(item.url);
            if (!batch_hosts.insert(host).second) {
                held_back.push_back(item);
                continue;
            }
            batch.push_back(item);
        }
        for (auto it = held_back.rbegin(); it != held_back.rend(); ++it) {
            frontier.push_front(*it);
        }

        // Politeness: a remote host is touched at most once per delay window.
        for (const auto& item : batch) {
            std::string host = url_host(item.url);
            if (host.empty() || config.politeness_delay_ms <= 0) continue;
            auto it = last_fetch.find(host);
            if (it != last_fetch.end()) {
                auto next_allowed =
                    it->second + std::chrono::milliseconds(config.politeness_delay_ms);
                auto now = std::chrono::steady_clock::now();
                if (now < next_allowed) std::this_thread::sleep_for(next_allowed - now);
            }
            last_fetch[host] = std::chrono::steady_clock::now();
        }

        std::vector<std::future<FetchResponse>> futures;
        futures.reserve(batch.size());
        for (const auto& item : batch) {
            futures.push_back(std::async(
                batch.size() > 1 ? std::launch::async : std::launch::deferred,
                [&fetcher, url = item.url] { return fetcher.fetch(url); }));
        }

        for (std::size_t bi = 0; bi < batch.size(); ++bi) {
            const FrontierItem& item = batch[bi];
            FetchResponse resp = futures[bi].get();
            ++attempted;

            FetchRecord record;
            record.url = item.url;
            record.depth = item.depth;
            record.fetch_time = clock();
            record.status_code = resp.status_code;
            switch (resp.outcome) {
                case FetchResponse::Outcome::Ok:
                    record.status = FetchStatus::Ok;
                    break;
                case FetchResponse::Outcome::HttpError:
                    // A 2xx with an unusable content type is a skip, not an error.
                    record.status = (resp.status_code >= 200 && resp.status_code < 300)
                                        ? FetchStatus::Skipped
                                        : FetchStatus::HttpError;
                    break;
                case FetchResponse::Outcome::RobotsDenied:
                    record.status = FetchStatus::Skipped;
                    break;
                case FetchResponse::Outcome::Unreachable:
                    record.status = FetchStatus::Unreachable;
                    break;
            }

            if (record.status != FetchStatus::Ok) {
                result.records.push_back(std::move(record));
                continue;
            }

            record.content_hash = content_hash(resp.body);
            bool is_html = is_html_type(resp.content_type);
            Document doc = document_from_page(static_cast<int>(result.documents.size()),
                                              item.url, resp.body, is_html);

            for (const auto& target : doc.outlinks) {
                note_node(target);
                result.link_edges.emplace_back(item.url, target);
                if (item.depth >= config.max_depth) continue;
                if (config.same_host_only && !seed_hosts.count(url_host(target))) continue;
                if (seen.insert(target).second) {
                    frontier.push_back({target, item.depth + 1});
                }
            }

            result.documents.push_back(std::move(doc));
            result.payloads.push_back({std::move(resp.body), is_html});
            result.records.push_back(std::move(record));
        }
    }

    if (result.documents.empty()) throw EmptyCrawl("no seed produced a document");
    return result;
}

bool due_for_revisit(const FetchRecord& record, const CrawlConfig& config,
                     std::int64_t now) {
    return now - record.fetch_time >= config.revisit_interval_s;
}

bool revisit_if_due(FetchRecord& record, const CrawlConfig& config, Fetcher& fetcher,
                    std::int64_t now, std::string* new_body) {
    if (record.status != FetchStatus::Ok) return false;
    if (!due_for_revisit(record, config, now)) return false;
    FetchResponse resp = fetcher.fetch(record.url);
    if (!resp.ok()) return false;
    record.fetch_time = now;
    std::uint64_t hash = content_hash(resp.body);
    if (hash == record.content_hash) return false;
    record.content_hash = hash;
    if (new_body) *new_body = std::move(resp.body);
    return true;
}

namespace {

std::string sanitize_field(std::string value) {
    for (auto& c : value) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return value;
}

}  // namespace

void save_manifest(const std::vector<FetchRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& r : records) {
        out << sanitize_field(r.url) << '\t' << to_string(r.status);
        if (r.status == FetchStatus::HttpError && r.status_code != 0) {
            out << ':' << r.status_code;
        }
        out << '\t' << r.fetch_time << '\t' << r.depth << '\t';
        if (r.status == FetchStatus::Ok) out << std::hex << r.content_hash << std::dec;
        else out << '-';
        out << '\t' << (r.local_body_path.empty() ? "-" : sanitize_field(r.local_body_path))
            << '\n';
    }
}

void save_crawl(CrawlResult& crawl, const std::string& workspace_dir) {
    fs::path root(workspace_dir);
    fs::path corpus = root / "corpus";
    fs::create_directories(corpus);

    // Body files are numbered in fetch order; the manifest ties them back
    // to URLs.
    std::map<std::string, std::string> body_path_by_url;
    for (std::size_t i = 0; i < crawl.documents.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "%04zu.%s", i,
                      crawl.payloads[i].is_html ? "html" : "txt");
        fs::path file = corpus / name;
        std::ofstream out(file, std::ios::binary);
        if (!out) throw IoError("cannot write " + file.generic_string());
        out << crawl.payloads[i].raw;
        body_path_by_url[crawl.documents[i].source] =
            (fs::path("corpus") / name).generic_string();
    }
    for (auto& record : crawl.records) {
        auto it = body_path_by_url.find(record.url);
        if (it != body_path_by_url.end()) record.local_body_path = it->second;
    }

    save_manifest(crawl.records, (root / "crawl.manifest").generic_string());

    std::ofstream links(root / "links.tsv", std::ios::binary);
    if (!links) throw IoError("cannot write links.tsv");
    for (const auto& [from, to] : crawl.link_edges) {
        links << sanitize_field(from) << '\t' << sanitize_field(to) << '\n';
    }
}

std::vector<FetchRecord> load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<FetchRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 6) {
            throw ParseError(path, line_no, "expected 6 tab-separated fields");
        }
        FetchRecord r;
        r.url = fields[0];
        std::string status = fields[1];
        if (auto colon = status.find(':'); colon != std::string::npos) {
            r.status_code = std::atoi(status.c_str() + colon + 1);
            status.resize(colon);
        }
        r.status = fetch_status_from_string(status);
        try {
            r.fetch_time = std::stoll(fields[2]);
            r.depth = std::stoi(fields[3]);
            if (fields[4] != "-") r.content_hash = std::stoull(fields[4], nullptr, 16);
        } catch (const std::exception&) {
            throw ParseError(path, line_no, "bad numeric field");
        }
        if (fields[5] != "-") r.local_body_path = fields[5];
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<std::pair<std::string, std::string>> load_links(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(path, line_no, "expected a tab");
        edges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return edges;
}

CrawlResult load_crawl(const std::string& workspace_dir) {
    fs::path root(workspace_dir);
    CrawlResult result;
    result.records = load_manifest((root / "crawl.manifest").generic_string());

    fs::path links_file = root / "links.tsv";
    std::error_code ec;
    if (fs::exists(links_file, ec)) {
        result.link_edges = load_links(links_file.generic_string());
    }

    std::set<std::string> node_set;
    auto note_node = [&](const std::string& url) {
        if (node_set.insert(url).second) result.graph_nodes.push_back(url);
    };

    for (const auto& record : result.records) {
        note_node(record.url);
        if (record.status != FetchStatus::Ok) continue;
        if (record.local_body_path.empty()) {
            throw ParseError((root / "crawl.manifest").generic_string(), 0,
                             "ok record without a body path: " + record.url);
        }
        fs::path body_file = root / record.local_body_path;
        std::ifstream in(body_file, std::ios::binary);
        if (!in) throw IoError("cannot open " + body_file.generic_string());
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string raw = buf.str();
        bool is_html = content_type_for_path(record.local_body_path) == "text/html";
        result.documents.push_back(document_from_page(
            static_cast<int>(result.documents.size()), record.url, raw, is_html));
        result.payloads.push_back({std::move(raw), is_html});
    }
    for (const auto& [from, to] : result.link_edges) {
        note_node(from);
        note_node(to);
    }
    return result;
}

}  // namespace synsearch
