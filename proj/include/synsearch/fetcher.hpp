#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace synsearch {

struct FetchResponse {
    enum class Outcome {
        Ok,            // 2xx with usable body
        HttpError,     // 4xx/5xx response
        Unreachable,   // connect failure, missing file, too many redirects
        RobotsDenied,  // blocked by robots.txt
    };
    Outcome outcome = Outcome::Unreachable;
    int status_code = 0;  // 0 when no response was received
    std::string content_type;
    std::string body;

    bool ok() const { return outcome == Outcome::Ok; }
};

// Source abstraction for the crawler: local directory trees and live HTTP
// share one interface so crawl logic and tests stay identical.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual FetchResponse fetch(const std::string& url) = 0;
    // Normalizes a seed (e.g. directory -> its index.html) before enqueueing.
    virtual std::string canonical_seed(const std::string& seed) { return seed; }
};

// Serves files straight off the filesystem. URLs are plain relative or
// absolute paths; a directory seed maps to <dir>/index.html.
class LocalFetcher : public Fetcher {
public:
    FetchResponse fetch(const std::string& url) override;
    std::string canonical_seed(const std::string& seed) override;
};

// Fetches over HTTP/HTTPS with bounded redirects and per-host robots.txt
// caching. Only text/html and text/plain bodies are accepted.
class HttpFetcher : public Fetcher {
public:
    explicit HttpFetcher(int timeout_s = 10);
    ~HttpFetcher() override;
    FetchResponse fetch(const std::string& url) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Maps a file extension to the content type the local fetcher reports.
std::string content_type_for_path(std::string_view path);

}  // namespace synsearch
