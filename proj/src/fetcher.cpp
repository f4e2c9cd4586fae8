#include "synsearch/fetcher.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

#include "httplib.h"
#include "synsearch/url.hpp"

namespace fs = std::filesystem;

namespace synsearch {

std::string content_type_for_path(std::string_view path) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string_view::npos ? "" : std::string(path.substr(dot + 1));
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == "html" || ext == "htm") return "text/html";
    if (ext == "txt") return "text/plain";
    if (ext == "css") return "text/css";
    if (ext == "js") return "application/javascript";
    if (ext == "png") return "image/png";
    if (ext == "jpg" || ext == "jpeg") return "image/jpeg";
    return "application/octet-stream";
}

std::string LocalFetcher::canonical_seed(const std::string& seed) {
    std::error_code ec;
    if (fs::is_directory(seed, ec)) {
        fs::path p = fs::path(seed) / "index.html";
        return p.generic_string();
    }
    return seed;
}

FetchResponse LocalFetcher::fetch(const std::string& url) {
    FetchResponse resp;
    std::error_code ec;
    fs::path path(url);
    if (fs::is_directory(path, ec)) path /= "index.html";
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        resp.outcome = FetchResponse::Outcome::Unreachable;
        return resp;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    resp.body = buf.str();
    resp.content_type = content_type_for_path(path.generic_string());
    resp.status_code = 200;
    resp.outcome = FetchResponse::Outcome::Ok;
    return resp;
}

namespace {

// Minimal robots.txt reader: honours Disallow lines in the "*" group and in
// our own user-agent group. Allow lines and wildcards are not supported.
struct RobotsRules {
    bool fetched = false;
    std::vector<std::string> disallow;

    bool allows(std::string_view path) const {
        for (const auto& prefix : disallow) {
            if (prefix.empty()) continue;
            if (path.substr(0, prefix.size()) == prefix) return false;
        }
        return true;
    }
};

RobotsRules parse_robots(const std::string& text, std::string_view agent) {
    RobotsRules rules;
    rules.fetched = true;
    bool applies = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (key == "user-agent") {
            applies = (value == "*" || value == agent);
        } else if (key == "disallow" && applies) {
            rules.disallow.push_back(value);
        }
    }
    return rules;
}

// Splits "http://host:port/path?q" into origin ("http://host:port") and
// path-with-query ("/path?q").
bool split_origin(const std::string& url, std::string& origin, std::string& path) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return false;
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        origin = url;
        path = "/";
    } else {
        origin = url.substr(0, path_start);
        path = url.substr(path_start);
    }
    return true;
}

constexpr const char* kUserAgent = "synsearch/1.0";
constexpr int kMaxRedirects = 5;

}  // namespace

struct HttpFetcher::Impl {
    int timeout_s;
    std::mutex mu;
    std::map<std::string, RobotsRules> robots_by_origin;

    explicit Impl(int t) : timeout_s(t) {}

    httplib::Result get(const std::string& origin, const std::string& path) {
        httplib::Client client(origin);
        client.set_connection_timeout(timeout_s, 0);
        client.set_read_timeout(timeout_s, 0);
        client.set_follow_location(false);
        httplib::Headers headers = {{"User-Agent", kUserAgent}};
        return client.Get(path, headers);
    }

    const RobotsRules& robots_for(const std::string& origin) {
        std::lock_guard lock(mu);
        auto it = robots_by_origin.find(origin);
        if (it != robots_by_origin.end()) return it->second;
        RobotsRules rules;
        rules.fetched = true;
        auto res = get(origin, "/robots.txt");
        if (res && res->status == 200) {
            rules = parse_robots(res->body, kUserAgent);
        }
        return robots_by_origin.emplace(origin, std::move(rules)).first->second;
    }
};

HttpFetcher::HttpFetcher(int timeout_s) : impl_(std::make_unique<Impl>(timeout_s)) {}
HttpFetcher::~HttpFetcher() = default;

FetchResponse HttpFetcher::fetch(const std::string& url) {
    FetchResponse resp;
    std::string current = url;
    for (int hop = 0; hop <= kMaxRedirects; ++hop) {
        std::string origin, path;
        if (!split_origin(current, origin, path)) {
            resp.outcome = FetchResponse::Outcome::Unreachable;
            return resp;
        }
        if (!impl_->robots_for(origin).allows(path)) {
            resp.outcome = FetchResponse::Outcome::RobotsDenied;
            return resp;
        }
        auto res = impl_->get(origin, path);
        if (!res) {
            resp.outcome = FetchResponse::Outcome::Unreachable;
            return resp;
        }
        if (res->status >= 300 && res->status < 400) {
            std::string location = res->get_header_value("Location");
            if (location.empty()) {
                resp.outcome = FetchResponse::Outcome::Unreachable;
                resp.status_code = res->status;
                return resp;
            }
            current = resolve_url(current, location);
            if (current.empty()) {
                resp.outcome = FetchResponse::Outcome::Unreachable;
                resp.status_code = res->status;
                return resp;
            }
            continue;
        }
        resp.status_code = res->status;
        if (res->status < 200 || res->status >= 300) {
            resp.outcome = FetchResponse::Outcome::HttpError;
            return resp;
        }
        resp.content_type = res->get_header_value("Content-Type");
        if (auto semi = resp.content_type.find(';'); semi != std::string::npos) {
            resp.content_type.resize(semi);
        }
        if (resp.content_type != "text/html" && resp.content_type != "text/plain") {
            resp.outcome = FetchResponse::Outcome::HttpError;
            return resp;
        }
        resp.body = res->body;
        resp.outcome = FetchResponse::Outcome::Ok;
        return resp;
    }
    resp.outcome = FetchResponse::Outcome::Unreachable;  // redirect loop
    return resp;
}

}  // namespace synsearch
