#include "synsearch/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace synsearch {

namespace {

bool has_scheme(std::string_view s) {
    // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == ':') return true;
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
            return false;
        }
    }
    return false;
}

std::string lower_prefix(std::string_view s, std::size_t n) {
    std::string out(s.substr(0, std::min(n, s.size())));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Splits "http://host[:port]/path?query" into authority-part boundaries.
struct HttpParts {
    std::string scheme_authority;  // "http://host:port"
    std::string path;              // "/path?query", at least "/"
};

bool split_http(std::string_view url, HttpParts& out) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) return false;
    auto authority_start = scheme_end + 3;
    auto path_start = url.find('/', authority_start);
    if (path_start == std::string_view::npos) {
        out.scheme_authority = std::string(url);
        out.path = "/";
    } else {
        out.scheme_authority = std::string(url.substr(0, path_start));
        out.path = std::string(url.substr(path_start));
    }
    return true;
}

// RFC 3986 dot-segment removal over an absolute path.
std::string remove_dot_segments(std::string_view path) {
    std::vector<std::string> segments;
    bool trailing_slash = false;
    std::size_t i = 0;
    while (i < path.size()) {
        auto next = path.find('/', i + (path[i] == '/' ? 1 : 0));
        std::string_view seg = path.substr(i, next == std::string_view::npos ? path.size() - i
                                                                             : next - i);
        if (!seg.empty() && seg[0] == '/') seg.remove_prefix(1);
        if (seg == ".") {
            trailing_slash = true;
        } else if (seg == "..") {
            if (!segments.empty()) segments.pop_back();
            trailing_slash = true;
        } else {
            segments.emplace_back(seg);
            trailing_slash = seg.empty();
        }
        if (next == std::string_view::npos) break;
        i = next;
        if (next == path.size() - 1) trailing_slash = true;
    }
    std::string out;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        out.push_back('/');
        out += segments[s];
    }
    if (out.empty()) out = "/";
    if (trailing_slash && out.back() != '/') out.push_back('/');
    return out;
}

}  // namespace

bool is_http_url(std::string_view url) {
    auto p = lower_prefix(url, 8);
    return p.rfind("http://", 0) == 0 || p.rfind("https://", 0) == 0;
}

std::string strip_fragment(std::string_view url) {
    auto hash = url.find('#');
    return std::string(hash == std::string_view::npos ? url : url.substr(0, hash));
}

std::string url_host(std::string_view url) {
    if (!is_http_url(url)) return "";
    HttpParts parts;
    split_http(url, parts);
    auto scheme_end = parts.scheme_authority.find("://");
    std::string host = parts.scheme_authority.substr(scheme_end + 3);
    std::transform(host.begin(), host.end(), host.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return host;
}

std::string resolve_url(std::string_view base, std::string_view href_raw) {
    const std::string href_str = strip_fragment(href_raw);
    const std::string_view href = href_str;

    if (href.empty()) return strip_fragment(base);

    if (has_scheme(href)) {
        if (is_http_url(href)) {
            HttpParts parts;
            split_http(href, parts);
            return parts.scheme_authority + remove_dot_segments(parts.path);
        }
        return "";  // mailto:, javascript:, ftp:, ...
    }

    if (is_http_url(base)) {
        HttpParts b;
        split_http(base, b);
        if (href.rfind("//", 0) == 0) {
            auto scheme_end = b.scheme_authority.find("://");
            std::string scheme = b.scheme_authority.substr(0, scheme_end);
            return resolve_url(base, scheme + ":" + std::string(href));
        }
        if (href[0] == '/') {
            return b.scheme_authority + remove_dot_segments(href);
        }
        if (href[0] == '?') {
            auto q = b.path.find('?');
            std::string path = q == std::string::npos ? b.path : b.path.substr(0, q);
            return b.scheme_authority + path + std::string(href);
        }
        // Relative: merge with the base path's directory.
        auto q = b.path.find('?');
        std::string path = q == std::string::npos ? b.path : b.path.substr(0, q);
        auto last_slash = path.rfind('/');
        std::string merged = path.substr(0, last_slash + 1) + std::string(href);
        return b.scheme_authority + remove_dot_segments(merged);
    }

    // Local filesystem base.
    if (href[0] == '/') {
        return remove_dot_segments(href);
    }
    std::string base_str = strip_fragment(base);
    auto last_slash = base_str.rfind('/');
    std::string dir = last_slash == std::string::npos ? "" : base_str.substr(0, last_slash + 1);
    std::string merged = dir + std::string(href);
    if (!merged.empty() && merged[0] == '/') {
        return remove_dot_segments(merged);
    }
    // Keep relative bases relative: resolve dot segments against a fake root.
    std::string resolved = remove_dot_segments("/" + merged);
    return resolved.substr(1);
}

}  // namespace synsearch
