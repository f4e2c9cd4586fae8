#pragma once

#include <string>
#include <string_view>

namespace synsearch {

// URLs come in two flavors here: http(s) URLs and plain filesystem paths
// (used by the local fetcher). Helpers below handle both.

bool is_http_url(std::string_view url);

// Everything before '#'.
std::string strip_fragment(std::string_view url);

// "host[:port]" for http URLs, "" for local paths (all local files count
// as one host).
std::string url_host(std::string_view url);

// Resolves href against base: absolute URLs pass through, scheme-relative
// and root-relative forms take scheme/authority from base, relative paths
// merge with base's directory and have dot segments removed. Returns ""
// for schemes that cannot be crawled (mailto:, javascript:, ...). The
// fragment is always stripped.
std::string resolve_url(std::string_view base, std::string_view href);

}  // namespace synsearch
