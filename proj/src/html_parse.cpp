#include "synsearch/html_parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "synsearch/url.hpp"

namespace synsearch {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Parses the inside of a tag ("a href='x' class=y") into name + attributes.
struct Tag {
    std::string name;                          // lowercase
    std::map<std::string, std::string> attrs;  // lowercase keys, decoded values
};

Tag parse_tag(std::string_view inside) {
    Tag tag;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < inside.size() && std::isspace(static_cast<unsigned char>(inside[i]))) ++i;
    };
    skip_ws();
    std::size_t name_start = i;
    while (i < inside.size() && !std::isspace(static_cast<unsigned char>(inside[i])) &&
           inside[i] != '/' && inside[i] != '>') {
        ++i;
    }
    tag.name = to_lower(inside.substr(name_start, i - name_start));

    while (i < inside.size()) {
        skip_ws();
        if (i >= inside.size()) break;
        if (inside[i] == '/' || inside[i] == '>') {
            ++i;
            continue;
        }
        std::size_t key_start = i;
        while (i < inside.size() && inside[i] != '=' && inside[i] != '/' &&
               !std::isspace(static_cast<unsigned char>(inside[i]))) {
            ++i;
        }
        std::string key = to_lower(inside.substr(key_start, i - key_start));
        skip_ws();
        std::string value;
        if (i < inside.size() && inside[i] == '=') {
            ++i;
            skip_ws();
            if (i < inside.size() && (inside[i] == '"' || inside[i] == '\'')) {
                char quote = inside[i++];
                std::size_t value_start = i;
                while (i < inside.size() && inside[i] != quote) ++i;
                value = std::string(inside.substr(value_start, i - value_start));
                if (i < inside.size()) ++i;
            } else {
                std::size_t value_start = i;
                while (i < inside.size() && !std::isspace(static_cast<unsigned char>(inside[i])) &&
                       inside[i] != '/' && inside[i] != '>') {
                    ++i;
                }
                value = std::string(inside.substr(value_start, i - value_start));
            }
        }
        if (!key.empty()) tag.attrs[key] = decode_entities(value);
    }
    return tag;
}

// Walks every tag in the document, calling visit(tag). Skips comments.
template <typename Visit>
void for_each_tag(std::string_view html, Visit visit) {
    std::size_t i = 0;
    while (i < html.size()) {
        auto open = html.find('<', i);
        if (open == std::string_view::npos) break;
        if (html.compare(open, 4, "<!--") == 0) {
            auto end = html.find("-->", open + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        auto close = html.find('>', open + 1);
        if (close == std::string_view::npos) break;
        std::string_view inside = html.substr(open + 1, close - open - 1);
        if (!inside.empty() && inside[0] != '!' && inside[0] != '?') {
            visit(parse_tag(inside), open, close);
        }
        i = close + 1;
    }
}

}  // namespace

std::string decode_entities(std::string_view text) {
    static const std::map<std::string, char, std::less<>> kNamed = {
        {"amp", '&'}, {"lt", '<'}, {"gt", '>'}, {"quot", '"'}, {"apos", '\''}, {"nbsp", ' '},
    };
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        auto semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 8) {
            out.push_back(text[i++]);
            continue;
        }
        std::string_view body = text.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            int code = 0;
            bool valid = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (std::size_t k = 2; k < body.size() && valid; ++k) {
                    char c = body[k];
                    int digit = (c >= '0' && c <= '9')   ? c - '0'
                                : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                                : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                                         : -1;
                    if (digit < 0) valid = false;
                    else code = code * 16 + digit;
                }
            } else {
                for (std::size_t k = 1; k < body.size() && valid; ++k) {
                    if (body[k] < '0' || body[k] > '9') valid = false;
                    else code = code * 10 + (body[k] - '0');
                }
            }
            if (valid && code > 0 && code < 128) {
                out.push_back(static_cast<char>(code));
                i = semi + 1;
                continue;
            }
        } else if (auto it = kNamed.find(body); it != kNamed.end()) {
            out.push_back(it->second);
            i = semi + 1;
            continue;
        }
        out.push_back(text[i++]);
    }
    return out;
}

PageMeta extract_meta(std::string_view html) {
    PageMeta meta;
    bool have_title = false;
    for_each_tag(html, [&](const Tag& tag, std::size_t open, std::size_t close) {
        (void)open;
        if (tag.name == "title" && !have_title) {
            auto text_start = close + 1;
            auto end = html.size();
            // Find the matching close tag, case-insensitive.
            for (std::size_t j = text_start; j + 7 <= html.size(); ++j) {
                if (html[j] == '<' && html[j + 1] == '/' &&
                    iequals(html.substr(j + 2, 5), "title")) {
                    end = j;
                    break;
                }
            }
            meta.title = trim(decode_entities(html.substr(text_start, end - text_start)));
            have_title = true;
        } else if (tag.name == "meta") {
            auto name_it = tag.attrs.find("name");
            auto content_it = tag.attrs.find("content");
            if (name_it == tag.attrs.end() || content_it == tag.attrs.end()) return;
            std::string name = to_lower(name_it->second);
            if (name == "description" && meta.meta_description.empty()) {
                meta.meta_description = trim(content_it->second);
            } else if (name == "keywords" && meta.meta_keywords.empty()) {
                meta.meta_keywords = trim(content_it->second);
            }
        }
    });
    return meta;
}

std::vector<std::string> extract_links(std::string_view html, std::string_view base_url) {
    std::vector<std::string> out;
    for_each_tag(html, [&](const Tag& tag, std::size_t, std::size_t) {
        if (tag.name != "a") return;
        auto href = tag.attrs.find("href");
        if (href == tag.attrs.end() || href->second.empty()) return;
        std::string resolved = resolve_url(base_url, href->second);
        if (resolved.empty()) return;
        if (std::find(out.begin(), out.end(), resolved) == out.end()) {
            out.push_back(resolved);
        }
    });
    return out;
}

std::string html_to_text(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<') {
            out.push_back(html[i++]);
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            auto end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            out.push_back(' ');
            continue;
        }
        auto close = html.find('>', i + 1);
        if (close == std::string_view::npos) break;
        std::string_view inside = html.substr(i + 1, close - i - 1);
        Tag tag = parse_tag(inside);
        // Title text is indexed as its own field; leaving it in the body
        // stream would double-count every title word.
        if (tag.name == "script" || tag.name == "style" || tag.name == "title") {
            std::string closer = "</" + tag.name;
            auto end = std::string_view::npos;
            for (std::size_t j = close + 1; j + closer.size() <= html.size(); ++j) {
                if (iequals(html.substr(j, closer.size()), closer)) {
                    end = html.find('>', j);
                    break;
                }
            }
            i = end == std::string_view::npos ? html.size() : end + 1;
        } else {
            i = close + 1;
        }
        out.push_back(' ');
    }
    return decode_entities(out);
}

}  // namespace synsearch
