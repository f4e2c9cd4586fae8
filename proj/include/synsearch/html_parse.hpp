#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace synsearch {

struct PageMeta {
    std::string title;
    std::string meta_description;
    std::string meta_keywords;
};

// First <title> text and <meta name="description|keywords"> content values.
// Best effort over possibly malformed markup; missing pieces come back empty.
PageMeta extract_meta(std::string_view html);

// All anchor targets resolved against base, fragments stripped, duplicates
// removed keeping first occurrence. Unresolvable schemes are dropped.
std::vector<std::string> extract_links(std::string_view html, std::string_view base_url);

// Visible text: tags removed (script/style/comments dropped entirely),
// entities decoded, tag boundaries become spaces.
std::string html_to_text(std::string_view html);

// Decodes the common named entities plus numeric references in the ASCII
// range; anything else passes through unchanged.
std::string decode_entities(std::string_view text);

}  // namespace synsearch
