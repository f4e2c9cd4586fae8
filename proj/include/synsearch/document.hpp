#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace synsearch {

// One unit of indexable content, from a crawl or a corpus directory.
struct Document {
    std::uint32_t doc_id = 0;
    std::string source;  // URL or file path; unique per corpus
    std::string title;
    std::string meta_description;
    std::string body;
    std::vector<std::string> outlinks;
};

}  // namespace synsearch
