#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace synsearch {

struct TokenOccurrence {
    std::string token;
    std::uint32_t position = 0;  // 0-based token ordinal
};

// Lowercased tokens split on any run of non-alphanumeric bytes; digits are
// retained. ASCII-only: multibyte sequences act as separators.
std::vector<TokenOccurrence> tokenize(std::string_view text);

// Tokens only, positions dropped.
std::vector<std::string> tokenize_words(std::string_view text);

}  // namespace synsearch
