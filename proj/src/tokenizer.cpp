#include "synsearch/tokenizer.hpp"

namespace synsearch {

namespace {
bool is_token_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
}  // namespace

std::vector<TokenOccurrence> tokenize(std::string_view text) {
    std::vector<TokenOccurrence> out;
    std::string current;
    std::uint32_t position = 0;
    auto flush = [&] {
        if (!current.empty()) {
            out.push_back(TokenOccurrence{current, position++});
            current.clear();
        }
    };
    for (unsigned char c : text) {
        if (is_token_byte(c)) {
            if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
            current.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> out;
    for (auto& occ : tokenize(text)) {
        out.push_back(std::move(occ.token));
    }
    return out;
}

}  // namespace synsearch
