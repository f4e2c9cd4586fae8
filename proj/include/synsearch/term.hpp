#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace synsearch {

// A normalized term: lowercase, no surrounding whitespace, internal
// whitespace runs collapsed to single spaces. May span several words
// ("data mining"). Every instance is normalized by construction.
class Term {
public:
    Term() = default;

    // Normalizes raw text into a term. Throws InvalidTerm when nothing
    // remains after normalization.
    static Term normalize(std::string_view raw);

    const std::string& text() const { return text_; }
    bool empty() const { return text_.empty(); }

    auto operator<=>(const Term&) const = default;

private:
    explicit Term(std::string text) : text_(std::move(text)) {}
    std::string text_;
};

Term normalize_term(std::string_view raw);

// FNV-1a over the bytes of a string. Stable across runs and platforms.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace synsearch
