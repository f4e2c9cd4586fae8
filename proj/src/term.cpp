#include "synsearch/term.hpp"

#include <cctype>

#include "synsearch/errors.hpp"

namespace synsearch {

Term Term::normalize(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    if (out.empty()) {
        throw InvalidTerm("term is empty after normalization: \"" + std::string(raw) + "\"");
    }
    return Term(std::move(out));
}

Term normalize_term(std::string_view raw) {
    return Term::normalize(raw);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace synsearch
