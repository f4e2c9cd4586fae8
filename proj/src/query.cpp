#include "synsearch/query.hpp"

#include <set>

#include "synsearch/errors.hpp"
#include "synsearch/tokenizer.hpp"

namespace synsearch {

namespace {

struct Vocabulary {
    std::set<std::string> phrases;
    std::size_t max_words = 1;
};

Vocabulary vocabulary_of(const SynonymTable& table) {
    Vocabulary vocab;
    auto add = [&](const std::string& text) {
        vocab.phrases.insert(text);
        std::size_t words = 1;
        for (char c : text) {
            if (c == ' ') ++words;
        }
        vocab.max_words = std::max(vocab.max_words, words);
    };
    for (const auto& [keyword, synonyms] : table.rows()) {
        add(keyword.text());
        for (const auto& synonym : synonyms) add(synonym.text());
    }
    return vocab;
}

std::string join_words(const std::vector<std::string>& words, std::size_t begin,
                       std::size_t count) {
    std::string out = words[begin];
    for (std::size_t i = 1; i < count; ++i) {
        out += ' ';
        out += words[begin + i];
    }
    return out;
}

}  // namespace

Query parse_query(const std::string& raw, const SynonymTable& table) {
    Query query;
    query.raw = raw;
    std::vector<std::string> words = tokenize_words(raw);
    if (words.empty()) throw EmptyQuery("query has no searchable tokens");

    Vocabulary vocab = vocabulary_of(table);
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t longest = 1;
        // Multi-word vocabulary entries win over their word-by-word split.
        std::size_t cap = std::min(vocab.max_words, words.size() - i);
        for (std::size_t len = cap; len >= 2; --len) {
            if (vocab.phrases.count(join_words(words, i, len))) {
                longest = len;
                break;
            }
        }
        query.terms.push_back(normalize_term(join_words(words, i, longest)));
        i += longest;
    }
    return query;
}

ExpandedQuery expand_query(const Query& query, const SynonymTable& table,
                           const ExpansionOptions& opts, double synonym_weight) {
    ExpandedQuery expanded;
    expanded.options = opts;
    std::vector<ExpandedTerm> all = table.expand_terms(query.terms, opts);

    for (const auto& term : query.terms) {
        TermGroup group;
        group.original = term;
        group.members.push_back({term, 1.0});
        std::set<std::string> present = {term.text()};
        for (const auto& et : all) {
            if (et.original || et.origin != term) continue;
            if (!present.insert(et.term.text()).second) continue;
            group.members.push_back({et.term, synonym_weight});
        }
        expanded.groups.push_back(std::move(group));
    }
    return expanded;
}

ExpandedQuery keyword_only_query(const Query& query) {
    ExpandedQuery expanded;
    for (const auto& term : query.terms) {
        TermGroup group;
        group.original = term;
        group.members.push_back({term, 1.0});
        expanded.groups.push_back(std::move(group));
    }
    return expanded;
}

}  // namespace synsearch
