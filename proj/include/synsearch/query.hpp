#pragma once

#include <string>
#include <vector>

#include "synsearch/synonym_table.hpp"
#include "synsearch/term.hpp"

namespace synsearch {

struct Query {
    std::string raw;
    std::vector<Term> terms;  // after vocabulary-driven phrase grouping
};

struct GroupMember {
    Term term;
    double weight = 1.0;  // 1.0 for the original, synonym_weight otherwise
};

struct TermGroup {
    Term original;
    std::vector<GroupMember> members;  // original first, no duplicates
};

struct ExpandedQuery {
    std::vector<TermGroup> groups;  // one per query term, in query order
    ExpansionOptions options;
};

// Tokenizes raw text, then greedily folds maximal multi-word runs that appear
// in the table's vocabulary (keywords or synonyms) into phrase terms, longest
// match first, left to right. Throws EmptyQuery when nothing tokenizes.
Query parse_query(const std::string& raw, const SynonymTable& table);

// One group per query term; synonyms come from the table at weight
// synonym_weight, unknown terms fall back to singleton groups.
ExpandedQuery expand_query(const Query& query, const SynonymTable& table,
                           const ExpansionOptions& opts, double synonym_weight);

// Expansion disabled: every group is a singleton.
ExpandedQuery keyword_only_query(const Query& query);

}  // namespace synsearch
