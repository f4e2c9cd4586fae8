#include "synsearch/synonym_table.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "synsearch/errors.hpp"

namespace synsearch {

SynonymTable::SynonymTable() : buckets_(kInitialBuckets, kNull) {}

std::size_t SynonymTable::bucket_index(const Term& keyword) const {
    // bucket_count is a power of two, so masking equals mod.
    return fnv1a64(keyword.text()) & (buckets_.size() - 1);
}

std::int32_t SynonymTable::find_slot(const Term& keyword, std::size_t* probes) const {
    std::size_t examined = 0;
    for (std::int32_t slot = buckets_[bucket_index(keyword)]; slot != kNull;
         slot = keywords_[slot].next_in_bucket) {
        ++examined;
        if (keywords_[slot].keyword == keyword) {
            if (probes) *probes = examined;
            return slot;
        }
    }
    if (probes) *probes = examined;
    return kNull;
}

std::int32_t SynonymTable::find_or_add_slot(const Term& keyword) {
    std::int32_t slot = find_slot(keyword, nullptr);
    if (slot != kNull) return slot;

    slot = static_cast<std::int32_t>(keywords_.size());
    keywords_.push_back(KeywordNode{keyword});
    std::size_t b = bucket_index(keyword);
    if (buckets_[b] == kNull) {
        buckets_[b] = slot;
    } else {
        std::int32_t tail = buckets_[b];
        while (keywords_[tail].next_in_bucket != kNull) tail = keywords_[tail].next_in_bucket;
        keywords_[tail].next_in_bucket = slot;
    }
    grow_if_needed();
    return slot;
}

void SynonymTable::grow_if_needed() {
    if (static_cast<double>(keywords_.size()) > kMaxLoadFactor * static_cast<double>(buckets_.size())) {
        rehash(buckets_.size() * 2);
    }
}

void SynonymTable::rehash(std::size_t new_bucket_count) {
    buckets_.assign(new_bucket_count, kNull);
    std::vector<std::int32_t> tails(new_bucket_count, kNull);
    // Relink in insertion order so relative order within a bucket is stable.
    for (std::size_t i = 0; i < keywords_.size(); ++i) {
        keywords_[i].next_in_bucket = kNull;
        std::size_t b = bucket_index(keywords_[i].keyword);
        if (buckets_[b] == kNull) {
            buckets_[b] = static_cast<std::int32_t>(i);
        } else {
            keywords_[tails[b]].next_in_bucket = static_cast<std::int32_t>(i);
        }
        tails[b] = static_cast<std::int32_t>(i);
    }
}

void SynonymTable::insert(const Term& keyword, const Term& synonym) {
    if (keyword == synonym) {
        throw SelfSynonym("\"" + keyword.text() + "\" cannot be its own synonym");
    }
    std::int32_t slot = find_or_add_slot(keyword);
    for (std::int32_t s = keywords_[slot].chain_head; s != kNull; s = synonyms_[s].next) {
        if (synonyms_[s].term == synonym) return;  // already chained
    }
    auto node = static_cast<std::int32_t>(synonyms_.size());
    synonyms_.push_back(SynonymNode{synonym, kNull});
    if (keywords_[slot].chain_head == kNull) {
        keywords_[slot].chain_head = node;
    } else {
        synonyms_[keywords_[slot].chain_tail].next = node;
    }
    keywords_[slot].chain_tail = node;
}

std::vector<Term> SynonymTable::chain_of(std::int32_t slot) const {
    std::vector<Term> out;
    for (std::int32_t s = keywords_[slot].chain_head; s != kNull; s = synonyms_[s].next) {
        out.push_back(synonyms_[s].term);
    }
    return out;
}

std::vector<Term> SynonymTable::lookup(const Term& keyword) const {
    std::int32_t slot = find_slot(keyword, nullptr);
    if (slot == kNull) return {};
    return chain_of(slot);
}

LookupResult SynonymTable::lookup_with_probes(const Term& keyword) const {
    LookupResult result;
    std::int32_t slot = find_slot(keyword, &result.probes);
    if (slot != kNull) result.synonyms = chain_of(slot);
    return result;
}

bool SynonymTable::contains(const Term& keyword) const {
    return find_slot(keyword, nullptr) != kNull;
}

std::vector<ExpandedTerm> SynonymTable::expand_terms(const std::vector<Term>& terms,
                                                     const ExpansionOptions& opts) const {
    std::vector<ExpandedTerm> out;
    std::set<Term> emitted;

    for (const Term& t : terms) {
        if (emitted.insert(t).second) {
            out.push_back(ExpandedTerm{t, true, Term{}});
        }
    }
    std::set<Term> originals(emitted);

    auto neighbors = [&](const Term& t) {
        std::vector<Term> n = lookup(t);
        if (opts.symmetric) {
            for (const auto& kw : keywords_) {
                if (kw.keyword == t) continue;
                for (std::int32_t s = kw.chain_head; s != kNull; s = synonyms_[s].next) {
                    if (synonyms_[s].term == t) {
                        n.push_back(kw.keyword);
                        break;
                    }
                }
            }
        }
        return n;
    };

    // Breadth-first walk per input term; the visited set breaks cycles.
    for (const Term& origin : terms) {
        int contributed = 0;
        std::set<Term> visited{origin};
        std::deque<std::pair<Term, int>> frontier{{origin, 0}};
        while (!frontier.empty() && contributed < opts.max_synonyms_per_term) {
            auto [current, depth] = frontier.front();
            frontier.pop_front();
            if (depth >= opts.transitive_depth) continue;
            for (const Term& next : neighbors(current)) {
                if (!visited.insert(next).second) continue;
                frontier.emplace_back(next, depth + 1);
                if (originals.count(next)) continue;  // never re-tag an original
                if (contributed >= opts.max_synonyms_per_term) break;
                ++contributed;
                if (emitted.insert(next).second) {
                    out.push_back(ExpandedTerm{next, false, origin});
                }
            }
        }
    }
    return out;
}

ChainStats SynonymTable::chain_stats() const {
    ChainStats stats;
    stats.bucket_count = buckets_.size();
    stats.entry_count = keywords_.size();
    stats.mean_chain_len =
        static_cast<double>(stats.entry_count) / static_cast<double>(stats.bucket_count);
    for (std::int32_t head : buckets_) {
        std::size_t len = 0;
        for (std::int32_t slot = head; slot != kNull; slot = keywords_[slot].next_in_bucket) ++len;
        stats.max_chain_len = std::max(stats.max_chain_len, len);
        ++stats.histogram[len];
    }
    return stats;
}

std::vector<std::pair<Term, std::vector<Term>>> SynonymTable::rows() const {
    std::vector<std::pair<Term, std::vector<Term>>> out;
    out.reserve(keywords_.size());
    for (std::size_t i = 0; i < keywords_.size(); ++i) {
        out.emplace_back(keywords_[i].keyword, chain_of(static_cast<std::int32_t>(i)));
    }
    return out;
}

SynonymTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open synonym file: " + path.string());
    }
    SynonymTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(path.string(), line_no, "expected keyword<TAB>synonyms");
        }
        Term keyword = [&] {
            try {
                return normalize_term(line.substr(0, tab));
            } catch (const InvalidTerm&) {
                throw ParseError(path.string(), line_no, "empty keyword");
            }
        }();
        std::string rest = line.substr(tab + 1);
        std::size_t inserted = 0;
        std::stringstream ss(rest);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            if (piece.find_first_not_of(" \t") == std::string::npos) continue;
            Term synonym = normalize_term(piece);
            try {
                table.insert(keyword, synonym);
            } catch (const SelfSynonym&) {
                throw ParseError(path.string(), line_no,
                                 "keyword \"" + keyword.text() + "\" listed as its own synonym");
            }
            ++inserted;
        }
        if (inserted == 0) {
            throw ParseError(path.string(), line_no, "no synonyms listed for keyword");
        }
    }
    return table;
}

void save_table(const SynonymTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write synonym file: " + path.string());
    }
    auto rows = table.rows();
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [keyword, chain] : rows) {
        out << keyword.text() << '\t';
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (i) out << ',';
            out << chain[i].text();
        }
        out << '\n';
    }
    if (!out.good()) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace synsearch
