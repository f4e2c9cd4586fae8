#include "synsearch/inverted_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "synsearch/errors.hpp"
#include "synsearch/tokenizer.hpp"

namespace synsearch {

void InvertedIndex::index_document(const Document& doc) {
    if (docs_.count(doc.doc_id)) {
        throw DuplicateDocument("doc_id " + std::to_string(doc.doc_id) + " already indexed");
    }

    std::uint32_t position = 0;
    std::map<std::string, std::vector<std::uint32_t>> occurrences;
    for (const std::string* field : {&doc.title, &doc.meta_description, &doc.body}) {
        auto tokens = tokenize(*field);
        for (auto& occ : tokens) {
            occurrences[occ.token].push_back(position + occ.position);
        }
        if (!tokens.empty()) position += tokens.back().position + 1;
    }

    for (auto& [token, positions] : occurrences) {
        auto& list = postings_[token];
        list.push_back(Posting{doc.doc_id, static_cast<std::uint32_t>(positions.size()),
                               std::move(positions)});
        // Keep lists sorted by doc_id even when documents arrive out of order.
        if (list.size() > 1 && list[list.size() - 2].doc_id > list.back().doc_id) {
            std::sort(list.begin(), list.end(),
                      [](const Posting& a, const Posting& b) { return a.doc_id < b.doc_id; });
        }
    }

    docs_[doc.doc_id] = DocEntry{doc.source, doc.title, position};
    total_tokens_ += position;
}

const std::vector<Posting>* InvertedIndex::postings(const std::string& word) const {
    auto it = postings_.find(word);
    return it == postings_.end() ? nullptr : &it->second;
}

std::vector<Posting> InvertedIndex::phrase_postings(const std::vector<std::string>& words) const {
    if (words.empty()) return {};
    if (words.size() == 1) {
        const auto* list = postings(words[0]);
        return list ? *list : std::vector<Posting>{};
    }

    std::vector<const std::vector<Posting>*> lists;
    for (const auto& w : words) {
        const auto* list = postings(w);
        if (!list) return {};
        lists.push_back(list);
    }

    std::vector<Posting> out;
    // Drive from the first word; start offset p matches when word i sits at
    // position p + i for every i.
    for (const Posting& first : *lists[0]) {
        std::vector<const Posting*> rest(lists.size(), nullptr);
        bool all_present = true;
        for (std::size_t i = 1; i < lists.size(); ++i) {
            auto it = std::lower_bound(
                lists[i]->begin(), lists[i]->end(), first.doc_id,
                [](const Posting& a, std::uint32_t id) { return a.doc_id < id; });
            if (it == lists[i]->end() || it->doc_id != first.doc_id) {
                all_present = false;
                break;
            }
            rest[i] = &*it;
        }
        if (!all_present) continue;

        std::vector<std::uint32_t> starts;
        for (std::uint32_t p : first.positions) {
            bool match = true;
            for (std::size_t i = 1; i < lists.size() && match; ++i) {
                match = std::binary_search(rest[i]->positions.begin(), rest[i]->positions.end(),
                                           p + static_cast<std::uint32_t>(i));
            }
            if (match) starts.push_back(p);
        }
        if (!starts.empty()) {
            out.push_back(
                Posting{first.doc_id, static_cast<std::uint32_t>(starts.size()), std::move(starts)});
        }
    }
    return out;
}

std::vector<Posting> InvertedIndex::phrase_postings(const Term& term) const {
    return phrase_postings(tokenize_words(term.text()));
}

std::size_t InvertedIndex::doc_freq(const Term& term) const {
    return phrase_postings(term).size();
}

double InvertedIndex::idf_for_df(std::size_t df) const {
    double n = static_cast<double>(docs_.size());
    double d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double InvertedIndex::idf(const Term& term) const {
    return idf_for_df(doc_freq(term));
}

double InvertedIndex::avg_doc_length() const {
    if (docs_.empty()) return 0.0;
    return static_cast<double>(total_tokens_) / static_cast<double>(docs_.size());
}

std::uint32_t InvertedIndex::doc_length(std::uint32_t doc_id) const {
    auto it = docs_.find(doc_id);
    return it == docs_.end() ? 0 : it->second.length;
}

const DocEntry* InvertedIndex::doc(std::uint32_t doc_id) const {
    auto it = docs_.find(doc_id);
    return it == docs_.end() ? nullptr : &it->second;
}

InvertedIndex InvertedIndex::restore(std::map<std::uint32_t, DocEntry> docs,
                                     std::map<std::string, std::vector<Posting>> postings) {
    std::map<std::uint32_t, std::uint64_t> tf_sums;
    for (const auto& [term, list] : postings) {
        std::uint32_t prev_doc = 0;
        bool first = true;
        for (const auto& p : list) {
            if (!first && p.doc_id <= prev_doc) {
                throw IoError("postings of \"" + term + "\" are not sorted by doc_id");
            }
            first = false;
            prev_doc = p.doc_id;
            if (!docs.count(p.doc_id)) {
                throw IoError("posting references unknown doc_id " + std::to_string(p.doc_id));
            }
            if (p.term_freq == 0 || p.term_freq != p.positions.size()) {
                throw IoError("term_freq mismatch for \"" + term + "\"");
            }
            for (std::size_t i = 1; i < p.positions.size(); ++i) {
                if (p.positions[i] <= p.positions[i - 1]) {
                    throw IoError("positions of \"" + term + "\" are not strictly increasing");
                }
            }
            tf_sums[p.doc_id] += p.term_freq;
        }
    }
    for (const auto& [id, entry] : docs) {
        auto it = tf_sums.find(id);
        std::uint64_t sum = it == tf_sums.end() ? 0 : it->second;
        if (sum != entry.length) {
            throw IoError("token count of doc " + std::to_string(id) +
                          " does not match its stored length");
        }
    }

    InvertedIndex index;
    index.docs_ = std::move(docs);
    index.postings_ = std::move(postings);
    for (const auto& [id, entry] : index.docs_) {
        (void)id;
        index.total_tokens_ += entry.length;
    }
    return index;
}

InvertedIndex build_index(const std::vector<Document>& docs) {
    InvertedIndex index;
    for (const auto& doc : docs) {
        index.index_document(doc);
    }
    return index;
}

namespace {

std::string sanitize_field(const std::string& s) {
    std::string out(s);
    for (char& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string piece;
    std::stringstream ss(s);
    while (std::getline(ss, piece, sep)) parts.push_back(piece);
    return parts;
}

}  // namespace

// Format, one record per line:
//   line 1            doc_count<TAB>id:length,id:length,...
//   next doc_count    doc<TAB>id<TAB>source<TAB>title
//   remainder         term<TAB>id:tf:p1,p2,...<TAB>...   (sorted by term)
void save_index(const InvertedIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write index file: " + path.string());
    }
    out << index.doc_count();
    if (index.doc_count() > 0) out << '\t';
    bool first = true;
    for (const auto& [id, entry] : index.docs()) {
        if (!first) out << ',';
        first = false;
        out << id << ':' << entry.length;
    }
    out << '\n';
    for (const auto& [id, entry] : index.docs()) {
        out << "doc\t" << id << '\t' << sanitize_field(entry.source) << '\t'
            << sanitize_field(entry.title) << '\n';
    }
    for (const auto& [term, postings] : index.terms()) {
        out << term;
        for (const auto& p : postings) {
            out << '\t' << p.doc_id << ':' << p.term_freq << ':';
            for (std::size_t i = 0; i < p.positions.size(); ++i) {
                if (i) out << ',';
                out << p.positions[i];
            }
        }
        out << '\n';
    }
    if (!out.good()) {
        throw IoError("write failed: " + path.string());
    }
}

InvertedIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open index file: " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;

    auto fail = [&](const std::string& what) { return ParseError(path.string(), line_no, what); };
    auto parse_u32 = [&](const std::string& s) -> std::uint32_t {
        if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) {
            throw fail("expected unsigned integer, got \"" + s + "\"");
        }
        return static_cast<std::uint32_t>(std::stoul(s));
    };

    ++line_no;
    if (!std::getline(in, line)) {
        throw fail("missing header line");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split(line, '\t');
    if (header.empty() || header[0].empty()) throw fail("empty header");
    std::size_t doc_count = parse_u32(header[0]);
    std::map<std::uint32_t, DocEntry> docs;
    if (doc_count > 0) {
        if (header.size() != 2) throw fail("header must carry doc lengths");
        for (const auto& pair : split(header[1], ',')) {
            auto fields = split(pair, ':');
            if (fields.size() != 2) throw fail("bad id:length pair \"" + pair + "\"");
            docs[parse_u32(fields[0])] = DocEntry{"", "", parse_u32(fields[1])};
        }
        if (docs.size() != doc_count) throw fail("doc length count does not match doc_count");
    }

    std::map<std::string, std::vector<Posting>> postings;
    std::size_t doc_records = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields[0] == "doc") {
            if (fields.size() < 3) throw fail("doc record needs id, source, title");
            std::uint32_t id = parse_u32(fields[1]);
            auto it = docs.find(id);
            if (it == docs.end()) throw fail("doc record for unknown id");
            if (fields[2].empty()) throw fail("doc record with empty source");
            it->second.source = fields[2];
            it->second.title = fields.size() > 3 ? fields[3] : "";
            ++doc_records;
            continue;
        }
        if (fields.size() < 2) throw fail("term record without postings");
        const std::string& term = fields[0];
        auto& list = postings[term];
        for (std::size_t i = 1; i < fields.size(); ++i) {
            auto parts = split(fields[i], ':');
            if (parts.size() != 3) throw fail("bad posting \"" + fields[i] + "\"");
            Posting p;
            p.doc_id = parse_u32(parts[0]);
            p.term_freq = parse_u32(parts[1]);
            for (const auto& ps : split(parts[2], ',')) {
                p.positions.push_back(parse_u32(ps));
            }
            if (p.positions.size() != p.term_freq) {
                throw fail("term_freq does not match position count");
            }
            list.push_back(std::move(p));
        }
    }
    if (doc_records != doc_count) {
        throw ParseError(path.string(), line_no, "doc record count does not match header");
    }

    try {
        return InvertedIndex::restore(std::move(docs), std::move(postings));
    } catch (const IoError& e) {
        throw ParseError(path.string(), line_no, e.what());
    }
}

}  // namespace synsearch
