#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synsearch {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A term that normalizes to the empty string.
struct InvalidTerm : Error {
    using Error::Error;
};

// Attempt to register a keyword as its own synonym.
struct SelfSynonym : Error {
    using Error::Error;
};

// Malformed line in a data file. Carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), line_number(line) {}
    std::size_t line_number;
};

// File could not be opened or read/written.
struct IoError : Error {
    using Error::Error;
};

// Indexing a doc_id that is already present.
struct DuplicateDocument : Error {
    using Error::Error;
};

// Query with no tokens.
struct EmptyQuery : Error {
    using Error::Error;
};

// Crawl that produced no documents.
struct EmptyCrawl : Error {
    using Error::Error;
};

// Rank computation on a graph with no nodes.
struct EmptyGraph : Error {
    using Error::Error;
};

// Judgment referencing a source absent from the corpus.
struct BrokenJudgment : Error {
    using Error::Error;
};

// Recall against an empty relevant set.
struct UndefinedRecall : Error {
    using Error::Error;
};

}  // namespace synsearch
