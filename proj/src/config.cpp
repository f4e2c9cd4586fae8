#include "synsearch/config.hpp"

#include <cstdio>
#include <fstream>

#include "synsearch/errors.hpp"

namespace synsearch {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& path, int line_no, const std::string& value) {
    try {
        std::size_t used = 0;
        double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw ParseError(path, line_no, "expected a number, got \"" + value + "\"");
    }
}

int parse_int(const std::string& path, int line_no, const std::string& value) {
    try {
        std::size_t used = 0;
        int out = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw ParseError(path, line_no, "expected an integer, got \"" + value + "\"");
    }
}

bool parse_flag(const std::string& path, int line_no, const std::string& value) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw ParseError(path, line_no, "expected true/false, got \"" + value + "\"");
}

}  // namespace

EngineConfig load_config(const std::filesystem::path& path) {
    EngineConfig config;
    std::ifstream in(path, std::ios::binary);
    if (!in) return config;  // absent config means defaults

    const std::string name = path.generic_string();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(name, line_no, "expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "k1") {
            config.rank.k1 = parse_real(name, line_no, value);
        } else if (key == "b") {
            config.rank.b = parse_real(name, line_no, value);
        } else if (key == "synonym_weight") {
            config.rank.synonym_weight = parse_real(name, line_no, value);
        } else if (key == "popularity_blend") {
            config.rank.popularity_blend = parse_real(name, line_no, value);
        } else if (key == "page_size") {
            config.page_size = parse_int(name, line_no, value);
        } else if (key == "symmetric") {
            config.expansion.symmetric = parse_flag(name, line_no, value);
        } else if (key == "transitive_depth") {
            config.expansion.transitive_depth = parse_int(name, line_no, value);
        } else if (key == "max_synonyms_per_term") {
            config.expansion.max_synonyms_per_term = parse_int(name, line_no, value);
        } else {
            throw ParseError(name, line_no, "unknown key \"" + key + "\"");
        }
    }
    return config;
}

void save_config(const EngineConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.generic_string());
    char buf[64];
    auto real = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%g", v);
        return std::string(buf);
    };
    out << "k1 = " << real(config.rank.k1) << '\n'
        << "b = " << real(config.rank.b) << '\n'
        << "synonym_weight = " << real(config.rank.synonym_weight) << '\n'
        << "popularity_blend = " << real(config.rank.popularity_blend) << '\n'
        << "page_size = " << config.page_size << '\n'
        << "symmetric = " << (config.expansion.symmetric ? "true" : "false") << '\n'
        << "transitive_depth = " << config.expansion.transitive_depth << '\n'
        << "max_synonyms_per_term = " << config.expansion.max_synonyms_per_term << '\n';
}

}  // namespace synsearch
