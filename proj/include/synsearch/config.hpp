#pragma once

#include <filesystem>

#include "synsearch/scorer.hpp"
#include "synsearch/synonym_table.hpp"

namespace synsearch {

struct EngineConfig {
    RankParams rank;
    ExpansionOptions expansion;
    int page_size = 10;
};

// Plain `key = value` text config with `#` comments. A missing file yields
// the defaults; an unknown key or malformed value is an error so typos fail
// fast instead of silently reverting a knob to its default.
EngineConfig load_config(const std::filesystem::path& path);
void save_config(const EngineConfig& config, const std::filesystem::path& path);

}  // namespace synsearch
