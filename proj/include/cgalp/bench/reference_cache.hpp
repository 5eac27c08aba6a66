#pragma once

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace cgalp::bench {

/// Directory of reference solutions, one JSON file per key. Writes go to a
/// temporary file that is renamed into place, so concurrent writers of the
/// same key never expose a partial file.
class ReferenceCache {
public:
    explicit ReferenceCache(std::filesystem::path dir);

    /// $CGALP_BENCH_CACHE if set, otherwise <out_dir>/.ref_cache.
    static std::filesystem::path default_dir(const std::filesystem::path& out_dir);

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<nlohmann::json> load(const std::string& key) const;
    void store(const std::string& key, const nlohmann::json& payload) const;

    std::filesystem::path path_for(const std::string& key) const;

private:
    std::filesystem::path dir_;
};

}  // namespace cgalp::bench
