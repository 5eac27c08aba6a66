#include "cgalp/bench/reference_cache.hpp"

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

namespace cgalp::bench {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::atomic<std::uint64_t> temp_counter{0};

}  // namespace

ReferenceCache::ReferenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ReferenceCache::default_dir(const std::filesystem::path& out_dir) {
    if (const char* env = std::getenv("CGALP_BENCH_CACHE"); env && *env) return env;
    return out_dir / ".ref_cache";
}

std::filesystem::path ReferenceCache::path_for(const std::string& key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
    return dir_ / name;
}

std::optional<nlohmann::json> ReferenceCache::load(const std::string& key) const {
    std::ifstream is(path_for(key));
    if (!is) return std::nullopt;
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    // A hash collision or a stale format reads as a miss.
    if (!doc.is_object() || doc.value("key", std::string()) != key || !doc.contains("data")) return std::nullopt;
    return doc["data"];
}

void ReferenceCache::store(const std::string& key, const nlohmann::json& payload) const {
    std::filesystem::create_directories(dir_);
    const auto target = path_for(key);
    const auto tag = std::hash<std::thread::id>{}(std::this_thread::get_id()) ^ (temp_counter++ << 32);
    auto temp = target;
    temp += ".tmp." + std::to_string(tag);
    {
        std::ofstream os(temp, std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + temp.string());
        os << nlohmann::json{{"key", key}, {"data", payload}}.dump();
        if (!os) throw std::runtime_error("write failed for " + temp.string());
    }
    std::filesystem::rename(temp, target);
}

}  // namespace cgalp::bench
