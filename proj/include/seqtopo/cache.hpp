#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

namespace seqtopo {

/// Content hash for cache keys (FNV-1a over two offsets; not cryptographic,
/// just collision-resistant enough for a local feature cache).
inline std::string content_key(const std::string& bytes) {
    auto fnv = [&](std::uint64_t h) {
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    };
    char buf[36];
    std::snprintf(buf, sizeof buf, "%016llx%016llx",
                  static_cast<unsigned long long>(fnv(14695981039346656037ULL)),
                  static_cast<unsigned long long>(fnv(0x9e3779b97f4a7c15ULL)));
    return buf;
}

/// Byte-payload cache keyed by content hash. Hits return the stored bytes
/// verbatim, so cached and fresh runs are byte-identical.
class FeatureCache {
public:
    FeatureCache(std::filesystem::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {
        if (enabled_) std::filesystem::create_directories(dir_);
    }

    std::optional<std::string> lookup(const std::string& key) const {
        if (!enabled_) return std::nullopt;
        std::ifstream in(dir_ / (key + ".payload"), std::ios::binary);
        if (!in) return std::nullopt;
        std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return data;
    }

    void store(const std::string& key, const std::string& payload) const {
        if (!enabled_) return;
        const auto tmp = dir_ / (key + ".tmp");
        const auto final_path = dir_ / (key + ".payload");
        {
            std::ofstream out(tmp, std::ios::binary);
            out << payload;
        }
        std::filesystem::rename(tmp, final_path);
    }

private:
    std::filesystem::path dir_;
    bool enabled_;
};

}  // namespace seqtopo
