#pragma once

#include <sys/file.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "plumbcalc/version.hpp"

namespace plumbcalc {

struct CacheEntry {
    std::string key;
    nlohmann::json value;
    std::string tool_version;
    std::int64_t timestamp = 0;
};

/// Append-only JSON-lines store of computed results. Lines that fail to
/// parse are skipped with a warning; the newest entry for a key wins.
class ResultCache {
public:
    explicit ResultCache(std::string path, std::ostream* warnings = &std::cerr)
        : path_(std::move(path)), warnings_(warnings) {}

    /// $PLUMBCALC_CACHE or ./.plumbcalc-cache.jsonl.
    static std::string default_path() {
        const char* env = std::getenv("PLUMBCALC_CACHE");
        return env && *env ? std::string(env) : std::string(".plumbcalc-cache.jsonl");
    }

    const std::string& path() const noexcept { return path_; }

    std::optional<CacheEntry> lookup(const std::string& key) const {
        std::ifstream in(path_);
        if (!in) {
            return std::nullopt;
        }
        std::optional<CacheEntry> found;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j["key"].is_string() ||
                !j.contains("value") || !j.contains("tool_version") || !j["tool_version"].is_string()) {
                if (warnings_) {
                    *warnings_ << "warning: " << path_ << ":" << line_no << ": skipping corrupt cache line\n";
                }
                continue;
            }
            if (j["key"] != key || j["tool_version"] != kVersion) {
                continue;
            }
            found = CacheEntry{key, j["value"], std::string(kVersion), j.value("timestamp", std::int64_t{0})};
        }
        return found;
    }

    /// Appends one entry under an exclusive advisory lock.
    bool store(const std::string& key, const nlohmann::json& value) const {
        const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::system_clock::now().time_since_epoch())
                             .count();
        nlohmann::json j{{"key", key}, {"value", value}, {"tool_version", kVersion}, {"timestamp", now}};
        const std::string line = j.dump() + "\n";
        std::FILE* f = std::fopen(path_.c_str(), "a");
        if (!f) {
            if (warnings_) {
                *warnings_ << "warning: cannot write cache " << path_ << "\n";
            }
            return false;
        }
        const int fd = fileno(f);
        ::flock(fd, LOCK_EX);
        const bool ok = std::fwrite(line.data(), 1, line.size(), f) == line.size();
        std::fflush(f);
        ::flock(fd, LOCK_UN);
        std::fclose(f);
        return ok;
    }

private:
    std::string path_;
    std::ostream* warnings_;
};

}  // namespace plumbcalc
