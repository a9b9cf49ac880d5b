#pragma once

// Append-only JSONL result cache. Each line is one record
//   {"key": ..., "timestamp": ..., "command": ..., "inputs": ..., "payload": ...}
// keyed by the command name plus a canonical hash of its inputs. Identical
// keys must carry identical payloads; replay verification recomputes sampled
// records and compares bytes. Long scans become resumable because each
// (command, inputs) pair short-circuits to its stored payload.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "json_report.hpp"

namespace splitscan {

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// command + canonical (compact, ordered) dump of the inputs object.
inline std::string cache_key(const std::string& command, const OJson& inputs) {
    uint64_t h = fnv1a64(inputs.dump());
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return command + ":" + hex;
}

struct CacheRecord {
    std::string key;
    std::string timestamp;
    std::string command;
    OJson inputs;
    OJson payload;
};

class ResultCache {
  public:
    ResultCache() = default;
    explicit ResultCache(std::string path, bool enabled = true)
        : path_(std::move(path)), enabled_(enabled) {
        if (enabled_) load();
    }

    bool enabled() const { return enabled_; }
    const std::string& path() const { return path_; }
    const std::vector<CacheRecord>& records() const { return records_; }

    std::optional<OJson> lookup(const std::string& key) const {
        if (!enabled_) return std::nullopt;
        auto it = by_key_.find(key);
        if (it == by_key_.end()) return std::nullopt;
        return records_[it->second].payload;
    }

    void store(const std::string& command, const OJson& inputs, const OJson& payload) {
        if (!enabled_) return;
        CacheRecord rec;
        rec.key = cache_key(command, inputs);
        rec.timestamp = now_utc();
        rec.command = command;
        rec.inputs = inputs;
        rec.payload = payload;
        if (auto it = by_key_.find(rec.key); it != by_key_.end()) {
            if (records_[it->second].payload.dump() != payload.dump())
                throw precondition_error("cache determinism violation: key " + rec.key +
                                         " recomputed with a different payload");
            return; // already present, append nothing
        }
        append_line(rec);
        by_key_.emplace(rec.key, records_.size());
        records_.push_back(std::move(rec));
    }

    struct VerifyOutcome {
        uint64_t checked = 0;
        uint64_t matched = 0;
        std::vector<std::string> mismatched_keys;
        std::vector<std::string> unverifiable_keys; // no dispatcher for the command
    };

    // Recompute sampled records through `dispatch` (command, inputs) -> payload
    // and compare serialized bytes. Sampling is deterministic: every record
    // when there are at most `sample_cap`, else an evenly spaced subset.
    VerifyOutcome verify(const std::function<std::optional<OJson>(const std::string&, const OJson&)>&
                             dispatch,
                         uint64_t sample_cap = 32) const {
        VerifyOutcome out;
        if (records_.empty()) return out;
        size_t step = records_.size() <= sample_cap ? 1 : (records_.size() + sample_cap - 1) / sample_cap;
        for (size_t i = 0; i < records_.size(); i += step) {
            const auto& rec = records_[i];
            std::optional<OJson> fresh = dispatch(rec.command, rec.inputs);
            if (!fresh) {
                out.unverifiable_keys.push_back(rec.key);
                continue;
            }
            ++out.checked;
            if (fresh->dump() == rec.payload.dump())
                ++out.matched;
            else
                out.mismatched_keys.push_back(rec.key);
        }
        return out;
    }

  private:
    static std::string now_utc() {
        auto now = std::chrono::system_clock::now();
        std::time_t t = std::chrono::system_clock::to_time_t(now);
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    void load() {
        std::ifstream in(path_);
        if (!in) return; // absent file = empty cache
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            OJson j = OJson::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("payload"))
                throw precondition_error("corrupt cache line " + std::to_string(lineno) + " in " +
                                         path_);
            CacheRecord rec;
            rec.key = j["key"].get<std::string>();
            rec.timestamp = j.value("timestamp", std::string{});
            rec.command = j.value("command", std::string{});
            rec.inputs = j.contains("inputs") ? j["inputs"] : OJson::object();
            rec.payload = j["payload"];
            if (auto it = by_key_.find(rec.key); it != by_key_.end()) {
                if (records_[it->second].payload.dump() != rec.payload.dump())
                    throw precondition_error("cache determinism violation: key " + rec.key +
                                             " appears twice with different payloads");
                continue;
            }
            by_key_.emplace(rec.key, records_.size());
            records_.push_back(std::move(rec));
        }
    }

    void append_line(const CacheRecord& rec) {
        std::ofstream out(path_, std::ios::app);
        if (!out) throw resource_error("cannot open cache file for append: " + path_);
        OJson j;
        j["key"] = rec.key;
        j["timestamp"] = rec.timestamp;
        j["command"] = rec.command;
        j["inputs"] = rec.inputs;
        j["payload"] = rec.payload;
        out << j.dump() << "\n";
        if (!out) throw resource_error("failed writing cache file: " + path_);
    }

    std::string path_;
    bool enabled_ = false;
    std::vector<CacheRecord> records_;
    std::map<std::string, size_t> by_key_;
};

} // namespace splitscan
