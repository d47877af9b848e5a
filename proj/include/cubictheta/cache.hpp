#pragma once

// On-disk memoization as JSON-lines, one file per object kind:
//   <dir>/<kind>.jsonl, each line {"key": K, "checksum": "<fnv1a64>", "value": ...}
// Writes are buffered; flush() replaces each dirty file through a temporary
// file and a rename.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "cubictheta/serialize.hpp"

namespace cubictheta {

inline std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  Cache(const Cache&) = delete;
  Cache& operator=(const Cache&) = delete;

  ~Cache() {
    try {
      flush();
    } catch (...) {
    }
  }

  const std::filesystem::path& directory() const { return dir_; }

  /// nullopt on a miss; throws CorruptCacheEntry when the stored checksum
  /// does not match the stored value.
  std::optional<json> get(std::string_view kind, std::int64_t key) {
    std::lock_guard lock(mu_);
    Shelf& shelf = load(kind);
    auto it = shelf.entries.find(key);
    if (it == shelf.entries.end()) return std::nullopt;
    const Entry& e = it->second;
    if (!e.valid || fnv1a64_hex(e.value) != e.checksum)
      throw Error(ErrorKind::CorruptCacheEntry,
                  "corrupt cache entry " + std::string(kind) + "/" + std::to_string(key) + " in " + dir_.string());
    return json::parse(e.value);
  }

  void put(std::string_view kind, std::int64_t key, const json& value) {
    std::lock_guard lock(mu_);
    Shelf& shelf = load(kind);
    std::string dumped = value.dump();
    std::string sum = fnv1a64_hex(dumped);
    shelf.entries[key] = Entry{std::move(dumped), std::move(sum), true};
    shelf.dirty = true;
  }

  void flush() {
    std::lock_guard lock(mu_);
    for (auto& [kind, shelf] : shelves_) {
      if (!shelf.dirty) continue;
      std::filesystem::create_directories(dir_);
      const auto target = path_for(kind);
      auto tmp = target;
      tmp += ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write cache file " + tmp.string());
        for (const auto& [key, e] : shelf.entries) {
          if (!e.valid) continue;
          out << R"({"key":)" << key << R"(,"checksum":")" << e.checksum << R"(","value":)" << e.value << "}\n";
        }
        if (!out) throw Error(ErrorKind::InvalidArgument, "failed writing cache file " + tmp.string());
      }
      std::filesystem::rename(tmp, target);
      shelf.dirty = false;
    }
  }

 private:
  struct Entry {
    std::string value;
    std::string checksum;
    bool valid = true;
  };

  struct Shelf {
    std::map<std::int64_t, Entry> entries;
    bool dirty = false;
  };

  std::filesystem::path path_for(const std::string& kind) const { return dir_ / (kind + ".jsonl"); }

  Shelf& load(std::string_view kind_view) {
    std::string kind(kind_view);
    auto it = shelves_.find(kind);
    if (it != shelves_.end()) return it->second;
    Shelf& shelf = shelves_[kind];
    std::ifstream in(path_for(kind), std::ios::binary);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j["key"].is_number_integer()) continue;
      Entry e;
      if (j.contains("value") && j.contains("checksum") && j["checksum"].is_string()) {
        e.value = j["value"].dump();
        e.checksum = j["checksum"].get<std::string>();
      } else {
        e.valid = false;
      }
      shelf.entries[j["key"].get<std::int64_t>()] = std::move(e);
    }
    return shelf;
  }

  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::string, Shelf> shelves_;
};

}  // namespace cubictheta
