#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "hpchain/average.hpp"

namespace hpchain::cli {

// Persistent table J -> ln f(J) for one echo function, stored as hex floats so
// cached values are bit-identical to recomputed ones.
class EchoCache {
 public:
  EchoCache(std::filesystem::path directory, std::string key);

  // HPCHAIN_CACHE_DIR, if set and non-empty.
  static std::optional<std::filesystem::path> directory_from_env();

  average::EchoFunction wrap(average::EchoFunction f);
  void save() const;
  std::size_t size() const;

 private:
  std::filesystem::path file_;
  std::string key_;
  mutable std::mutex mutex_;
  std::map<double, LogValue> table_;
  bool dirty_ = false;
};

}  // namespace hpchain::cli
