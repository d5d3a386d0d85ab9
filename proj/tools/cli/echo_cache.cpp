#include "cli/echo_cache.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hpchain::cli {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

}  // namespace

EchoCache::EchoCache(std::filesystem::path directory, std::string key) : key_(std::move(key)) {
  char name[40];
  std::snprintf(name, sizeof name, "echo-%016" PRIx64 ".txt", fnv1a(key_));
  file_ = std::move(directory) / name;
  std::ifstream in(file_);
  std::string line;
  if (!in || !std::getline(in, line) || line != key_) return;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string j_text;
    std::string ln_text;
    int sign = 0;
    if (!(row >> j_text >> sign >> ln_text)) break;
    table_[std::strtod(j_text.c_str(), nullptr)] = LogValue::from_log(std::strtod(ln_text.c_str(), nullptr), sign);
  }
}

std::optional<std::filesystem::path> EchoCache::directory_from_env() {
  const char* dir = std::getenv("HPCHAIN_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

average::EchoFunction EchoCache::wrap(average::EchoFunction f) {
  return [this, f = std::move(f)](double j) {
    {
      std::lock_guard lock(mutex_);
      const auto it = table_.find(j);
      if (it != table_.end()) return it->second;
    }
    const LogValue v = f(j);
    std::lock_guard lock(mutex_);
    table_[j] = v;
    dirty_ = true;
    return v;
  };
}

void EchoCache::save() const {
  std::lock_guard lock(mutex_);
  if (!dirty_) return;
  std::filesystem::create_directories(file_.parent_path());
  const std::filesystem::path tmp = file_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << key_ << '\n';
    for (const auto& [j, v] : table_) out << hex(j) << ' ' << v.sign << ' ' << hex(v.ln_magnitude) << '\n';
  }
  std::filesystem::rename(tmp, file_);
}

std::size_t EchoCache::size() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

}  // namespace hpchain::cli
