#include "jetmorse/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace jetmorse {

namespace fs = std::filesystem;

std::string content_hash(const MultiPoly& F, const MultiPoly& G) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  feed(F.to_json().dump());
  feed("|");
  feed(G.to_json().dump());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CacheEntry CacheEntry::make(const IntersectionForm& fg, BoundaryConvention convention, std::string engine) {
  if (engine != "chern" && engine != "integral") throw std::invalid_argument("unknown engine '" + engine + "'");
  CacheEntry e;
  e.k = fg.k;
  e.convention = convention;
  e.engine = std::move(engine);
  e.F = fg.F;
  e.G = fg.G;
  e.hash = content_hash(e.F, e.G);
  return e;
}

nlohmann::json CacheEntry::to_json() const {
  return {{"k", k}, {"convention", std::string(to_string(convention))}, {"engine", engine},
          {"F", F.to_json()}, {"G", G.to_json()}, {"hash", hash}};
}

CacheEntry CacheEntry::from_json(const nlohmann::json& j) {
  CacheEntry e;
  e.k = j.at("k").get<int>();
  e.convention = parse_convention(j.at("convention").get<std::string>());
  e.engine = j.at("engine").get<std::string>();
  e.F = MultiPoly::from_json(j.at("F"));
  e.G = MultiPoly::from_json(j.at("G"));
  e.hash = j.at("hash").get<std::string>();
  if (content_hash(e.F, e.G) != e.hash) throw CacheError("cache entry for k=" + std::to_string(e.k) + " fails its hash check");
  return e;
}

std::string CacheEntry::serialize() const { return to_json().dump(1) + "\n"; }

CacheEntry CacheEntry::parse(const std::string& text) {
  try {
    return from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& ex) {
    throw CacheError(std::string("malformed cache entry: ") + ex.what());
  }
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResultCache::default_directory() {
  if (const char* d = std::getenv("JETMORSE_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "jetmorse";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "jetmorse";
  return fs::temp_directory_path() / "jetmorse-cache";
}

fs::path ResultCache::entry_path(int k, BoundaryConvention convention, const std::string& engine) const {
  return dir_ / ("fg-k" + std::to_string(k) + "-" + std::string(to_string(convention)) + "-" + engine + ".json");
}

void ResultCache::store(const CacheEntry& e) const {
  fs::create_directories(dir_);
  const fs::path target = entry_path(e.k, e.convention, e.engine);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << e.serialize();
    if (!out.flush()) throw CacheError("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<CacheEntry> ResultCache::load_entry(int k, BoundaryConvention convention,
                                                  const std::string& engine) const {
  const fs::path p = entry_path(k, convention, engine);
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  CacheEntry e = CacheEntry::parse(ss.str());
  if (e.k != k || e.convention != convention || e.engine != engine)
    throw CacheError("cache entry " + p.string() + " does not match its key");
  return e;
}

std::optional<IntersectionForm> ResultCache::load(int k, BoundaryConvention convention) const {
  auto chern = load_entry(k, convention, "chern");
  auto integral = load_entry(k, convention, "integral");
  if (chern && integral) {
    const IntersectionForm a = chern->form(), b = integral->form();
    if (auto diff = first_difference(a, b))
      throw CacheError("cached engines disagree for k=" + std::to_string(k) + ": " + *diff);
  }
  if (chern) return chern->form();
  if (integral) return integral->form();
  return std::nullopt;
}

}  // namespace jetmorse
