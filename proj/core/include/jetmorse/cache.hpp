#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "jetmorse/intersection_form.hpp"
#include "jetmorse/jet_recursion.hpp"

namespace jetmorse {

/// Cached (F_k, G_k) from one engine ("chern" or "integral").
struct CacheEntry {
  int k = 0;
  BoundaryConvention convention = BoundaryConvention::kCorrected;
  std::string engine;
  MultiPoly F;
  MultiPoly G;
  /// FNV-1a 64 of the serialized polynomials, lowercase hex.
  std::string hash;

  static CacheEntry make(const IntersectionForm& fg, BoundaryConvention convention, std::string engine);
  [[nodiscard]] IntersectionForm form() const { return {k, F, G}; }

  [[nodiscard]] nlohmann::json to_json() const;
  static CacheEntry from_json(const nlohmann::json& j);
  /// Canonical text form; parse(serialize()) reproduces it byte for byte.
  [[nodiscard]] std::string serialize() const;
  static CacheEntry parse(const std::string& text);
};

[[nodiscard]] std::string content_hash(const MultiPoly& F, const MultiPoly& G);

/// Entries of different engines disagree, or an entry fails its hash check.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory of cached intersection forms keyed by (k, convention, engine).
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  /// $JETMORSE_CACHE_DIR, else $XDG_CACHE_HOME/jetmorse, else ~/.cache/jetmorse.
  static std::filesystem::path default_directory();

  [[nodiscard]] const std::filesystem::path& directory() const { return dir_; }
  [[nodiscard]] std::filesystem::path entry_path(int k, BoundaryConvention convention, const std::string& engine) const;

  /// Atomic: writes a temporary file next to the target and renames it.
  void store(const CacheEntry& e) const;
  [[nodiscard]] std::optional<CacheEntry> load_entry(int k, BoundaryConvention convention,
                                                     const std::string& engine) const;
  /// Any cached form for (k, convention). Throws CacheError when the engines'
  /// entries are not structurally equal.
  [[nodiscard]] std::optional<IntersectionForm> load(int k, BoundaryConvention convention) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace jetmorse
