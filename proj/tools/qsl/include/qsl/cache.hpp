#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "qhat/schur.hpp"

namespace qsl {

/// Lowercase hex SHA-256 of data.
std::string sha256_hex(const std::string& data);

/// Content-addressed on-disk store of S(pi), keyed by (datum hash, pi).
///
/// File layout: magic "QSLC", u32 format version, u64 payload length,
/// 32-byte SHA-256 of everything before it plus the payload, then the
/// payload (SchurAlgebra::serialize()). Integers are little-endian.
class AlgebraCache {
 public:
  static constexpr unsigned kVersion = 1;

  using Warn = std::function<void(const std::string&)>;

  explicit AlgebraCache(std::filesystem::path dir, Warn warn = {});

  const std::filesystem::path& dir() const { return dir_; }

  static std::string key(const qhat::RootDatum& datum, const qhat::SaturatedSet& pi);
  std::filesystem::path path_for(const std::string& key) const;

  /// Writes to a temporary file in the cache directory, then renames.
  void store(const qhat::SchurAlgebra& algebra) const;
  /// Null when absent; a corrupt or mismatched entry is reported through
  /// the warning callback and treated as absent.
  qhat::SchurPtr load(const qhat::DatumPtr& datum, const qhat::SaturatedSet& pi) const;

 private:
  std::filesystem::path dir_;
  Warn warn_;
};

/// Encodes a payload in the cache file format.
std::string encode_entry(const std::string& payload);
/// Returns the payload, or throws std::runtime_error naming the defect.
std::string decode_entry(const std::string& bytes);

}  // namespace qsl
