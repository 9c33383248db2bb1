#include "qsl/cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "qhat/errors.hpp"

namespace qsl {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'Q', 'S', 'L', 'C'};
constexpr std::size_t kHeader = 4 + 4 + 8;
constexpr std::size_t kDigest = 32;

std::array<unsigned char, kDigest> sha256(const std::string& data) {
  std::array<unsigned char, kDigest> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != kDigest) {
    throw std::runtime_error("sha256 failed");
  }
  return out;
}

void put_le(std::string& s, std::uint64_t x, int bytes) {
  for (int k = 0; k < bytes; ++k) s.push_back(static_cast<char>((x >> (8 * k)) & 0xff));
}

std::uint64_t get_le(const std::string& s, std::size_t at, int bytes) {
  std::uint64_t x = 0;
  for (int k = 0; k < bytes; ++k) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[at + k])) << (8 * k);
  return x;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned char b : sha256(data)) {
    s.push_back(hex[b >> 4]);
    s.push_back(hex[b & 15]);
  }
  return s;
}

std::string encode_entry(const std::string& payload) {
  std::string head(kMagic, 4);
  put_le(head, AlgebraCache::kVersion, 4);
  put_le(head, payload.size(), 8);
  auto digest = sha256(head + payload);
  std::string out = head;
  out.append(reinterpret_cast<const char*>(digest.data()), digest.size());
  out += payload;
  return out;
}

std::string decode_entry(const std::string& bytes) {
  if (bytes.size() < kHeader + kDigest) throw std::runtime_error("truncated header");
  if (bytes.compare(0, 4, kMagic, 4) != 0) throw std::runtime_error("bad magic");
  const auto version = get_le(bytes, 4, 4);
  if (version != AlgebraCache::kVersion) {
    throw std::runtime_error("unsupported version " + std::to_string(version));
  }
  const auto length = get_le(bytes, 8, 8);
  if (bytes.size() != kHeader + kDigest + length) throw std::runtime_error("length mismatch");
  std::string payload = bytes.substr(kHeader + kDigest);
  auto digest = sha256(bytes.substr(0, kHeader) + payload);
  if (bytes.compare(kHeader, kDigest, reinterpret_cast<const char*>(digest.data()), kDigest) != 0) {
    throw std::runtime_error("checksum failure");
  }
  return payload;
}

AlgebraCache::AlgebraCache(fs::path dir, Warn warn) : dir_(std::move(dir)), warn_(std::move(warn)) {
  fs::create_directories(dir_);
}

std::string AlgebraCache::key(const qhat::RootDatum& datum, const qhat::SaturatedSet& pi) {
  return sha256_hex("datum " + sha256_hex(datum.serialize()) + "\npi " + pi.key() + "\n");
}

fs::path AlgebraCache::path_for(const std::string& key) const { return dir_ / (key + ".qsc"); }

void AlgebraCache::store(const qhat::SchurAlgebra& algebra) const {
  static std::atomic<unsigned> counter{0};
  const fs::path target = path_for(key(*algebra.datum(), algebra.pi()));
  std::random_device rd;
  const fs::path tmp = dir_ / (".tmp-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    const std::string bytes = encode_entry(algebra.serialize());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename cache entry into " + target.string());
  }
}

qhat::SchurPtr AlgebraCache::load(const qhat::DatumPtr& datum, const qhat::SaturatedSet& pi) const {
  const fs::path p = path_for(key(*datum, pi));
  std::ifstream in(p, std::ios::binary);
  if (!in) return nullptr;
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    auto s = qhat::SchurAlgebra::deserialize(datum, decode_entry(buf.str()));
    if (!(s->pi() == pi)) throw std::runtime_error("entry holds a different pi");
    return s;
  } catch (const std::exception& e) {
    if (warn_) warn_("ignoring cache entry " + p.filename().string() + ": " + e.what());
    return nullptr;
  }
}

}  // namespace qsl
