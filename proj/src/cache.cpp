#include "mixtilt/cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mixtilt {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

TableCache::TableCache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {}

std::string TableCache::make_key(std::string_view cartan, std::string_view truncation, std::string_view task) {
  std::string material;
  material.append("cartan=").append(cartan);
  material.append("\ntruncation=").append(truncation);
  material.append("\ntask=").append(task);
  return sha256_hex(material);
}

std::filesystem::path TableCache::path_for(const std::string& key) const { return dir_ / (key + ".table"); }

TableCache::Lookup TableCache::load(const std::string& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return {};
  std::string stamp, digest_line;
  if (!std::getline(in, stamp) || !std::getline(in, digest_line)) return {Status::Corrupt, {}};
  if (stamp != "mixtilt-cache " + version_) return {Status::StaleVersion, {}};
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string payload = rest.str();
  if (digest_line != "sha256 " + sha256_hex(payload)) return {Status::Corrupt, {}};
  return {Status::Hit, std::move(payload)};
}

void TableCache::store(const std::string& key, const std::string& payload) const {
  std::filesystem::create_directories(dir_);
  std::random_device rd;
  const auto target = path_for(key);
  auto tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << "mixtilt-cache " << version_ << '\n' << "sha256 " << sha256_hex(payload) << '\n' << payload;
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string_view to_string(TableCache::Status s) {
  switch (s) {
    case TableCache::Status::Hit: return "hit";
    case TableCache::Status::Miss: return "miss";
    case TableCache::Status::Corrupt: return "corrupt";
    case TableCache::Status::StaleVersion: return "stale-version";
  }
  return "?";
}

}  // namespace mixtilt
