#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace mixtilt {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/*
  Content-addressed store for serialized tables. One file per key:

    mixtilt-cache <tool version>
    sha256 <digest of payload>
    <payload>

  A wrong version stamp or digest makes the entry unusable; the caller
  recomputes and overwrites it. Writes go to a temporary file that is then
  renamed over the target.
*/
class TableCache {
 public:
  enum class Status { Hit, Miss, Corrupt, StaleVersion };
  struct Lookup {
    Status status = Status::Miss;
    std::string payload;
  };

  explicit TableCache(std::filesystem::path dir, std::string version = MIXTILT_VERSION);

  /// Key from the Cartan matrix text, the truncation and the task, so
  /// equivalent descriptors share entries.
  static std::string make_key(std::string_view cartan, std::string_view truncation, std::string_view task);

  Lookup load(const std::string& key) const;
  void store(const std::string& key, const std::string& payload) const;
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
  std::string version_;
};

std::string_view to_string(TableCache::Status s);

}  // namespace mixtilt
