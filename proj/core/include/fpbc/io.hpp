#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fpbc {

inline constexpr const char* kToolVersion = "1.0.0";

// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& data);

std::string read_file(const std::string& path);

// Write via temp file + rename so readers never observe partial output.
void atomic_write_file(const std::string& path, const std::string& content);

// Run manifest: records what produced an output. Deliberately contains no
// timestamps so identical runs produce identical manifests.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256
  uint64_t seed = 0;
  bool has_seed = false;

  void add_input(const std::string& path);
  void add_output(const std::string& path);
  void add_output_content(const std::string& path, const std::string& content);
  std::string to_json() const;
};

}  // namespace fpbc
