#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Run manifests: every pipeline command records its parameters, input/output
// digests, and summary counts so a rerun can be checked for byte-identical
// results (wall time excluded).

namespace tdc::pipeline {

inline constexpr const char* kToolVersion = "tdc 0.1.0";

std::string sha256_hex(const std::string& bytes);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256
  std::map<std::string, long long> counts;
  double wall_time_s = 0.0;

  std::string to_json() const;
};

}  // namespace tdc::pipeline
