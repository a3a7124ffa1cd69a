#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cpbench {

std::string sha256_hex(std::string_view bytes);
std::string sha256_hex_file(const std::string& path);

// Everything needed to re-execute a command bit-identically, plus digests of
// what it produced.
struct RunManifest {
  std::string command;
  std::string invocation;  // canonical re-run line
  std::string version;
  std::uint64_t seed = 0;
  int reps = 0;
  int threads = 0;
  std::vector<std::pair<std::string, std::string>> config;  // key, value
  std::vector<std::string> rep_streams;  // one line per replication
  double wall_clock_seconds = 0.0;       // informational; not covered by digests
  std::vector<std::pair<std::string, std::string>> outputs;  // file, sha256
};

void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace cpbench
