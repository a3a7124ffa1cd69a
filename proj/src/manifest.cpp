#include "cpbench/manifest.hpp"

#include <sstream>

#include "cpbench/io.hpp"

namespace cpbench {

void write_manifest(const std::string& path, const RunManifest& m) {
  std::ostringstream out;
  out << "cpbench run manifest\n";
  out << "version: " << m.version << "\n";
  out << "command: " << m.command << "\n";
  out << "invocation: " << m.invocation << "\n";
  out << "seed: " << m.seed << "\n";
  out << "reps: " << m.reps << "\n";
  out << "threads: " << m.threads << "\n";
  out << "config:\n";
  for (const auto& [k, v] : m.config) out << "  " << k << " = " << v << "\n";
  if (!m.rep_streams.empty()) {
    out << "replication_streams:\n";
    for (const auto& line : m.rep_streams) out << "  " << line << "\n";
  }
  out << "wall_clock_seconds: " << io::format_double(m.wall_clock_seconds) << "\n";
  out << "outputs:\n";
  for (const auto& [file, digest] : m.outputs)
    out << "  " << file << " sha256=" << digest << "\n";
  io::write_text(path, out.str());
}

}  // namespace cpbench
