#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace cpbench::io {

// shortest round-trip decimal form (%.17g trimmed)
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, std::span<const std::string> header,
               const std::vector<std::vector<double>>& rows);
// variant for tables with label columns
void write_csv_text(const std::string& path, std::span<const std::string> header,
                    const std::vector<std::vector<std::string>>& rows);
CsvTable read_csv(const std::string& path);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

// key = value lines; '#' starts a comment, blank lines ignored
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(const std::string& text);
std::string render_config(const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace cpbench::io
