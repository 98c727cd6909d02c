#ifndef DGPDYN_TOOLS_OUTPUT_HPP
#define DGPDYN_TOOLS_OUTPUT_HPP

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace dgpdyn::tools {

/// Full-precision decimal form (17 significant digits) so downstream plotting
/// is bit-reproducible.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
    for (size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Writes <output>.manifest.json next to the output file.
inline void write_manifest(const std::filesystem::path& output,
                           const std::string& command, const nlohmann::json& config,
                           double wall_seconds, const char* tool_version,
                           const char* rng_algorithm) {
  nlohmann::json m;
  m["command"] = command;
  m["tool_version"] = tool_version;
  m["config"] = config;
  m["wall_time_seconds"] = wall_seconds;
  m["rng"] = rng_algorithm;
  m["output"] = output.filename().string();
  std::filesystem::path mpath = output;
  mpath += ".manifest.json";
  std::ofstream f(mpath, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open manifest file: " + mpath.string());
  f << m.dump(2) << '\n';
}

}  // namespace dgpdyn::tools

#endif
