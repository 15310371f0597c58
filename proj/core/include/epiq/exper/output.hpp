#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "epiq/exper/strategies.hpp"
#include "epiq/exper/sweep.hpp"

namespace epiq::exper {

/// Version string baked in at configure time (git describe when available).
std::string tool_version();

/// Shortest round-trip decimal form of x (C locale, '.' decimal).
std::string format_double(double x);

/// CSV writers. Comma separated, header row, LF line endings.
void write_sweep_trials_csv(const SweepResult& r, const std::vector<double>& thresholds,
                            const std::filesystem::path& path);
void write_sweep_csv(const SweepResult& r, const std::filesystem::path& path);
/// Long format "q1,q2,metric,value".
void write_grid_csv(const GridResult& r, const std::filesystem::path& path);

/// CRC-32 (IEEE) of a file's bytes as 8 lowercase hex digits.
std::string file_crc32(const std::filesystem::path& path);

/// JSON manifest written after the data files. A run that fails still
/// writes a manifest, with status "failed" and the error message.
class Manifest {
 public:
  Manifest(std::string command, std::string config_json, std::uint64_t seed);

  void add_file(const std::filesystem::path& path);
  void add_summary(const std::string& key, double value);
  void add_summary(const std::string& key, const std::string& value);

  void write_ok(const std::filesystem::path& path) const;
  void write_failed(const std::filesystem::path& path, const std::string& error) const;

 private:
  void write(const std::filesystem::path& path, const std::string& status, const std::string& error) const;

  std::string command_;
  std::string config_json_;
  std::uint64_t seed_;
  std::chrono::steady_clock::time_point started_;
  std::vector<std::pair<std::string, std::string>> files_;
  std::vector<std::pair<std::string, std::string>> summary_;
};

}  // namespace epiq::exper
