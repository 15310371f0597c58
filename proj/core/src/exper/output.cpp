#include "epiq/exper/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>

#include <boost/crc.hpp>
#include <json.hpp>

#include "epiq/common/error.hpp"
#include "epiq_version.hpp"

namespace epiq::exper {
namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

void write_cell(std::ostream& out, const CellStats& c, const std::string& label) {
  out << label << ',' << c.trials << ',' << format_double(c.mean_total) << ',' << format_double(c.se_total) << ','
      << format_double(c.mean_max) << ',' << format_double(c.se_max) << ',' << format_double(c.second_wave_rate)
      << ',' << format_double(c.outbreak_rate) << ',' << format_double(c.mean_total_given_outbreak) << ','
      << (c.failed ? "failed" : "ok") << '\n';
}

}  // namespace

std::string tool_version() { return EPIQ_VERSION_STRING; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf.data(), end);
}

void write_sweep_trials_csv(const SweepResult& r, const std::vector<double>& thresholds,
                            const std::filesystem::path& path) {
  auto out = open_csv(path);
  out << "threshold,trial,total_infected,max_infected,quarantines,second_wave\n";
  for (const auto& row : r.rows) {
    out << format_double(thresholds.at(row.cell)) << ',' << row.trial << ',' << format_double(row.total) << ','
        << format_double(row.max) << ',' << row.quarantines << ',' << (row.second_wave ? 1 : 0) << '\n';
  }
  finish(out, path);
}

void write_sweep_csv(const SweepResult& r, const std::filesystem::path& path) {
  auto out = open_csv(path);
  out << "threshold,trials,mean_total,se_total,mean_max,se_max,second_wave_rate,outbreak_rate,"
         "mean_total_given_outbreak,status\n";
  for (const auto& c : r.cells) write_cell(out, c, format_double(c.threshold));
  write_cell(out, r.baseline, "none");
  finish(out, path);
}

void write_grid_csv(const GridResult& r, const std::filesystem::path& path) {
  auto out = open_csv(path);
  out << "q1,q2,metric,value\n";
  for (std::size_t i = 0; i < r.q1.size(); ++i) {
    for (std::size_t j = 0; j < r.q2.size(); ++j) {
      const CellStats& c = r.at(i, j);
      const std::string key = format_double(r.q1[i]) + ',' + format_double(r.q2[j]) + ',';
      out << key << "mean_total," << format_double(c.mean_total) << '\n';
      out << key << "se_total," << format_double(c.se_total) << '\n';
      out << key << "mean_max," << format_double(c.mean_max) << '\n';
      out << key << "se_max," << format_double(c.se_max) << '\n';
      out << key << "second_wave_rate," << format_double(c.second_wave_rate) << '\n';
    }
  }
  finish(out, path);
}

std::string file_crc32(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  boost::crc_32_type crc;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    crc.process_bytes(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08x", crc.checksum());
  return hex;
}

Manifest::Manifest(std::string command, std::string config_json, std::uint64_t seed)
    : command_(std::move(command)),
      config_json_(std::move(config_json)),
      seed_(seed),
      started_(std::chrono::steady_clock::now()) {}

void Manifest::add_file(const std::filesystem::path& path) {
  files_.emplace_back(path.filename().string(), file_crc32(path));
}

void Manifest::add_summary(const std::string& key, double value) { summary_.emplace_back(key, format_double(value)); }

void Manifest::add_summary(const std::string& key, const std::string& value) { summary_.emplace_back(key, value); }

void Manifest::write_ok(const std::filesystem::path& path) const { write(path, "ok", ""); }

void Manifest::write_failed(const std::filesystem::path& path, const std::string& error) const {
  write(path, "failed", error);
}

void Manifest::write(const std::filesystem::path& path, const std::string& status, const std::string& error) const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["command"] = command_;
  doc["status"] = status;
  if (!error.empty()) doc["error"] = error;
  doc["version"] = tool_version();
  doc["seed"] = seed_;
  doc["config"] = config_json_.empty() ? ordered_json::object() : ordered_json::parse(config_json_);
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - started_;
  doc["wall_time_seconds"] = wall.count();
  ordered_json files = ordered_json::array();
  for (const auto& [name, crc] : files_) files.push_back({{"path", name}, {"crc32", crc}});
  doc["files"] = files;
  ordered_json summary = ordered_json::object();
  for (const auto& [key, value] : summary_) summary[key] = value;
  doc["summary"] = summary;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace epiq::exper
