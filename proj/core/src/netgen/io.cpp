#include "epiq/netgen/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "epiq/common/error.hpp"

namespace epiq::netgen {
namespace {

bool is_separator(char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_separator(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool parse_id(std::string_view text, std::uint64_t& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

// "# Nodes: 4039 Edges: 88234" as written by SNAP.
std::size_t declared_nodes(std::string_view comment) {
  const auto pos = comment.find("Nodes:");
  if (pos == std::string_view::npos) return 0;
  auto rest = comment.substr(pos + 6);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  std::uint64_t n = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
  return ec == std::errc() ? n : 0;
}

}  // namespace

Graph read_edge_list(std::istream& in, LoadReport* report) {
  LoadReport local;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::size_t declared = 0;
  bool seen_data = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      declared = std::max(declared, declared_nodes(view.substr(hash)));
      view = view.substr(0, hash);
    }
    const auto fields = split_fields(view);
    if (fields.empty()) continue;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    const bool ok = fields.size() == 2 && parse_id(fields[0], a) && parse_id(fields[1], b);
    if (!ok) {
      const bool header = !seen_data && fields.size() == 2 && !parse_id(fields[0], a) && !parse_id(fields[1], b);
      if (header) {
        seen_data = true;
        continue;
      }
      throw ParseError("expected two integer node ids, got '" + line + "'", line_no);
    }
    seen_data = true;
    raw.emplace_back(a, b);
  }
  local.lines = line_no;

  std::vector<std::uint64_t> ids;
  ids.reserve(2 * raw.size());
  for (auto [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&](std::uint64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.emplace_back(index_of(a), index_of(b));

  const std::size_t n = std::max(ids.size(), declared);
  local.isolated_padding = n - ids.size();
  Graph::BuildReport build;
  Graph g = Graph::from_edges(n, edges, build);
  local.self_loops = build.self_loops;
  local.duplicates = build.duplicates;
  if (report) *report = local;
  return g;
}

Graph load_edge_list(const std::filesystem::path& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path.string() + "'");
  return read_edge_list(in, report);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# Nodes: " << g.num_nodes() << " Edges: " << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write edge list '" + path.string() + "'");
  write_edge_list(g, out);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace epiq::netgen
