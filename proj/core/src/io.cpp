#include "nepoll/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "nepoll/error.hpp"

namespace nepoll {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  std::string_view tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

bool skippable(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#' || line[first] == '%';
}

std::uint64_t parse_id(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                                      std::string(tok) + "'");
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.first * 0x9E3779B97F4A7C15ULL ^ p.second);
  }
};

}  // namespace

EdgeListData parse_edge_list(std::istream& in) {
  EdgeListData data;
  std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::string_view rest = line;
    const auto a = parse_id(next_token(rest), line_no);
    const auto b = parse_id(next_token(rest), line_no);
    if (a == b)
      throw Error(ErrorCode::SelfLoop, "line " + std::to_string(line_no) + ": self-loop at node " + std::to_string(a));
    if (!seen.insert(std::minmax(a, b)).second) {
      ++data.duplicate_lines;
      continue;
    }
    data.edges.push_back({a, b});
  }
  return data;
}

LoadedGraph read_edge_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  EdgeListData data = parse_edge_list(in);
  return {build_graph(data.edges), data.duplicate_lines};
}

LabelData parse_labels(std::istream& in, const Graph& g) {
  const auto ids = g.original_ids();
  // original ids are sorted when the graph came from build_graph, but not
  // necessarily after component extraction of a generated graph.
  std::vector<std::pair<std::uint64_t, NodeId>> index;
  index.reserve(ids.size());
  for (NodeId v = 0; v < ids.size(); ++v) index.emplace_back(ids[v], v);
  std::sort(index.begin(), index.end());

  LabelData data;
  data.labels.assign(g.node_count(), 0);
  std::vector<std::uint8_t> assigned(g.node_count(), 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::string_view rest = line;
    const auto id = parse_id(next_token(rest), line_no);
    const auto value = parse_id(next_token(rest), line_no);
    if (value > 1)
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": label must be 0 or 1");
    const auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(id, NodeId{0}));
    if (it == index.end() || it->first != id) {
      ++data.unknown;
      continue;
    }
    data.labels[it->second] = static_cast<std::uint8_t>(value);
    assigned[it->second] = 1;
  }
  data.missing = static_cast<std::size_t>(std::count(assigned.begin(), assigned.end(), 0));
  return data;
}

LabelData read_labels(const std::filesystem::path& path, const Graph& g) {
  auto in = open_in(path);
  return parse_labels(in, g);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# undirected edge list: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
  for (const Edge& e : g.edges()) out << g.original_id(e.u) << '\t' << g.original_id(e.v) << '\n';
}

void write_labels(std::ostream& out, const LabeledGraph& lg) {
  out << "# node label\n";
  const Graph& g = lg.graph();
  for (NodeId v = 0; v < g.node_count(); ++v)
    out << g.original_id(v) << ' ' << static_cast<int>(lg.label(v)) << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

void write_labels(const std::filesystem::path& path, const LabeledGraph& lg) {
  auto out = open_out(path);
  write_labels(out, lg);
}

}  // namespace nepoll
