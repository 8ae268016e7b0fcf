#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "nbp/planar_map.hpp"

namespace nbp::io {

namespace detail {

inline std::vector<std::vector<std::string>> tokenized_lines(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

inline long long to_int(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse_error, "expected integer for " + what + ", got '" + tok + "'");
  }
}

inline void expect_header(const std::vector<std::vector<std::string>>& lines,
                          const std::string& magic) {
  if (lines.size() < 2 || lines[0].size() != 2 || lines[0][0] != magic || lines[0][1] != "1") {
    throw Error(ErrorKind::parse_error, "missing '" + magic + " 1' header");
  }
  if (lines[1].size() != 2) throw Error(ErrorKind::parse_error, "expected 'n m' on line 2");
}

}  // namespace detail

inline Graph read_nbg(std::istream& in) {
  auto lines = detail::tokenized_lines(in);
  detail::expect_header(lines, "nbg");
  auto n = detail::to_int(lines[1][0], "n");
  auto m = detail::to_int(lines[1][1], "m");
  if (static_cast<long long>(lines.size()) != 2 + m) {
    throw Error(ErrorKind::parse_error, "expected " + std::to_string(m) + " edge lines");
  }
  Graph g;
  for (long long i = 0; i < m; ++i) {
    const auto& row = lines[static_cast<std::size_t>(2 + i)];
    if (row.size() != 2) throw Error(ErrorKind::parse_error, "edge line needs two ids");
    g.add_edge(static_cast<Vertex>(detail::to_int(row[0], "u")),
               static_cast<Vertex>(detail::to_int(row[1], "v")));
  }
  // Isolated vertices are numbered 0..n-1 when the edge list does not name n ids.
  for (Vertex v = 0; static_cast<long long>(g.order()) < n; ++v) g.add_vertex(v);
  if (static_cast<long long>(g.order()) != n) {
    throw Error(ErrorKind::parse_error, "header says n=" + std::to_string(n) + " but edges use " +
                                            std::to_string(g.order()) + " ids");
  }
  return g;
}

inline PlanarMap read_nbmap(std::istream& in) {
  auto lines = detail::tokenized_lines(in);
  detail::expect_header(lines, "nbmap");
  auto n = detail::to_int(lines[1][0], "n");
  auto m = detail::to_int(lines[1][1], "m");
  if (static_cast<long long>(lines.size()) != 3 + n) {
    throw Error(ErrorKind::parse_error, "expected " + std::to_string(n) +
                                            " rotation lines and an outer line");
  }
  Rotation rot;
  long long degree_sum = 0;
  for (long long i = 0; i < n; ++i) {
    const auto& row = lines[static_cast<std::size_t>(2 + i)];
    std::string head = row[0];
    if (head.empty() || head.back() != ':') {
      throw Error(ErrorKind::parse_error, "rotation line must start with 'v:'");
    }
    head.pop_back();
    auto v = static_cast<Vertex>(detail::to_int(head, "vertex"));
    if (rot.count(v)) throw Error(ErrorKind::parse_error, "duplicate rotation for " + head);
    auto& nbrs = rot[v];
    for (std::size_t k = 1; k < row.size(); ++k) {
      nbrs.push_back(static_cast<Vertex>(detail::to_int(row[k], "neighbor")));
    }
    degree_sum += static_cast<long long>(nbrs.size());
  }
  if (degree_sum != 2 * m) {
    throw Error(ErrorKind::parse_error, "degree sum " + std::to_string(degree_sum) +
                                            " does not match m=" + std::to_string(m));
  }
  const auto& last = lines.back();
  if (last.size() != 3 || last[0] != "outer") {
    throw Error(ErrorKind::parse_error, "final line must be 'outer u v'");
  }
  Dart outer{static_cast<Vertex>(detail::to_int(last[1], "outer u")),
             static_cast<Vertex>(detail::to_int(last[2], "outer v"))};
  return PlanarMap::build(rot, outer);
}

inline std::string write_nbg(const Graph& g) {
  std::ostringstream out;
  out << "nbg 1\n" << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline std::string write_nbmap(const PlanarMap& map) {
  std::ostringstream out;
  out << "nbmap 1\n" << map.graph().order() << ' ' << map.graph().size() << '\n';
  for (const auto& [v, nbrs] : map.rotation()) {
    out << v << ':';
    for (Vertex w : nbrs) out << ' ' << w;
    out << '\n';
  }
  const Dart& d = map.face(map.outer_face()).darts.front();
  out << "outer " << d.tail << ' ' << d.head << '\n';
  return out.str();
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline PlanarMap load_nbmap(const std::string& path) {
  std::istringstream in(slurp(path));
  return read_nbmap(in);
}

/// Loads a plain graph from either format; maps contribute their graph.
inline Graph load_graph(const std::string& path) {
  std::string text = slurp(path);
  std::istringstream probe(text);
  auto lines = detail::tokenized_lines(probe);
  std::istringstream in(text);
  if (!lines.empty() && lines[0][0] == "nbmap") return read_nbmap(in).graph();
  return read_nbg(in);
}

}  // namespace nbp::io
