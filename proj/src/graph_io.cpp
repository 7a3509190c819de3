#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "gte/error.hpp"
#include "gte/spatial_graph.hpp"

namespace gte {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("graph line " + std::to_string(line) + ": " + what);
}

struct LineReader {
  std::istringstream in;
  std::size_t line_no = 0;
  std::string line;

  explicit LineReader(const std::string& text) : in(text) {}

  bool next() {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }
  void require() {
    if (!next()) throw ParseError("graph: unexpected end of input");
  }
};

}  // namespace

SpatialGraph load_graph(const std::string& text) {
  LineReader r(text);
  r.require();
  std::istringstream header(r.line);
  std::string magic;
  double w = 0.0, h = 0.0;
  if (!(header >> magic >> w >> h) || magic != "GRAPH1") {
    fail(r.line_no, "expected 'GRAPH1 <W> <H>' header");
  }

  r.require();
  std::size_t n = 0;
  {
    std::istringstream s(r.line);
    long long v = -1;
    if (!(s >> v) || v < 0) fail(r.line_no, "expected vertex count");
    n = static_cast<std::size_t>(v);
  }
  std::vector<Vertex> vertices;
  vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.require();
    std::istringstream s(r.line);
    std::string tag;
    Vertex v;
    if (!(s >> tag >> v.id >> v.pos.x >> v.pos.y) || tag != "v") {
      fail(r.line_no, "expected 'v <id> <x> <y>'");
    }
    vertices.push_back(v);
  }

  r.require();
  std::size_t m = 0;
  {
    std::istringstream s(r.line);
    long long v = -1;
    if (!(s >> v) || v < 0) fail(r.line_no, "expected edge count");
    m = static_cast<std::size_t>(v);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.require();
    std::istringstream s(r.line);
    std::string tag;
    Edge e;
    if (!(s >> tag >> e.a >> e.b) || tag != "e") {
      fail(r.line_no, "expected 'e <id1> <id2>'");
    }
    edges.push_back(e);
  }
  if (r.next()) fail(r.line_no, "trailing content");
  return SpatialGraph(w, h, std::move(vertices), std::move(edges));
}

std::string save_graph(const SpatialGraph& g) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "GRAPH1 %.6f %.6f\n", g.width(), g.height());
  out += buf;
  out += std::to_string(g.vertices().size()) + "\n";
  for (const Vertex& v : g.vertices()) {
    std::snprintf(buf, sizeof(buf), "v %d %.6f %.6f\n", v.id, v.pos.x, v.pos.y);
    out += buf;
  }
  out += std::to_string(g.edges().size()) + "\n";
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof(buf), "e %d %d\n", e.a, e.b);
    out += buf;
  }
  return out;
}

SpatialGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_graph(ss.str());
}

void save_graph_file(const SpatialGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << save_graph(g);
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace gte
