#include "moyal/ribbon.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "moyal/errors.hpp"

namespace moyal {

int RibbonGraph::internal_lines() const {
  int paired = 0;
  for (int p : partner) paired += p >= 0;
  return paired / 2;
}

int RibbonGraph::external_legs() const {
  int ext = 0;
  for (int p : partner) ext += p < 0;
  return ext;
}

std::vector<int> RibbonGraph::vertex_of() const {
  std::vector<int> v(half_edges(), -1);
  for (size_t i = 0; i < vertices.size(); ++i)
    for (int h : vertices[i]) v[h] = static_cast<int>(i);
  return v;
}

std::vector<int> RibbonGraph::add_vertex(const std::vector<int>& signs) {
  std::vector<int> ids;
  for (int s : signs) {
    ids.push_back(half_edges());
    sign.push_back(s);
    partner.push_back(-1);
    names.push_back(std::to_string(ids.back()));
  }
  vertices.push_back(ids);
  return ids;
}

void RibbonGraph::join(int a, int b) {
  if (a < 0 || b < 0 || a >= half_edges() || b >= half_edges() || a == b)
    throw DomainError("ribbon: invalid line endpoints");
  if (partner[a] >= 0 || partner[b] >= 0) throw DomainError("ribbon: half-edge already paired");
  partner[a] = b;
  partner[b] = a;
}

void RibbonGraph::validate() const {
  const int h = half_edges();
  if (static_cast<int>(sign.size()) != h || static_cast<int>(names.size()) != h)
    throw DomainError("ribbon: inconsistent half-edge arrays");
  std::vector<int> seen(h, 0);
  for (const auto& v : vertices) {
    if (v.empty()) throw DomainError("ribbon: empty vertex");
    for (int e : v) {
      if (e < 0 || e >= h) throw DomainError("ribbon: half-edge id out of range");
      ++seen[e];
    }
  }
  for (int e = 0; e < h; ++e) {
    if (seen[e] != 1) throw DomainError("ribbon: half-edge " + names[e] + " must appear in exactly one vertex");
    if (sign[e] != 1 && sign[e] != -1) throw DomainError("ribbon: corner sign must be +1 or -1");
    int p = partner[e];
    if (p >= 0 && (p >= h || p == e || partner[p] != e)) throw DomainError("ribbon: pairing is not an involution");
  }
}

RibbonGraph parse_ribbon(const std::string& text) {
  RibbonGraph g;
  std::map<std::string, int> id;
  std::vector<std::pair<std::string, std::string>> lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (head == "v:") {
      std::vector<int> signs;
      std::vector<std::string> labels;
      std::string tok;
      while (ls >> tok) {
        int s = 0;
        if (tok.back() == '+' || tok.back() == '-') {
          s = tok.back() == '+' ? 1 : -1;
          tok.pop_back();
        }
        if (tok.empty()) throw DomainError("ribbon: empty half-edge label" + where);
        if (id.count(tok) || std::find(labels.begin(), labels.end(), tok) != labels.end()) throw DomainError("ribbon: half-edge " + tok + " listed twice" + where);
        signs.push_back(s);
        labels.push_back(tok);
      }
      if (labels.empty()) throw DomainError("ribbon: vertex without half-edges" + where);
      for (size_t i = 0; i < signs.size(); ++i)
        if (signs[i] == 0) signs[i] = (i % 2) ? -1 : 1;
      std::vector<int> ids = g.add_vertex(signs);
      for (size_t i = 0; i < ids.size(); ++i) {
        id[labels[i]] = ids[i];
        g.names[ids[i]] = labels[i];
      }
    } else if (head == "e:") {
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra)) throw DomainError("ribbon: a line needs exactly two half-edges" + where);
      lines.emplace_back(a, b);
    } else {
      throw DomainError("ribbon: expected 'v:' or 'e:'" + where);
    }
  }
  for (const auto& [a, b] : lines) {
    if (!id.count(a) || !id.count(b)) throw DomainError("ribbon: line refers to an unknown half-edge " + a + " " + b);
    g.join(id[a], id[b]);
  }
  g.validate();
  return g;
}

std::string format_ribbon(const RibbonGraph& g) {
  std::ostringstream out;
  for (const auto& v : g.vertices) {
    out << "v:";
    for (int h : v) out << ' ' << g.names[h] << (g.sign[h] > 0 ? '+' : '-');
    out << '\n';
  }
  for (int h = 0; h < g.half_edges(); ++h)
    if (g.partner[h] > h) out << "e: " << g.names[h] << ' ' << g.names[g.partner[h]] << '\n';
  return out.str();
}

namespace {

bool connected(const RibbonGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> vof = g.vertex_of();
  for (int h = 0; h < g.half_edges(); ++h)
    if (g.partner[h] >= 0) parent[find(vof[h])] = find(vof[g.partner[h]]);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

}  // namespace

Topology topology(const RibbonGraph& g) {
  g.validate();
  if (!connected(g)) throw DomainError("ribbon: graph is not connected");
  const int h = g.half_edges();
  std::vector<int> next(h);
  for (const auto& v : g.vertices)
    for (size_t i = 0; i < v.size(); ++i) next[v[i]] = v[(i + 1) % v.size()];
  Topology t;
  std::vector<char> done(h, 0);
  for (int start = 0; start < h; ++start) {
    if (done[start]) continue;
    std::vector<int> cycle;
    bool broken = false;
    for (int e = start; !done[e];) {
      done[e] = 1;
      cycle.push_back(e);
      broken = broken || g.partner[e] < 0;
      int across = g.partner[e] >= 0 ? g.partner[e] : e;
      e = next[across];
    }
    t.broken_faces += broken;
    t.face_cycles.push_back(std::move(cycle));
  }
  t.faces = static_cast<int>(t.face_cycles.size());
  const int chi = static_cast<int>(g.vertices.size()) - g.internal_lines() + t.faces;
  if (chi > 2 || (2 - chi) % 2 != 0) throw AccuracyError("ribbon: Euler characteristic inconsistent with a surface");
  t.genus = (2 - chi) / 2;
  return t;
}

Degrees degrees(const RibbonGraph& g, int dim) {
  if (dim <= 0 || dim % 2) throw DomainError("ribbon: dimension must be a positive even number");
  for (const auto& v : g.vertices)
    if (v.size() != 4) throw DomainError("ribbon: degrees need 4-valent vertices");
  Topology t = topology(g);
  const int n = static_cast<int>(g.vertices.size());
  const int legs = g.external_legs();
  Degrees d;
  d.commutative = dim + (dim - 4) * n + (2 - dim) * legs / 2;
  d.noncommutative = d.commutative - dim * (2 * t.genus + t.broken_faces - 1);
  return d;
}

Orientation orientable(const RibbonGraph& g) {
  g.validate();
  const int n = static_cast<int>(g.vertices.size());
  if (n > 24) throw DomainError("ribbon: orientability search limited to 24 vertices");
  std::vector<int> vof = g.vertex_of();
  Orientation out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    auto flip = [&](int v) { return (mask >> v) & 1ul ? -1 : 1; };
    bool ok = true;
    for (int h = 0; h < g.half_edges() && ok; ++h) {
      int p = g.partner[h];
      if (p > h) ok = flip(vof[h]) * g.sign[h] != flip(vof[p]) * g.sign[p];
    }
    if (ok) {
      out.orientable = true;
      for (int v = 0; v < n; ++v) out.flips.push_back(flip(v));
      return out;
    }
  }
  return out;
}

RibbonGraph bubble_graph() {
  RibbonGraph g;
  auto a = g.add_vertex({1, -1, 1, -1});
  auto b = g.add_vertex({1, -1, 1, -1});
  g.join(a[2], b[1]);
  g.join(a[3], b[0]);
  return g;
}

RibbonGraph nonplanar_tadpole_graph() {
  RibbonGraph g;
  auto a = g.add_vertex({1, -1, 1, -1});
  g.join(a[0], a[2]);
  return g;
}

RibbonGraph random_ribbon_graph(int n, std::mt19937& rng) {
  if (n < 1) throw DomainError("ribbon: need at least one vertex");
  for (;;) {
    RibbonGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex({1, -1, 1, -1});
    std::vector<int> order(4 * n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> lines_dist(std::max(0, n - 1), 2 * n);
    int lines = lines_dist(rng);
    for (int i = 0; i < lines; ++i) g.join(order[2 * i], order[2 * i + 1]);
    if (connected(g)) return g;
  }
}

}  // namespace moyal
