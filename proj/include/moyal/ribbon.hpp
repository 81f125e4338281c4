#pragma once

#include <random>
#include <string>
#include <vector>

namespace moyal {

// Half-edges are numbered 0..H-1. Each vertex lists its half-edges in cyclic order; each half-edge
// carries a corner sign (+1 or -1). partner[h] is the other end of the internal line through h,
// or -1 when h is an external leg.
struct RibbonGraph {
  std::vector<std::vector<int>> vertices;
  std::vector<int> sign;
  std::vector<int> partner;
  std::vector<std::string> names;  // input labels, for messages

  int half_edges() const { return static_cast<int>(partner.size()); }
  int internal_lines() const;
  int external_legs() const;
  std::vector<int> vertex_of() const;

  // Adds a vertex with the given corner signs and returns the ids of its new half-edges.
  std::vector<int> add_vertex(const std::vector<int>& signs);
  void join(int a, int b);

  // Checks the involution and that every half-edge sits in exactly one vertex.
  void validate() const;
};

// Text format, one item per line:
//   v: a+ b- c+ d-     vertex, cyclic order, corner signs (signs optional: then +,-,+,- ...)
//   e: a c             internal line
// Unpaired half-edges are external legs. '#' starts a comment.
RibbonGraph parse_ribbon(const std::string& text);
std::string format_ribbon(const RibbonGraph& g);

struct Topology {
  int faces = 0;
  int broken_faces = 0;  // faces meeting at least one external leg, each counted once
  int genus = 0;
  std::vector<std::vector<int>> face_cycles;
};

// Faces are the cycles of h -> next(partner(h)), with partner(h) = h for external legs.
Topology topology(const RibbonGraph& g);

struct Degrees {
  int commutative = 0;     // D + (D-4) n + (2-D) N/2
  int noncommutative = 0;  // commutative - D (2 genus + B - 1)
};

// Requires every vertex to be 4-valent.
Degrees degrees(const RibbonGraph& g, int dim);

struct Orientation {
  bool orientable = false;
  std::vector<int> flips;  // per vertex, +1 keep, -1 reverse all its corner signs
};

// Brute force over the 2^n vertex orientations: every internal line must join opposite signs.
Orientation orientable(const RibbonGraph& g);

RibbonGraph bubble_graph();
RibbonGraph nonplanar_tadpole_graph();

// Connected graph with n 4-valent alternating vertices and a random pairing of an even
// subset of the half-edges.
RibbonGraph random_ribbon_graph(int n, std::mt19937& rng);

}  // namespace moyal
