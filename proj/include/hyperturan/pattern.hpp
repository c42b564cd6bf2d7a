#ifndef HYPERTURAN_PATTERN_HPP
#define HYPERTURAN_PATTERN_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hyperturan/triple_system.hpp"

namespace hyperturan {

inline constexpr std::size_t kMaxPatternVertices = 20;
inline constexpr std::size_t kFullEnumerationLimit = 8;

namespace detail {

inline bool preserves_edges(const std::vector<Triple>& edges, const TripleSystem& sys,
                            const std::vector<Vertex>& perm) {
  for (const Triple& e : edges) {
    Triple img = Triple::of(perm[e.a], perm[e.b], perm[e.c]);
    if (!sys.contains(img)) return false;
  }
  return true;
}

// Counts vertex maps that send the edge set onto itself, extending one vertex
// at a time and checking every edge as soon as all its vertices are placed.
class AutomorphismCounter {
public:
  explicit AutomorphismCounter(const TripleSystem& sys) : sys_(sys), f_(sys.vertex_count()) {
    image_.assign(f_, 0);
  }

  std::uint64_t run() {
    count_ = 0;
    extend(0);
    return count_;
  }

private:
  void extend(std::size_t k) {
    if (k == f_) {
      ++count_;
      return;
    }
    const auto v = static_cast<Vertex>(k);
    for (Vertex w = 0; w < f_; ++w) {
      if (used_.contains(w) || sys_.degree(w) != sys_.degree(v)) continue;
      bool ok = true;
      for (Vertex u = 0; u < k && ok; ++u) {
        if (sys_.codegree(v, u) != sys_.codegree(w, image_[u])) ok = false;
        for (Vertex x = u + 1; x < k && ok; ++x)
          if (sys_.link_unchecked(v, u).contains(x) !=
              sys_.link_unchecked(w, image_[u]).contains(image_[x]))
            ok = false;
      }
      if (!ok) continue;
      image_[k] = w;
      used_.insert(w);
      extend(k + 1);
      used_.erase(w);
    }
  }

  const TripleSystem& sys_;
  std::size_t f_;
  std::vector<Vertex> image_;
  VertexSet used_;
  std::uint64_t count_ = 0;
};

} // namespace detail

/// Automorphism count by trying all f! vertex permutations.
inline std::uint64_t automorphism_count_enumerate(const TripleSystem& sys) {
  std::vector<Vertex> perm(sys.vertex_count());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::uint64_t count = 0;
  do {
    if (detail::preserves_edges(sys.edges(), sys, perm)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// Automorphism count by pruned backtracking (degree and codegree refinement).
inline std::uint64_t automorphism_count_backtrack(const TripleSystem& sys) {
  return detail::AutomorphismCounter(sys).run();
}

/**
 * A small forbidden configuration F. Vertices are 0..f-1 and every vertex lies
 * in some edge. |Aut(F)| is computed once, at construction.
 */
class Pattern {
public:
  Pattern(std::string name, std::size_t vertex_count, std::vector<Triple> edges)
      : name_(std::move(name)), system_(vertex_count, edges) {
    if (vertex_count > kMaxPatternVertices)
      throw DomainError("pattern '" + name_ + "' has " + std::to_string(vertex_count) +
                        " vertices; the limit is " + std::to_string(kMaxPatternVertices));
    if (system_.edge_count() == 0) throw DomainError("pattern '" + name_ + "' has no edges");
    for (Vertex v = 0; v < vertex_count; ++v)
      if (system_.degree(v) == 0)
        throw DomainError("pattern '" + name_ + "' has isolated vertex " + std::to_string(v));
    aut_count_ = vertex_count <= kFullEnumerationLimit ? automorphism_count_enumerate(system_)
                                                       : automorphism_count_backtrack(system_);
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t vertex_count() const { return system_.vertex_count(); }
  [[nodiscard]] std::size_t edge_count() const { return system_.edge_count(); }
  [[nodiscard]] const std::vector<Triple>& edges() const { return system_.edges(); }
  [[nodiscard]] std::uint64_t aut_count() const { return aut_count_; }
  [[nodiscard]] const TripleSystem& as_system() const { return system_; }

private:
  std::string name_;
  TripleSystem system_;
  std::uint64_t aut_count_ = 0;
};

/// Same as Pattern::aut_count; errors if the pattern exceeds the vertex budget.
inline std::uint64_t automorphism_count(const TripleSystem& sys) {
  if (sys.vertex_count() > kMaxPatternVertices)
    throw DomainError("automorphism counting is limited to " + std::to_string(kMaxPatternVertices) +
                      " vertices");
  return sys.vertex_count() <= kFullEnumerationLimit ? automorphism_count_enumerate(sys)
                                                     : automorphism_count_backtrack(sys);
}
inline std::uint64_t automorphism_count(const Pattern& p) { return p.aut_count(); }

// Catalog ------------------------------------------------------------------

/// The projective plane of order two: lines {i, i+1, i+3} mod 7.
inline Pattern make_fano() {
  std::vector<Triple> e;
  for (Vertex i = 0; i < 7; ++i) e.push_back(Triple::of(i, (i + 1) % 7, (i + 3) % 7));
  return Pattern("fano", 7, std::move(e));
}

inline Pattern make_f5() { return Pattern("f5", 5, {{0, 1, 2}, {0, 1, 3}, {2, 3, 4}}); }

inline Pattern make_k4minus() { return Pattern("k4minus", 4, {{0, 1, 2}, {0, 1, 3}, {1, 2, 3}}); }

inline Pattern make_b5() { return Pattern("b5", 5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {2, 3, 4}}); }

inline Pattern make_k4() { return Pattern("k4", 4, triples_within(std::vector<Vertex>{0, 1, 2, 3})); }

inline Pattern make_single_edge() { return Pattern("edge", 3, {{0, 1, 2}}); }

/// Fano plane with vertex `removed` (0-based) and its three lines deleted,
/// remaining vertices renumbered in increasing order.
inline Pattern make_fano_minus_vertex(Vertex removed) {
  if (removed >= 7) throw DomainError("fano vertex out of range");
  const Pattern fano = make_fano();
  auto relabel = [&](Vertex v) { return v < removed ? v : v - 1; };
  std::vector<Triple> e;
  for (const Triple& t : fano.edges())
    if (!t.contains(removed)) e.push_back(Triple::of(relabel(t.a), relabel(t.b), relabel(t.c)));
  return Pattern("pasch", 6, std::move(e));
}

/// Pasch configuration: the Fano plane with its last vertex deleted.
inline Pattern make_pasch() { return make_fano_minus_vertex(6); }

/**
 * Expanded clique L_s: K_s on vertices 0..s-1, each pair {i, j} (in
 * lexicographic order) enlarged by its own vertex s, s+1, ...
 */
inline Pattern make_expanded_clique(std::size_t s) {
  if (s < 3) throw DomainError("expanded clique needs clique size >= 3");
  const std::size_t f = s + s * (s - 1) / 2;
  if (f > kMaxPatternVertices)
    throw DomainError("L" + std::to_string(s) + " has " + std::to_string(f) +
                      " vertices, above the pattern limit");
  std::vector<Triple> e;
  auto next = static_cast<Vertex>(s);
  for (Vertex i = 0; i < s; ++i)
    for (Vertex j = i + 1; j < s; ++j) e.push_back(Triple::of(i, j, next++));
  return Pattern("L" + std::to_string(s), f, std::move(e));
}

/// Catalog lookup: fano, f5, k4minus, b5, pasch, k4, edge, L<s>.
inline Pattern pattern_by_name(const std::string& name) {
  if (name == "fano") return make_fano();
  if (name == "f5") return make_f5();
  if (name == "k4minus") return make_k4minus();
  if (name == "b5") return make_b5();
  if (name == "pasch") return make_pasch();
  if (name == "k4") return make_k4();
  if (name == "edge") return make_single_edge();
  if (name.size() >= 2 && (name[0] == 'L' || name[0] == 'l') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return make_expanded_clique(std::stoul(name.substr(1)));
  throw DomainError("unknown pattern '" + name + "'");
}

inline std::vector<std::string> catalog_names() {
  return {"fano", "f5", "k4minus", "b5", "pasch", "k4", "edge", "L3", "L4", "L5"};
}

} // namespace hyperturan

#endif
