#ifndef HYPERTURAN_TRIPLE_SYSTEM_HPP
#define HYPERTURAN_TRIPLE_SYSTEM_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hyperturan/error.hpp"
#include "hyperturan/vertex_set.hpp"

namespace hyperturan {

/// One 3-element edge, stored sorted: a < b < c.
struct Triple {
  Vertex a = 0;
  Vertex b = 1;
  Vertex c = 2;

  /// Normalizes any vertex order; rejects repeated vertices.
  static Triple of(Vertex x, Vertex y, Vertex z) {
    std::array<Vertex, 3> v{x, y, z};
    std::sort(v.begin(), v.end());
    if (v[0] == v[1] || v[1] == v[2])
      throw DomainError("degenerate triple (" + std::to_string(x) + "," + std::to_string(y) +
                        "," + std::to_string(z) + "): repeated vertex");
    return Triple{v[0], v[1], v[2]};
  }

  [[nodiscard]] std::array<Vertex, 3> vertices() const { return {a, b, c}; }
  [[nodiscard]] bool contains(Vertex v) const { return v == a || v == b || v == c; }
  [[nodiscard]] std::size_t shared_with(const Triple& o) const {
    return static_cast<std::size_t>(o.contains(a)) + static_cast<std::size_t>(o.contains(b)) +
           static_cast<std::size_t>(o.contains(c));
  }

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

inline std::string to_string(const Triple& t) {
  return std::to_string(t.a) + " " + std::to_string(t.b) + " " + std::to_string(t.c);
}

enum class Mutation { strict, permissive };

/**
 * A 3-uniform hypergraph on vertices {0, ..., n-1}.
 *
 * Edges are kept sorted and duplicate-free. For every ordered pair (u, v) the
 * link bitset holds the w with {u, v, w} an edge, and the shadow of u holds
 * every v whose pair link with u is nonempty. The object is immutable after
 * construction; mutating operations return a new system.
 */
class TripleSystem {
public:
  TripleSystem() = default;

  /// Builds a system on n vertices. Duplicate triples are rejected unless
  /// `mode` is permissive, in which case they are merged.
  TripleSystem(std::size_t n, std::span<const Triple> triples, Mutation mode = Mutation::strict)
      : n_(n) {
    if (n > kMaxVertices)
      throw DomainError("vertex count " + std::to_string(n) + " exceeds the compile-time limit " +
                        std::to_string(kMaxVertices));
    links_.assign(n * n, VertexSet{});
    shadow_.assign(n, VertexSet{});
    degree_.assign(n, 0);
    edges_.reserve(triples.size());
    for (const Triple& t : triples) {
      check_triple(t);
      if (contains(t)) {
        if (mode == Mutation::strict) throw DomainError("duplicate edge " + to_string(t));
        continue;
      }
      link_in(t);
      edges_.push_back(t);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  TripleSystem(std::size_t n, std::initializer_list<Triple> triples, Mutation mode = Mutation::strict)
      : TripleSystem(n, std::span<const Triple>(triples.begin(), triples.size()), mode) {}

  /// Builds from raw vertex triples in any order.
  static TripleSystem build(std::size_t n, std::span<const std::array<Vertex, 3>> raw,
                            Mutation mode = Mutation::strict) {
    std::vector<Triple> ts;
    ts.reserve(raw.size());
    for (const auto& r : raw) ts.push_back(Triple::of(r[0], r[1], r[2]));
    return TripleSystem(n, ts, mode);
  }

  /// Complete 3-graph on n vertices.
  static TripleSystem complete(std::size_t n) {
    std::vector<Triple> ts;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        for (Vertex c = b + 1; c < n; ++c) ts.push_back({a, b, c});
    return TripleSystem(n, ts);
  }

  [[nodiscard]] std::size_t vertex_count() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const std::vector<Triple>& edges() const { return edges_; }

  [[nodiscard]] bool contains(const Triple& t) const {
    return t.c < n_ && links_[t.a * n_ + t.b].contains(t.c);
  }

  /// Vertices w with {u, v, w} an edge.
  [[nodiscard]] const VertexSet& link(Vertex u, Vertex v) const {
    if (u == v) throw DomainError("link of a pair needs two distinct vertices");
    if (u >= n_ || v >= n_) throw DomainError("link vertex out of range");
    return links_[u * n_ + v];
  }
  [[nodiscard]] const VertexSet& link_unchecked(Vertex u, Vertex v) const {
    return links_[u * n_ + v];
  }

  /// Vertices v != u that share at least one edge with u.
  [[nodiscard]] const VertexSet& shadow(Vertex u) const { return shadow_[u]; }

  [[nodiscard]] std::size_t degree(Vertex v) const { return degree_.at(v); }
  [[nodiscard]] const std::vector<std::size_t>& degrees() const { return degree_; }

  /// Number of edges containing both u and v.
  [[nodiscard]] std::size_t codegree(Vertex u, Vertex v) const { return link(u, v).size(); }

  [[nodiscard]] TripleSystem with_edges_added(std::span<const Triple> add,
                                              Mutation mode = Mutation::strict) const {
    std::vector<Triple> all = edges_;
    for (const Triple& t : add) {
      check_triple(t);
      if (contains(t) && mode == Mutation::strict)
        throw DomainError("edge already present: " + to_string(t));
      all.push_back(t);
    }
    return TripleSystem(n_, all, Mutation::permissive);
  }

  [[nodiscard]] TripleSystem with_edges_removed(std::span<const Triple> remove,
                                                Mutation mode = Mutation::strict) const {
    std::vector<Triple> sorted(remove.begin(), remove.end());
    std::sort(sorted.begin(), sorted.end());
    for (const Triple& t : sorted) {
      check_triple(t);
      if (!contains(t) && mode == Mutation::strict)
        throw DomainError("edge not present: " + to_string(t));
    }
    std::vector<Triple> kept;
    kept.reserve(edges_.size());
    for (const Triple& t : edges_)
      if (!std::binary_search(sorted.begin(), sorted.end(), t)) kept.push_back(t);
    return TripleSystem(n_, kept);
  }

  friend bool operator==(const TripleSystem& x, const TripleSystem& y) {
    return x.n_ == y.n_ && x.edges_ == y.edges_;
  }

private:
  void check_triple(const Triple& t) const {
    if (!(t.a < t.b && t.b < t.c)) throw DomainError("triple not in canonical form: " + to_string(t));
    if (t.c >= n_)
      throw DomainError("vertex id out of range in " + to_string(t) + " (n = " + std::to_string(n_) + ")");
  }

  void link_in(const Triple& t) {
    auto put = [&](Vertex x, Vertex y, Vertex z) {
      links_[x * n_ + y].insert(z);
      links_[y * n_ + x].insert(z);
      shadow_[x].insert(y);
      shadow_[y].insert(x);
    };
    put(t.a, t.b, t.c);
    put(t.a, t.c, t.b);
    put(t.b, t.c, t.a);
    ++degree_[t.a];
    ++degree_[t.b];
    ++degree_[t.c];
  }

  std::size_t n_ = 0;
  std::vector<Triple> edges_;
  std::vector<VertexSet> links_;
  std::vector<VertexSet> shadow_;
  std::vector<std::size_t> degree_;
};

/// Assignment of every vertex to one part of a vertex partition.
class PartitionLabeling {
public:
  PartitionLabeling() = default;

  explicit PartitionLabeling(std::vector<std::size_t> part_of) : part_of_(std::move(part_of)) {
    std::size_t parts = 0;
    for (std::size_t p : part_of_) parts = std::max(parts, p + 1);
    sizes_.assign(parts, 0);
    members_.assign(parts, {});
    for (std::size_t v = 0; v < part_of_.size(); ++v) {
      ++sizes_[part_of_[v]];
      members_[part_of_[v]].push_back(static_cast<Vertex>(v));
    }
  }

  /// Consecutive blocks of the given sizes: part 0 gets the first sizes[0] ids.
  static PartitionLabeling from_sizes(std::span<const std::size_t> sizes) {
    std::vector<std::size_t> part_of;
    for (std::size_t p = 0; p < sizes.size(); ++p) part_of.insert(part_of.end(), sizes[p], p);
    PartitionLabeling l(std::move(part_of));
    l.sizes_.assign(sizes.begin(), sizes.end());
    l.members_.resize(sizes.size());
    return l;
  }

  [[nodiscard]] std::size_t vertex_count() const { return part_of_.size(); }
  [[nodiscard]] std::size_t part_count() const { return sizes_.size(); }
  [[nodiscard]] std::size_t part_of(Vertex v) const { return part_of_.at(v); }
  [[nodiscard]] std::size_t part_size(std::size_t p) const { return sizes_.at(p); }
  [[nodiscard]] const std::vector<std::size_t>& part_sizes() const { return sizes_; }
  [[nodiscard]] const std::vector<Vertex>& members(std::size_t p) const { return members_.at(p); }

  /// Sorted part indices hit by the triple (with repetition).
  [[nodiscard]] std::array<std::size_t, 3> signature(const Triple& t) const {
    std::array<std::size_t, 3> s{part_of(t.a), part_of(t.b), part_of(t.c)};
    std::sort(s.begin(), s.end());
    return s;
  }

private:
  std::vector<std::size_t> part_of_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Vertex>> members_;
};

/// Triples that lie entirely inside the given vertex list, lexicographic.
inline std::vector<Triple> triples_within(std::span<const Vertex> verts) {
  std::vector<Vertex> v(verts.begin(), verts.end());
  std::sort(v.begin(), v.end());
  std::vector<Triple> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      for (std::size_t k = j + 1; k < v.size(); ++k) out.push_back({v[i], v[j], v[k]});
  return out;
}

/// All triples on n vertices that are not edges of h, lexicographic.
inline std::vector<Triple> non_edges(const TripleSystem& h) {
  std::vector<Triple> out;
  const auto n = static_cast<Vertex>(h.vertex_count());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (!h.link_unchecked(a, b).contains(c)) out.push_back({a, b, c});
  return out;
}

} // namespace hyperturan

#endif
