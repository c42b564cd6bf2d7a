#ifndef HYPERTURAN_ISOMORPHISM_HPP
#define HYPERTURAN_ISOMORPHISM_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "hyperturan/triple_system.hpp"

namespace hyperturan {

namespace detail {

class IsomorphismSearch {
public:
  IsomorphismSearch(const TripleSystem& g, const TripleSystem& h) : g_(g), h_(h) {
    const std::size_t n = g.vertex_count();
    // Visit g's vertices so that each one (after the first in its component)
    // is adjacent to something already mapped.
    std::vector<bool> taken(n, false);
    while (order_.size() < n) {
      std::size_t best = n;
      std::size_t best_adj = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (taken[v]) continue;
        std::size_t adj = 0;
        for (Vertex u : order_) adj += g.shadow(static_cast<Vertex>(v)).contains(u) ? 1 : 0;
        if (best == n || adj > best_adj ||
            (adj == best_adj && g.degree(static_cast<Vertex>(v)) > g.degree(static_cast<Vertex>(best)))) {
          best = v;
          best_adj = adj;
        }
      }
      taken[best] = true;
      order_.push_back(static_cast<Vertex>(best));
    }
    image_.assign(n, 0);
  }

  std::optional<std::vector<Vertex>> run() {
    used_ = VertexSet{};
    if (extend(0)) {
      std::vector<Vertex> map(g_.vertex_count());
      for (std::size_t k = 0; k < order_.size(); ++k) map[order_[k]] = image_[k];
      return map;
    }
    return std::nullopt;
  }

private:
  bool consistent(std::size_t k, Vertex w) const {
    const Vertex v = order_[k];
    if (g_.degree(v) != h_.degree(w)) return false;
    for (std::size_t i = 0; i < k; ++i) {
      const Vertex u = order_[i];
      const Vertex iu = image_[i];
      if (g_.link_unchecked(v, u).size() != h_.link_unchecked(w, iu).size()) return false;
      for (std::size_t j = i + 1; j < k; ++j) {
        bool in_g = g_.link_unchecked(v, u).contains(order_[j]);
        bool in_h = h_.link_unchecked(w, iu).contains(image_[j]);
        if (in_g != in_h) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == order_.size()) return true;
    bool found = false;
    VertexSet cand = VertexSet::prefix(h_.vertex_count());
    cand.subtract(used_);
    cand.for_each([&](Vertex w) {
      if (!consistent(k, w)) return true;
      image_[k] = w;
      used_.insert(w);
      found = extend(k + 1);
      used_.erase(w);
      return !found;
    });
    return found;
  }

  const TripleSystem& g_;
  const TripleSystem& h_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
  VertexSet used_;
};

} // namespace detail

/// A vertex bijection mapping the edges of g exactly onto the edges of h, if
/// one exists. Backtracking over degree- and codegree-compatible candidates.
inline std::optional<std::vector<Vertex>> find_isomorphism(const TripleSystem& g,
                                                           const TripleSystem& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return std::nullopt;
  std::vector<std::size_t> dg = g.degrees();
  std::vector<std::size_t> dh = h.degrees();
  std::sort(dg.begin(), dg.end());
  std::sort(dh.begin(), dh.end());
  if (dg != dh) return std::nullopt;
  return detail::IsomorphismSearch(g, h).run();
}

inline bool is_isomorphic(const TripleSystem& g, const TripleSystem& h) {
  return find_isomorphism(g, h).has_value();
}

/// Image of `h` under the vertex map `perm` (perm[v] is the new id of v).
inline TripleSystem relabel(const TripleSystem& h, std::span<const Vertex> perm) {
  if (perm.size() != h.vertex_count()) throw DomainError("relabeling has the wrong length");
  std::vector<Triple> ts;
  ts.reserve(h.edge_count());
  for (const Triple& t : h.edges()) ts.push_back(Triple::of(perm[t.a], perm[t.b], perm[t.c]));
  return TripleSystem(h.vertex_count(), ts);
}

} // namespace hyperturan

#endif
