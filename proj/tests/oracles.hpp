#ifndef HYPERTURAN_TESTS_ORACLES_HPP
#define HYPERTURAN_TESTS_ORACLES_HPP

// Deliberately naive reference implementations. They share no code with the
// library beyond plain edge lists, so agreement is meaningful.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "hyperturan/triple_system.hpp"

namespace oracle {

using Edge = std::array<int, 3>;
using EdgeSet = std::set<Edge>;

inline Edge sorted(int a, int b, int c) {
  Edge e{a, b, c};
  std::sort(e.begin(), e.end());
  return e;
}

inline EdgeSet edge_set(const hyperturan::TripleSystem& h) {
  EdgeSet s;
  for (const auto& t : h.edges()) s.insert(sorted(int(t.a), int(t.b), int(t.c)));
  return s;
}

inline std::vector<Edge> edge_list(const hyperturan::TripleSystem& h) {
  const EdgeSet s = edge_set(h);
  return {s.begin(), s.end()};
}

inline bool maps_edges(const std::vector<Edge>& pattern, const EdgeSet& host, const std::vector<int>& phi) {
  for (const Edge& e : pattern)
    if (!host.count(sorted(phi[e[0]], phi[e[1]], phi[e[2]]))) return false;
  return true;
}

/// Edge-preserving injections [f] -> [n], by plain enumeration of every injection.
inline std::uint64_t injections(const std::vector<Edge>& pattern, int f, const EdgeSet& host, int n,
                                const std::function<bool(const std::vector<int>&)>& accept = {}) {
  std::vector<int> phi(f, -1);
  std::vector<bool> used(n, false);
  std::uint64_t total = 0;
  std::function<void(int)> rec = [&](int k) {
    if (k == f) {
      if (maps_edges(pattern, host, phi) && (!accept || accept(phi))) ++total;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      phi[k] = v;
      rec(k + 1);
      used[v] = false;
    }
  };
  rec(0);
  return total;
}

/// Automorphisms by walking all f! permutations.
inline std::uint64_t automorphisms(const std::vector<Edge>& pattern, int f) {
  const EdgeSet own(pattern.begin(), pattern.end());
  std::vector<int> perm(f);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    if (maps_edges(pattern, own, perm)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

inline std::uint64_t copies(const std::vector<Edge>& pattern, int f, const EdgeSet& host, int n) {
  return injections(pattern, f, host, n) / automorphisms(pattern, f);
}

/// Copies whose image uses edge e.
inline std::uint64_t copies_through_edge(const std::vector<Edge>& pattern, int f, const EdgeSet& host, int n,
                                         const Edge& e) {
  const auto hits = injections(pattern, f, host, n, [&](const std::vector<int>& phi) {
    for (const Edge& pe : pattern)
      if (sorted(phi[pe[0]], phi[pe[1]], phi[pe[2]]) == e) return true;
    return false;
  });
  return hits / automorphisms(pattern, f);
}

/// Copies using exactly `k` of the marked edges.
inline std::uint64_t copies_with_marked(const std::vector<Edge>& pattern, int f, const EdgeSet& host, int n,
                                        const EdgeSet& marked, int k) {
  const auto hits = injections(pattern, f, host, n, [&](const std::vector<int>& phi) {
    int used = 0;
    for (const Edge& pe : pattern)
      if (marked.count(sorted(phi[pe[0]], phi[pe[1]], phi[pe[2]]))) ++used;
    return used == k;
  });
  return hits / automorphisms(pattern, f);
}

inline bool has_copy(const std::vector<Edge>& pattern, int f, const EdgeSet& host, int n) {
  return injections(pattern, f, host, n) > 0;
}

/// Largest F-free subset of all triples on [n], by trying every subset.
inline std::size_t brute_turan(int n, const std::vector<std::pair<std::vector<Edge>, int>>& forbidden) {
  std::vector<Edge> all;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) all.push_back({a, b, c});
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    EdgeSet host;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1) host.insert(all[i]);
    bool free = true;
    for (const auto& [p, f] : forbidden)
      if (has_copy(p, f, host, n)) {
        free = false;
        break;
      }
    if (free) best = size;
  }
  return best;
}

/// Each triple of [n] is an edge with probability `density`.
inline hyperturan::TripleSystem random_system(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<hyperturan::Triple> es;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (coin(rng))
          es.push_back(hyperturan::Triple::of(hyperturan::Vertex(a), hyperturan::Vertex(b), hyperturan::Vertex(c)));
  return hyperturan::TripleSystem(n, es);
}

} // namespace oracle

#endif
