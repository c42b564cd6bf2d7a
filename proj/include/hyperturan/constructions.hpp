#ifndef HYPERTURAN_CONSTRUCTIONS_HPP
#define HYPERTURAN_CONSTRUCTIONS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperturan/formulas.hpp"
#include "hyperturan/triple_system.hpp"

namespace hyperturan {

enum class BaseKind { bipartite_max, tripartite_max, two_one_max, r_partite_max };

/// An extremal host with its partition and the edges added or removed on top.
struct Construction {
  BaseKind base = BaseKind::bipartite_max;
  TripleSystem system;
  PartitionLabeling parts;
  /// Every added edge, in insertion order.
  std::vector<Triple> added;
  /// Edges removed from the base (only the F5 counterexample removes any).
  std::vector<Triple> removed;
  /// Added edges grouped by the strategy that produced them.
  std::vector<std::vector<Triple>> added_by_step;

  [[nodiscard]] std::size_t n() const { return system.vertex_count(); }
};

namespace detail {

inline Construction make_multipartite(BaseKind kind, std::size_t n, const std::vector<std::uint64_t>& sizes) {
  std::vector<std::size_t> sz(sizes.begin(), sizes.end());
  PartitionLabeling parts = PartitionLabeling::from_sizes(sz);
  std::vector<Triple> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (parts.part_of(a) != parts.part_of(b) && parts.part_of(b) != parts.part_of(c) &&
            parts.part_of(a) != parts.part_of(c))
          edges.push_back({a, b, c});
  return Construction{kind, TripleSystem(n, edges), std::move(parts), {}, {}, {}};
}

inline Construction with_added(const Construction& base, std::vector<Triple> add) {
  Construction out = base;
  out.system = base.system.with_edges_added(add);
  out.added.insert(out.added.end(), add.begin(), add.end());
  out.added_by_step.push_back(std::move(add));
  return out;
}

inline void require_base(const Construction& c, std::initializer_list<BaseKind> kinds, const char* what) {
  for (BaseKind k : kinds)
    if (c.base == k) return;
  throw DomainError(std::string(what) + " is not defined on this base construction");
}

} // namespace detail

// Base constructions ------------------------------------------------------

/// Complete bipartite 3-graph: parts floor(n/2) (part 0) and ceil(n/2) (part 1),
/// all triples meeting both parts.
inline Construction gen_p3(std::size_t n) {
  if (n < 3) throw DomainError("gen_p3 needs n >= 3");
  std::vector<std::size_t> sizes{n / 2, n - n / 2};
  PartitionLabeling parts = PartitionLabeling::from_sizes(sizes);
  std::vector<Triple> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c) {
        const std::size_t pa = parts.part_of(a);
        if (!(pa == parts.part_of(b) && pa == parts.part_of(c))) edges.push_back({a, b, c});
      }
  return Construction{BaseKind::bipartite_max, TripleSystem(n, edges), std::move(parts), {}, {}, {}};
}

/// Complete r-partite 3-graph with parts n_i = floor((n+i-1)/r), ascending.
inline Construction gen_t3r(std::size_t n, std::size_t r) {
  if (n < 3) throw DomainError("gen_t3r needs n >= 3");
  if (r < 3) throw DomainError("gen_t3r needs r >= 3");
  if (r > n) throw DomainError("gen_t3r needs r <= n");
  return detail::make_multipartite(BaseKind::r_partite_max, n, balanced_part_sizes(n, r));
}

/// Complete balanced 3-partite 3-graph.
inline Construction gen_t3(std::size_t n) {
  if (n < 3) throw DomainError("gen_t3 needs n >= 3");
  return detail::make_multipartite(BaseKind::tripartite_max, n, balanced_part_sizes(n, 3));
}

/// (2,1)-partition A (part 0, the smallest maximizer of C(a,2)(n-a)) and B
/// (part 1); edges are all {a, a', b}.
inline Construction gen_b3(std::size_t n) {
  if (n < 3) throw DomainError("gen_b3 needs n >= 3");
  const std::size_t a = b3_big_part(n);
  std::vector<std::size_t> sizes{a, n - a};
  PartitionLabeling parts = PartitionLabeling::from_sizes(sizes);
  std::vector<Triple> edges;
  for (Vertex x = 0; x < a; ++x)
    for (Vertex y = x + 1; y < a; ++y)
      for (Vertex z = static_cast<Vertex>(a); z < n; ++z) edges.push_back({x, y, z});
  return Construction{BaseKind::two_one_max, TripleSystem(n, edges), std::move(parts), {}, {}, {}};
}

// Validators --------------------------------------------------------------

inline bool pairwise_intersections_in(std::span<const Triple> ts, std::initializer_list<std::size_t> allowed) {
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const std::size_t s = ts[i].shared_with(ts[j]);
      if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) return false;
    }
  return true;
}

/// Every two triples share at most one vertex.
inline bool is_linear(std::span<const Triple> ts) { return pairwise_intersections_in(ts, {0, 1}); }

/// Every two triples share zero or two vertices.
inline bool is_zero_two_sharing(std::span<const Triple> ts) { return pairwise_intersections_in(ts, {0, 2}); }

inline bool is_pairwise_disjoint(std::span<const Triple> ts) { return pairwise_intersections_in(ts, {0}); }

/**
 * No four triples form a Pasch configuration (six points, each in exactly two
 * of the four triples, every two triples meeting once). Direct scan over
 * 4-subsets; intended for validating desk-scale outputs.
 */
inline bool is_pasch_free(std::span<const Triple> ts) {
  const std::size_t m = ts.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (ts[i].shared_with(ts[j]) != 1) continue;
      for (std::size_t k = j + 1; k < m; ++k) {
        if (ts[i].shared_with(ts[k]) != 1 || ts[j].shared_with(ts[k]) != 1) continue;
        for (std::size_t l = k + 1; l < m; ++l) {
          if (ts[i].shared_with(ts[l]) != 1 || ts[j].shared_with(ts[l]) != 1 ||
              ts[k].shared_with(ts[l]) != 1)
            continue;
          std::vector<Vertex> pts;
          for (const Triple* t : {&ts[i], &ts[j], &ts[k], &ts[l]})
            for (Vertex v : t->vertices()) pts.push_back(v);
          std::sort(pts.begin(), pts.end());
          bool two_each = pts.size() == 12;
          for (std::size_t p = 0; p < pts.size() && two_each; p += 2)
            two_each = pts[p] == pts[p + 1] && (p + 2 >= pts.size() || pts[p + 2] != pts[p]);
          if (two_each) return false;
        }
      }
    }
  return true;
}

inline bool all_within(std::span<const Triple> ts, const PartitionLabeling& parts, std::size_t part) {
  return std::all_of(ts.begin(), ts.end(), [&](const Triple& t) {
    return parts.part_of(t.a) == part && parts.part_of(t.b) == part && parts.part_of(t.c) == part;
  });
}

inline bool none_in(std::span<const Triple> ts, const TripleSystem& base) {
  return std::none_of(ts.begin(), ts.end(), [&](const Triple& t) { return base.contains(t); });
}

// Addition strategies -----------------------------------------------------

/**
 * q edges inside the parts of P3(n), pairwise sharing 0 or 2 points: disjoint
 * K4 blocks (4 edges on 4 points), filled part by part, then one remainder
 * triple per part of size 3 mod 4. For odd n only the larger part is used.
 * Capacity equals q(n, Fano).
 */
inline std::vector<Triple> zero_two_sharing_layout(const Construction& base) {
  detail::require_base(base, {BaseKind::bipartite_max}, "zero2");
  std::vector<std::size_t> use_parts;
  if (base.n() % 2 == 0) use_parts = {0, 1};
  else use_parts = {1};
  std::vector<Triple> blocks;
  std::vector<Triple> rest;
  for (std::size_t p : use_parts) {
    const auto& mem = base.parts.members(p);
    std::size_t i = 0;
    for (; i + 4 <= mem.size(); i += 4) {
      auto k4 = triples_within(std::span<const Vertex>(mem).subspan(i, 4));
      blocks.insert(blocks.end(), k4.begin(), k4.end());
    }
    if (mem.size() - i == 3) rest.push_back(Triple::of(mem[i], mem[i + 1], mem[i + 2]));
  }
  blocks.insert(blocks.end(), rest.begin(), rest.end());
  return blocks;
}

inline Construction add_zero_two_sharing(const Construction& base, std::size_t q) {
  std::vector<Triple> layout = zero_two_sharing_layout(base);
  if (q > layout.size())
    throw DomainError("zero2: q = " + std::to_string(q) + " exceeds capacity " + std::to_string(layout.size()));
  layout.resize(q);
  return detail::with_added(base, std::move(layout));
}

namespace detail {

/**
 * Depth-first packing of triples from a candidate list, include-first, so the
 * first leaf is the greedy packing. Keeps the chosen set linear and, when
 * asked, Pasch-free. Pair occupancy is an n x n table of the third vertex.
 */
class LinearPacker {
public:
  LinearPacker(std::size_t n, std::vector<Triple> candidates, bool forbid_pasch, std::uint64_t budget)
      : n_(n), cand_(std::move(candidates)), forbid_pasch_(forbid_pasch), budget_(budget),
        third_(n * n, -1) {}

  std::optional<std::vector<Triple>> pack(std::size_t q) {
    target_ = q;
    chosen_.clear();
    nodes_ = 0;
    if (search(0)) return chosen_;
    return std::nullopt;
  }

  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

private:
  int& third(Vertex u, Vertex v) { return third_[u * n_ + v]; }

  bool fits(const Triple& t) {
    if (third(t.a, t.b) >= 0 || third(t.a, t.c) >= 0 || third(t.b, t.c) >= 0) return false;
    return !forbid_pasch_ || !closes_pasch(t);
  }

  // A Pasch through t = {a,b,c}: triples {a,d,e}, {b,d,f}, {c,e,f}.
  bool closes_pasch(const Triple& t) {
    const auto v = t.vertices();
    for (int ai = 0; ai < 3; ++ai)
      for (int bi = 0; bi < 3; ++bi) {
        if (ai == bi) continue;
        const Vertex a = v[ai], b = v[bi], c = v[3 - ai - bi];
        for (Vertex d = 0; d < n_; ++d) {
          if (t.contains(d)) continue;
          const int e = third(a, d);
          const int f = third(b, d);
          if (e < 0 || f < 0 || e == f) continue;
          if (t.contains(static_cast<Vertex>(e)) || t.contains(static_cast<Vertex>(f))) continue;
          if (third(c, static_cast<Vertex>(e)) == f) return true;
        }
      }
    return false;
  }

  void set(const Triple& t, int val) {
    auto put = [&](Vertex x, Vertex y, int z) {
      third(x, y) = z;
      third(y, x) = z;
    };
    put(t.a, t.b, val < 0 ? -1 : static_cast<int>(t.c));
    put(t.a, t.c, val < 0 ? -1 : static_cast<int>(t.b));
    put(t.b, t.c, val < 0 ? -1 : static_cast<int>(t.a));
  }

  bool search(std::size_t from) {
    if (chosen_.size() == target_) return true;
    if (cand_.size() - from < target_ - chosen_.size()) return false;
    for (std::size_t i = from; i < cand_.size(); ++i) {
      if (++nodes_ > budget_) throw BudgetExceeded("packing exceeded node budget " + std::to_string(budget_));
      if (cand_.size() - i < target_ - chosen_.size()) return false;
      const Triple& t = cand_[i];
      if (!fits(t)) continue;
      set(t, 1);
      chosen_.push_back(t);
      if (search(i + 1)) return true;
      chosen_.pop_back();
      set(t, -1);
    }
    return false;
  }

  std::size_t n_;
  std::vector<Triple> cand_;
  bool forbid_pasch_;
  std::uint64_t budget_;
  std::vector<int> third_;
  std::vector<Triple> chosen_;
  std::size_t target_ = 0;
  std::uint64_t nodes_ = 0;
};

inline std::vector<Triple> ordered_candidates(std::vector<Triple> ts, std::uint64_t seed) {
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(ts.begin(), ts.end(), rng);
  }
  return ts;
}

inline std::vector<Triple> pack_inside(const Construction& base, std::size_t part, std::size_t q,
                                       std::uint64_t seed, std::uint64_t budget, bool forbid_pasch,
                                       const char* what, std::size_t min_part) {
  if (part >= base.parts.part_count()) throw DomainError(std::string(what) + ": no such part");
  const auto& mem = base.parts.members(part);
  if (mem.size() < min_part)
    throw DomainError(std::string(what) + ": part size " + std::to_string(mem.size()) + " < " +
                      std::to_string(min_part));
  std::vector<Triple> cand = ordered_candidates(triples_within(mem), seed);
  std::erase_if(cand, [&](const Triple& t) { return base.system.contains(t); });
  LinearPacker packer(base.n(), std::move(cand), forbid_pasch, budget);
  auto got = packer.pack(q);
  if (!got)
    throw DomainError(std::string(what) + ": no packing of " + std::to_string(q) + " triples exists in part " +
                      std::to_string(part));
  return *got;
}

} // namespace detail

inline constexpr std::uint64_t kDefaultPackingBudget = 5'000'000;

/// q linear, Pasch-free triples inside `part`. The default part is the larger
/// part of P3(n).
inline Construction add_anti_pasch(const Construction& base, std::optional<std::size_t> part, std::size_t q,
                                   std::uint64_t seed = 0, std::uint64_t budget = kDefaultPackingBudget) {
  const std::size_t p = part.value_or(base.parts.part_count() - 1);
  return detail::with_added(base, detail::pack_inside(base, p, q, seed, budget, true, "antipasch", 7));
}

/// q linear triples (a partial Steiner triple system) inside the big part of B3(n).
inline Construction add_linear_inside_X(const Construction& base, std::size_t q, std::uint64_t seed = 0,
                                        std::uint64_t budget = kDefaultPackingBudget) {
  detail::require_base(base, {BaseKind::two_one_max}, "linear");
  return detail::with_added(base, detail::pack_inside(base, 0, q, seed, budget, false, "linear", 3));
}

/// Sub-parts of `part` used by add_partite_inside_part: balanced, ascending.
inline std::vector<std::vector<Vertex>> sub_parts(const Construction& base, std::size_t part) {
  const auto& mem = base.parts.members(part);
  std::vector<std::vector<Vertex>> out(3);
  std::size_t i = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    const std::size_t sz = (mem.size() + s) / 3;
    for (std::size_t k = 0; k < sz; ++k) out[s].push_back(mem[i++]);
  }
  return out;
}

/// q transversal triples of a 3-way split of `part` in T3(n).
inline Construction add_partite_inside_part(const Construction& base, std::size_t part, std::size_t q,
                                            std::uint64_t seed = 0) {
  detail::require_base(base, {BaseKind::tripartite_max, BaseKind::r_partite_max}, "partite");
  if (part >= base.parts.part_count()) throw DomainError("partite: no such part");
  auto sp = sub_parts(base, part);
  std::vector<Triple> cand;
  for (Vertex x : sp[0])
    for (Vertex y : sp[1])
      for (Vertex z : sp[2]) cand.push_back(Triple::of(x, y, z));
  std::sort(cand.begin(), cand.end());
  cand = detail::ordered_candidates(std::move(cand), seed);
  if (q > cand.size())
    throw DomainError("partite: q = " + std::to_string(q) + " exceeds transversal capacity " +
                      std::to_string(cand.size()));
  cand.resize(q);
  return detail::with_added(base, std::move(cand));
}

/// Index of the last part of maximum size.
inline std::size_t largest_part(const PartitionLabeling& parts) {
  std::size_t best = 0;
  for (std::size_t p = 0; p < parts.part_count(); ++p)
    if (parts.part_size(p) >= parts.part_size(best)) best = p;
  return best;
}

/**
 * q pairwise disjoint edges with exactly two points in a largest part. The
 * pairs come from that part in order; the third points are taken from the
 * other parts round-robin, or all from `third_part` when given.
 */
inline Construction add_disjoint_edges(const Construction& base, std::size_t q,
                                       std::optional<std::size_t> third_part = std::nullopt) {
  detail::require_base(base, {BaseKind::tripartite_max, BaseKind::r_partite_max}, "disjoint");
  const std::size_t big = largest_part(base.parts);
  const auto& mem = base.parts.members(big);
  if (q > mem.size() / 2)
    throw DomainError("disjoint: q = " + std::to_string(q) + " exceeds pair capacity " +
                      std::to_string(mem.size() / 2));
  std::vector<std::size_t> others;
  if (third_part) {
    if (*third_part == big || *third_part >= base.parts.part_count())
      throw DomainError("disjoint: third part must be another existing part");
    others = {*third_part};
  } else {
    for (std::size_t p = 0; p < base.parts.part_count(); ++p)
      if (p != big) others.push_back(p);
  }
  std::vector<std::size_t> next(base.parts.part_count(), 0);
  std::vector<Triple> out;
  std::size_t turn = 0;
  for (std::size_t i = 0; i < q; ++i) {
    std::optional<Vertex> w;
    for (std::size_t tries = 0; tries < others.size() && !w; ++tries) {
      const std::size_t p = others[turn++ % others.size()];
      if (next[p] < base.parts.part_size(p)) w = base.parts.members(p)[next[p]++];
    }
    if (!w) throw DomainError("disjoint: not enough third points for q = " + std::to_string(q));
    out.push_back(Triple::of(mem[2 * i], mem[2 * i + 1], *w));
  }
  return detail::with_added(base, std::move(out));
}

/// q edges {x, x', y}: x, x' from part 0, y the first vertex of part 1.
inline Construction add_fixed_apex_pairs(const Construction& base, std::size_t q) {
  detail::require_base(base, {BaseKind::tripartite_max, BaseKind::r_partite_max}, "apex");
  const auto& v1 = base.parts.members(0);
  if (q > binomial(v1.size(), 2))
    throw DomainError("apex: q = " + std::to_string(q) + " exceeds C(|V1|, 2)");
  const Vertex y = base.parts.members(1).front();
  std::vector<Triple> out;
  for (std::size_t i = 0; i < v1.size() && out.size() < q; ++i)
    for (std::size_t j = i + 1; j < v1.size() && out.size() < q; ++j) out.push_back(Triple::of(v1[i], v1[j], y));
  return detail::with_added(base, std::move(out));
}

/**
 * T3(n) with parts X, Y, Z: fix x in X, y in Y, delete eps*n/3 edges xyz
 * (z in Z) and add 4*eps*n/3 edges x_i x y (x_i in X). Both counts must be
 * integers and fit the parts.
 */
inline Construction gen_f5_density_counterexample(const Construction& base, const Rational& eps) {
  detail::require_base(base, {BaseKind::tripartite_max}, "f5cex");
  if (eps <= 0) throw DomainError("f5cex: eps must be positive");
  const Rational del_r = eps * static_cast<long long>(base.n()) / 3;
  const Rational add_r = 4 * del_r;
  if (denominator(del_r) != 1 || denominator(add_r) != 1)
    throw DomainError("f5cex: eps*n/3 and 4*eps*n/3 must be integers");
  const auto del = static_cast<std::size_t>(numerator(del_r));
  const auto add = static_cast<std::size_t>(numerator(add_r));
  const auto& X = base.parts.members(0);
  const auto& Y = base.parts.members(1);
  const auto& Z = base.parts.members(2);
  if (del > Z.size())
    throw DomainError("f5cex: cannot delete " + std::to_string(del) + " edges xyz with |Z| = " +
                      std::to_string(Z.size()));
  if (add > X.size() - 1)
    throw DomainError("f5cex: need " + std::to_string(add) + " edges x_i x y but X has only " +
                      std::to_string(X.size() - 1) + " choices of x_i");
  const Vertex x = X.front();
  const Vertex y = Y.front();
  std::vector<Triple> removed;
  for (std::size_t i = 0; i < del; ++i) removed.push_back(Triple::of(x, y, Z[i]));
  std::vector<Triple> added;
  for (std::size_t i = 0; i < add; ++i) added.push_back(Triple::of(X[i + 1], x, y));
  Construction out = base;
  out.system = base.system.with_edges_removed(removed).with_edges_added(added);
  out.removed.insert(out.removed.end(), removed.begin(), removed.end());
  out.added.insert(out.added.end(), added.begin(), added.end());
  out.added_by_step.push_back(std::move(added));
  return out;
}

// Compact spec strings ----------------------------------------------------

/// One edge-addition step of a construction recipe.
struct AdditionStrategy {
  enum class Kind { zero_two_sharing, anti_pasch, partite_inside_part, linear_inside_X, disjoint_edges,
                    fixed_apex_pairs, f5_density_counterexample };
  Kind kind = Kind::zero_two_sharing;
  std::size_t q = 0;
  std::optional<std::size_t> part;
  std::optional<std::size_t> third_part;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultPackingBudget;
  Rational eps = 0;
};

/**
 * Base plus ordered additions, written like `p3:n=8+zero2:q=4` or
 * `t3r:n=12,r=3+apex:q=3`. Bases: p3, t3, b3, t3r. Additions: zero2,
 * antipasch, partite, linear, disjoint, apex, f5cex. Parameters: n, r, q,
 * part, third, seed, budget, eps (as p/q).
 */
struct ConstructionSpec {
  BaseKind base = BaseKind::bipartite_max;
  std::size_t n = 0;
  std::size_t r = 3;
  std::vector<AdditionStrategy> additions;

  static ConstructionSpec parse(const std::string& text);
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] Construction build() const;
};

namespace detail {

inline const std::vector<std::pair<std::string, AdditionStrategy::Kind>>& strategy_names() {
  using K = AdditionStrategy::Kind;
  static const std::vector<std::pair<std::string, K>> names{
      {"zero2", K::zero_two_sharing},    {"antipasch", K::anti_pasch}, {"partite", K::partite_inside_part},
      {"linear", K::linear_inside_X},    {"disjoint", K::disjoint_edges}, {"apex", K::fixed_apex_pairs},
      {"f5cex", K::f5_density_counterexample}};
  return names;
}

inline const std::vector<std::pair<std::string, BaseKind>>& base_names() {
  static const std::vector<std::pair<std::string, BaseKind>> names{{"p3", BaseKind::bipartite_max},
                                                                   {"t3", BaseKind::tripartite_max},
                                                                   {"b3", BaseKind::two_one_max},
                                                                   {"t3r", BaseKind::r_partite_max}};
  return names;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw DomainError("spec parameter " + key + " expects a nonnegative integer, got '" + v + "'");
  return std::stoull(v);
}

inline Rational parse_rational(const std::string& v) {
  const auto slash = v.find('/');
  if (slash == std::string::npos) return Rational(static_cast<long long>(parse_u64("eps", v)));
  const auto num = parse_u64("eps", v.substr(0, slash));
  const auto den = parse_u64("eps", v.substr(slash + 1));
  if (den == 0) throw DomainError("eps denominator is zero");
  return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

inline std::string rational_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace detail

inline ConstructionSpec ConstructionSpec::parse(const std::string& text) {
  auto pieces = detail::split(text, '+');
  if (pieces.empty() || pieces[0].empty()) throw DomainError("empty construction spec");
  ConstructionSpec spec;
  bool have_n = false;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string& piece = pieces[i];
    const auto colon = piece.find(':');
    const std::string name = piece.substr(0, colon);
    std::vector<std::pair<std::string, std::string>> kv;
    if (colon != std::string::npos) {
      for (const std::string& item : detail::split(piece.substr(colon + 1), ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw DomainError("malformed spec parameter '" + item + "'");
        kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      }
    }
    if (i == 0) {
      auto it = std::find_if(detail::base_names().begin(), detail::base_names().end(),
                             [&](const auto& p) { return p.first == name; });
      if (it == detail::base_names().end()) throw DomainError("unknown base construction '" + name + "'");
      spec.base = it->second;
      for (const auto& [k, v] : kv) {
        if (k == "n") {
          spec.n = detail::parse_u64(k, v);
          have_n = true;
        } else if (k == "r" && spec.base == BaseKind::r_partite_max) {
          spec.r = detail::parse_u64(k, v);
        } else {
          throw DomainError("unknown parameter '" + k + "' for base " + name);
        }
      }
      if (!have_n) throw DomainError("base construction needs n=<count>");
      continue;
    }
    auto it = std::find_if(detail::strategy_names().begin(), detail::strategy_names().end(),
                           [&](const auto& p) { return p.first == name; });
    if (it == detail::strategy_names().end()) throw DomainError("unknown addition strategy '" + name + "'");
    AdditionStrategy st;
    st.kind = it->second;
    for (const auto& [k, v] : kv) {
      if (k == "q") st.q = detail::parse_u64(k, v);
      else if (k == "part") st.part = detail::parse_u64(k, v);
      else if (k == "third") st.third_part = detail::parse_u64(k, v);
      else if (k == "seed") st.seed = detail::parse_u64(k, v);
      else if (k == "budget") st.budget = detail::parse_u64(k, v);
      else if (k == "eps") st.eps = detail::parse_rational(v);
      else throw DomainError("unknown parameter '" + k + "' for strategy " + name);
    }
    if (st.kind == AdditionStrategy::Kind::f5_density_counterexample && st.eps == 0)
      throw DomainError("f5cex needs eps=<p/q>");
    spec.additions.push_back(st);
  }
  return spec;
}

inline std::string ConstructionSpec::to_string() const {
  std::string out;
  for (const auto& [name, kind] : detail::base_names())
    if (kind == base) out = name;
  out += ":n=" + std::to_string(n);
  if (base == BaseKind::r_partite_max) out += ",r=" + std::to_string(r);
  for (const AdditionStrategy& st : additions) {
    for (const auto& [name, kind] : detail::strategy_names())
      if (kind == st.kind) out += "+" + name;
    std::vector<std::string> params;
    if (st.kind == AdditionStrategy::Kind::f5_density_counterexample) {
      params.push_back("eps=" + detail::rational_string(st.eps));
    } else {
      params.push_back("q=" + std::to_string(st.q));
    }
    if (st.part) params.push_back("part=" + std::to_string(*st.part));
    if (st.third_part) params.push_back("third=" + std::to_string(*st.third_part));
    if (st.seed != 0) params.push_back("seed=" + std::to_string(st.seed));
    if (st.budget != kDefaultPackingBudget) params.push_back("budget=" + std::to_string(st.budget));
    out += ":";
    for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + params[i];
  }
  return out;
}

/// The base construction alone.
inline Construction build_base(BaseKind base, std::size_t n, std::size_t r) {
  switch (base) {
  case BaseKind::bipartite_max: return gen_p3(n);
  case BaseKind::tripartite_max: return gen_t3(n);
  case BaseKind::two_one_max: return gen_b3(n);
  case BaseKind::r_partite_max: return gen_t3r(n, r);
  }
  throw DomainError("unknown base");
}

inline Construction apply_strategy(const Construction& c, const AdditionStrategy& st) {
  using K = AdditionStrategy::Kind;
  switch (st.kind) {
  case K::zero_two_sharing: return add_zero_two_sharing(c, st.q);
  case K::anti_pasch: return add_anti_pasch(c, st.part, st.q, st.seed, st.budget);
  case K::partite_inside_part: return add_partite_inside_part(c, st.part.value_or(0), st.q, st.seed);
  case K::linear_inside_X: return add_linear_inside_X(c, st.q, st.seed, st.budget);
  case K::disjoint_edges: return add_disjoint_edges(c, st.q, st.third_part);
  case K::fixed_apex_pairs: return add_fixed_apex_pairs(c, st.q);
  case K::f5_density_counterexample: return gen_f5_density_counterexample(c, st.eps);
  }
  throw DomainError("unknown strategy");
}

inline Construction ConstructionSpec::build() const {
  Construction c = build_base(base, n, r);
  for (const AdditionStrategy& st : additions) c = apply_strategy(c, st);
  return c;
}

/**
 * Re-checks the structural predicate of every step of `c` against the spec
 * that produced it. Returns an empty string when all pass, otherwise a
 * description of the first failure.
 */
inline std::string validate_construction(const Construction& c, const ConstructionSpec& spec) {
  using K = AdditionStrategy::Kind;
  const Construction base = build_base(spec.base, spec.n, spec.r);
  if (c.added_by_step.size() != spec.additions.size()) return "step count mismatch";
  std::vector<Triple> all_added;
  for (std::size_t i = 0; i < spec.additions.size(); ++i) {
    const AdditionStrategy& st = spec.additions[i];
    const auto& got = c.added_by_step[i];
    all_added.insert(all_added.end(), got.begin(), got.end());
    if (!none_in(got, base.system) && st.kind != K::f5_density_counterexample) return "added edge already in base";
    switch (st.kind) {
    case K::zero_two_sharing:
      if (!is_zero_two_sharing(got)) return "zero2: some pair shares exactly one point";
      if (c.n() % 2 == 1 && !all_within(got, c.parts, 1)) return "zero2: odd n but edge outside larger part";
      for (const Triple& t : got)
        if (c.parts.signature(t)[0] != c.parts.signature(t)[2]) return "zero2: edge not inside a part";
      break;
    case K::anti_pasch:
      if (!is_linear(got)) return "antipasch: not linear";
      if (!is_pasch_free(got)) return "antipasch: contains a Pasch configuration";
      if (!all_within(got, c.parts, st.part.value_or(c.parts.part_count() - 1))) return "antipasch: outside part";
      break;
    case K::linear_inside_X:
      if (!is_linear(got)) return "linear: not linear";
      if (!all_within(got, c.parts, 0)) return "linear: edge outside the big part";
      break;
    case K::partite_inside_part: {
      const std::size_t part = st.part.value_or(0);
      if (!all_within(got, c.parts, part)) return "partite: edge outside part";
      auto sp = sub_parts(c, part);
      for (const Triple& t : got) {
        std::array<int, 3> hit{};
        for (Vertex v : t.vertices())
          for (int s = 0; s < 3; ++s)
            if (std::find(sp[s].begin(), sp[s].end(), v) != sp[s].end()) ++hit[s];
        if (hit != std::array<int, 3>{1, 1, 1}) return "partite: edge not transversal";
      }
      break;
    }
    case K::disjoint_edges: {
      if (!is_pairwise_disjoint(got)) return "disjoint: edges intersect";
      const std::size_t big = largest_part(c.parts);
      for (const Triple& t : got) {
        std::size_t in = 0;
        for (Vertex v : t.vertices()) in += c.parts.part_of(v) == big ? 1 : 0;
        if (in != 2) return "disjoint: edge without exactly two points in a largest part";
      }
      break;
    }
    case K::fixed_apex_pairs: {
      if (got.empty()) break;
      const Vertex y = c.parts.members(1).front();
      for (const Triple& t : got) {
        if (!t.contains(y)) return "apex: edge misses the apex";
        std::size_t in = 0;
        for (Vertex v : t.vertices()) in += c.parts.part_of(v) == 0 ? 1 : 0;
        if (in != 2) return "apex: edge without two points in part 0";
      }
      break;
    }
    case K::f5_density_counterexample: {
      const Vertex x = c.parts.members(0).front();
      const Vertex y = c.parts.members(1).front();
      for (const Triple& t : got)
        if (!t.contains(x) || !t.contains(y) || c.parts.signature(t) != std::array<std::size_t, 3>{0, 0, 1})
          return "f5cex: added edge not of the form x_i x y";
      for (const Triple& t : c.removed)
        if (!t.contains(x) || !t.contains(y)) return "f5cex: removed edge not of the form x y z";
      break;
    }
    }
  }
  std::vector<Triple> sorted = all_added;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "duplicate added edge";
  return {};
}

} // namespace hyperturan

#endif
