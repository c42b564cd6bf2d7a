#ifndef HYPERTURAN_TURAN_SEARCH_HPP
#define HYPERTURAN_TURAN_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "hyperturan/constructions.hpp"
#include "hyperturan/copy_counter.hpp"
#include "hyperturan/formulas.hpp"
#include "hyperturan/pattern.hpp"

namespace hyperturan {

// Exact Turan numbers -----------------------------------------------------

inline constexpr std::size_t kMaxProvedTuranN = 7;

struct TuranOptions {
  /// Node budget; the search stops (unproved) once it is spent.
  std::uint64_t budget = 200'000'000;
  unsigned workers = 1;
  std::size_t witness_cap = 8;
  /// Force the first triple {0,1,2} into every nonempty candidate. Sound for
  /// isomorphism-closed forbidden families; off by default.
  bool symmetry_breaking = false;
};

struct SearchResult {
  std::size_t n = 0;
  std::vector<std::string> forbidden;
  std::size_t best_size = 0;
  /// Lexicographically smallest optimal systems found, up to the cap.
  std::vector<TripleSystem> witnesses;
  bool proved_optimal = false;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

namespace detail {

class TuranSearch {
public:
  TuranSearch(std::size_t n, const std::vector<AnchoredCopyFinder>& finders, const TuranOptions& opts,
              std::atomic<std::size_t>& best, std::atomic<std::uint64_t>& nodes, std::atomic<bool>& out_of_budget)
      : n_(n), finders_(finders), opts_(opts), best_(best), nodes_(nodes), out_of_budget_(out_of_budget) {
    const auto nv = static_cast<Vertex>(n);
    for (Vertex a = 0; a < nv; ++a)
      for (Vertex b = a + 1; b < nv; ++b)
        for (Vertex c = b + 1; c < nv; ++c) triples_.push_back({a, b, c});
  }

  [[nodiscard]] const std::vector<Triple>& triples() const { return triples_; }

  /// Runs the subtree where the first decisions are fixed by `prefix`
  /// (bit i set = triple i included).
  void run_prefix(std::size_t depth, std::uint32_t prefix) {
    std::vector<Triple> chosen;
    TripleSystem sys(n_, std::vector<Triple>{});
    for (std::size_t i = 0; i < depth; ++i) {
      if (((prefix >> i) & 1U) == 0) continue;
      chosen.push_back(triples_[i]);
      sys = sys.with_edges_added(std::span<const Triple>(&triples_[i], 1));
      if (creates_copy(sys, triples_[i])) return;
    }
    if (opts_.symmetry_breaking && depth > 0 && (prefix & 1U) == 0) {
      record({});  // only the empty system survives without triple 0
      return;
    }
    dfs(depth, sys, chosen);
  }

  [[nodiscard]] std::size_t local_best() const { return local_best_; }
  [[nodiscard]] const std::vector<std::vector<Triple>>& witnesses() const { return witnesses_; }

private:
  bool creates_copy(const TripleSystem& sys, const Triple& t) const {
    for (const auto& f : finders_)
      if (f.any_through(sys, t)) return true;
    return false;
  }

  void record(const std::vector<Triple>& chosen) {
    const std::size_t s = chosen.size();
    std::size_t cur = best_.load();
    while (s > cur && !best_.compare_exchange_weak(cur, s)) {
    }
    if (s < local_best_) return;
    if (s > local_best_) {
      local_best_ = s;
      witnesses_.clear();
    }
    auto pos = std::lower_bound(witnesses_.begin(), witnesses_.end(), chosen);
    if (pos != witnesses_.end() && *pos == chosen) return;
    witnesses_.insert(pos, chosen);
    if (witnesses_.size() > opts_.witness_cap) witnesses_.pop_back();
  }

  void dfs(std::size_t i, const TripleSystem& sys, std::vector<Triple>& chosen) {
    if (out_of_budget_.load(std::memory_order_relaxed)) return;
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= opts_.budget) {
      out_of_budget_ = true;
      return;
    }
    // Strict bound: systems tying the best are still visited so every optimal
    // witness is seen regardless of scheduling.
    if (chosen.size() + (triples_.size() - i) < best_.load(std::memory_order_relaxed)) return;
    if (i == triples_.size()) {
      record(chosen);
      return;
    }
    const Triple& t = triples_[i];
    const bool must_take = opts_.symmetry_breaking && i == 0;
    TripleSystem with = sys.with_edges_added(std::span<const Triple>(&t, 1));
    if (!creates_copy(with, t)) {
      chosen.push_back(t);
      dfs(i + 1, with, chosen);
      chosen.pop_back();
    }
    if (must_take) {
      // The empty system is the only candidate without triple 0.
      std::vector<Triple> none;
      record(none);
      return;
    }
    dfs(i + 1, sys, chosen);
  }

  std::size_t n_;
  const std::vector<AnchoredCopyFinder>& finders_;
  const TuranOptions& opts_;
  std::atomic<std::size_t>& best_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& out_of_budget_;
  std::vector<Triple> triples_;
  std::size_t local_best_ = 0;
  std::vector<std::vector<Triple>> witnesses_;
};

} // namespace detail

/**
 * Maximum edge count of an n-vertex 3-graph containing none of `forbidden`.
 * Include-first branch-and-bound over triples in lexicographic order; a
 * branch is cut when the triple just added closes a forbidden copy (only
 * copies through that triple are searched) or when even taking every
 * remaining triple cannot reach the best size. proved_optimal is set only
 * when the whole space was exhausted and n <= 7.
 */
inline SearchResult exact_turan(std::size_t n, const std::vector<Pattern>& forbidden, TuranOptions opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (n < 3) throw DomainError("exact_turan needs n >= 3");
  if (n > 12) throw DomainError("exact_turan enumerates 2^C(n,3) subsets; n > 12 is not supported");
  std::vector<AnchoredCopyFinder> finders;
  for (const Pattern& p : forbidden) finders.emplace_back(p);

  std::atomic<std::size_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> out_of_budget{false};

  const unsigned workers = std::max(1U, opts.workers);
  const std::size_t total_triples = n * (n - 1) * (n - 2) / 6;
  const std::size_t depth = workers > 1 ? std::min<std::size_t>(4, total_triples) : 0;
  const std::uint32_t task_count = 1U << depth;

  std::vector<std::unique_ptr<detail::TuranSearch>> searches;
  for (std::uint32_t t = 0; t < task_count; ++t)
    searches.push_back(std::make_unique<detail::TuranSearch>(n, finders, opts, best, nodes, out_of_budget));
  // Include-first: larger prefixes (more triples taken) first.
  auto task_prefix = [&](std::uint32_t t) {
    std::uint32_t p = 0;
    for (std::size_t i = 0; i < depth; ++i)
      if (((t >> (depth - 1 - i)) & 1U) == 0) p |= 1U << i;
    return p;
  };
  if (workers <= 1) {
    for (std::uint32_t t = 0; t < task_count; ++t) searches[t]->run_prefix(depth, task_prefix(t));
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint32_t t = w; t < task_count; t += workers) searches[t]->run_prefix(depth, task_prefix(t));
      });
    for (auto& th : pool) th.join();
  }

  SearchResult r;
  r.n = n;
  for (const Pattern& p : forbidden) r.forbidden.push_back(p.name());
  r.best_size = best.load();
  std::vector<std::vector<Triple>> all;
  for (const auto& s : searches)
    if (s->local_best() == r.best_size)
      all.insert(all.end(), s->witnesses().begin(), s->witnesses().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() > opts.witness_cap) all.resize(opts.witness_cap);
  for (const auto& w : all) {
    TripleSystem sys(n, w);
    for (const Pattern& p : forbidden)
      if (contains_copy(sys, p)) throw InternalError("turan witness contains forbidden pattern " + p.name());
    r.witnesses.push_back(std::move(sys));
  }
  r.nodes = nodes.load();
  r.proved_optimal = !out_of_budget.load() && n <= kMaxProvedTuranN;
  r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return r;
}

// c(n, F) by engine minimum ------------------------------------------------

/// Extremal base construction paired with a catalog pattern.
inline Construction extremal_base_for(const Pattern& p, std::size_t n, std::optional<std::size_t> r = std::nullopt) {
  const std::string& name = p.name();
  if (name == "fano") return gen_p3(n);
  if (name == "f5" || name == "k4minus") return gen_t3(n);
  if (name == "b5") return gen_b3(n);
  if (!name.empty() && name[0] == 'L') {
    const std::size_t s = std::stoul(name.substr(1));
    if (s < 4) throw DomainError("expanded clique L" + std::to_string(s) + " has no r-partite extremal base (r >= 3)");
    if (r && *r != s - 1) throw DomainError("r must equal clique size minus one for " + name);
    return gen_t3r(n, s - 1);
  }
  throw DomainError("no extremal base construction for pattern '" + name + "'");
}

struct CopyBound {
  std::string pattern;
  std::size_t n = 0;
  std::optional<std::size_t> r;
  Count value;
  /// A non-edge achieving the minimum (lexicographically smallest found).
  Triple witness;
  std::string provenance = "engine-min";
  std::optional<std::uint64_t> closed_form;
  std::size_t candidates_evaluated = 0;
};

enum class CExactMode { orbit_representatives, full_enumeration };

/**
 * Minimum, over all ways of adding one edge e to the extremal base, of the
 * copies of P through e. The bases are invariant under permutations inside
 * each part, so by default one non-edge per part signature is evaluated.
 */
inline CopyBound c_exact(const Pattern& p, std::size_t n, std::optional<std::size_t> r = std::nullopt,
                         CExactMode mode = CExactMode::orbit_representatives, CountOptions opts = {}) {
  if (n < p.vertex_count())
    throw DomainError("c_exact: n = " + std::to_string(n) + " is below the pattern size " +
                      std::to_string(p.vertex_count()));
  const Construction base = extremal_base_for(p, n, r);
  std::vector<Triple> cands = non_edges(base.system);
  if (mode == CExactMode::orbit_representatives) {
    std::map<std::array<std::size_t, 3>, Triple> reps;
    for (const Triple& t : cands) reps.emplace(base.parts.signature(t), t);
    cands.clear();
    for (const auto& [sig, t] : reps) cands.push_back(t);
    std::sort(cands.begin(), cands.end());
  }
  if (cands.empty()) throw DomainError("c_exact: the base is complete; no edge can be added");
  CopyBound b;
  b.pattern = p.name();
  b.n = n;
  if (base.base == BaseKind::r_partite_max) b.r = base.parts.part_count();
  bool first = true;
  for (const Triple& e : cands) {
    const TripleSystem h = base.system.with_edges_added(std::span<const Triple>(&e, 1));
    const Count c = count_copies_through_edge(h, p, e, opts);
    if (first || c < b.value) {
      b.value = c;
      b.witness = e;
      first = false;
    }
  }
  b.candidates_evaluated = cands.size();
  if (p.name() == "fano" && n >= 7) b.closed_form = c_fano(n);
  return b;
}

// Sharpness audits --------------------------------------------------------

struct AuditReport {
  std::string spec;
  std::string pattern;
  std::size_t n = 0;
  /// Edges above the base size: added minus removed.
  std::size_t q = 0;
  Count total_copies;
  Count exactly_one_marked;
  std::vector<std::pair<Triple, Count>> per_added_edge;
  Count c_exact;
  Count bound;
  /// total - bound, may be negative.
  __int128 margin = 0;
};

inline std::string margin_string(__int128 m) {
  if (m < 0) return "-" + Count::from_rep(static_cast<unsigned __int128>(-m)).to_string();
  return Count::from_rep(static_cast<unsigned __int128>(m)).to_string();
}

namespace detail {

inline AuditReport audit_host(const std::string& spec_text, const TripleSystem& h, std::span<const Triple> added,
                              std::size_t removed, const Pattern& p, const Count& cex, CountOptions opts) {
  AuditReport a;
  a.spec = spec_text;
  a.pattern = p.name();
  a.n = h.vertex_count();
  a.q = added.size() >= removed ? added.size() - removed : 0;
  a.total_copies = count_copies(h, p, opts);
  a.exactly_one_marked = added.empty() ? Count{} : count_copies_exactly_one_marked(h, p, added, opts);
  for (const Triple& e : added) a.per_added_edge.emplace_back(e, count_copies_through_edge(h, p, e, opts));
  a.c_exact = cex;
  a.bound = Count{a.q} * cex;
  a.margin = static_cast<__int128>(a.total_copies.rep()) - static_cast<__int128>(a.bound.rep());
  return a;
}

} // namespace detail

/**
 * Builds the construction and counts copies of P: in total, through each
 * added edge, and using exactly one added edge; compares the total with
 * q * c_exact(P, n).
 */
inline AuditReport audit_sharpness(const ConstructionSpec& spec, const Pattern& p,
                                   std::optional<std::size_t> q = std::nullopt, CountOptions opts = {}) {
  const Construction c = spec.build();
  if (q && *q != c.added.size())
    throw DomainError("audit: spec adds " + std::to_string(c.added.size()) + " edges, not q = " + std::to_string(*q));
  std::optional<std::size_t> r;
  if (spec.base == BaseKind::r_partite_max) r = spec.r;
  const Count cex = c.added.size() > c.removed.size() ? c_exact(p, spec.n, r, CExactMode::orbit_representatives, opts).value
                                                      : Count{};
  return detail::audit_host(spec.to_string(), c.system, c.added, c.removed.size(), p, cex, opts);
}

struct PerturbedAudit {
  std::vector<AuditReport> trials;
  Count min_total;
  __int128 min_margin = 0;
};

/**
 * Exploratory audit: each trial adds q random non-edges to the spec's base,
 * after removing `rewires` random base edges (and adding that many more), so
 * the host always has ex + q edges. Trial 0 is the spec's own construction
 * when it has additions. Margins are reported, never asserted.
 */
inline PerturbedAudit audit_perturbed(const ConstructionSpec& spec, const Pattern& p, std::size_t q, std::size_t trials,
                                      std::uint64_t seed = 0, std::size_t rewires = 0, CountOptions opts = {}) {
  if (trials == 0) throw DomainError("audit_perturbed needs trials >= 1");
  const Construction base = build_base(spec.base, spec.n, spec.r);
  std::optional<std::size_t> r;
  if (spec.base == BaseKind::r_partite_max) r = spec.r;
  const Count cex = c_exact(p, spec.n, r, CExactMode::orbit_representatives, opts).value;
  std::mt19937_64 rng(seed);
  PerturbedAudit out;
  std::size_t t = 0;
  if (!spec.additions.empty()) {
    const Construction c = spec.build();
    out.trials.push_back(detail::audit_host(spec.to_string(), c.system, c.added, c.removed.size(), p, cex, opts));
    ++t;
  }
  for (; t < trials; ++t) {
    std::vector<Triple> base_edges = base.system.edges();
    std::shuffle(base_edges.begin(), base_edges.end(), rng);
    const std::size_t k = std::min(rewires, base_edges.size());
    std::vector<Triple> removed(base_edges.begin(), base_edges.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Triple> pool = non_edges(base.system);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (q + k > pool.size()) throw DomainError("audit_perturbed: not enough non-edges for q");
    std::vector<Triple> added(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(q + k));
    std::sort(added.begin(), added.end());
    const TripleSystem h = base.system.with_edges_removed(removed).with_edges_added(added);
    out.trials.push_back(detail::audit_host(spec.to_string() + " trial " + std::to_string(t), h, added, k, p, cex, opts));
  }
  out.min_total = out.trials.front().total_copies;
  out.min_margin = out.trials.front().margin;
  for (const auto& a : out.trials) {
    out.min_total = std::min(out.min_total, a.total_copies);
    out.min_margin = std::min(out.min_margin, a.margin);
  }
  return out;
}

} // namespace hyperturan

#endif
