#ifndef HYPERTURAN_COPY_COUNTER_HPP
#define HYPERTURAN_COPY_COUNTER_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hyperturan/count.hpp"
#include "hyperturan/pattern.hpp"
#include "hyperturan/triple_system.hpp"

namespace hyperturan {

/**
 * Static search plan for embedding a pattern: the order in which pattern
 * vertices are mapped, and for each position the constraints that apply once
 * the earlier positions are fixed.
 */
struct EmbeddingPlan {
  struct Step {
    Vertex pattern_vertex = 0;
    std::size_t degree = 0;
    /// Pattern edges completed at this step, as pairs of earlier positions.
    std::vector<std::pair<std::uint8_t, std::uint8_t>> closing;
    /// Earlier positions that share an edge with this vertex but no closing one.
    std::vector<std::uint8_t> touching;
    /// Earlier positions with pattern codegree > 1, and that codegree.
    std::vector<std::pair<std::uint8_t, std::uint8_t>> heavy_pairs;
  };
  std::vector<Step> steps;

  /**
   * Greedy connected order. Positions listed in `prefix` come first (used to
   * anchor the search at a fixed edge or vertex); then the unplaced vertex
   * closing the most edges, then most adjacent to placed ones, then highest
   * degree. Degree-1 vertices are held back to the end, where each reduces
   * to a pair-link lookup.
   */
  static EmbeddingPlan build(const TripleSystem& pattern, std::span<const Vertex> prefix = {}) {
    const std::size_t f = pattern.vertex_count();
    std::vector<Vertex> order(prefix.begin(), prefix.end());
    std::vector<bool> placed(f, false);
    for (Vertex v : order) placed[v] = true;

    auto closes = [&](Vertex v) {
      std::size_t c = 0;
      for (const Triple& e : pattern.edges()) {
        if (!e.contains(v)) continue;
        bool all = true;
        for (Vertex u : e.vertices())
          if (u != v && !placed[u]) all = false;
        c += all ? 1 : 0;
      }
      return c;
    };
    while (order.size() < f) {
      std::optional<Vertex> best;
      std::array<std::size_t, 4> best_key{};
      for (Vertex v = 0; v < f; ++v) {
        if (placed[v]) continue;
        std::size_t adj = 0;
        for (Vertex u : order) adj += pattern.shadow(v).contains(u) ? 1 : 0;
        std::array<std::size_t, 4> key{pattern.degree(v) > 1 ? 1U : 0U, closes(v), adj,
                                       pattern.degree(v)};
        if (!best || key > best_key) {
          best = v;
          best_key = key;
        }
      }
      placed[*best] = true;
      order.push_back(*best);
    }

    EmbeddingPlan plan;
    std::vector<std::size_t> pos(f);
    for (std::size_t k = 0; k < f; ++k) pos[order[k]] = k;
    for (std::size_t k = 0; k < f; ++k) {
      Step st;
      st.pattern_vertex = order[k];
      st.degree = pattern.degree(order[k]);
      std::vector<bool> linked(k, false);
      for (const Triple& e : pattern.edges()) {
        if (!e.contains(order[k])) continue;
        std::array<std::size_t, 2> others{};
        std::size_t o = 0;
        for (Vertex u : e.vertices())
          if (u != order[k]) others[o++] = pos[u];
        if (others[0] < k && others[1] < k) {
          st.closing.emplace_back(static_cast<std::uint8_t>(std::min(others[0], others[1])),
                                  static_cast<std::uint8_t>(std::max(others[0], others[1])));
          linked[others[0]] = linked[others[1]] = true;
        }
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (!pattern.shadow(order[k]).contains(order[i])) continue;
        if (!linked[i]) st.touching.push_back(static_cast<std::uint8_t>(i));
        std::size_t cd = pattern.codegree(order[k], order[i]);
        if (cd > 1) st.heavy_pairs.emplace_back(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(cd));
      }
      plan.steps.push_back(std::move(st));
    }
    return plan;
  }
};

/// Restrictions and bookkeeping for one embedding search.
struct EmbeddingQuery {
  /// Per position: host vertex it must map to, if any.
  std::vector<std::optional<Vertex>> fixed;
  /// Marked host edges (as a system on the same vertex set), or null.
  const TripleSystem* marked = nullptr;
  /// Prune embeddings whose image uses more marked edges than this.
  std::size_t max_marked = std::numeric_limits<std::size_t>::max();
  /// Only keep embeddings using at least this many marked edges.
  std::size_t min_marked = 0;
  bool stop_at_first = false;
  /// Root-level partition: only root candidates with index % stride == offset.
  std::size_t root_stride = 1;
  std::size_t root_offset = 0;
};

struct EmbeddingTally {
  /// by_marked[k] = embeddings whose image uses exactly k marked edges.
  std::vector<Count> by_marked;
  std::uint64_t nodes = 0;
  bool found = false;

  [[nodiscard]] Count total() const {
    Count t;
    for (const Count& c : by_marked) t += c;
    return t;
  }
  EmbeddingTally& operator+=(const EmbeddingTally& o) {
    if (by_marked.size() < o.by_marked.size()) by_marked.resize(o.by_marked.size());
    for (std::size_t i = 0; i < o.by_marked.size(); ++i) by_marked[i] += o.by_marked[i];
    nodes += o.nodes;
    found = found || o.found;
    return *this;
  }
};

namespace detail {

class EmbeddingSearch {
public:
  EmbeddingSearch(const TripleSystem& host, const EmbeddingPlan& plan, const EmbeddingQuery& query)
      : host_(host), plan_(plan), query_(query), f_(plan.steps.size()) {
    tally_.by_marked.assign(f_ == 0 ? 1 : max_edges() + 1, Count{});
    degree_ok_.resize(f_);
    for (std::size_t k = 0; k < f_; ++k) {
      for (Vertex v = 0; v < host.vertex_count(); ++v)
        if (host.degree(v) >= plan.steps[k].degree) degree_ok_[k].insert(v);
      if (k < query.fixed.size() && query.fixed[k]) {
        VertexSet only;
        if (*query.fixed[k] < host.vertex_count()) only.insert(*query.fixed[k]);
        degree_ok_[k] &= only;
      }
    }
    image_.fill(0);
  }

  EmbeddingTally run() {
    if (f_ > 0 && f_ <= host_.vertex_count()) extend(0, 0);
    return tally_;
  }

private:
  std::size_t max_edges() const {
    std::size_t m = 0;
    for (const auto& st : plan_.steps) m += st.closing.size();
    return m;
  }

  VertexSet candidates(std::size_t k) const {
    const auto& st = plan_.steps[k];
    VertexSet cand = degree_ok_[k];
    for (auto [i, j] : st.closing) cand &= host_.link_unchecked(image_[i], image_[j]);
    for (auto i : st.touching) cand &= host_.shadow(image_[i]);
    cand.subtract(used_);
    return cand;
  }

  std::size_t marked_at(std::size_t k, Vertex w) const {
    std::size_t c = 0;
    for (auto [i, j] : plan_.steps[k].closing)
      c += query_.marked->link_unchecked(image_[i], image_[j]).contains(w) ? 1 : 0;
    return c;
  }

  bool heavy_ok(std::size_t k, Vertex w) const {
    for (auto [i, cd] : plan_.steps[k].heavy_pairs)
      if (host_.link_unchecked(w, image_[i]).size() < cd) return false;
    return true;
  }

  void record(std::size_t marked, Count c) {
    if (marked < query_.min_marked) return;
    tally_.by_marked[marked] += c;
    tally_.found = true;
  }

  void extend(std::size_t k, std::size_t marked) {
    VertexSet cand = candidates(k);
    const bool last = k + 1 == f_;
    const auto& st = plan_.steps[k];

    // Leaf fast path: every remaining candidate completes an embedding.
    if (last && query_.marked == nullptr && st.heavy_pairs.empty() && k != 0) {
      const std::size_t c = cand.size();
      tally_.nodes += c;
      if (c > 0) record(marked, Count{c});
      return;
    }

    std::size_t index = 0;
    cand.for_each([&](Vertex w) {
      if (k == 0 && (index++ % query_.root_stride) != query_.root_offset) return true;
      if (!heavy_ok(k, w)) return true;
      std::size_t m = marked;
      if (query_.marked != nullptr) {
        m += marked_at(k, w);
        if (m > query_.max_marked) return true;
      }
      ++tally_.nodes;
      if (last) {
        record(m, Count{1});
      } else {
        image_[k] = w;
        used_.insert(w);
        extend(k + 1, m);
        used_.erase(w);
      }
      return !(query_.stop_at_first && tally_.found);
    });
  }

  const TripleSystem& host_;
  const EmbeddingPlan& plan_;
  const EmbeddingQuery& query_;
  std::size_t f_;
  std::vector<VertexSet> degree_ok_;
  std::array<Vertex, kMaxPatternVertices> image_{};
  VertexSet used_;
  EmbeddingTally tally_;
};

/// One unit of parallel work: a plan plus the query restricting it.
struct EmbeddingTask {
  const EmbeddingPlan* plan;
  EmbeddingQuery query;
};

/// Runs tasks on `workers` threads (task i on worker i % workers) and reduces
/// in task order, so the result does not depend on the worker count.
inline EmbeddingTally run_tasks(const TripleSystem& host, std::span<const EmbeddingTask> tasks,
                                unsigned workers) {
  std::vector<EmbeddingTally> results(tasks.size());
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      results[i] = EmbeddingSearch(host, *tasks[i].plan, tasks[i].query).run();
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < tasks.size(); i += workers)
            results[i] = EmbeddingSearch(host, *tasks[i].plan, tasks[i].query).run();
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  EmbeddingTally total;
  for (const auto& r : results) total += r;
  return total;
}

inline void check_marked(const TripleSystem& host, std::span<const Triple> marked) {
  for (const Triple& t : marked)
    if (!host.contains(t)) throw DomainError("marked edge " + to_string(t) + " is not in the host");
}

inline Count divide_exact(Count embeddings, std::uint64_t aut, const std::string& what) {
  const auto r = embeddings.rep();
  if (r % aut != 0)
    throw InternalError(what + ": " + embeddings.to_string() + " embeddings not divisible by |Aut| = " +
                        std::to_string(aut));
  return Count::from_rep(r / aut);
}

} // namespace detail

/// Search options shared by the counting entry points.
struct CountOptions {
  unsigned workers = 1;
};

/**
 * Embedding counts with optional anchoring and marked-edge accounting.
 * Every public counting function goes through here; counts of copies are
 * these embedding counts divided by |Aut(P)|.
 */
class CopyCounter {
public:
  CopyCounter(const TripleSystem& host, const Pattern& pattern, CountOptions opts = {})
      : host_(host), pattern_(pattern), opts_(opts) {}

  /// All embeddings, split over root candidates.
  EmbeddingTally embeddings(const TripleSystem* marked = nullptr, bool stop_at_first = false) const {
    if (pattern_.vertex_count() > host_.vertex_count()) return empty_tally();
    EmbeddingPlan plan = EmbeddingPlan::build(pattern_.as_system());
    const unsigned w = std::max(1U, opts_.workers);
    std::vector<detail::EmbeddingTask> tasks;
    for (unsigned i = 0; i < w; ++i) {
      EmbeddingQuery q;
      q.marked = marked;
      q.stop_at_first = stop_at_first;
      q.root_stride = w;
      q.root_offset = i;
      tasks.push_back({&plan, q});
    }
    return detail::run_tasks(host_, tasks, w);
  }

  /**
   * Embeddings whose image contains host edge e: for each pattern edge and
   * each of its 3! orientations, pin it onto e. An injective map sends at
   * most one pattern edge onto e, so the cases are disjoint.
   */
  EmbeddingTally embeddings_through_edge(const Triple& e, const TripleSystem* marked = nullptr,
                                         std::size_t max_marked = std::numeric_limits<std::size_t>::max(),
                                         bool stop_at_first = false) const {
    if (!host_.contains(e)) throw DomainError("edge " + to_string(e) + " is not in the host");
    if (pattern_.vertex_count() > host_.vertex_count()) return empty_tally();
    std::vector<EmbeddingPlan> plans;
    plans.reserve(pattern_.edge_count());
    for (const Triple& pe : pattern_.edges()) {
      auto pv = pe.vertices();
      plans.push_back(EmbeddingPlan::build(pattern_.as_system(), pv));
    }
    std::vector<detail::EmbeddingTask> tasks;
    for (const EmbeddingPlan& plan : plans) {
      std::array<Vertex, 3> img = e.vertices();
      do {
        EmbeddingQuery q;
        q.fixed = {img[0], img[1], img[2]};
        q.marked = marked;
        q.max_marked = max_marked;
        q.stop_at_first = stop_at_first;
        tasks.push_back({&plan, q});
      } while (std::next_permutation(img.begin(), img.end()));
    }
    return detail::run_tasks(host_, tasks, opts_.workers);
  }

  /// Embeddings whose image contains host vertex v.
  EmbeddingTally embeddings_through_vertex(Vertex v) const {
    if (v >= host_.vertex_count()) throw DomainError("vertex out of range");
    if (pattern_.vertex_count() > host_.vertex_count()) return empty_tally();
    std::vector<EmbeddingPlan> plans;
    for (Vertex p = 0; p < pattern_.vertex_count(); ++p) {
      std::array<Vertex, 1> pre{p};
      plans.push_back(EmbeddingPlan::build(pattern_.as_system(), pre));
    }
    std::vector<detail::EmbeddingTask> tasks;
    for (const EmbeddingPlan& plan : plans) {
      EmbeddingQuery q;
      q.fixed = {v};
      tasks.push_back({&plan, q});
    }
    return detail::run_tasks(host_, tasks, opts_.workers);
  }

  [[nodiscard]] const Pattern& pattern() const { return pattern_; }
  [[nodiscard]] const TripleSystem& host() const { return host_; }

  Count copies(const EmbeddingTally& t) const {
    return detail::divide_exact(t.total(), pattern_.aut_count(), "pattern " + pattern_.name());
  }

private:
  EmbeddingTally empty_tally() const {
    EmbeddingTally t;
    t.by_marked.assign(pattern_.edge_count() + 1, Count{});
    return t;
  }

  const TripleSystem& host_;
  const Pattern& pattern_;
  CountOptions opts_;
};

/// Edge-preserving injections V(P) -> V(H).
inline Count count_embeddings(const TripleSystem& h, const Pattern& p, CountOptions opts = {}) {
  return CopyCounter(h, p, opts).embeddings().total();
}

/// Copies of P in H: embeddings divided by |Aut(P)|; the division must be exact.
inline Count count_copies(const TripleSystem& h, const Pattern& p, CountOptions opts = {}) {
  CopyCounter cc(h, p, opts);
  return cc.copies(cc.embeddings());
}

/// Copies whose edge set includes e (e must be an edge of H).
inline Count count_copies_through_edge(const TripleSystem& h, const Pattern& p, const Triple& e,
                                       CountOptions opts = {}) {
  CopyCounter cc(h, p, opts);
  return cc.copies(cc.embeddings_through_edge(e));
}

/// Copies whose vertex set includes v.
inline Count count_copies_through_vertex(const TripleSystem& h, const Pattern& p, Vertex v,
                                         CountOptions opts = {}) {
  CopyCounter cc(h, p, opts);
  return cc.copies(cc.embeddings_through_vertex(v));
}

/**
 * Copies that use exactly one edge of `marked` (a subset of H's edges).
 * Anchored at each marked edge with every other marked edge forbidden, so
 * each qualifying copy is found exactly once, through its unique marked edge.
 */
inline Count count_copies_exactly_one_marked(const TripleSystem& h, const Pattern& p,
                                             std::span<const Triple> marked, CountOptions opts = {}) {
  detail::check_marked(h, marked);
  const TripleSystem mark_sys(h.vertex_count(), marked, Mutation::permissive);
  CopyCounter cc(h, p, opts);
  Count emb;
  for (const Triple& e : mark_sys.edges()) emb += cc.embeddings_through_edge(e, &mark_sys, 1).total();
  return detail::divide_exact(emb, p.aut_count(), "pattern " + p.name());
}

/// copies_by_marked[k] = copies of P using exactly k edges of `marked`.
/// Unanchored full enumeration; an independent route to the anchored count.
inline std::vector<Count> marked_usage_histogram(const TripleSystem& h, const Pattern& p,
                                                 std::span<const Triple> marked, CountOptions opts = {}) {
  detail::check_marked(h, marked);
  const TripleSystem mark_sys(h.vertex_count(), marked, Mutation::permissive);
  CopyCounter cc(h, p, opts);
  EmbeddingTally t = cc.embeddings(&mark_sys);
  std::vector<Count> out(p.edge_count() + 1);
  for (std::size_t k = 0; k < t.by_marked.size() && k < out.size(); ++k)
    out[k] = detail::divide_exact(t.by_marked[k], p.aut_count(), "pattern " + p.name());
  return out;
}

/// True iff H contains a copy of P; stops at the first embedding.
inline bool contains_copy(const TripleSystem& h, const Pattern& p) {
  if (p.vertex_count() > h.vertex_count()) return false;
  return CopyCounter(h, p).embeddings(nullptr, true).found;
}

/// True iff some copy of P in H uses edge e.
inline bool contains_copy_through_edge(const TripleSystem& h, const Pattern& p, const Triple& e) {
  if (p.vertex_count() > h.vertex_count()) return false;
  return CopyCounter(h, p)
      .embeddings_through_edge(e, nullptr, std::numeric_limits<std::size_t>::max(), true)
      .found;
}

/**
 * Early-exit test for copies through a given edge, with the anchored plans
 * built once. Used by searches that re-test after every edge insertion.
 */
class AnchoredCopyFinder {
public:
  explicit AnchoredCopyFinder(const Pattern& p) : pattern_(p) {
    for (const Triple& pe : p.edges()) {
      auto pv = pe.vertices();
      plans_.push_back(EmbeddingPlan::build(p.as_system(), pv));
    }
  }

  [[nodiscard]] bool any_through(const TripleSystem& h, const Triple& e) const {
    if (pattern_.vertex_count() > h.vertex_count()) return false;
    for (const EmbeddingPlan& plan : plans_) {
      std::array<Vertex, 3> img = e.vertices();
      do {
        EmbeddingQuery q;
        q.fixed = {img[0], img[1], img[2]};
        q.stop_at_first = true;
        if (detail::EmbeddingSearch(h, plan, q).run().found) return true;
      } while (std::next_permutation(img.begin(), img.end()));
    }
    return false;
  }

  [[nodiscard]] const Pattern& pattern() const { return pattern_; }

private:
  Pattern pattern_;
  std::vector<EmbeddingPlan> plans_;
};

/// Result of a counting run, including the raw embedding count for audit.
struct CountReport {
  std::string pattern;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t aut_count = 0;
  Count total_copies;
  Count raw_embeddings;
  std::optional<std::vector<std::pair<Triple, Count>>> per_edge;
  std::optional<std::vector<Count>> per_vertex;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

struct ReportOptions {
  bool per_edge = false;
  bool per_vertex = false;
  CountOptions count;
};

inline CountReport count_report(const TripleSystem& h, const Pattern& p, ReportOptions opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  CopyCounter cc(h, p, opts.count);
  CountReport r;
  r.pattern = p.name();
  r.n = h.vertex_count();
  r.m = h.edge_count();
  r.aut_count = p.aut_count();
  EmbeddingTally all = cc.embeddings();
  r.raw_embeddings = all.total();
  r.total_copies = cc.copies(all);
  r.nodes = all.nodes;
  if (opts.per_edge) {
    std::vector<std::pair<Triple, Count>> pe;
    for (const Triple& e : h.edges()) {
      EmbeddingTally t = cc.embeddings_through_edge(e);
      r.nodes += t.nodes;
      pe.emplace_back(e, cc.copies(t));
    }
    r.per_edge = std::move(pe);
  }
  if (opts.per_vertex) {
    std::vector<Count> pv;
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
      EmbeddingTally t = cc.embeddings_through_vertex(v);
      r.nodes += t.nodes;
      pv.push_back(cc.copies(t));
    }
    r.per_vertex = std::move(pv);
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return r;
}

} // namespace hyperturan

#endif
