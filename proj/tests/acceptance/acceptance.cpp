// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperturan/hyperturan.hpp"
#include "oracles.hpp"

using namespace hyperturan;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
public:
  explicit Checker(Outcome& o) : o_(o) {}
  void expect(bool cond, const std::string& what) {
    if (!cond && o_.pass) {
      o_.pass = false;
      o_.detail = what;
    }
  }

private:
  Outcome& o_;
};

std::vector<oracle::Edge> pattern_edges(const Pattern& p) {
  std::vector<oracle::Edge> out;
  for (const Triple& t : p.edges()) out.push_back({int(t.a), int(t.b), int(t.c)});
  return out;
}

Outcome fano_self_consistency() {
  Outcome o;
  Checker c(o);
  const Pattern fano = make_fano();
  const auto pe = pattern_edges(fano);
  const auto aut = oracle::automorphisms(pe, 7);
  const TripleSystem k7 = TripleSystem::complete(7);
  const auto oracle_copies = oracle::copies(pe, 7, oracle::edge_set(k7), 7);
  c.expect(aut == 168, "oracle aut = " + std::to_string(aut));
  c.expect(automorphism_count(fano) == 168, "engine aut = " + std::to_string(automorphism_count(fano)));
  c.expect(oracle_copies == 30, "oracle copies = " + std::to_string(oracle_copies));
  c.expect(count_copies(k7, fano) == Count{30}, "engine copies = " + count_copies(k7, fano).to_string());
  if (o.pass) o.detail = "aut 168, copies in K7 30";
  return o;
}

Outcome base_freeness() {
  Outcome o;
  Checker c(o);
  const Pattern fano = make_fano(), f5 = make_f5(), k4m = make_k4minus(), b5 = make_b5(), l4 = make_expanded_clique(4);
  int checks = 0;
  for (std::size_t n = 7; n <= 14; ++n, ++checks)
    c.expect(!contains_copy(gen_p3(n).system, fano), "fano in P3(" + std::to_string(n) + ")");
  for (std::size_t n = 3; n <= 12; ++n, checks += 2) {
    c.expect(!contains_copy(gen_t3(n).system, f5), "f5 in T3(" + std::to_string(n) + ")");
    c.expect(!contains_copy(gen_t3(n).system, k4m), "k4minus in T3(" + std::to_string(n) + ")");
    c.expect(!contains_copy(gen_t3r(n, 3).system, l4), "L4 in T3_3(" + std::to_string(n) + ")");
    ++checks;
  }
  for (std::size_t n = 3; n <= 12; ++n, ++checks)
    c.expect(!contains_copy(gen_b3(n).system, b5), "b5 in B3(" + std::to_string(n) + ")");
  if (o.pass) o.detail = std::to_string(checks) + " base/pattern pairs copy-free";
  return o;
}

Outcome cfano_closed_form() {
  Outcome o;
  Checker c(o);
  const Pattern fano = make_fano();
  std::ostringstream d;
  for (std::size_t n : {8, 9, 10, 12}) {
    const CopyBound b = c_exact(fano, n);
    c.expect(b.value == Count{c_fano(n)},
             "n=" + std::to_string(n) + ": engine " + b.value.to_string() + " vs " + std::to_string(c_fano(n)));
    if (n % 2 == 1) {
      const Construction base = gen_p3(n);
      const std::size_t big = base.parts.part_size(0) > base.parts.part_size(1) ? 0 : 1;
      c.expect(base.parts.part_size(big) == (n + 1) / 2, "unexpected P3 part sizes");
      for (Vertex v : b.witness.vertices())
        c.expect(base.parts.part_of(v) == big, "n=" + std::to_string(n) + ": minimizer " + to_string(b.witness) +
                                                   " not inside the larger part");
    }
    d << "c(" << n << ")=" << b.value.to_string() << " ";
  }
  if (o.pass) o.detail = d.str() + "match closed form";
  return o;
}

Outcome zero_two_sharpness() {
  Outcome o;
  Checker c(o);
  const Pattern fano = make_fano();
  int cases = 0;
  for (std::size_t n : {8, 10}) {
    const Construction base = gen_p3(n);
    for (std::size_t q = 0; q <= q_fano(n); ++q, ++cases) {
      const Construction h = add_zero_two_sharing(base, q);
      const Count total = count_copies(h.system, fano);
      const Count want = Count{q} * Count{c_fano(n)};
      const std::string tag = "n=" + std::to_string(n) + " q=" + std::to_string(q);
      c.expect(is_zero_two_sharing(h.added), tag + ": added edges not 0/2-sharing");
      c.expect(total == want, tag + ": total " + total.to_string() + " vs " + want.to_string());
      if (q > 0) {
        const Count one = count_copies_exactly_one_marked(h.system, fano, h.added);
        c.expect(one == total, tag + ": exactly-one " + one.to_string() + " vs total " + total.to_string());
      }
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " (n,q) cases: total = q*c(n) = exactly-one-marked";
  return o;
}

Outcome cancellative_turan() {
  Outcome o;
  Checker c(o);
  std::ostringstream d;
  for (std::size_t n : {5, 6}) {
    const SearchResult r = exact_turan(n, {make_f5(), make_k4minus()});
    c.expect(r.best_size == t3_size(n),
             "n=" + std::to_string(n) + ": " + std::to_string(r.best_size) + " vs " + std::to_string(t3_size(n)));
    c.expect(r.proved_optimal, "n=" + std::to_string(n) + ": not proved optimal");
    d << "ex(" << n << ")=" << r.best_size << " ";
  }
  if (o.pass) o.detail = d.str() + "= t3(n), proved";
  return o;
}

Outcome exactly_once_structure() {
  Outcome o;
  Checker c(o);
  const Pattern f5 = make_f5(), b5 = make_b5(), l4 = make_expanded_clique(4);
  int cases = 0, skipped = 0;
  auto audit = [&](const Construction& h, const Pattern& p, const std::string& tag) {
    const Count total = count_copies(h.system, p);
    const Count one = count_copies_exactly_one_marked(h.system, p, h.added);
    c.expect(one == total, tag + ": exactly-one " + one.to_string() + " vs total " + total.to_string());
    ++cases;
  };
  for (std::size_t n = 9; n <= 12; ++n) {
    for (std::size_t q = 1; q <= 3; ++q) {
      const std::string nq = " n=" + std::to_string(n) + " q=" + std::to_string(q);
      const Construction t3 = gen_t3(n);
      const std::size_t part = largest_part(t3.parts);
      try {
        audit(add_partite_inside_part(t3, part, q), f5, "partite" + nq);
      } catch (const DomainError&) {
        ++skipped; // transversal capacity of a part of size 3 or 4 is below q
      }
      audit(add_linear_inside_X(gen_b3(n), q), b5, "linear" + nq);
      audit(add_fixed_apex_pairs(gen_t3r(n, 3), q), l4, "apex" + nq);
    }
  }
  if (o.pass)
    o.detail = std::to_string(cases) + " constructions, every copy uses one added edge (" + std::to_string(skipped) +
               " partite cases above capacity)";
  return o;
}

Outcome f5_counterexample() {
  Outcome o;
  Checker c(o);
  const std::size_t n = 12;
  const Rational eps(1, 2);
  try {
    const Construction h = gen_f5_density_counterexample(gen_t3(n), eps);
    const Pattern f5 = make_f5();
    c.expect(h.system.edge_count() == t3_size(n) + 6, "edge count " + std::to_string(h.system.edge_count()));
    const auto hist = marked_usage_histogram(h.system, f5, h.added);
    c.expect(hist[0] == Count{0}, "F5 copies avoiding every added edge: " + hist[0].to_string());
    const Count total = count_copies(h.system, f5);
    c.expect(total < Count{864}, "total " + total.to_string() + " >= 864");
    if (o.pass) o.detail = "total " + total.to_string() + " < 864";
  } catch (const DomainError& e) {
    o.pass = false;
    o.detail = std::string("construction infeasible at n=12, eps=1/2: ") + e.what();
  }
  return o;
}

// Same checks at a size where the recipe's counts fit the parts.
std::string f5_counterexample_feasible_note() {
  const std::size_t n = 24;
  const Rational eps(1, 8);
  const Construction h = gen_f5_density_counterexample(gen_t3(n), eps);
  const Pattern f5 = make_f5();
  const auto hist = marked_usage_histogram(h.system, f5, h.added);
  const Count total = count_copies(h.system, f5);
  const bool ok = h.system.edge_count() == t3_size(n) + 3 && hist[0] == Count{0} && total < Count{1728};
  return std::string(ok ? "holds" : "VIOLATED") + " at n=24, eps=1/8: m=" + std::to_string(h.system.edge_count()) +
         " copies=" + total.to_string() + " (< 1728), none avoid added edges";
}

Outcome lemma_suites() {
  Outcome o;
  Checker c(o);
  std::uint64_t l1 = 0, l2 = 0, held = 0;
  for (std::uint64_t n = 20; n <= 60; ++n) {
    for (std::uint64_t x = 1; x < n; ++x) {
      for (std::uint64_t t = 1; t < n * n; ++t, ++l1) {
        const LemmaOutcome r = lemma1_check(n, x, t);
        c.expect(r != LemmaOutcome::counterexample,
                 "lemma1 n=" + std::to_string(n) + " x=" + std::to_string(x) + " t=" + std::to_string(t));
        held += r == LemmaOutcome::conclusion_holds;
      }
      for (std::uint64_t s = 1; 10 * s < n; ++s, ++l2) {
        const LemmaOutcome r = lemma2_check(n, x, s);
        c.expect(r != LemmaOutcome::counterexample,
                 "lemma2 n=" + std::to_string(n) + " x=" + std::to_string(x) + " s=" + std::to_string(s));
        held += r == LemmaOutcome::conclusion_holds;
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(l1) + " + " + std::to_string(l2) + " instances, " + std::to_string(held) +
               " with hypothesis true, no counterexample";
  return o;
}

Outcome engine_properties() {
  Outcome o;
  Checker c(o);
  std::mt19937_64 rng(20240611);
  std::vector<Pattern> catalog;
  for (const std::string& name : catalog_names()) catalog.push_back(pattern_by_name(name));
  catalog.push_back(make_fano_minus_vertex(0));
  const int kCases = 600;
  for (int i = 0; i < kCases; ++i) {
    const Pattern& p = catalog[i % catalog.size()];
    const std::size_t lo = std::max<std::size_t>(p.vertex_count(), 4);
    if (lo > 9) {
      // Patterns larger than every host: the engine must report zero.
      const TripleSystem h = oracle::random_system(9, 0.6, rng);
      c.expect(count_copies(h, p) == Count{0}, p.name() + ": copies in a smaller host");
      continue;
    }
    const std::size_t n = std::uniform_int_distribution<std::size_t>(lo, 9)(rng);
    const double density = std::uniform_real_distribution<double>(0.3, 0.95)(rng);
    const TripleSystem h = oracle::random_system(n, density, rng);
    const std::string tag = "case " + std::to_string(i) + " " + p.name() + " n=" + std::to_string(n);
    const Count emb = count_embeddings(h, p);
    const Count total = count_copies(h, p);
    c.expect(emb.rep() % p.aut_count() == 0, tag + ": embeddings not divisible by aut");
    const auto pe = pattern_edges(p);
    const auto naive = oracle::copies(pe, int(p.vertex_count()), oracle::edge_set(h), int(n));
    c.expect(total == Count{naive}, tag + ": engine " + total.to_string() + " vs oracle " + std::to_string(naive));

    Count by_edge, by_vertex;
    for (const Triple& e : h.edges()) by_edge += count_copies_through_edge(h, p, e);
    for (Vertex v = 0; v < n; ++v) by_vertex += count_copies_through_vertex(h, p, v);
    c.expect(by_edge == Count{p.edge_count()} * total, tag + ": edge double counting");
    c.expect(by_vertex == Count{p.vertex_count()} * total, tag + ": vertex double counting");

    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    c.expect(count_copies(relabel(h, perm), p) == total, tag + ": not invariant under relabeling");

    const auto missing = non_edges(h);
    if (!missing.empty()) {
      const Triple e = missing[rng() % missing.size()];
      const TripleSystem bigger = h.with_edges_added(std::span<const Triple>(&e, 1));
      c.expect(count_copies(bigger, p) >= total, tag + ": count decreased after adding an edge");
    }
    CountOptions par;
    par.workers = 3;
    c.expect(count_copies(h, p, par) == total, tag + ": worker count changed the result");
  }
  if (o.pass) o.detail = std::to_string(kCases) + " randomized cases, zero failures";
  return o;
}

Outcome anti_pasch_generator() {
  Outcome o;
  Checker c(o);
  const Construction base = gen_p3(50);
  c.expect(base.parts.part_size(0) == 25, "part 0 has size " + std::to_string(base.parts.part_size(0)));
  const Construction h = add_anti_pasch(base, 0, 25, 0);
  c.expect(h.added.size() == 25, "produced " + std::to_string(h.added.size()) + " triples");
  c.expect(is_linear(h.added), "added triples not linear");
  c.expect(is_pasch_free(h.added), "added triples contain a Pasch configuration");
  c.expect(all_within(h.added, h.parts, 0), "added triples leave the part");
  const TripleSystem only(base.n(), h.added);
  c.expect(count_copies(only, make_pasch()) == Count{0}, "engine finds a Pasch copy among added triples");
  if (o.pass) o.detail = "25 linear Pasch-free triples inside a part of size 25";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fano self-consistency", fano_self_consistency},
      {"extremal bases are pattern-free", base_freeness},
      {"c(n, fano) closed form vs engine", cfano_closed_form},
      {"0/2-sharing construction gives exactly q*c(n)", zero_two_sharpness},
      {"cancellative Turan numbers n=5,6", cancellative_turan},
      {"F5 / B5 / L4 copies use one added edge", exactly_once_structure},
      {"F5 density counterexample n=12, eps=1/2", f5_counterexample},
      {"binomial lemma suites n in [20,60]", lemma_suites},
      {"engine property suite", engine_properties},
      {"anti-Pasch generator at part size 25", anti_pasch_generator},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first << " ("
              << o.detail << ") [" << ms << " ms]\n";
    if (i + 1 == 7) {
      try {
        std::cout << "  note: " << f5_counterexample_feasible_note() << "\n";
      } catch (const std::exception& e) {
        std::cout << "  note: feasible-size check raised " << e.what() << "\n";
      }
    }
    std::cout.flush();
    failed += !o.pass;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << "\n";
  return failed == 0 ? 0 : 1;
}
