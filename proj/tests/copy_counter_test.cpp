#include <gtest/gtest.h>

#include <random>

#include "hyperturan/constructions.hpp"
#include "hyperturan/copy_counter.hpp"
#include "hyperturan/pattern.hpp"
#include "oracles.hpp"

using namespace hyperturan;

namespace {

std::vector<oracle::Edge> edges_of(const Pattern& p) {
  std::vector<oracle::Edge> out;
  for (const Triple& t : p.edges()) out.push_back({int(t.a), int(t.b), int(t.c)});
  return out;
}

// In K_n every injection preserves edges, so copies = n!/((n-f)! |Aut|).
std::uint64_t complete_host_copies(std::uint64_t n, std::uint64_t f, std::uint64_t aut) {
  std::uint64_t inj = 1;
  for (std::uint64_t i = 0; i < f; ++i) inj *= n - i;
  return inj / aut;
}

} // namespace

TEST(CopyCounter, CompleteHosts) {
  for (const char* name : {"fano", "f5", "k4minus", "b5", "pasch", "k4", "edge"}) {
    const Pattern p = pattern_by_name(name);
    for (std::size_t n = p.vertex_count(); n <= 9; ++n)
      EXPECT_EQ(count_copies(TripleSystem::complete(n), p), Count{complete_host_copies(n, p.vertex_count(), p.aut_count())})
          << name << " n=" << n;
  }
  EXPECT_EQ(count_copies(TripleSystem::complete(10), make_expanded_clique(4)), Count{151200});
  EXPECT_EQ(count_copies(TripleSystem::complete(7), make_fano()), Count{30});
}

TEST(CopyCounter, PatternLargerThanHost) {
  EXPECT_EQ(count_copies(TripleSystem::complete(6), make_fano()), Count{0});
  EXPECT_FALSE(contains_copy(TripleSystem::complete(6), make_fano()));
  EXPECT_EQ(count_copies(TripleSystem(3, {}), make_single_edge()), Count{0});
}

TEST(CopyCounter, MatchesOracleOnRandomHosts) {
  std::mt19937_64 rng(1234);
  const std::vector<Pattern> pats{make_f5(), make_k4minus(), make_b5(), make_pasch(), make_fano(), make_k4()};
  for (int i = 0; i < 36; ++i) {
    const Pattern& p = pats[i % pats.size()];
    const std::size_t n = p.vertex_count() + (i % 3);
    const TripleSystem h = oracle::random_system(n, 0.7, rng);
    EXPECT_EQ(count_copies(h, p), Count{oracle::copies(edges_of(p), int(p.vertex_count()), oracle::edge_set(h), int(n))})
        << p.name() << " n=" << n;
  }
}

TEST(CopyCounter, ThroughEdgeMatchesOracle) {
  std::mt19937_64 rng(55);
  const Pattern f5 = make_f5();
  const TripleSystem h = oracle::random_system(7, 0.5, rng);
  const auto host = oracle::edge_set(h);
  for (const Triple& e : h.edges())
    EXPECT_EQ(count_copies_through_edge(h, f5, e),
              Count{oracle::copies_through_edge(edges_of(f5), 5, host, 7, {int(e.a), int(e.b), int(e.c)})});
  EXPECT_THROW(count_copies_through_edge(h, f5, non_edges(h).front()), DomainError);
}

TEST(CopyCounter, MarkedHistogramAndExactlyOne) {
  std::mt19937_64 rng(77);
  const Pattern b5 = make_b5();
  for (int i = 0; i < 6; ++i) {
    const TripleSystem h = oracle::random_system(7, 0.6, rng);
    std::vector<Triple> marked;
    oracle::EdgeSet mset;
    for (std::size_t k = 0; k < h.edge_count(); k += 4) {
      marked.push_back(h.edges()[k]);
      mset.insert({int(h.edges()[k].a), int(h.edges()[k].b), int(h.edges()[k].c)});
    }
    const auto hist = marked_usage_histogram(h, b5, marked);
    ASSERT_EQ(hist.size(), b5.edge_count() + 1);
    Count sum;
    for (std::size_t k = 0; k < hist.size(); ++k) {
      EXPECT_EQ(hist[k], Count{oracle::copies_with_marked(edges_of(b5), 5, oracle::edge_set(h), 7, mset, int(k))});
      sum += hist[k];
    }
    EXPECT_EQ(sum, count_copies(h, b5));
    EXPECT_EQ(count_copies_exactly_one_marked(h, b5, marked), hist[1]);
  }
}

TEST(CopyCounter, MarkedEdgesMustBeHostEdges) {
  const TripleSystem h(5, {Triple::of(0, 1, 2)});
  const std::vector<Triple> bad{Triple::of(0, 1, 3)};
  EXPECT_THROW(count_copies_exactly_one_marked(h, make_single_edge(), bad), DomainError);
}

TEST(CopyCounter, ThroughVertexSumsToFTimesTotal) {
  std::mt19937_64 rng(3);
  const TripleSystem h = oracle::random_system(8, 0.5, rng);
  for (const Pattern& p : {make_f5(), make_pasch()}) {
    Count sum;
    for (Vertex v = 0; v < 8; ++v) sum += count_copies_through_vertex(h, p, v);
    EXPECT_EQ(sum, Count{p.vertex_count()} * count_copies(h, p));
  }
}

TEST(CopyCounter, WorkerCountDoesNotChangeResults) {
  const Construction c = add_zero_two_sharing(gen_p3(10), 4);
  const Pattern fano = make_fano();
  ReportOptions one, many;
  one.per_edge = many.per_edge = true;
  many.count.workers = 4;
  const CountReport a = count_report(c.system, fano, one);
  const CountReport b = count_report(c.system, fano, many);
  EXPECT_EQ(a.total_copies, Count{600});
  EXPECT_EQ(a.total_copies, b.total_copies);
  EXPECT_EQ(a.raw_embeddings, b.raw_embeddings);
  EXPECT_EQ(*a.per_edge, *b.per_edge);
}

TEST(CopyCounter, AnchoredFinderAgreesWithCounts) {
  std::mt19937_64 rng(8);
  const Pattern k4m = make_k4minus();
  const AnchoredCopyFinder finder(k4m);
  const TripleSystem h = oracle::random_system(7, 0.25, rng);
  for (const Triple& e : h.edges()) {
    EXPECT_EQ(finder.any_through(h, e), count_copies_through_edge(h, k4m, e) > Count{0});
    EXPECT_EQ(contains_copy_through_edge(h, k4m, e), finder.any_through(h, e));
  }
}

TEST(CopyCounter, EmbeddingsDivisibleByAutomorphisms) {
  std::mt19937_64 rng(21);
  for (const Pattern& p : {make_fano(), make_b5(), make_k4()}) {
    const TripleSystem h = oracle::random_system(9, 0.8, rng);
    EXPECT_EQ(count_embeddings(h, p).rep() % p.aut_count(), 0u) << p.name();
  }
}
