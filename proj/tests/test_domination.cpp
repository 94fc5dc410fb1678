#include <doctest.h>

#include <random>

#include "qdom/domination.hpp"
#include "qdom/families.hpp"
#include "test_util.hpp"

using namespace qdom;
using namespace qdom::domination;
using testutil::brute_gamma;

TEST_CASE("gamma examples") {
  CHECK(domination_number(testutil::path(6)).gamma == 2);
  CHECK(domination_number(testutil::cycle(7)).gamma == 3);
  CHECK(domination_number(testutil::complete(5)).gamma == 1);
}

TEST_CASE("witness validity and flags") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 80; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 10)(rng);
    Graph g = testutil::random_connected_graph(rng, n, 0.35);
    DominationCert cert = domination_number(g);
    CHECK(cert.gamma == brute_gamma(g));
    CHECK(set_size(cert.witness) == cert.gamma);
    VertexSet dominated = 0;
    for (int v : set_to_vector(cert.witness))
      dominated |= g.closed_neighbors(v);
    CHECK(dominated == g.vertices());
    StructuralProfile p = profile(g);
    CHECK(cert.contains_all_p_dominators ==
          ((cert.witness & p.p_dominators) == p.p_dominators));
    CHECK(cert.contains_no_pendant == ((cert.witness & p.pendant_vertices) == 0));
    // Ore: gamma <= n/2 for connected graphs on n >= 2 vertices.
    CHECK(2 * cert.gamma <= g.order());
  }
}

TEST_CASE("all minimum dominating sets") {
  auto sets = minimum_dominating_sets(testutil::cycle(3));
  CHECK(sets.size() == 3);
  CHECK(minimum_dominating_sets(testutil::path(3)) ==
        std::vector<VertexSet>{set_of({1})});
  Graph s4p = Graph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  CHECK(minimum_dominating_sets(s4p) == std::vector<VertexSet>{set_of({0})});
  CHECK_THROWS_AS(minimum_dominating_sets(testutil::cycle(12), 2), Error);
}

TEST_CASE("structured minimum dominating sets") {
  // Lemma 2.8(i): trees with pendants admit a minimum dominating set with
  // every p-dominator and no pendant.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int n = std::uniform_int_distribution<int>(3, 10)(rng);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
      edges.emplace_back(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
    Graph tree = Graph::build(n, edges);
    StructuralProfile p = profile(tree);
    REQUIRE(p.pendant_vertices != 0);
    CHECK(structured_mds(tree, p.p_dominators, p.pendant_vertices).has_value());
  }
  auto c4 = structured_mds(testutil::cycle(4), set_of({0}), 0);
  REQUIRE(c4.has_value());
  CHECK(set_size(*c4) == 2);
  CHECK(set_contains(*c4, 0));
  CHECK_FALSE(structured_mds(testutil::path(2), 0, set_of({0, 1})).has_value());
  CHECK_THROWS_AS(structured_mds(testutil::path(2), set_of({0}), set_of({0})),
                  Error);
}

TEST_CASE("Lemma 2.8(ii): double pendants force their p-dominator") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    int n = std::uniform_int_distribution<int>(4, 8)(rng);
    Graph base = testutil::random_connected_graph(rng, n, 0.4);
    // Attach two pendants to vertex 0.
    std::vector<std::pair<int, int>> edges = base.edges();
    edges.emplace_back(0, n);
    edges.emplace_back(0, n + 1);
    Graph g = Graph::build(n + 2, edges);
    for (VertexSet mds : minimum_dominating_sets(g)) {
      CHECK(set_contains(mds, 0));
      CHECK_FALSE(set_contains(mds, n));
      CHECK_FALSE(set_contains(mds, n + 1));
    }
  }
}

TEST_CASE("closed form gamma") {
  families::FamilySpec cyc;
  cyc.kind = families::FamilyKind::Cycle;
  cyc.n = 10;
  CHECK(*closed_form_gamma(cyc) == 4);
  families::FamilySpec h3;
  h3.kind = families::FamilyKind::ScriptH3;
  h3.n = 11;
  h3.alpha = 3;
  CHECK(*closed_form_gamma(h3) == 4);
  families::FamilySpec c3s;
  c3s.kind = families::FamilyKind::C3Star;
  c3s.k = 3;
  c3s.n = 8;
  CHECK(*closed_form_gamma(c3s) == 2);
  families::FamilySpec star;
  star.kind = families::FamilyKind::Star;
  star.n = 6;
  CHECK_FALSE(closed_form_gamma(star).has_value());

  // Formula equals solver on a small grid (the wide grids run in the
  // acceptance suite).
  for (int n = 1; n <= 12; ++n) {
    families::FamilySpec p;
    p.kind = families::FamilyKind::Path;
    p.n = n;
    CHECK(*closed_form_gamma(p) ==
          domination_number(families::make(p).graph).gamma);
  }
  for (int n = 4; n <= 12; ++n)
    for (int a = 1; a <= std::min(n - 3, n / 2); ++a) {
      families::FamilySpec s;
      s.kind = families::FamilyKind::ScriptH3;
      s.n = n;
      s.alpha = a;
      CHECK(*closed_form_gamma(s) ==
            domination_number(families::make(s).graph).gamma);
    }
}

TEST_CASE("domination cert json") {
  std::string text =
      to_json(domination_number(Graph::build(4, {{0, 1}, {0, 2}, {0, 3}})));
  CHECK(text.find("\"gamma\":1") != std::string::npos);
  CHECK(text.find("\"witness\":[0]") != std::string::npos);
  CHECK(text.find("contains_all_p_dominators") != std::string::npos);
}

TEST_CASE("ceil_div is the mathematical ceiling") {
  CHECK(ceil_div(6, 3) == 2);
  CHECK(ceil_div(7, 3) == 3);
  CHECK(ceil_div(0, 3) == 0);
  CHECK(ceil_div(-1, 3) == 0);
  CHECK(ceil_div(-2, 3) == 0);
  CHECK(ceil_div(-3, 3) == -1);
  CHECK(ceil_div(-4, 3) == -1);
}

TEST_CASE("corona gamma half check") {
  auto c4 = corona_gamma_half_check(testutil::cycle(4));
  CHECK(c4 == std::make_pair(true, true));
  auto p4 = corona_gamma_half_check(testutil::path(4));
  CHECK(p4 == std::make_pair(true, true));
  auto c6 = corona_gamma_half_check(testutil::cycle(6));
  CHECK(c6 == std::make_pair(false, false));
  CHECK(corona_gamma_half_check(testutil::path(2)) ==
        std::make_pair(true, true));
  // Corona detection on a built corona.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Graph h = testutil::random_connected_graph(rng, 4, 0.5);
    Graph g = families::make_corona(h).graph;
    CHECK(corona_gamma_half_check(g) == std::make_pair(true, true));
  }
}

TEST_CASE("Lemma 3.1 coalescence bound") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int hn = std::uniform_int_distribution<int>(2, 7)(rng);
    Graph h = testutil::random_connected_graph(rng, hn, 0.5);
    int k = std::uniform_int_distribution<int>(3, 5)(rng);
    std::vector<std::pair<int, int>> se;
    for (int i = 1; i < k; ++i) se.emplace_back(0, i);
    Graph star = Graph::build(k, se);
    int u = std::uniform_int_distribution<int>(0, hn - 1)(rng);
    Graph g = coalesce(h, u, star, 1).graph;
    int gg = domination_number(g).gamma;
    int gh = domination_number(h).gamma;
    CHECK(gg - 1 <= gh);
    CHECK(gh <= gg);
  }
}
