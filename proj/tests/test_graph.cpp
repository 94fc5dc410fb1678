#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "qdom/graph.hpp"
#include "test_util.hpp"

using namespace qdom;
using testutil::brute_isomorphic;

TEST_CASE("build basics") {
  Graph c3 = Graph::build(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(c3.order() == 3);
  CHECK(c3.size() == 3);
  Graph k1 = Graph::build(1, {});
  CHECK(k1.order() == 1);
  CHECK(k1.size() == 0);
  Graph s4p = Graph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  CHECK(s4p.size() == 4);
  CHECK(s4p.degree(0) == 3);
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(Graph::build(3, {{0, 3}}), Error);
  CHECK_THROWS_AS(Graph::build(3, {{1, 1}}), Error);
  CHECK_THROWS_AS(Graph::build(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph::build(0, {}), Error);
  CHECK_THROWS_AS(Graph::build(65, {}), Error);
  try {
    Graph::build(3, {{0, 1}, {0, 1}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateEdge);
  }
}

TEST_CASE("profile examples") {
  StructuralProfile c5 = profile(testutil::cycle(5));
  CHECK(c5.connected);
  CHECK_FALSE(c5.bipartite);
  CHECK(c5.girth == 5);
  CHECK(c5.odd_girth == 5);
  CHECK(c5.min_degree == 2);
  CHECK(c5.pendant_vertices == 0);

  StructuralProfile p4 = profile(testutil::path(4));
  CHECK(p4.connected);
  CHECK(p4.bipartite);
  CHECK(p4.girth == kInfinity);
  CHECK(p4.odd_girth == kInfinity);
  CHECK(p4.min_degree == 1);
  CHECK(p4.pendant_vertices == set_of({0, 3}));
  CHECK(p4.p_dominators == set_of({1, 2}));

  // L_{3,1}: triangle on 0,1,2 with the pendant 3 at vertex 2.
  Graph l31 = Graph::build(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  StructuralProfile pl = profile(l31);
  CHECK(pl.girth == 3);
  CHECK(pl.odd_girth == 3);
  CHECK(pl.pendant_vertices == set_of({3}));
  CHECK(pl.p_dominators == set_of({2}));
}

TEST_CASE("edit operations") {
  Graph c3 = testutil::cycle(3);
  Graph p3 = c3.delete_edge(0, 1);
  CHECK(brute_isomorphic(p3, testutil::path(3)));
  CHECK(brute_isomorphic(p3.add_edge(0, 1), c3));
  CHECK_THROWS_AS(c3.add_edge(0, 1), Error);
  CHECK_THROWS_AS(p3.delete_edge(0, 1), Error);

  Graph s4p = Graph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  auto del = s4p.delete_vertices(set_of({3}));
  CHECK(brute_isomorphic(del.graph, c3));
  CHECK(del.index_map == std::vector<int>{0, 1, 2, -1});
  CHECK_THROWS_AS(c3.delete_vertices(c3.vertices()), Error);
}

TEST_CASE("delete then add is the identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = testutil::random_connected_graph(rng, 7, 0.4);
    auto edges = g.edges();
    auto [u, v] = edges[static_cast<size_t>(
        std::uniform_int_distribution<int>(0, static_cast<int>(edges.size()) - 1)(rng))];
    CHECK(g.delete_edge(u, v).add_edge(u, v) == g);
  }
}

TEST_CASE("coalescence") {
  Graph c3 = testutil::cycle(3);
  Graph p2 = testutil::path(2);
  Coalescence co = coalesce(c3, 2, p2, 0);
  CHECK(co.graph.order() == 4);
  CHECK(co.graph.size() == 4);
  CHECK(brute_isomorphic(co.graph,
                         Graph::build(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}})));
  CHECK(co.root == 2);

  Graph k1 = Graph::build(1, {});
  std::mt19937_64 krng(3);
  Graph g = testutil::random_connected_graph(krng, 6, 0.4);
  CHECK(coalesce(k1, 0, g, 2).graph.order() == g.order());
  CHECK(brute_isomorphic(coalesce(k1, 0, g, 2).graph, g));

  Coalescence bowtie = coalesce(c3, 0, testutil::cycle(3), 1);
  CHECK(bowtie.graph.order() == 5);
  CHECK(bowtie.graph.degree(bowtie.root) == 4);
  // n = n1 + n2 - 1, m = m1 + m2 on random pairs.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Graph a = testutil::random_connected_graph(rng, 5, 0.5);
    Graph b = testutil::random_connected_graph(rng, 4, 0.5);
    Coalescence c = coalesce(a, 1, b, 2);
    CHECK(c.graph.order() == a.order() + b.order() - 1);
    CHECK(c.graph.size() == a.size() + b.size());
  }
}

TEST_CASE("canonical certificates") {
  Graph c5 = testutil::cycle(5);
  std::mt19937_64 rng(5);
  std::vector<int> perm{0, 1, 2, 3, 4};
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(canonical_cert(c5.permuted(perm)) == canonical_cert(c5));
  }
  Graph s4 = Graph::build(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_FALSE(is_isomorphic(testutil::path(4), s4));
}

TEST_CASE("eleven classes on four vertices") {
  // Brute-force pairwise isomorphism oracle over all labeled 4-vertex
  // graphs, compared with the certificate partition.
  std::vector<Graph> reps;
  std::set<std::string> certs;
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++bit)
        if ((mask >> bit) & 1) edges.emplace_back(i, j);
    Graph g = Graph::build(4, edges);
    certs.insert(canonical_cert(g));
    bool fresh = true;
    for (const Graph& r : reps)
      if (brute_isomorphic(r, g)) fresh = false;
    if (fresh) reps.push_back(g);
  }
  CHECK(reps.size() == 11);
  CHECK(certs.size() == 11);
}

TEST_CASE("certificates agree with permutation search up to n = 6") {
  for (int n = 2; n <= 6; ++n) {
    std::map<std::string, Graph> classes;
    int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      std::vector<std::pair<int, int>> edges;
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
          if ((mask >> bit) & 1) edges.emplace_back(i, j);
      Graph g = Graph::build(n, edges);
      auto [it, fresh] = classes.emplace(canonical_cert(g), g);
      if (!fresh)
        REQUIRE(brute_isomorphic(it->second, g));  // same cert -> isomorphic
    }
    // Distinct certs -> non-isomorphic, pairwise.
    std::vector<const Graph*> reps;
    for (auto& [cert, g] : classes) reps.push_back(&g);
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = i + 1; j < reps.size(); ++j)
        REQUIRE_FALSE(brute_isomorphic(*reps[i], *reps[j]));
  }
}

TEST_CASE("n = 7 relabeling invariance spot check") {
  std::mt19937_64 rng(17);
  std::vector<int> perm{0, 1, 2, 3, 4, 5, 6};
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = testutil::random_graph(rng, 7, 0.5);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h = g.permuted(perm);
    CHECK(canonical_cert(g) == canonical_cert(h));
    CHECK(is_isomorphic(g, h));
  }
}

TEST_CASE("n = 7 distinct certs with equal degree sequences never collide") {
  // Certificate collisions would merge classes; probe the risky pairs, the
  // ones sharing a degree sequence.
  std::mt19937_64 rng(19);
  std::map<std::string, Graph> by_cert;
  std::multimap<std::vector<int>, std::string> by_degseq;
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = testutil::random_graph(rng, 7, 0.5);
    std::string cert = canonical_cert(g);
    if (by_cert.contains(cert)) {
      CHECK(brute_isomorphic(by_cert.at(cert), g));
      continue;
    }
    std::vector<int> deg;
    for (int v = 0; v < 7; ++v) deg.push_back(g.degree(v));
    std::sort(deg.begin(), deg.end());
    for (auto [it, end] = by_degseq.equal_range(deg); it != end; ++it)
      CHECK_FALSE(brute_isomorphic(by_cert.at(it->second), g));
    by_cert.emplace(cert, g);
    by_degseq.emplace(deg, cert);
  }
}

TEST_CASE("graph6 round trip") {
  Graph k4 = testutil::complete(4);
  CHECK(k4.to_graph6() == "C~");
  CHECK(Graph::from_graph6("C~") == k4);
  Graph p3 = testutil::path(3);
  CHECK(p3.to_graph6() == "Bg");
  CHECK(Graph::from_graph6("Bg") == p3);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 20)(rng);
    Graph g = testutil::random_graph(rng, n, 0.4);
    CHECK(Graph::from_graph6(g.to_graph6()) == g);
  }
}

TEST_CASE("graph6 malformed input") {
  CHECK_THROWS_AS(Graph::from_graph6(""), Error);
  CHECK_THROWS_AS(Graph::from_graph6("C"), Error);    // truncated
  CHECK_THROWS_AS(Graph::from_graph6("C~~"), Error);  // too long
  CHECK_THROWS_AS(Graph::from_graph6("~??"), Error);  // long form
  CHECK_THROWS_AS(Graph::from_graph6("B\x01"), Error);
  CHECK_THROWS_AS(Graph::from_graph6("A\x7f"), Error);  // nonzero padding
}

TEST_CASE("bipartite iff two-colorable iff odd girth infinite") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 9)(rng);
    Graph g = testutil::random_graph(rng, n, 0.35);
    StructuralProfile p = profile(g);
    // Independent 2-coloring check.
    std::vector<int> color(static_cast<size_t>(n), -1);
    bool two_colorable = true;
    for (int s = 0; s < n && two_colorable; ++s) {
      if (color[static_cast<size_t>(s)] >= 0) continue;
      color[static_cast<size_t>(s)] = 0;
      std::vector<int> stack{s};
      while (!stack.empty() && two_colorable) {
        int v = stack.back();
        stack.pop_back();
        for (int w : set_to_vector(g.neighbors(v))) {
          if (color[static_cast<size_t>(w)] < 0) {
            color[static_cast<size_t>(w)] = 1 - color[static_cast<size_t>(v)];
            stack.push_back(w);
          } else if (color[static_cast<size_t>(w)] ==
                     color[static_cast<size_t>(v)]) {
            two_colorable = false;
          }
        }
      }
    }
    CHECK(p.bipartite == two_colorable);
    CHECK(p.bipartite == (p.odd_girth == kInfinity));
    CHECK(p.girth <= p.odd_girth);
  }
}

TEST_CASE("girth matches the per-edge deletion oracle") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 120; ++trial) {
    int n = std::uniform_int_distribution<int>(3, 9)(rng);
    Graph g = testutil::random_graph(rng, n, 0.35);
    int oracle = kInfinity;
    for (auto [u, v] : g.edges()) {
      Graph h = g.delete_edge(u, v);
      // BFS distance u..v in h.
      std::vector<int> dist(static_cast<size_t>(n), -1);
      std::vector<int> queue{u};
      dist[static_cast<size_t>(u)] = 0;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (int w : set_to_vector(h.neighbors(x)))
          if (dist[static_cast<size_t>(w)] < 0) {
            dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(x)] + 1;
            queue.push_back(w);
          }
      }
      if (dist[static_cast<size_t>(v)] >= 0)
        oracle = std::min(oracle, dist[static_cast<size_t>(v)] + 1);
    }
    CHECK(profile(g).girth == oracle);
  }
}

TEST_CASE("unicycle extraction") {
  Graph l32 = Graph::build(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
  std::vector<int> cyc = unicycle(l32);
  CHECK(cyc.size() == 3);
  CHECK(std::set<int>(cyc.begin(), cyc.end()) == std::set<int>{0, 1, 2});
  CHECK_THROWS_AS(unicycle(testutil::path(4)), Error);
}

TEST_CASE("dot round trip") {
  Graph g = Graph::build(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
  LabelMap labels{{"v1", 0}, {"v2", 1}, {"v3", 2}};
  std::string dot = to_dot(g, &labels);
  CHECK(dot.find("label=\"v3\"") != std::string::npos);
  CHECK(from_dot(dot) == g);
  CHECK(from_dot(to_dot(Graph::build(2, {}))).order() == 2);
}
