#include <doctest.h>

#include "qdom/domination.hpp"
#include "qdom/families.hpp"
#include "test_util.hpp"

using namespace qdom;
using namespace qdom::families;
using testutil::brute_gamma;
using testutil::brute_isomorphic;

namespace {

FamilySpec spec_of(FamilyKind kind) {
  FamilySpec s;
  s.kind = kind;
  return s;
}

Graph s4_plus() { return Graph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}); }

}  // namespace

TEST_CASE("lollipop") {
  FamilySpec s = spec_of(FamilyKind::Lollipop);
  s.g = 3;
  s.l = 1;
  FamilyInstance inst = make(s);
  CHECK(inst.graph.order() == 4);
  CHECK(brute_isomorphic(inst.graph, s4_plus()));
  StructuralProfile p = profile(inst.graph);
  CHECK(p.girth == 3);
  CHECK(p.pendant_vertices == set_of({3}));
  CHECK(inst.labels.at("v4") == 3);

  s.g = 2;
  CHECK_THROWS_AS(make(s), Error);
}

TEST_CASE("curly F construction and validation") {
  FamilySpec s = spec_of(FamilyKind::CurlyFCirc);
  s.g = 5;
  s.l = 1;
  s.attach = {1, 3};
  FamilyInstance inst = make(s);
  CHECK(inst.graph.order() == 8);
  CurlyFShape shape = curly_f_shape(inst);
  CHECK(shape.s == 0);
  CHECK(shape.r == std::vector<int>{1, 3, 5});

  // Non-circ: l >= 2 without a pendant at v_g.
  FamilySpec t = spec_of(FamilyKind::CurlyF);
  t.g = 5;
  t.l = 2;
  t.attach = {2};
  CHECK(curly_f_shape(make(t)).s == 1);
  // A second pendant at a non-tail p-dominator violates the curly rule.
  t.attach = {2, 2};
  CHECK_THROWS_AS(make(t), Error);
  // v_g pendant demands the circ kind.
  t.attach = {5};
  CHECK_THROWS_AS(make(t), Error);
  t.kind = FamilyKind::CurlyFCirc;
  CHECK(curly_f_shape(make(t)).s == 0);
}

TEST_CASE("basic kinds") {
  FamilySpec star = spec_of(FamilyKind::Star);
  star.n = 6;
  CHECK(make(star).graph.degree(0) == 5);
  FamilySpec plus = spec_of(FamilyKind::StarPlus);
  plus.n = 4;
  CHECK(brute_isomorphic(make(plus).graph, s4_plus()));
  FamilySpec kn = spec_of(FamilyKind::Complete);
  kn.n = 5;
  CHECK(make(kn).graph.size() == 10);
  FamilySpec krs = spec_of(FamilyKind::CompleteBipartite);
  krs.r = 2;
  krs.s = 3;
  Graph k23 = make(krs).graph;
  CHECK(k23.size() == 6);
  CHECK(profile(k23).bipartite);
  // FGraph allows several pendants on any nonpendant vertex.
  FamilySpec f = spec_of(FamilyKind::FGraph);
  f.g = 5;
  f.l = 2;
  f.attach = {2, 2, 6};
  Graph fg = make(f).graph;
  CHECK(fg.order() == 10);
  CHECK(fg.degree(1) == 4);
}

TEST_CASE("C3Star") {
  FamilySpec s = spec_of(FamilyKind::C3Star);
  s.k = 0;
  s.n = 5;
  Graph g = make(s).graph;  // triangle plus two pendants at v3
  CHECK(g.degree(2) == 4);
  CHECK(profile(g).pendant_vertices == set_of({3, 4}));
  CHECK(brute_gamma(g) == 1);

  s.k = 3;
  s.n = 8;
  CHECK(brute_gamma(make(s).graph) == 2);  // gamma(P_6)
}

TEST_CASE("corona") {
  FamilySpec base = spec_of(FamilyKind::Path);
  base.n = 2;
  FamilySpec s = spec_of(FamilyKind::Corona);
  s.base = std::make_shared<FamilySpec>(base);
  Graph g = make(s).graph;
  CHECK(g.order() == 4);
  CHECK(brute_isomorphic(g, testutil::path(4)));
  CHECK(*domination::closed_form_gamma(s) == 2);
}

TEST_CASE("H family") {
  // H1 with k = 0 equals H2 with k = 0.
  for (int eps = 4; eps <= 7; ++eps) {
    FamilyInstance h1 = make_h_family(1, eps, 0, {}, eps + 1);
    FamilyInstance h2 = make_h_family(2, eps, 0, {}, eps + 1);
    CHECK(canonical_cert(h1.graph) == canonical_cert(h2.graph));
  }
  // gamma(H2) examples against the closed form.
  CHECK(brute_gamma(make_h_family(2, 7, 2, {}, 9).graph) == 4);
  CHECK(brute_gamma(make_h_family(2, 4, 2, {}, 6).graph) == 3);
  CHECK_THROWS_AS(make_h_family(1, 5, 2, std::vector<int>{1}, 8), Error);
  CHECK_THROWS_AS(make_h_family(5, 6, 1, {}, 8), Error);  // H5 needs k >= 2
}

TEST_CASE("ScriptH3") {
  CHECK(brute_isomorphic(make_script_h3(4, 1).graph, s4_plus()));
  CHECK(brute_isomorphic(make_script_h3(3, 0).graph, testutil::cycle(3)));
  Graph h62 = make_script_h3(6, 2).graph;
  CHECK(brute_gamma(h62) == 2);  // n - 2 alpha = 2 <= 2 so gamma = alpha
  CHECK_THROWS_AS(make_script_h3(4, 0), Error);
  CHECK_THROWS_AS(make_script_h3(4, 2), Error);  // alpha > n - 3
  CHECK_THROWS_AS(make_script_h3(7, 4), Error);  // 2 alpha > n
  for (int n = 4; n <= 12; ++n)
    for (int alpha = 1; alpha <= std::min(n - 3, n / 2); ++alpha) {
      FamilyInstance inst = make_script_h3(n, alpha);
      StructuralProfile p = profile(inst.graph);
      CHECK(is_unicyclic(inst.graph));
      CHECK(p.girth == 3);
      CHECK(set_size(p.p_dominators) == alpha);
    }
}

TEST_CASE("Theorem 3.9 K") {
  FamilyInstance k7 = make_theorem39_k(7);
  CHECK(brute_gamma(k7.graph) == 3);
  CHECK(profile(k7.graph).girth == 3);
  FamilyInstance k5 = make_theorem39_k(5);
  FamilySpec l32 = spec_of(FamilyKind::Lollipop);
  l32.g = 3;
  l32.l = 2;
  CHECK(brute_isomorphic(k5.graph, make(l32).graph));
  CHECK(brute_gamma(k5.graph) == brute_gamma(testutil::cycle(5)));
  CHECK(brute_gamma(make_theorem39_k(9).graph) == 3);
  CHECK_THROWS_AS(make_theorem39_k(6), Error);
  CHECK(make_theorem39_k(3).graph == testutil::cycle(3));
}

TEST_CASE("cycle with trees") {
  TreeAttachment p2{testutil::path(2), 0};
  FamilyInstance a = make_cycle_with_trees(3, std::vector<TreeAttachment>{p2},
                                           std::vector<int>{0});
  CHECK(brute_isomorphic(a.graph,
                         Graph::build(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}})));
  FamilyInstance b = make_cycle_with_trees(
      5, std::vector<TreeAttachment>{p2, p2}, std::vector<int>{0, 2});
  CHECK(b.graph.order() == 7);
  CHECK(is_unicyclic(b.graph));
  TreeAttachment s3{Graph::build(3, {{0, 1}, {0, 2}}), 0};
  CHECK(make_cycle_with_trees(3, std::vector<TreeAttachment>{s3},
                              std::vector<int>{1})
            .graph.order() == 5);
  CHECK_THROWS_AS(make_cycle_with_trees(4, std::vector<TreeAttachment>{p2},
                                        std::vector<int>{0}),
                  Error);
  CHECK_THROWS_AS(make_cycle_with_trees(5, std::vector<TreeAttachment>{p2, p2},
                                        std::vector<int>{1, 1}),
                  Error);
}

TEST_CASE("family spec json round trip") {
  FamilySpec s = spec_of(FamilyKind::CurlyFCirc);
  s.g = 5;
  s.l = 2;
  s.attach = {2, 5};
  std::string text = to_json(s);
  FamilySpec back = family_spec_from_json(text);
  CHECK(back.kind == s.kind);
  CHECK(back.g == 5);
  CHECK(back.attach == s.attach);
  CHECK(canonical_cert(make(back).graph) == canonical_cert(make(s).graph));

  FamilySpec sh = spec_of(FamilyKind::ScriptH3);
  sh.n = 9;
  sh.alpha = 3;
  CHECK(make(family_spec_from_json(to_json(sh))).graph == make(sh).graph);

  CHECK_THROWS_AS(family_spec_from_json("{"), Error);
  CHECK_THROWS_AS(family_spec_from_json("{\"kind\":\"Nope\",\"params\":{}}"),
                  Error);
}

TEST_CASE("recognizer") {
  // Constructed instances are recognized with matching parameters.
  for (int g : {3, 5}) {
    for (int l : {1, 2}) {
      FamilySpec s = spec_of(l == 1 ? FamilyKind::CurlyFCirc
                                    : FamilyKind::CurlyF);
      s.g = g;
      s.l = l;
      s.attach = {2};
      FamilyInstance inst = make(s);
      auto shape = recognize_curly_f(inst.graph);
      REQUIRE(shape.has_value());
      CHECK(shape->g == g);
      CHECK(shape->l == l);
      CHECK(shape->circ() == (l == 1));
    }
  }
  CHECK_FALSE(recognize_curly_f(testutil::cycle(5)).has_value());
  CHECK_FALSE(recognize_curly_f(testutil::path(4)).has_value());
  // Two deep branches on the cycle are not F-shaped.
  Graph two_paths = Graph::build(
      7, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {1, 5}, {5, 6}});
  CHECK_FALSE(recognize_curly_f(two_paths).has_value());
  // Multi-pendant vertex away from the host is fine loosely, not strictly.
  Graph bunched = Graph::build(
      7, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {0, 4}, {1, 5}, {1, 6}});
  CHECK_FALSE(recognize_curly_f(bunched, true).has_value());
  CHECK(recognize_curly_f(bunched, false).has_value());
}
