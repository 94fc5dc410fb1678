#include "qdom/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qdom::families {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidSpec, what);
}

void require(bool cond, const std::string& what) {
  if (!cond) invalid(what);
}

std::string vname(int paper_pos) { return "v" + std::to_string(paper_pos); }

// Shared builder for Lollipop / FGraph / CurlyF / CurlyFCirc.
// attach holds 1-indexed positions in 1..g+l-1, one entry per pendant.
FamilyInstance build_lollipop_family(const FamilySpec& spec) {
  long g = spec.g, l = spec.l;
  require(g >= 3, "lollipop requires g >= 3");
  require(l >= 1, "lollipop requires l >= 1");
  long base = g + l;
  long n = base + static_cast<long>(spec.attach.size());
  require(n <= Graph::kMaxVertices, "order exceeds 64");

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < g; ++i) edges.emplace_back(i, (i + 1) % g);
  for (int i = 0; i < l; ++i)
    edges.emplace_back(i == 0 ? static_cast<int>(g) - 1
                              : static_cast<int>(g) + i - 1,
                       static_cast<int>(g) + i);

  std::map<int, int> multiplicity;
  LabelMap labels;
  for (int p = 1; p <= base; ++p) labels[vname(p)] = p - 1;
  int next = static_cast<int>(base);
  for (int target : spec.attach) {
    require(target >= 1 && target <= base - 1,
            "pendant target must be a nonpendant vertex of the lollipop");
    edges.emplace_back(target - 1, next);
    int count = ++multiplicity[target];
    labels["tau_" + std::to_string(target) +
           (count > 1 || target == base - 1 ? "_" + std::to_string(count)
                                            : "")] = next;
    ++next;
  }

  if (spec.kind == FamilyKind::CurlyF || spec.kind == FamilyKind::CurlyFCirc) {
    for (auto& [target, count] : multiplicity)
      require(target == base - 1 || count == 1,
              "every p-dominator other than v_{g+l-1} carries exactly one "
              "pendant in a curly F-graph");
    bool vg_dominates = (l == 1) || multiplicity.contains(static_cast<int>(g));
    if (spec.kind == FamilyKind::CurlyFCirc)
      require(vg_dominates, "F-circ requires v_g to be a p-dominator");
    else
      require(!vg_dominates,
              "v_g is a p-dominator; use kind CurlyFCirc for s = 0");
  }

  FamilyInstance inst{Graph::build(static_cast<int>(n), edges),
                      std::move(labels), spec};
  return inst;
}

// H-family shared layout: triangle v1 v2 v3, path v3 v4 .. v_eps, pendants
// at the given 1-indexed positions, every leftover vertex a pendant of
// v_{eps-1}. Returns the instance plus position->pendant-index bookkeeping.
struct HBuild {
  FamilyInstance inst;
  std::map<int, std::vector<int>> pendants_at;  // position -> pendant indices
};

HBuild build_h_base(FamilySpec spec, std::span<const int> positions) {
  long eps = spec.eps, n = spec.n;
  require(eps >= 3, "H-family requires eps >= 3");
  require(n >= 4, "H-family requires order >= 4");
  require(n <= Graph::kMaxVertices, "order exceeds 64");
  long k = static_cast<long>(positions.size());
  long used = eps + k;
  require(n >= used, "order too small for the requested pendants");
  if (eps == 3)
    require(n >= used + 1, "eps = 3 needs at least one pendant at v_2");

  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {0, 2}};
  for (int p = 4; p <= eps; ++p) edges.emplace_back(p - 2, p - 1);

  LabelMap labels;
  for (int p = 1; p <= eps; ++p) labels[vname(p)] = p - 1;
  std::map<int, std::vector<int>> pend;
  if (eps >= 4) pend[static_cast<int>(eps) - 1].push_back(static_cast<int>(eps) - 1);

  int next = static_cast<int>(eps);
  int last = 0;
  for (int a : positions) {
    require(a >= 1 && a <= eps - 2, "p-dominator positions lie in 1..eps-2");
    require(a > last, "p-dominator positions must be strictly increasing");
    last = a;
    edges.emplace_back(a - 1, next);
    pend[a].push_back(next);
    labels["tau_" + std::to_string(a)] = next;
    ++next;
  }
  int tail = static_cast<int>(eps) - 2;  // v_{eps-1}
  int extra = 0;
  while (next < n) {
    edges.emplace_back(tail, next);
    pend[tail + 1].push_back(next);
    labels["omega_" + std::to_string(++extra)] = next;
    ++next;
  }
  FamilyInstance inst{Graph::build(static_cast<int>(n), edges),
                      std::move(labels), std::move(spec)};
  return {std::move(inst), std::move(pend)};
}

std::vector<int> h2_positions(long eps, long k) {
  std::vector<int> pos;
  for (long j = 1; j <= k; ++j) pos.push_back(static_cast<int>(eps - 2 - k + j));
  return pos;
}

// Move the single pendant of position `from` onto position `to`.
void move_pendant(HBuild& hb, int from, int to) {
  auto it = hb.pendants_at.find(from);
  require(it != hb.pendants_at.end() && !it->second.empty(),
          "no pendant to relocate at position " + std::to_string(from));
  int p = it->second.front();
  it->second.erase(it->second.begin());
  hb.inst.graph = hb.inst.graph.delete_edge(from - 1, p).add_edge(to - 1, p);
  hb.pendants_at[to].push_back(p);
}

}  // namespace

std::string kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Path: return "Path";
    case FamilyKind::Cycle: return "Cycle";
    case FamilyKind::Star: return "Star";
    case FamilyKind::StarPlus: return "StarPlus";
    case FamilyKind::Complete: return "Complete";
    case FamilyKind::CompleteBipartite: return "CompleteBipartite";
    case FamilyKind::Lollipop: return "Lollipop";
    case FamilyKind::FGraph: return "FGraph";
    case FamilyKind::CurlyF: return "CurlyF";
    case FamilyKind::CurlyFCirc: return "CurlyFCirc";
    case FamilyKind::C3Star: return "C3Star";
    case FamilyKind::Corona: return "Corona";
    case FamilyKind::H1: return "H1";
    case FamilyKind::H2: return "H2";
    case FamilyKind::H3: return "H3";
    case FamilyKind::H4: return "H4";
    case FamilyKind::H5: return "H5";
    case FamilyKind::ScriptH3: return "ScriptH3";
    case FamilyKind::Theorem39K: return "Theorem39K";
    case FamilyKind::CycleWithTrees: return "CycleWithTrees";
  }
  return "?";
}

std::optional<FamilyKind> kind_from_name(std::string_view name) {
  static const std::map<std::string, FamilyKind, std::less<>> table = {
      {"Path", FamilyKind::Path},
      {"Cycle", FamilyKind::Cycle},
      {"Star", FamilyKind::Star},
      {"StarPlus", FamilyKind::StarPlus},
      {"Complete", FamilyKind::Complete},
      {"CompleteBipartite", FamilyKind::CompleteBipartite},
      {"Lollipop", FamilyKind::Lollipop},
      {"FGraph", FamilyKind::FGraph},
      {"CurlyF", FamilyKind::CurlyF},
      {"CurlyFCirc", FamilyKind::CurlyFCirc},
      {"C3Star", FamilyKind::C3Star},
      {"Corona", FamilyKind::Corona},
      {"H1", FamilyKind::H1},
      {"H2", FamilyKind::H2},
      {"H3", FamilyKind::H3},
      {"H4", FamilyKind::H4},
      {"H5", FamilyKind::H5},
      {"ScriptH3", FamilyKind::ScriptH3},
      {"Theorem39K", FamilyKind::Theorem39K},
      {"CycleWithTrees", FamilyKind::CycleWithTrees},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

FamilyInstance make(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Path: {
      require(spec.n >= 1, "path requires n >= 1");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < spec.n; ++i) edges.emplace_back(i, i + 1);
      LabelMap labels;
      for (int p = 1; p <= spec.n; ++p) labels[vname(p)] = p - 1;
      return {Graph::build(static_cast<int>(spec.n), edges), labels, spec};
    }
    case FamilyKind::Cycle: {
      require(spec.n >= 3, "cycle requires n >= 3");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < spec.n; ++i)
        edges.emplace_back(i, static_cast<int>((i + 1) % spec.n));
      LabelMap labels;
      for (int p = 1; p <= spec.n; ++p) labels[vname(p)] = p - 1;
      return {Graph::build(static_cast<int>(spec.n), edges), labels, spec};
    }
    case FamilyKind::Star: {
      require(spec.n >= 2, "star requires n >= 2");
      std::vector<std::pair<int, int>> edges;
      for (int i = 1; i < spec.n; ++i) edges.emplace_back(0, i);
      return {Graph::build(static_cast<int>(spec.n), edges), {}, spec};
    }
    case FamilyKind::StarPlus: {
      require(spec.n >= 3, "S_n^+ requires n >= 3");
      std::vector<std::pair<int, int>> edges;
      for (int i = 1; i < spec.n; ++i) edges.emplace_back(0, i);
      edges.emplace_back(1, 2);
      return {Graph::build(static_cast<int>(spec.n), edges), {}, spec};
    }
    case FamilyKind::Complete: {
      require(spec.n >= 1, "complete graph requires n >= 1");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j) edges.emplace_back(i, j);
      return {Graph::build(static_cast<int>(spec.n), edges), {}, spec};
    }
    case FamilyKind::CompleteBipartite: {
      require(spec.r >= 1 && spec.s >= 1, "K_{r,s} requires r, s >= 1");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < spec.r; ++i)
        for (int j = 0; j < spec.s; ++j)
          edges.emplace_back(i, static_cast<int>(spec.r) + j);
      return {Graph::build(static_cast<int>(spec.r + spec.s), edges), {}, spec};
    }
    case FamilyKind::Lollipop:
    case FamilyKind::FGraph:
    case FamilyKind::CurlyF:
    case FamilyKind::CurlyFCirc: {
      if (spec.kind == FamilyKind::Lollipop)
        require(spec.attach.empty(), "lollipop takes no pendant list");
      return build_lollipop_family(spec);
    }
    case FamilyKind::C3Star: {
      long k = spec.k, n = spec.n;
      require(k >= 0, "C3Star requires k >= 0");
      require(n >= 3 + k, "C3Star requires n >= k + 3");
      require(n <= Graph::kMaxVertices, "order exceeds 64");
      std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {0, 2}};
      for (int p = 4; p <= 3 + k; ++p) edges.emplace_back(p - 2, p - 1);
      int hub = static_cast<int>(k) + 2;  // v_{3+k}
      for (int i = static_cast<int>(k) + 3; i < n; ++i)
        edges.emplace_back(hub, i);
      LabelMap labels;
      for (int p = 1; p <= n; ++p) labels[vname(p)] = p - 1;
      return {Graph::build(static_cast<int>(n), edges), labels, spec};
    }
    case FamilyKind::Corona: {
      require(spec.base != nullptr, "corona requires a base spec");
      FamilyInstance base = make(*spec.base);
      FamilyInstance out = make_corona(base.graph);
      out.spec = spec;
      return out;
    }
    case FamilyKind::H1:
    case FamilyKind::H2:
    case FamilyKind::H3:
    case FamilyKind::H4:
    case FamilyKind::H5: {
      int variant = 1 + static_cast<int>(spec.kind) -
                    static_cast<int>(FamilyKind::H1);
      return make_h_family(variant, static_cast<int>(spec.eps),
                           static_cast<int>(spec.k), spec.attach,
                           static_cast<int>(spec.n));
    }
    case FamilyKind::ScriptH3:
      return make_script_h3(static_cast<int>(spec.n),
                            static_cast<int>(spec.alpha));
    case FamilyKind::Theorem39K:
      return make_theorem39_k(static_cast<int>(spec.n));
    case FamilyKind::CycleWithTrees:
      return make_cycle_with_trees(static_cast<int>(spec.k), spec.trees,
                                   spec.positions);
  }
  invalid("unknown family kind");
}

FamilyInstance make_h_family(int variant, int eps, int k,
                             std::span<const int> attachments, int n) {
  FamilySpec spec;
  spec.kind = static_cast<FamilyKind>(static_cast<int>(FamilyKind::H1) +
                                      variant - 1);
  spec.eps = eps;
  spec.k = k;
  spec.n = n;
  spec.attach.assign(attachments.begin(), attachments.end());
  require(k >= 0 && k <= eps - 2, "H-family requires 0 <= k <= eps-2");

  if (variant == 1) {
    require(static_cast<int>(attachments.size()) == k,
            "H1 takes k attachment positions");
    return build_h_base(spec, attachments).inst;
  }

  require(attachments.empty(),
          "H2..H5 derive their pendant positions from (eps, k)");
  std::vector<int> pos = h2_positions(eps, k);
  HBuild hb = build_h_base(spec, pos);
  if (variant == 2) return std::move(hb.inst);

  if (variant == 3) {
    // H3^k (s >= 2): relocate the pendant of v_{eps-1-k} to v_{eps-1} and
    // chain all pendants of v_{eps-1} but omega_1 onto omega_1.
    require(k >= 1, "H3 requires k >= 1");
    std::vector<int> omega = hb.pendants_at[eps - 1];
    require(omega.size() >= 2, "H3 requires s >= 2 pendants at v_{eps-1}");
    move_pendant(hb, eps - 1 - k, eps - 1);
    Graph g = hb.inst.graph;
    for (size_t j = 1; j < omega.size(); ++j)
      g = g.delete_edge(eps - 2, omega[j]).add_edge(omega[0], omega[j]);
    hb.inst.graph = std::move(g);
    return std::move(hb.inst);
  }
  if (variant == 4) {
    // H4^{k-1} = H2^k with the pendant of v_{eps-1-k} moved to v_{eps-1}.
    require(k >= 1, "H4 requires k >= 1");
    move_pendant(hb, eps - 1 - k, eps - 1);
    return std::move(hb.inst);
  }
  // H5^{k-2} = H4^{k-1} with the pendant of v_{eps-k} also moved.
  require(variant == 5, "unknown H-family variant");
  require(k >= 2, "H5 requires k >= 2");
  move_pendant(hb, eps - 1 - k, eps - 1);
  move_pendant(hb, eps - k, eps - 1);
  return std::move(hb.inst);
}

FamilyInstance make_script_h3(int n, int alpha) {
  FamilySpec spec;
  spec.kind = FamilyKind::ScriptH3;
  spec.n = n;
  spec.alpha = alpha;
  if (alpha == 0) {
    require(n == 3, "ScriptH3 with alpha = 0 is C_3 (n = 3)");
    FamilySpec c3;
    c3.kind = FamilyKind::Cycle;
    c3.n = 3;
    FamilyInstance inst = make(c3);
    inst.spec = spec;
    return inst;
  }
  require(n >= 4, "ScriptH3 requires n >= 4 when alpha >= 1");
  require(alpha >= 1 && alpha <= n - 3 && 2 * alpha <= n,
          "ScriptH3 requires 1 <= alpha <= min(n-3, n/2)");
  int eps = n - alpha + 1;
  int k = alpha - 1;
  FamilyInstance inst = make_h_family(2, eps, k, {}, n);
  inst.spec = spec;
  // Construction postconditions: unicyclic, girth 3, exactly alpha
  // p-dominators.
  StructuralProfile p = profile(inst.graph);
  if (!is_unicyclic(inst.graph) || p.girth != 3 ||
      set_size(p.p_dominators) != alpha)
    invalid("internal: ScriptH3 postcondition failed");
  return inst;
}

FamilyInstance make_theorem39_k(int n) {
  FamilySpec spec;
  spec.kind = FamilyKind::Theorem39K;
  spec.n = n;
  if (n == 3) {
    FamilySpec c3;
    c3.kind = FamilyKind::Cycle;
    c3.n = 3;
    FamilyInstance inst = make(c3);
    inst.spec = spec;
    return inst;
  }
  require(n >= 5 && n % 2 == 1, "Theorem39K requires odd n >= 5 (or n = 3)");
  require(n <= Graph::kMaxVertices, "order exceeds 64");
  auto wrap = [n](int p) { return (p - 1) % n + 1; };
  int m1 = (n + 1) / 2;  // ceil(n/2)
  int m2 = (n + 3) / 2;  // ceil((n+2)/2)
  int lo = (n - 3) / 2;  // floor((n-2)/2)
  int m4 = (n + 5) / 2;  // ceil((n+4)/2)
  int m8 = wrap((n + 9) / 2);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  Graph g = Graph::build(n, edges);
  g = g.delete_edge(m1 - 1, m2 - 1).add_edge(m1 - 1, lo - 1);
  if (n % 3 == 1) g = g.delete_edge(m2 - 1, m4 - 1).add_edge(m2 - 1, m8 - 1);
  if (!is_unicyclic(g) || profile(g).girth != 3)
    invalid("internal: Theorem39K postcondition failed");
  LabelMap labels;
  for (int p = 1; p <= n; ++p) labels[vname(p)] = p - 1;
  return {std::move(g), std::move(labels), std::move(spec)};
}

FamilyInstance make_cycle_with_trees(int cycle_len,
                                     std::span<const TreeAttachment> trees,
                                     std::span<const int> positions) {
  FamilySpec spec;
  spec.kind = FamilyKind::CycleWithTrees;
  spec.k = cycle_len;
  spec.trees.assign(trees.begin(), trees.end());
  spec.positions.assign(positions.begin(), positions.end());
  require(cycle_len >= 3 && cycle_len % 2 == 1,
          "CycleWithTrees requires odd cycle length >= 3");
  require(trees.size() == positions.size(),
          "one attachment position per tree");
  std::set<int> seen;
  for (int p : positions) {
    require(p >= 0 && p < cycle_len, "attachment position out of range");
    require(seen.insert(p).second, "attachment positions must be distinct");
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < cycle_len; ++i)
    edges.emplace_back(i, (i + 1) % cycle_len);
  Graph g = Graph::build(cycle_len, edges);
  for (size_t t = 0; t < trees.size(); ++t) {
    const auto& [tree, root] = trees[t];
    require(tree.order() >= 2, "attached trees must be nontrivial");
    require(is_connected(tree) && tree.size() == tree.order() - 1,
            "attachments must be trees");
    g = coalesce(g, positions[t], tree, root).graph;
  }
  if (!is_unicyclic(g)) invalid("internal: CycleWithTrees not unicyclic");
  LabelMap labels;
  for (int p = 1; p <= cycle_len; ++p) labels[vname(p)] = p - 1;
  return {std::move(g), std::move(labels), std::move(spec)};
}

FamilyInstance make_corona(const Graph& base) {
  int h = base.order();
  if (2 * h > Graph::kMaxVertices)
    invalid("corona order exceeds 64");
  std::vector<std::pair<int, int>> edges = base.edges();
  for (int i = 0; i < h; ++i) edges.emplace_back(i, h + i);
  FamilySpec spec;
  spec.kind = FamilyKind::Corona;
  return {Graph::build(2 * h, edges), {}, spec};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json spec_to_json(const FamilySpec& s) {
  json params = json::object();
  auto put = [&](const char* key, long v) {
    if (v >= 0) params[key] = v;
  };
  put("n", s.n);
  put("g", s.g);
  put("l", s.l);
  put("eps", s.eps);
  put("k", s.k);
  put("alpha", s.alpha);
  put("r", s.r);
  put("s", s.s);
  if (!s.attach.empty()) params["attach"] = s.attach;
  if (!s.positions.empty()) params["positions"] = s.positions;
  if (!s.trees.empty()) {
    json arr = json::array();
    for (const auto& t : s.trees)
      arr.push_back({{"g6", t.tree.to_graph6()}, {"root", t.root}});
    params["trees"] = arr;
  }
  if (s.base) params["base"] = spec_to_json(*s.base);
  return json{{"kind", kind_name(s.kind)}, {"params", params}};
}

FamilySpec spec_from_json(const json& j) {
  FamilySpec s;
  auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) invalid("unknown family kind " + j.at("kind").dump());
  s.kind = *kind;
  const json& params = j.value("params", json::object());
  auto get = [&](const char* key, long& out) {
    if (params.contains(key)) out = params.at(key).get<long>();
  };
  get("n", s.n);
  get("g", s.g);
  get("l", s.l);
  get("eps", s.eps);
  get("k", s.k);
  get("alpha", s.alpha);
  get("r", s.r);
  get("s", s.s);
  if (params.contains("attach"))
    s.attach = params.at("attach").get<std::vector<int>>();
  if (params.contains("positions"))
    s.positions = params.at("positions").get<std::vector<int>>();
  if (params.contains("trees"))
    for (const json& t : params.at("trees"))
      s.trees.push_back({Graph::from_graph6(t.at("g6").get<std::string>()),
                         t.at("root").get<int>()});
  if (params.contains("base"))
    s.base = std::make_shared<FamilySpec>(spec_from_json(params.at("base")));
  return s;
}

}  // namespace

std::string to_json(const FamilySpec& spec) { return spec_to_json(spec).dump(); }

FamilySpec family_spec_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) invalid("family spec is not valid JSON");
  return spec_from_json(j);
}

// ---------------------------------------------------------------------------
// CurlyF shape

int CurlyFShape::vertex(int paper_pos) const {
  if (paper_pos >= 1 && paper_pos <= g) return cycle[static_cast<size_t>(paper_pos - 1)];
  if (paper_pos > g && paper_pos <= g + l)
    return path[static_cast<size_t>(paper_pos - g - 1)];
  throw Error(ErrorCode::OutOfRange, "no vertex at position " +
                                         std::to_string(paper_pos));
}

namespace {

CurlyFShape shape_from_layout(int g, int l, std::span<const int> attach) {
  CurlyFShape shape;
  shape.g = g;
  shape.l = l;
  for (int i = 0; i < g; ++i) shape.cycle.push_back(i);
  for (int i = 0; i < l; ++i) shape.path.push_back(g + i);
  int next = g + l;
  for (int target : attach) shape.pendants[target].push_back(next++);
  // The path end v_{g+l} is itself a pendant of v_{g+l-1}.
  shape.pendants[g + l - 1].push_back(g + l - 1);
  std::set<int> rset;
  for (auto& [pos, ps] : shape.pendants)
    if (pos <= g) rset.insert(pos);
  shape.r.assign(rset.begin(), rset.end());
  for (int s = 0; s < l; ++s)
    if (s == l - 1 || shape.pendants.contains(g + s)) {
      shape.s = s;
      break;
    }
  return shape;
}

}  // namespace

CurlyFShape curly_f_shape(const FamilyInstance& inst) {
  const FamilySpec& s = inst.spec;
  switch (s.kind) {
    case FamilyKind::Lollipop:
    case FamilyKind::FGraph:
    case FamilyKind::CurlyF:
    case FamilyKind::CurlyFCirc:
      return shape_from_layout(static_cast<int>(s.g), static_cast<int>(s.l),
                               s.attach);
    default:
      throw Error(ErrorCode::PreconditionViolated,
                  "curly_f_shape needs a lollipop-family instance");
  }
}

std::optional<CurlyFShape> recognize_curly_f(const Graph& g, bool strict) {
  if (!is_unicyclic(g)) return std::nullopt;
  std::vector<int> cyc = unicycle(g);
  int girth = static_cast<int>(cyc.size());
  int n = g.order();
  if (n == girth) return std::nullopt;  // bare cycle, l >= 1 impossible
  VertexSet on_cycle = 0;
  for (int v : cyc) on_cycle |= VertexSet{1} << v;

  // Each cycle vertex owns a hanging tree. At most one of those trees may
  // have depth >= 2 (it hosts the pendant path); every other tree is a set
  // of pendant leaves.
  int host = -1;  // index into cyc
  for (size_t i = 0; i < cyc.size(); ++i) {
    bool deep = false;
    for (int child : set_to_vector(g.neighbors(cyc[i]) & ~on_cycle))
      if (g.degree(child) > 1) deep = true;
    if (deep) {
      if (host >= 0) return std::nullopt;
      host = static_cast<int>(i);
    }
  }
  if (host < 0) {
    // All branches are single pendants: l = 1; any pendant-bearing cycle
    // vertex can host P. A vertex with several pendants must be the host
    // (only v_{g+l-1} may carry more than one).
    int best_count = 0;
    for (size_t i = 0; i < cyc.size(); ++i) {
      int count = std::popcount(g.neighbors(cyc[i]) & ~on_cycle);
      if (count > best_count) {
        best_count = count;
        host = static_cast<int>(i);
      }
    }
    if (host < 0) return std::nullopt;
  }

  // Walk the spine from the host: the chain of non-leaf children must be
  // unique, every off-spine vertex a leaf hanging on the spine.
  std::vector<int> spine{cyc[static_cast<size_t>(host)]};
  std::map<int, std::vector<int>> hang;  // spine/cycle vertex -> leaves
  {
    int cur = spine[0];
    VertexSet seen = on_cycle;
    for (;;) {
      seen |= VertexSet{1} << cur;
      std::vector<int> nonleaf;
      for (int c : set_to_vector(g.neighbors(cur) & ~seen)) {
        if (g.degree(c) > 1)
          nonleaf.push_back(c);
        else
          hang[cur].push_back(c);
      }
      if (nonleaf.size() > 1) return std::nullopt;
      if (nonleaf.empty()) break;
      cur = nonleaf[0];
      spine.push_back(cur);
    }
    // The path end v_{g+l} is one leaf of the last spine vertex.
    auto& leaves = hang[cur];
    if (leaves.empty()) return std::nullopt;
    spine.push_back(leaves.back());
    leaves.pop_back();
  }
  int l = static_cast<int>(spine.size()) - 1;

  // Leaves on non-host cycle vertices.
  for (size_t i = 0; i < cyc.size(); ++i) {
    if (static_cast<int>(i) == host) continue;
    for (int c : set_to_vector(g.neighbors(cyc[i]) & ~on_cycle))
      hang[cyc[i]].push_back(c);
  }

  CurlyFShape shape;
  shape.g = girth;
  shape.l = l;
  // Rotate the cycle so the host becomes v_g.
  for (int i = 1; i <= girth; ++i)
    shape.cycle.push_back(cyc[static_cast<size_t>((host + i) % girth)]);
  shape.path.assign(spine.begin() + 1, spine.end());

  for (int pos = 1; pos <= girth + l; ++pos) {
    int v = shape.vertex(pos);
    auto it = hang.find(v);
    if (it == hang.end() || it->second.empty()) continue;
    shape.pendants[pos] = it->second;
  }
  // v_{g+l} counts as the pendant of v_{g+l-1}.
  shape.pendants[girth + l - 1].push_back(spine.back());

  if (strict) {
    for (auto& [pos, ps] : shape.pendants)
      if (pos != girth + l - 1 && ps.size() != 1) return std::nullopt;
  }
  std::set<int> rset;
  for (auto& [pos, ps] : shape.pendants)
    if (pos <= girth) rset.insert(pos);
  shape.r.assign(rset.begin(), rset.end());
  for (int s = 0; s < l; ++s)
    if (s == l - 1 || shape.pendants.contains(girth + s)) {
      shape.s = s;
      break;
    }
  return shape;
}

}  // namespace qdom::families
