#pragma once

// Whitehead graphs in the standard meridian model: one disc per factor
// (per free letter for the free part). Cutting along the discs leaves a
// ball, which sees both sides D+ and D- of every disc, and one piece per
// surface factor, which sees a single interior copy of that factor's disc.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "sepstab/group.hpp"
#include "sepstab/pingpong.hpp"
#include "sepstab/representation.hpp"

namespace sepstab {

enum class DiscSide { Plus, Minus, Interior };

struct DiscVertex {
  std::size_t disc = 0;  // factor id
  DiscSide side = DiscSide::Plus;
  std::string name;

  friend bool operator==(const DiscVertex& a, const DiscVertex& b) { return a.disc == b.disc && a.side == b.side; }
};

/// Stored once per incidence; the reverse edge (to, from, label^-1) is
/// implied and produced by directed_edges().
struct LabeledEdge {
  std::size_t from = 0;  // vertex index within the component
  std::size_t to = 0;
  Word label;            // empty on the ball component
};

struct WhiteheadComponent {
  std::size_t id = 0;
  bool surface = false;
  std::size_t factor = 0;  // meaningful for surface components
  std::string name;
  std::vector<DiscVertex> vertices;
  std::vector<LabeledEdge> edges;

  std::size_t vertex_index(std::size_t disc, DiscSide side) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i].disc == disc && vertices[i].side == side) return i;
    }
    throw Error(ErrorCode::InvalidParameter, "no such disc vertex");
  }

  std::vector<LabeledEdge> directed_edges() const {
    std::vector<LabeledEdge> out;
    out.reserve(2 * edges.size());
    for (const LabeledEdge& e : edges) {
      out.push_back(e);
      out.push_back({e.to, e.from, inverse(e.label)});
    }
    return out;
  }
};

struct WhiteheadGraph {
  GroupSpec group;
  std::vector<WhiteheadComponent> components;

  const WhiteheadComponent& ball() const { return components.front(); }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& c : components) n += c.edges.size();
    return n;
  }
};

/// Edge identity used to compare graphs: endpoint names ordered, label
/// Dehn-reduced and oriented to match.
struct CanonicalEdge {
  std::string from;
  std::string to;
  std::string label;

  friend auto operator<=>(const CanonicalEdge&, const CanonicalEdge&) = default;
};

namespace detail {

inline std::string disc_name(const GroupSpec& g, const FactorSpec& f) {
  if (f.is_surface()) return "D" + std::to_string(f.ordinal);
  return g.spell(Letter(f.first_generator, false));
}

inline Word reduced_label(const GroupSpec& g, const WhiteheadComponent& c, const Word& label) {
  if (!c.surface || label.empty()) return label;
  return dehn_reduce(label, g, c.factor);
}

}  // namespace detail

inline std::vector<CanonicalEdge> canonical_edges(const WhiteheadGraph& wh, const WhiteheadComponent& c) {
  std::vector<CanonicalEdge> out;
  for (const LabeledEdge& e : c.edges) {
    Word fwd = detail::reduced_label(wh.group, c, e.label);
    Word bwd = detail::reduced_label(wh.group, c, inverse(e.label));
    CanonicalEdge a{c.vertices[e.from].name, c.vertices[e.to].name, wh.group.spell(fwd)};
    CanonicalEdge b{c.vertices[e.to].name, c.vertices[e.from].name, wh.group.spell(bwd)};
    if (fwd.empty()) a.label = b.label = "";
    out.push_back(std::min(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Empty graph with the vertex layout of the standard meridian model.
inline WhiteheadGraph standard_meridian_model(const GroupSpec& g) {
  WhiteheadGraph wh{g, {}};
  WhiteheadComponent ball;
  ball.id = 0;
  ball.name = "ball";
  for (const FactorSpec& f : g.factors()) {
    std::string n = detail::disc_name(g, f);
    ball.vertices.push_back({f.id, DiscSide::Plus, n + "+"});
    ball.vertices.push_back({f.id, DiscSide::Minus, n + "-"});
  }
  wh.components.push_back(std::move(ball));
  for (const FactorSpec& f : g.factors()) {
    if (!f.is_surface()) continue;
    WhiteheadComponent piece;
    piece.id = wh.components.size();
    piece.surface = true;
    piece.factor = f.id;
    piece.name = "surface" + std::to_string(f.ordinal);
    piece.vertices.push_back({f.id, DiscSide::Interior, detail::disc_name(g, f)});
    wh.components.push_back(std::move(piece));
  }
  return wh;
}

inline std::size_t surface_component_index(const WhiteheadGraph& wh, std::size_t factor) {
  for (std::size_t i = 1; i < wh.components.size(); ++i) {
    if (wh.components[i].factor == factor) return i;
  }
  throw Error(ErrorCode::InvalidParameter, "factor has no surface component");
}

/// Graph of the conjugacy class of w, built from its primitive root so that
/// w and every power of it share a graph.
inline WhiteheadGraph whitehead_graph_combinatorial(const CyclicNormalForm& w, const GroupSpec& g) {
  if (!is_cyclic_normal_form(w, g)) {
    throw Error(ErrorCode::NotCyclicallyReduced, "whitehead graphs need a cyclic normal form");
  }
  const CyclicNormalForm root = primitive_root(w);
  WhiteheadGraph wh = standard_meridian_model(g);
  WhiteheadComponent& ball = wh.components.front();

  // A unit is a free letter or a whole surface syllable; the path leaves a
  // unit through `out` and enters the next one through `in`.
  struct Unit {
    std::size_t out;
    std::size_t in;
  };
  std::vector<Unit> units;
  for (const Syllable& s : root.syllables) {
    const FactorSpec& f = g.factor(s.factor);
    if (f.is_surface()) {
      units.push_back({ball.vertex_index(f.id, DiscSide::Plus), ball.vertex_index(f.id, DiscSide::Minus)});
    } else {
      for (Letter l : s.letters) {
        DiscSide out = l.inverted() ? DiscSide::Minus : DiscSide::Plus;
        DiscSide in = l.inverted() ? DiscSide::Plus : DiscSide::Minus;
        units.push_back({ball.vertex_index(f.id, out), ball.vertex_index(f.id, in)});
      }
    }
  }
  const bool lone_surface = root.syllables.size() == 1 && g.factor(root.syllables.front().factor).is_surface();
  if (!lone_surface) {
    for (std::size_t i = 0; i < units.size(); ++i) {
      ball.edges.push_back({units[i].out, units[(i + 1) % units.size()].in, {}});
    }
    for (const Syllable& s : root.syllables) {
      if (!g.factor(s.factor).is_surface()) continue;
      WhiteheadComponent& piece = wh.components[surface_component_index(wh, s.factor)];
      piece.edges.push_back({0, 0, s.letters});
    }
  }
  return wh;
}

// ---------------------------------------------------------------------------
// Limit-set sampling.

/// Endpoints of an axis: repelling then attracting fixed point.
struct AxisPair {
  RiemannPoint repelling;
  RiemannPoint attracting;
};

/// Axes of h g h^-1 over all freely reduced h with |h| <= depth; only
/// loxodromic conjugates contribute.
inline std::vector<AxisPair> sample_axes(const Representation& rho, std::span<const Letter> g, std::size_t depth) {
  const GroupSpec& G = rho.group();
  const MoebiusMap m = rho.evaluate(g);
  if (classify(m) != MapClass::Loxodromic) return {};
  const FixedPoints fp = fixed_points(m);
  std::vector<AxisPair> out;
  Word h;
  std::function<void(const MoebiusMap&)> visit = [&](const MoebiusMap& hm) {
    out.push_back({hm(*fp.repelling), hm(*fp.attracting)});
    if (h.size() == depth) return;
    for (std::uint32_t code = 0; code < G.letter_count(); ++code) {
      Letter l = Letter::from_code(code);
      if (!h.empty() && h.back() == l.inverse()) continue;
      h.push_back(l);
      visit(hm * rho.image(l));
      h.pop_back();
    }
  };
  visit(MoebiusMap::identity());
  return out;
}

namespace detail {

/// Base region containing p (ping-pong set index) and its ball vertex, or
/// nullopt outside all ping-pong sets. `attracting` selects the side for
/// surface factors.
struct BaseRegion {
  std::size_t region;
  std::size_t vertex;
};

inline std::optional<BaseRegion> base_region(const WhiteheadComponent& ball, const GroupSpec& g,
                                             const PingPongDisks& disks, const RiemannPoint& p, bool attracting) {
  for (const FactorSpec& f : g.factors()) {
    if (f.is_surface()) {
      const SurfaceHome* home = disks.surface_home(f.id);
      if (!home->home.contains(p)) {
        return BaseRegion{2 * f.id, ball.vertex_index(f.id, attracting ? DiscSide::Minus : DiscSide::Plus)};
      }
    } else {
      Letter t(f.first_generator, false);
      if (disks.letter_region(t)->contains(p)) return BaseRegion{2 * f.id, ball.vertex_index(f.id, DiscSide::Minus)};
      if (disks.letter_region(t.inverse())->contains(p)) {
        return BaseRegion{2 * f.id + 1, ball.vertex_index(f.id, DiscSide::Plus)};
      }
    }
  }
  return std::nullopt;
}

inline bool same_axis(const AxisPair& a, const AxisPair& b) {
  constexpr double tol = 1e-9;
  return near(a.repelling, b.repelling, tol) && near(a.attracting, b.attracting, tol);
}

}  // namespace detail

/// Edges (U, gU) read off from where sampled axis endpoints land among the
/// ping-pong regions. Surface elements g are searched up to length `depth`.
inline WhiteheadGraph whitehead_graph_sampled(const Representation& rho, const PingPongDisks& disks,
                                              std::span<const AxisPair> mu, std::size_t depth) {
  const GroupSpec& g = rho.group();
  PingPongCertificate cert = ping_pong_verify(rho, disks);
  if (!cert) {
    std::string why = cert.failures.empty() ? "" : cert.failures.front();
    throw Error(ErrorCode::UnverifiedDisks, "ping-pong certificate failed: " + why);
  }
  WhiteheadGraph wh = standard_meridian_model(g);

  // Nontrivial Dehn-reduced surface elements of length <= depth, shortlex.
  std::vector<std::vector<std::pair<Word, MoebiusMap>>> surface_elements(g.factors().size());
  for (const FactorSpec& f : g.factors()) {
    if (!f.is_surface()) continue;
    std::vector<Word> seen;
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 1; len <= depth; ++len) {
      std::vector<Word> next;
      for (const Word& w : layer) {
        for (std::size_t k = 0; k < 2 * f.generator_count; ++k) {
          Letter l = Letter::from_code(static_cast<std::uint32_t>(2 * f.first_generator + k));
          if (!w.empty() && w.back() == l.inverse()) continue;
          Word x = w;
          x.push_back(l);
          next.push_back(std::move(x));
        }
      }
      for (const Word& w : next) {
        Word red = dehn_reduce(w, g, f.id);
        if (red.empty() || std::find(seen.begin(), seen.end(), red) != seen.end()) continue;
        seen.push_back(red);
      }
      layer = std::move(next);
    }
    std::sort(seen.begin(), seen.end(), [](const Word& a, const Word& b) { return shortlex_less(a, b); });
    for (Word& w : seen) {
      MoebiusMap m = rho.evaluate(w);
      surface_elements[f.id].emplace_back(std::move(w), m);
    }
  }

  std::vector<AxisPair> used;
  for (const AxisPair& axis : mu) {
    if (std::any_of(used.begin(), used.end(), [&](const AxisPair& u) { return detail::same_axis(u, axis); })) continue;
    bool produced = false;

    WhiteheadComponent& ball = wh.components.front();
    auto from = detail::base_region(ball, g, disks, axis.repelling, false);
    auto to = detail::base_region(ball, g, disks, axis.attracting, true);
    if (from && to && from->region != to->region) {
      ball.edges.push_back({from->vertex, to->vertex, {}});
      produced = true;
    }

    for (const FactorSpec& f : g.factors()) {
      if (!f.is_surface()) continue;
      const RoundRegion& home = disks.surface_home(f.id)->home;
      if (!home.contains(axis.repelling)) continue;
      for (const auto& [word, m] : surface_elements[f.id]) {
        if (home.contains(m.inverse()(axis.attracting))) {
          wh.components[surface_component_index(wh, f.id)].edges.push_back({0, 0, word});
          produced = true;
          break;
        }
      }
    }
    if (produced) used.push_back(axis);
  }
  return wh;
}

// ---------------------------------------------------------------------------
// Connectivity analysis.

struct ComponentAnalysis {
  bool strongly_connected = false;
  std::vector<std::size_t> witness_cycle;  // vertex indices, first == last
  Word witness_label;                       // surface components only
  std::vector<std::size_t> strong_cutpoints;
};

namespace detail {

struct SubgraphView {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;  // indices into component.edges
};

// Spanning-forest search over a subgraph; returns true when connected and
// fills a nontrivial cycle label (surface) or any cycle (ball) if one exists.
inline bool analyse_subgraph(const GroupSpec& g, const WhiteheadComponent& c, const SubgraphView& sub,
                             bool& has_good_cycle, std::vector<std::size_t>& cycle, Word& label) {
  has_good_cycle = false;
  cycle.clear();
  label.clear();
  if (sub.vertices.empty()) return true;
  const std::size_t n = c.vertices.size();
  std::vector<int> seen(n, 0);
  std::vector<Word> path_label(n);
  std::vector<std::size_t> parent(n, n);
  std::vector<bool> tree_edge(c.edges.size(), false);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (edge, other)
  for (std::size_t e : sub.edges) {
    adj[c.edges[e].from].push_back({e, c.edges[e].to});
    if (c.edges[e].from != c.edges[e].to) adj[c.edges[e].to].push_back({e, c.edges[e].from});
  }
  std::vector<std::size_t> stack{sub.vertices.front()};
  seen[sub.vertices.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto [e, w] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++reached;
      parent[w] = v;
      tree_edge[e] = true;
      const LabeledEdge& E = c.edges[e];
      path_label[w] = concat(path_label[v], E.from == v ? E.label : inverse(E.label));
      stack.push_back(w);
    }
  }
  for (std::size_t e : sub.edges) {
    if (tree_edge[e]) continue;
    const LabeledEdge& E = c.edges[e];
    Word loop = free_reduce(concat(concat(path_label[E.from], E.label), inverse(path_label[E.to])));
    bool good = !c.surface || !dehn_reduce(loop, g, c.factor).empty();
    if (!good || has_good_cycle) continue;
    has_good_cycle = true;
    label = c.surface ? dehn_reduce(loop, g, c.factor) : Word{};
    // Cycle: root -> from, edge, to -> root.
    auto up = [&](std::size_t v) {
      std::vector<std::size_t> p;
      for (; v != n; v = parent[v]) p.push_back(v);
      return p;
    };
    std::vector<std::size_t> a = up(E.from), b = up(E.to);
    while (a.size() >= 2 && b.size() >= 2 && a[a.size() - 2] == b[b.size() - 2]) {
      a.pop_back();
      b.pop_back();
    }
    cycle.assign(a.begin(), a.end());
    cycle.insert(cycle.end(), b.rbegin() + 1, b.rend());
    cycle.push_back(E.from);
  }
  return reached == sub.vertices.size();
}

inline SubgraphView whole(const WhiteheadComponent& c) {
  SubgraphView s;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) s.vertices.push_back(i);
  for (std::size_t i = 0; i < c.edges.size(); ++i) s.edges.push_back(i);
  return s;
}

inline bool strongly_connected(const GroupSpec& g, const WhiteheadComponent& c, const SubgraphView& sub,
                               std::vector<std::size_t>* cycle = nullptr, Word* label = nullptr) {
  bool good = false;
  std::vector<std::size_t> cyc;
  Word lab;
  bool connected = analyse_subgraph(g, c, sub, good, cyc, lab);
  if (cycle) *cycle = cyc;
  if (label) *label = lab;
  return c.surface ? connected && good : connected;
}

// The pieces hanging off v: one per connected component of the graph with v
// removed (edges at v attached to the piece they enter), and one per loop
// at v. Each piece includes v.
inline std::vector<SubgraphView> pieces_at(const WhiteheadComponent& c, std::size_t v) {
  const std::size_t n = c.vertices.size();
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const LabeledEdge& e : c.edges) {
    if (e.from == v || e.to == v) continue;
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<SubgraphView> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == v || label[s] != n) continue;
    std::vector<std::size_t> stack{s};
    label[s] = next;
    SubgraphView piece;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      piece.vertices.push_back(x);
      for (std::size_t y : adj[x]) {
        if (label[y] == n) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    piece.vertices.push_back(v);
    out.push_back(std::move(piece));
    ++next;
  }
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const LabeledEdge& e = c.edges[i];
    if (e.from == v && e.to == v) {
      SubgraphView loop;
      loop.vertices.push_back(v);
      loop.edges.push_back(i);
      out.push_back(std::move(loop));
    } else {
      std::size_t other = e.from == v ? e.to : e.from;
      out[label[other]].edges.push_back(i);
    }
  }
  // A piece that is only an isolated vertex does not touch v.
  std::vector<SubgraphView> attached;
  for (SubgraphView& p : out) {
    if (!p.edges.empty()) attached.push_back(std::move(p));
  }
  return attached;
}

}  // namespace detail

/// Strong connectivity and strong cutpoints of one component. On the ball
/// component strong connectivity is plain connectivity and strong cutpoints
/// are cut vertices, plus both ends of a component made of a single edge.
inline ComponentAnalysis analyse_component(const GroupSpec& g, const WhiteheadComponent& c) {
  ComponentAnalysis out;
  detail::SubgraphView all = detail::whole(c);
  out.strongly_connected = detail::strongly_connected(g, c, all, &out.witness_cycle, &out.witness_label);
  if (!out.strongly_connected) {
    out.witness_cycle.clear();
    out.witness_label.clear();
  }
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    std::vector<detail::SubgraphView> pieces = detail::pieces_at(c, v);
    bool cut = false;
    if (pieces.size() >= 2) {
      for (const auto& p : pieces) {
        if (!detail::strongly_connected(g, c, p)) cut = true;
      }
      if (!c.surface) cut = true;
    } else if (!c.surface && pieces.size() == 1) {
      // A lone non-loop edge whose other end has no further edges.
      const auto& p = pieces.front();
      if (p.vertices.size() == 2 && p.edges.size() == 1 && c.edges[p.edges.front()].from != c.edges[p.edges.front()].to) cut = true;
    }
    if (cut) out.strong_cutpoints.push_back(v);
  }
  return out;
}

struct GraphAnalysis {
  std::vector<ComponentAnalysis> components;

  bool all_strongly_connected() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.strongly_connected; });
  }
  bool has_strong_cutpoint() const {
    return std::any_of(components.begin(), components.end(), [](const auto& c) { return !c.strong_cutpoints.empty(); });
  }
};

inline GraphAnalysis analyse(const WhiteheadGraph& wh) {
  GraphAnalysis out;
  for (const auto& c : wh.components) out.components.push_back(analyse_component(wh.group, c));
  return out;
}

inline std::vector<bool> is_strongly_connected(const WhiteheadGraph& wh) {
  std::vector<bool> out;
  for (const auto& c : wh.components) out.push_back(analyse_component(wh.group, c).strongly_connected);
  return out;
}

inline std::vector<std::vector<DiscVertex>> strong_cutpoints(const WhiteheadGraph& wh) {
  std::vector<std::vector<DiscVertex>> out;
  for (const auto& c : wh.components) {
    std::vector<DiscVertex> cuts;
    for (std::size_t v : analyse_component(wh.group, c).strong_cutpoints) cuts.push_back(c.vertices[v]);
    out.push_back(std::move(cuts));
  }
  return out;
}

/// Strongly connected in every component with no strong cutpoint: by Otal's
/// criterion such an element is not separable.
inline bool certifies_nonseparable(const WhiteheadGraph& wh) {
  GraphAnalysis a = analyse(wh);
  return a.all_strongly_connected() && !a.has_strong_cutpoint();
}

}  // namespace sepstab
