#include "twsusp/plumbing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "twsusp/error.hpp"

namespace twsusp {

std::size_t PlumbingGraph::add_bundle(const Manifold& base, const EulerClass& euler) {
  nodes_.push_back(DiscBundleNode{base, euler});
  return nodes_.size() - 1;
}

std::size_t PlumbingGraph::add_trivial(long rank) {
  if (rank < 1) throw Error(ErrorKind::Precondition, "disc rank must be positive");
  nodes_.push_back(TrivialDiscNode{rank});
  return nodes_.size() - 1;
}

void PlumbingGraph::add_edge(std::size_t a, std::size_t b, bool positive) {
  if (a >= nodes_.size() || b >= nodes_.size()) throw Error(ErrorKind::Precondition, "edge endpoint out of range");
  if (a == b) throw Error(ErrorKind::Precondition, "edge endpoints must be distinct");
  edges_.push_back({a, b, positive});
}

std::vector<std::vector<std::size_t>> PlumbingGraph::components() const {
  std::vector<std::size_t> parent(nodes_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : edges_) parent[find(e.a)] = find(e.b);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < nodes_.size(); ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool is_bundle(const PlumbingNode& n) { return std::holds_alternative<DiscBundleNode>(n); }

std::string node_label(const PlumbingNode& n) {
  if (const auto* b = std::get_if<DiscBundleNode>(&n)) return "B[" + b->euler.to_string() + "|" + b->base.to_string() + "]";
  return "T" + std::to_string(std::get<TrivialDiscNode>(n).rank);
}

struct Adjacency {
  // neighbour, sign
  std::vector<std::vector<std::pair<std::size_t, bool>>> out;

  explicit Adjacency(const PlumbingGraph& g) : out(g.size()) {
    for (const auto& e : g.edges()) {
      out[e.a].push_back({e.b, e.positive});
      out[e.b].push_back({e.a, e.positive});
    }
  }
};

bool is_tree(const PlumbingGraph& g, const std::vector<std::size_t>& comp) {
  std::size_t inside = 0;
  for (const auto& e : g.edges())
    if (std::binary_search(comp.begin(), comp.end(), e.a)) ++inside;
  return inside + 1 == comp.size();
}

// AHU encoding of the tree rooted at v.
std::string rooted_code(const PlumbingGraph& g, const Adjacency& adj, std::size_t v, std::size_t parent) {
  std::vector<std::string> kids;
  for (const auto& [w, sign] : adj.out[v])
    if (w != parent) kids.push_back(std::string(sign ? "+" : "-") + rooted_code(g, adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string code = "(" + node_label(g.nodes()[v]);
  for (const auto& k : kids) code += k;
  return code + ")";
}

std::vector<std::size_t> tree_centers(const Adjacency& adj, const std::vector<std::size_t>& comp) {
  std::map<std::size_t, std::size_t> degree;
  for (std::size_t v : comp) degree[v] = adj.out[v].size();
  std::vector<std::size_t> layer, remaining = comp;
  while (remaining.size() > 2) {
    layer.clear();
    for (std::size_t v : remaining)
      if (degree[v] <= 1) layer.push_back(v);
    for (std::size_t v : layer)
      for (const auto& [w, sign] : adj.out[v]) --degree[w];
    std::vector<std::size_t> next;
    for (std::size_t v : remaining)
      if (std::find(layer.begin(), layer.end(), v) == layer.end()) next.push_back(v);
    remaining = std::move(next);
  }
  return remaining;
}

std::string tree_code(const PlumbingGraph& g, const Adjacency& adj, const std::vector<std::size_t>& comp) {
  std::string best;
  for (std::size_t c : tree_centers(adj, comp)) {
    std::string code = rooted_code(g, adj, c, static_cast<std::size_t>(-1));
    if (best.empty() || code < best) best = code;
  }
  return best;
}

// Lexicographically least labelled adjacency over all orderings.
std::string brute_force_code(const PlumbingGraph& g, const std::vector<std::size_t>& comp) {
  constexpr std::size_t kMaxNodes = 9;
  if (comp.size() > kMaxNodes)
    throw Error(ErrorKind::Unsupported, "canonical form of cyclic components is limited to 9 nodes");
  std::map<std::pair<std::size_t, std::size_t>, std::string> signs;
  for (const auto& e : g.edges()) {
    signs[{e.a, e.b}] += e.positive ? '+' : '-';
    signs[{e.b, e.a}] += e.positive ? '+' : '-';
  }
  for (auto& [k, s] : signs) std::sort(s.begin(), s.end());
  std::vector<std::size_t> order = comp;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return node_label(g.nodes()[x]) < node_label(g.nodes()[y]);
  });
  std::vector<std::string> labels;
  for (std::size_t v : order) labels.push_back(node_label(g.nodes()[v]));
  std::string best;
  std::vector<std::size_t> perm = order;
  std::sort(perm.begin(), perm.end());
  do {
    bool sorted = true;
    for (std::size_t i = 0; i < perm.size() && sorted; ++i) sorted = node_label(g.nodes()[perm[i]]) == labels[i];
    if (!sorted) continue;
    std::string code = "{";
    for (const auto& l : labels) code += l + ";";
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        auto it = signs.find({perm[i], perm[j]});
        code += (it == signs.end() ? "." : it->second) + ",";
      }
    code += "}";
    if (best.empty() || code < best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::string PlumbingGraph::canonical_form() const {
  Adjacency adj(*this);
  std::vector<std::string> codes;
  for (const auto& comp : components())
    codes.push_back(is_tree(*this, comp) ? tree_code(*this, adj, comp) : brute_force_code(*this, comp));
  std::sort(codes.begin(), codes.end());
  std::string out;
  for (const auto& c : codes) out += c;
  return out;
}

std::string PlumbingGraph::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    os << "node " << i << " ";
    if (const auto* b = std::get_if<DiscBundleNode>(&nodes_[i])) {
      os << "bundle " << b->euler.to_string() << " " << b->base.to_string();
    } else {
      os << "trivial " << std::get<TrivialDiscNode>(nodes_[i]).rank;
    }
    os << "\n";
  }
  for (const auto& e : edges_) os << "edge " << e.a << " " << e.b << " " << (e.positive ? "+" : "-") << "\n";
  return os.str();
}

bool isomorphic(const PlumbingGraph& a, const PlumbingGraph& b) {
  return a.size() == b.size() && a.edges().size() == b.edges().size() && a.canonical_form() == b.canonical_form();
}

namespace {

// Edge indices of a matching that covers every bundle node of the component,
// using only positive bundle-trivial edges; nullopt when none exists.
std::optional<std::vector<std::size_t>> saturating_matching(const PlumbingGraph& g,
                                                            const std::vector<std::size_t>& comp) {
  const auto& nodes = g.nodes();
  std::map<std::size_t, std::vector<std::size_t>> incident;  // bundle node -> edge ids
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    if (!std::binary_search(comp.begin(), comp.end(), e.a)) continue;
    if (!e.positive || is_bundle(nodes[e.a]) == is_bundle(nodes[e.b])) return std::nullopt;
    incident[is_bundle(nodes[e.a]) ? e.a : e.b].push_back(i);
  }
  std::map<std::size_t, std::size_t> trivial_match;  // trivial node -> edge id
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t b, std::vector<bool>& seen) {
    for (std::size_t ei : incident[b]) {
      const auto& e = g.edges()[ei];
      const std::size_t t = e.a == b ? e.b : e.a;
      if (seen[t]) continue;
      seen[t] = true;
      auto it = trivial_match.find(t);
      if (it == trivial_match.end()) {
        trivial_match[t] = ei;
        return true;
      }
      const auto& other = g.edges()[it->second];
      const std::size_t rival = other.a == t ? other.b : other.a;
      if (augment(rival, seen)) {
        trivial_match[t] = ei;
        return true;
      }
    }
    return false;
  };
  for (std::size_t v : comp) {
    if (!is_bundle(nodes[v])) continue;
    std::vector<bool> seen(nodes.size(), false);
    if (!augment(v, seen)) return std::nullopt;
  }
  std::vector<std::size_t> kept;
  for (const auto& [t, ei] : trivial_match) kept.push_back(ei);
  return kept;
}

}  // namespace

PlumbingGraph reduce(const PlumbingGraph& g) {
  std::vector<bool> keep(g.edges().size(), true);
  for (const auto& comp : g.components()) {
    if (!is_tree(g, comp)) continue;
    auto matching = saturating_matching(g, comp);
    if (!matching) continue;
    for (std::size_t i = 0; i < g.edges().size(); ++i)
      if (std::binary_search(comp.begin(), comp.end(), g.edges()[i].a)) keep[i] = false;
    for (std::size_t ei : *matching) keep[ei] = true;
  }
  PlumbingGraph out;
  for (const auto& n : g.nodes()) {
    if (const auto* b = std::get_if<DiscBundleNode>(&n)) {
      out.add_bundle(b->base, b->euler);
    } else {
      out.add_trivial(std::get<TrivialDiscNode>(n).rank);
    }
  }
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    if (keep[i]) out.add_edge(g.edges()[i].a, g.edges()[i].b, g.edges()[i].positive);
  return out;
}

Manifold boundary(const PlumbingGraph& g) {
  if (g.size() == 0) throw Error(ErrorKind::Precondition, "empty plumbing graph");
  PlumbingGraph r = reduce(g);
  std::vector<Manifold> parts;
  for (const auto& comp : r.components()) {
    if (comp.size() == 1) {
      const auto* t = std::get_if<TrivialDiscNode>(&r.nodes()[comp[0]]);
      if (!t) throw Error(ErrorKind::UnrecognizedPattern, "isolated disc bundle has no recognized boundary");
      parts.push_back(Manifold::sphere_product(2, t->rank - 1));
      continue;
    }
    if (comp.size() != 2) throw Error(ErrorKind::UnrecognizedPattern, "component does not reduce to a pair");
    std::size_t edge_count = 0;
    bool positive = true;
    for (const auto& e : r.edges())
      if (e.a == comp[0] || e.b == comp[0]) ++edge_count, positive = positive && e.positive;
    if (edge_count != 1 || !positive) throw Error(ErrorKind::UnrecognizedPattern, "pair needs a single '+' edge");
    const PlumbingNode& x = r.nodes()[comp[0]];
    const PlumbingNode& y = r.nodes()[comp[1]];
    const auto* b = std::get_if<DiscBundleNode>(is_bundle(x) ? &x : &y);
    const auto* t = std::get_if<TrivialDiscNode>(is_bundle(x) ? &y : &x);
    if (!b || !t) throw Error(ErrorKind::UnrecognizedPattern, "pair must join a disc bundle and a trivial node");
    if (t->rank != b->base.dimension())
      throw Error(ErrorKind::UnrecognizedPattern, "trivial disc rank must equal the base dimension");
    parts.push_back(suspend(b->base, b->euler));
  }
  return parts.size() == 1 ? parts.front() : connected_sum(parts);
}

PlumbingGraph star_graph(const Manifold& base, const EulerClass& e, std::size_t leaves) {
  PlumbingGraph g;
  const std::size_t center = g.add_bundle(base, e);
  for (std::size_t i = 0; i < leaves; ++i) g.add_edge(center, g.add_trivial(base.dimension()));
  return g;
}

PlumbingGraph parse_plumbing(std::string_view text) {
  PlumbingGraph g;
  std::map<std::string, std::size_t> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + what);
  };
  auto lookup = [&](const std::string& id) {
    auto it = ids.find(id);
    if (it == ids.end()) fail("unknown node '" + id + "'");
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "node") {
      std::string id, type;
      if (!(ls >> id >> type)) fail("expected 'node <id> <type> ...'");
      if (ids.count(id)) fail("duplicate node '" + id + "'");
      if (type == "bundle") {
        std::string euler, rest;
        if (!(ls >> euler)) fail("missing Euler class");
        std::getline(ls, rest);
        ids[id] = g.add_bundle(parse_manifold(rest), parse_euler_class(euler));
      } else if (type == "trivial") {
        long rank = 0;
        if (!(ls >> rank)) fail("missing disc rank");
        ids[id] = g.add_trivial(rank);
      } else {
        fail("unknown node type '" + type + "'");
      }
    } else if (word == "edge") {
      std::string a, b, sign = "+";
      if (!(ls >> a >> b)) fail("expected 'edge <id> <id> [+|-]'");
      ls >> sign;
      if (sign != "+" && sign != "-") fail("edge sign must be + or -");
      const std::size_t ia = lookup(a), ib = lookup(b);
      if (ia == ib) fail("edge endpoints must be distinct");
      g.add_edge(ia, ib, sign == "+");
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  return g;
}

}  // namespace twsusp
