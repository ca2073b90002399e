#pragma once

// Plumbing graphs built from disc bundles of circle bundles and trivial
// S^2 x D^n pieces, with the edge-removal moves and boundary recognition.

#include <string>
#include <variant>
#include <vector>

#include "twsusp/topology.hpp"

namespace twsusp {

/// Disc bundle of the circle bundle over `base` with Euler class `euler`.
struct DiscBundleNode {
  Manifold base;
  EulerClass euler;
};

/// The trivial bundle S^2 x D^rank -> S^2.
struct TrivialDiscNode {
  long rank;
};

using PlumbingNode = std::variant<DiscBundleNode, TrivialDiscNode>;

struct PlumbingEdge {
  std::size_t a;
  std::size_t b;
  bool positive = true;
};

class PlumbingGraph {
 public:
  std::size_t add_bundle(const Manifold& base, const EulerClass& euler);
  std::size_t add_trivial(long rank);
  /// Throws Precondition for a loop or an unknown endpoint.
  void add_edge(std::size_t a, std::size_t b, bool positive = true);

  const std::vector<PlumbingNode>& nodes() const { return nodes_; }
  const std::vector<PlumbingEdge>& edges() const { return edges_; }
  std::size_t size() const { return nodes_.size(); }

  /// Node indices of each connected component, in increasing order.
  std::vector<std::vector<std::size_t>> components() const;

  /// Isomorphism-invariant encoding; equal iff the graphs are isomorphic.
  std::string canonical_form() const;

  std::string to_string() const;

 private:
  std::vector<PlumbingNode> nodes_;
  std::vector<PlumbingEdge> edges_;
};

bool isomorphic(const PlumbingGraph& a, const PlumbingGraph& b);

/// Removes every edge at a trivial node that the splitting moves allow, so
/// that each tree component becomes disjoint bundle/trivial pairs and free
/// trivial nodes. Components the moves do not apply to are left untouched.
PlumbingGraph reduce(const PlumbingGraph& g);

/// Boundary of the plumbed manifold, a connected sum over the components of
/// the reduced graph. Throws UnrecognizedPattern otherwise.
Manifold boundary(const PlumbingGraph& g);

/// Star with one bundle node over `base` and `leaves` trivial neighbours.
PlumbingGraph star_graph(const Manifold& base, const EulerClass& e, std::size_t leaves);

/// Lines of `node <id> bundle <euler> <expr>`, `node <id> trivial <rank>` and
/// `edge <id> <id> [+|-]`; `#` starts a comment.
PlumbingGraph parse_plumbing(std::string_view text);

}  // namespace twsusp
