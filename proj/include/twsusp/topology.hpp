#pragma once

// Symbolic manifold calculus: catalog atoms with known homology, products,
// connected sums and twisted suspensions, plus diffeomorphism rewrites.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "twsusp/fgab.hpp"

namespace twsusp {

/// The Euler class e in H^2(M; Z) of a twisted suspension, described by the
/// data the homology rules need rather than by coordinates.
class EulerClass {
 public:
  enum class Kind { Zero, Primitive, Divisibility, Split };

  static EulerClass zero() { return EulerClass(Kind::Zero, 0, {}); }
  static EulerClass primitive() { return EulerClass(Kind::Primitive, 1, {}); }
  /// divisible(0) is zero and divisible(1) is primitive.
  static EulerClass divisible(long k);
  /// One class per connected summand.
  static EulerClass split(std::vector<EulerClass> parts);

  Kind kind() const noexcept { return kind_; }
  /// Divisibility: 0 for Zero, 1 for Primitive, k otherwise; -1 for Split.
  long divisibility() const noexcept { return divisibility_; }
  const std::vector<EulerClass>& parts() const noexcept { return parts_; }
  bool is_zero() const;  // true for Zero and for Split of all-zero parts

  std::string to_string() const;
  friend bool operator==(const EulerClass&, const EulerClass&) = default;

 private:
  EulerClass(Kind kind, long k, std::vector<EulerClass> parts)
      : kind_(kind), divisibility_(k), parts_(std::move(parts)) {}

  Kind kind_;
  long divisibility_;
  std::vector<EulerClass> parts_;
};

struct Pi1 {
  enum class Kind { Trivial, Cyclic, BinaryIcosahedral, Unsupported };
  Kind kind = Kind::Trivial;
  long order = 1;  // for Cyclic

  static Pi1 trivial() { return {}; }
  static Pi1 cyclic(long k) { return k == 1 ? Pi1{} : Pi1{Kind::Cyclic, k}; }
  static Pi1 binary_icosahedral() { return {Kind::BinaryIcosahedral, 120}; }
  static Pi1 unsupported() { return {Kind::Unsupported, 0}; }

  bool is_trivial() const { return kind == Kind::Trivial; }
  std::string to_string() const;
  friend bool operator==(const Pi1&, const Pi1&) = default;
};

enum class Spin { Yes, No, Unknown };
std::string_view to_string(Spin s);
Spin spin_and(Spin a, Spin b);

enum class AtomTag { Sphere, CP, Lens, SmaleN, Wu, PoincareSphere, TwistedS2Bundle };

struct Atom {
  AtomTag tag;
  long a = 0;  // Sphere(n), CP(m), Lens order k, SmaleN(k), TwistedS2Bundle fibre dim
  long b = 0;  // Lens dimension
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Immutable manifold expression. Attributes are computed once, on
/// construction, and shared by every copy.
class Manifold {
 public:
  enum class Kind { Atom, Product, ConnectedSum, TwistedSuspension };

  static Manifold sphere(long n);
  static Manifold cp(long m);
  static Manifold lens(long k, long dim);
  static Manifold smale(long k);
  static Manifold wu();
  static Manifold poincare_sphere();
  /// Total space of the non-trivial linear S^q-bundle over S^2.
  static Manifold twisted_s2_bundle(long fiber_dim);
  static Manifold product(const Manifold& a, const Manifold& b);
  static Manifold sphere_product(long p, long q) { return product(sphere(p), sphere(q)); }

  Kind kind() const;
  const Atom& atom() const;  // only for Kind::Atom
  const std::vector<Manifold>& children() const;
  const EulerClass& euler() const;  // only for Kind::TwistedSuspension

  int dimension() const;
  bool orientable() const;
  const Pi1& pi1() const;
  bool simply_connected() const { return pi1().is_trivial(); }
  Spin spin() const;
  /// Integral homology H_0 ... H_dim.
  const std::vector<FgAbGroup>& homology() const;
  /// Integral cohomology via universal coefficients.
  std::vector<FgAbGroup> cohomology() const;
  std::vector<unsigned> betti() const;
  long euler_characteristic() const;
  bool is_rational_homology_sphere() const;
  bool is_homology_sphere() const;

  std::string to_string() const;

  /// Structural equality of expression trees.
  friend bool operator==(const Manifold& a, const Manifold& b);

  struct Node;  // opaque outside topology.cpp

 private:
  explicit Manifold(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend Manifold connected_sum(const std::vector<Manifold>& xs);
  friend Manifold suspend(const Manifold& x, const EulerClass& e);
};

/// Homology, spin flag and fundamental group agree.
bool same_invariants(const Manifold& a, const Manifold& b);

Manifold connected_sum(const std::vector<Manifold>& xs);
/// `count` copies of x; count >= 1.
Manifold connected_sum_copies(const Manifold& x, std::size_t count);
Manifold suspend(const Manifold& x, const EulerClass& e);
/// Rewrites to connected-sum normal form using the catalog diffeomorphisms.
Manifold decompose(const Manifold& x);

/// b2 of the total space of a principal T^fiber_rank bundle whose Euler
/// classes extend to a basis of H^2 of the base.
int torus_bundle_b2(int b2_base, int fiber_rank);

/// #_{order-1}(S^2 x S^{n-1}), or S^{n+1} for the trivial group.
Manifold universal_cover_of_space_form_suspension(long order, long n);

/// Connected sum of twisted suspensions of CP^m realizing H_3 = g
/// (dimension 2m+1, m >= 3).
Manifold prescribed_h3(const FgAbGroup& g, long m);

/// The homology-sphere examples: susp(0, N(k)).
Manifold smale_suspension(long k);

Manifold parse_manifold(std::string_view text);
EulerClass parse_euler_class(std::string_view text);

}  // namespace twsusp
