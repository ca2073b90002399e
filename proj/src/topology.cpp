#include "twsusp/topology.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "twsusp/error.hpp"

namespace twsusp {

using Table = std::vector<FgAbGroup>;

EulerClass EulerClass::divisible(long k) {
  if (k < 0) k = -k;
  if (k == 0) return zero();
  if (k == 1) return primitive();
  return EulerClass(Kind::Divisibility, k, {});
}

EulerClass EulerClass::split(std::vector<EulerClass> parts) {
  if (parts.empty()) throw Error(ErrorKind::Precondition, "split class needs at least one part");
  return EulerClass(Kind::Split, -1, std::move(parts));
}

bool EulerClass::is_zero() const {
  if (kind_ == Kind::Zero) return true;
  if (kind_ != Kind::Split) return false;
  return std::all_of(parts_.begin(), parts_.end(), [](const EulerClass& e) { return e.is_zero(); });
}

std::string EulerClass::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Primitive: return "prim";
    case Kind::Divisibility: return "div(" + std::to_string(divisibility_) + ")";
    case Kind::Split: {
      std::string s = "[";
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += parts_[i].to_string();
      }
      return s + "]";
    }
  }
  return "?";
}

std::string Pi1::to_string() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::Cyclic: return "Z/" + std::to_string(order);
    case Kind::BinaryIcosahedral: return "binary_icosahedral";
    case Kind::Unsupported: return "unsupported";
  }
  return "?";
}

std::string_view to_string(Spin s) {
  switch (s) {
    case Spin::Yes: return "yes";
    case Spin::No: return "no";
    case Spin::Unknown: return "unknown";
  }
  return "unknown";
}

Spin spin_and(Spin a, Spin b) {
  if (a == Spin::No || b == Spin::No) return Spin::No;
  if (a == Spin::Unknown || b == Spin::Unknown) return Spin::Unknown;
  return Spin::Yes;
}

struct Manifold::Node {
  Kind kind = Kind::Atom;
  Atom atom{AtomTag::Sphere};
  std::vector<Manifold> children;
  EulerClass euler = EulerClass::zero();

  int dimension = 0;
  bool orientable = true;
  Pi1 pi1;
  Spin spin = Spin::Unknown;
  Table homology;
};

namespace {

Table empty_table(int dim) { return Table(static_cast<std::size_t>(dim) + 1); }

FgAbGroup Z() { return FgAbGroup::free(1); }

// H_0 = H_n = Z, zero elsewhere
Table sphere_table(int n) {
  Table t = empty_table(n);
  t[0] = Z();
  t[static_cast<std::size_t>(n)] = direct_sum(t[static_cast<std::size_t>(n)], Z());
  return t;
}

Table kunneth(const Table& a, const Table& b) {
  const int n = static_cast<int>(a.size() + b.size()) - 2;
  Table t = empty_table(n);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      t[i + j] = direct_sum(t[i + j], tensor(a[i], b[j]));
      if (i + j + 1 <= static_cast<std::size_t>(n)) t[i + j + 1] = direct_sum(t[i + j + 1], tor(a[i], b[j]));
    }
  return t;
}

// H_i(M) + H_{i-1}(M), except H_0, H_1 = H_i(M) and H_n, H_{n+1} = H_{i-1}(M)
Table untwisted_suspension_table(const Table& m) {
  const int n = static_cast<int>(m.size()) - 1;
  Table t = empty_table(n + 1);
  for (int i = 0; i <= n + 1; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (i == 0 || i == 1) {
      t[ui] = m[ui];
    } else if (i == n || i == n + 1) {
      t[ui] = m[ui - 1];
    } else {
      t[ui] = direct_sum(m[ui], m[ui - 1]);
    }
  }
  return t;
}

// Z at 0, 2, 2m-1, 2m+1; Z/k in odd degrees 3..2m-3 (homology form of the
// cohomology table with Z/k in even degrees 4..2m-2).
Table twisted_cp_suspension_table(long m, long k) {
  const int n = static_cast<int>(2 * m + 1);
  Table t = empty_table(n);
  for (int i : {0, 2, static_cast<int>(2 * m - 1), n}) t[static_cast<std::size_t>(i)] = direct_sum(t[static_cast<std::size_t>(i)], Z());
  for (long i = 3; i <= 2 * m - 3; i += 2) t[static_cast<std::size_t>(i)] = FgAbGroup::cyclic(k);
  return t;
}

std::shared_ptr<Manifold::Node> make_atom(Atom atom) {
  auto node = std::make_shared<Manifold::Node>();
  node->kind = Manifold::Kind::Atom;
  node->atom = atom;
  return node;
}

std::string atom_string(const Atom& a) {
  switch (a.tag) {
    case AtomTag::Sphere: return "S(" + std::to_string(a.a) + ")";
    case AtomTag::CP: return "CP(" + std::to_string(a.a) + ")";
    case AtomTag::Lens: return "lens(" + std::to_string(a.a) + "," + std::to_string(a.b) + ")";
    case AtomTag::SmaleN: return "N(" + std::to_string(a.a) + ")";
    case AtomTag::Wu: return "Wu";
    case AtomTag::PoincareSphere: return "Poincare";
    case AtomTag::TwistedS2Bundle: return "S2~S(" + std::to_string(a.a) + ")";
  }
  return "?";
}

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

bool is_atom(const Manifold& x, AtomTag tag) {
  return x.kind() == Manifold::Kind::Atom && x.atom().tag == tag;
}

bool is_sphere(const Manifold& x) { return is_atom(x, AtomTag::Sphere); }

// S(2) x S(q): returns q, or -1
long s2_product_fiber(const Manifold& x) {
  if (x.kind() != Manifold::Kind::Product) return -1;
  const auto& c = x.children();
  if (!is_sphere(c[0]) || !is_sphere(c[1])) return -1;
  if (c[0].atom().a == 2) return c[1].atom().a;
  if (c[1].atom().a == 2) return c[0].atom().a;
  return -1;
}

bool h2_vanishes(const Manifold& x) {
  const auto& h = x.homology();
  // H^2 = Hom(H_2, Z) + Ext(H_1, Z)
  if (h.size() < 3) return h.size() < 2 || h[1].torsion_part().empty();
  return h[2].rank() == 0 && h[1].torsion_part().empty();
}

}  // namespace

Manifold Manifold::sphere(long n) {
  require(n >= 1, ErrorKind::Precondition, "sphere dimension must be >= 1");
  auto node = make_atom({AtomTag::Sphere, n});
  node->dimension = static_cast<int>(n);
  node->homology = sphere_table(node->dimension);
  node->pi1 = n == 1 ? Pi1::unsupported() : Pi1::trivial();
  node->spin = Spin::Yes;
  return Manifold(node);
}

Manifold Manifold::cp(long m) {
  require(m >= 1, ErrorKind::Precondition, "CP(m) needs m >= 1");
  auto node = make_atom({AtomTag::CP, m});
  node->dimension = static_cast<int>(2 * m);
  node->homology = empty_table(node->dimension);
  for (long i = 0; i <= m; ++i) node->homology[static_cast<std::size_t>(2 * i)] = Z();
  node->spin = m % 2 == 1 ? Spin::Yes : Spin::No;
  return Manifold(node);
}

Manifold Manifold::lens(long k, long dim) {
  require(k >= 1, ErrorKind::Precondition, "lens order must be >= 1");
  require(dim >= 3 && dim % 2 == 1, ErrorKind::Precondition, "lens dimension must be odd and >= 3");
  auto node = make_atom({AtomTag::Lens, k, dim});
  node->dimension = static_cast<int>(dim);
  node->homology = sphere_table(node->dimension);
  for (long i = 1; i <= dim - 2; i += 2) node->homology[static_cast<std::size_t>(i)] = FgAbGroup::cyclic(k);
  node->pi1 = Pi1::cyclic(k);
  // w(L^{2q-1}) = (1 + x)^q with x in H^2(;Z/2), which is zero for odd k
  const long q = (dim + 1) / 2;
  node->spin = (k % 2 == 1 || q % 2 == 0) ? Spin::Yes : Spin::No;
  return Manifold(node);
}

Manifold Manifold::smale(long k) {
  require(k >= 1, ErrorKind::Precondition, "N(k) needs k >= 1");
  auto node = make_atom({AtomTag::SmaleN, k});
  node->dimension = 5;
  node->homology = sphere_table(5);
  node->homology[2] = FgAbGroup::from_cyclic_orders(0, {Integer(k), Integer(k)});
  node->spin = Spin::Yes;
  return Manifold(node);
}

Manifold Manifold::wu() {
  auto node = make_atom({AtomTag::Wu});
  node->dimension = 5;
  node->homology = sphere_table(5);
  node->homology[2] = FgAbGroup::cyclic(2);
  node->spin = Spin::No;
  return Manifold(node);
}

Manifold Manifold::poincare_sphere() {
  auto node = make_atom({AtomTag::PoincareSphere});
  node->dimension = 3;
  node->homology = sphere_table(3);
  node->pi1 = Pi1::binary_icosahedral();
  node->spin = Spin::Yes;
  return Manifold(node);
}

Manifold Manifold::twisted_s2_bundle(long fiber_dim) {
  require(fiber_dim >= 2, ErrorKind::Precondition, "S2~S(q) needs q >= 2");
  auto node = make_atom({AtomTag::TwistedS2Bundle, fiber_dim});
  node->dimension = static_cast<int>(fiber_dim + 2);
  node->homology = kunneth(sphere_table(2), sphere_table(static_cast<int>(fiber_dim)));
  node->spin = Spin::No;
  return Manifold(node);
}

Manifold Manifold::product(const Manifold& a, const Manifold& b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->children = {a, b};
  node->dimension = a.dimension() + b.dimension();
  node->orientable = a.orientable() && b.orientable();
  node->homology = kunneth(a.homology(), b.homology());
  if (a.pi1().is_trivial()) {
    node->pi1 = b.pi1();
  } else if (b.pi1().is_trivial()) {
    node->pi1 = a.pi1();
  } else {
    node->pi1 = Pi1::unsupported();
  }
  node->spin = spin_and(a.spin(), b.spin());
  return Manifold(node);
}

Manifold::Kind Manifold::kind() const { return node_->kind; }
const Atom& Manifold::atom() const { return node_->atom; }
const std::vector<Manifold>& Manifold::children() const { return node_->children; }
const EulerClass& Manifold::euler() const { return node_->euler; }
int Manifold::dimension() const { return node_->dimension; }
bool Manifold::orientable() const { return node_->orientable; }
const Pi1& Manifold::pi1() const { return node_->pi1; }
Spin Manifold::spin() const { return node_->spin; }
const std::vector<FgAbGroup>& Manifold::homology() const { return node_->homology; }

std::vector<FgAbGroup> Manifold::cohomology() const {
  const Table& h = homology();
  Table c(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    c[i] = h[i].free_part();
    if (i > 0) c[i] = direct_sum(c[i], h[i - 1].torsion_subgroup());
  }
  return c;
}

std::vector<unsigned> Manifold::betti() const {
  std::vector<unsigned> b;
  for (const FgAbGroup& g : homology()) b.push_back(g.rank());
  return b;
}

long Manifold::euler_characteristic() const {
  long chi = 0;
  const auto b = betti();
  for (std::size_t i = 0; i < b.size(); ++i) chi += (i % 2 == 0 ? 1L : -1L) * static_cast<long>(b[i]);
  return chi;
}

bool Manifold::is_rational_homology_sphere() const {
  const auto b = betti();
  for (std::size_t i = 1; i + 1 < b.size(); ++i)
    if (b[i] != 0) return false;
  return true;
}

bool Manifold::is_homology_sphere() const {
  const Table& h = homology();
  for (std::size_t i = 1; i + 1 < h.size(); ++i)
    if (!h[i].is_trivial()) return false;
  return true;
}

std::string Manifold::to_string() const {
  switch (kind()) {
    case Kind::Atom: return atom_string(atom());
    case Kind::Product: return children()[0].to_string() + "x" + children()[1].to_string();
    case Kind::ConnectedSum: {
      std::string s = "csum(";
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) s += ",";
        s += children()[i].to_string();
      }
      return s + ")";
    }
    case Kind::TwistedSuspension:
      return "susp(" + euler().to_string() + "," + children()[0].to_string() + ")";
  }
  return "?";
}

bool operator==(const Manifold& a, const Manifold& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Manifold::Kind::Atom: return a.atom() == b.atom();
    case Manifold::Kind::TwistedSuspension:
      if (!(a.euler() == b.euler())) return false;
      [[fallthrough]];
    default: return a.children() == b.children();
  }
}

bool same_invariants(const Manifold& a, const Manifold& b) {
  return a.dimension() == b.dimension() && a.homology() == b.homology() && a.spin() == b.spin() &&
         a.pi1() == b.pi1();
}

Manifold connected_sum(const std::vector<Manifold>& xs) {
  require(!xs.empty(), ErrorKind::Precondition, "connected sum of nothing");
  const int n = xs.front().dimension();
  for (const Manifold& x : xs) {
    require(x.dimension() == n, ErrorKind::DimensionMismatch, "summands have different dimensions");
    require(x.orientable(), ErrorKind::Unsupported, "non-orientable summand " + x.to_string());
  }
  require(n >= 4, ErrorKind::DimensionTooSmall, "connected sums need dimension >= 4");

  auto node = std::make_shared<Manifold::Node>();
  node->kind = Manifold::Kind::ConnectedSum;
  node->children = xs;
  node->dimension = n;
  node->homology = sphere_table(n);
  for (int i = 1; i < n; ++i) {
    std::vector<FgAbGroup> parts;
    for (const Manifold& x : xs) parts.push_back(x.homology()[static_cast<std::size_t>(i)]);
    node->homology[static_cast<std::size_t>(i)] = direct_sum(parts);
  }
  std::vector<Pi1> nontrivial;
  node->spin = Spin::Yes;
  for (const Manifold& x : xs) {
    if (!x.pi1().is_trivial()) nontrivial.push_back(x.pi1());
    node->spin = spin_and(node->spin, x.spin());
  }
  if (nontrivial.empty()) {
    node->pi1 = Pi1::trivial();
  } else if (nontrivial.size() == 1) {
    node->pi1 = nontrivial.front();
  } else {
    node->pi1 = Pi1::unsupported();  // free product
  }
  return Manifold(node);
}

Manifold connected_sum_copies(const Manifold& x, std::size_t count) {
  require(count >= 1, ErrorKind::Precondition, "need at least one copy");
  return connected_sum(std::vector<Manifold>(count, x));
}

Manifold suspend(const Manifold& x, const EulerClass& e) {
  const int n = x.dimension();
  require(n >= 3, ErrorKind::DimensionTooSmall, "twisted suspension needs dimension >= 3");

  auto node = std::make_shared<Manifold::Node>();
  node->kind = Manifold::Kind::TwistedSuspension;
  node->children = {x};
  node->euler = e;
  node->dimension = n + 1;
  node->orientable = x.orientable();
  node->pi1 = x.pi1();

  if (e.kind() == EulerClass::Kind::Split) {
    require(x.kind() == Manifold::Kind::ConnectedSum && x.children().size() == e.parts().size(),
            ErrorKind::Unsupported, "split class needs a connected sum with matching arity");
    std::vector<Manifold> parts;
    for (std::size_t i = 0; i < e.parts().size(); ++i) parts.push_back(suspend(x.children()[i], e.parts()[i]));
    Manifold sum = connected_sum(parts);
    node->homology = sum.homology();
    node->spin = sum.spin();
    node->pi1 = sum.pi1();
    return Manifold(node);
  }

  if (e.kind() == EulerClass::Kind::Zero) {
    node->homology = untwisted_suspension_table(x.homology());
    node->spin = x.spin();
    return Manifold(node);
  }

  const long k = e.divisibility();
  if (is_atom(x, AtomTag::CP)) {
    const long m = x.atom().a;
    node->homology = twisted_cp_suspension_table(m, k);
    // w2(CP^m) = (m + 1) x, so spin iff k = m + 1 mod 2
    node->spin = (k - (m + 1)) % 2 == 0 ? Spin::Yes : Spin::No;
    return Manifold(node);
  }
  if (is_atom(x, AtomTag::Lens)) {
    const long order = x.atom().a;
    if (k % order == 0) return suspend(x, EulerClass::zero());
    require(std::gcd(k, order) == 1, ErrorKind::Unsupported,
            "lens spaces support only zero or generating Euler classes");
    node->homology = sphere_table(n + 1);
    node->homology[1] = FgAbGroup::cyclic(order);
    node->spin = Spin::Unknown;
    return Manifold(node);
  }
  if (const long q = s2_product_fiber(x); q >= 3) {
    // same homology as the untwisted suspension, spin iff e is even
    node->homology = untwisted_suspension_table(x.homology());
    node->spin = k % 2 == 0 ? Spin::Yes : Spin::No;
    return Manifold(node);
  }
  if (x.simply_connected() && h2_vanishes(x)) {
    throw Error(ErrorKind::Unsupported, "H^2(" + x.to_string() + ") vanishes; only e = 0 exists");
  }
  throw Error(ErrorKind::Unsupported, "no Gysin rule for e = " + e.to_string() + " over " + x.to_string());
}

namespace {

std::optional<Manifold> rewrite_once(const Manifold& x);

Manifold rebuild(const Manifold& x, std::vector<Manifold> children) {
  switch (x.kind()) {
    case Manifold::Kind::Atom: return x;
    case Manifold::Kind::Product: return Manifold::product(children[0], children[1]);
    case Manifold::Kind::ConnectedSum: return connected_sum(children);
    case Manifold::Kind::TwistedSuspension: return suspend(children[0], x.euler());
  }
  return x;
}

std::optional<Manifold> rewrite_sum(const Manifold& x) {
  const auto& cs = x.children();
  if (cs.size() == 1) return cs.front();
  bool changed = false;
  std::vector<Manifold> flat;
  for (const Manifold& c : cs) {
    if (c.kind() == Manifold::Kind::ConnectedSum) {
      flat.insert(flat.end(), c.children().begin(), c.children().end());
      changed = true;
    } else {
      flat.push_back(c);
    }
  }
  // M # S^n = M
  std::vector<Manifold> kept;
  for (const Manifold& c : flat)
    if (!is_sphere(c)) kept.push_back(c);
  if (kept.empty()) return Manifold::sphere(x.dimension());
  if (kept.size() != flat.size()) changed = true;
  // N # S^2 x S^{n-2} = N # N for the twisted bundle N
  const long q = x.dimension() - 2;
  const bool has_twisted = std::any_of(kept.begin(), kept.end(), [](const Manifold& c) {
    return is_atom(c, AtomTag::TwistedS2Bundle);
  });
  if (has_twisted) {
    for (Manifold& c : kept) {
      if (s2_product_fiber(c) == q) {
        c = Manifold::twisted_s2_bundle(q);
        changed = true;
      }
    }
  }
  if (!changed) return std::nullopt;
  return kept.size() == 1 ? kept.front() : connected_sum(kept);
}

std::optional<Manifold> rewrite_suspension(const Manifold& x) {
  const Manifold& base = x.children().front();
  const EulerClass& e = x.euler();
  const int n = base.dimension();

  if (base.kind() == Manifold::Kind::ConnectedSum && n >= 4 &&
      (e.kind() == EulerClass::Kind::Split || e.kind() == EulerClass::Kind::Zero)) {
    std::vector<Manifold> parts;
    for (std::size_t i = 0; i < base.children().size(); ++i) {
      const EulerClass ei = e.kind() == EulerClass::Kind::Zero ? EulerClass::zero() : e.parts()[i];
      parts.push_back(suspend(base.children()[i], ei));
    }
    return connected_sum(parts);
  }
  if (e.is_zero() && is_sphere(base)) return Manifold::sphere(n + 1);
  if (e.kind() == EulerClass::Kind::Primitive && is_atom(base, AtomTag::CP) && base.atom().a % 2 == 0) {
    return Manifold::sphere_product(2, 2 * base.atom().a - 1);
  }
  if (const long q = s2_product_fiber(base); q >= 2 && e.kind() != EulerClass::Kind::Split) {
    if (q == 2 && !e.is_zero()) return std::nullopt;
    const Manifold first = e.divisibility() % 2 == 0 ? Manifold::sphere_product(2, q + 1)
                                                     : Manifold::twisted_s2_bundle(q + 1);
    return connected_sum({first, Manifold::sphere_product(3, q)});
  }
  return std::nullopt;
}

std::optional<Manifold> rewrite_once(const Manifold& x) {
  // children first
  if (x.kind() != Manifold::Kind::Atom) {
    std::vector<Manifold> children = x.children();
    bool changed = false;
    for (Manifold& c : children) {
      if (auto r = rewrite_once(c)) {
        c = *r;
        changed = true;
      }
    }
    if (changed) {
      // a split class must keep matching the arity of its base
      if (x.kind() == Manifold::Kind::TwistedSuspension && x.euler().kind() == EulerClass::Kind::Split &&
          (children[0].kind() != Manifold::Kind::ConnectedSum ||
           children[0].children().size() != x.euler().parts().size())) {
        changed = false;
      } else {
        return rebuild(x, std::move(children));
      }
    }
  }
  switch (x.kind()) {
    case Manifold::Kind::ConnectedSum: return rewrite_sum(x);
    case Manifold::Kind::TwistedSuspension: return rewrite_suspension(x);
    default: return std::nullopt;
  }
}

}  // namespace

Manifold decompose(const Manifold& x) {
  Manifold current = x;
  // each rewrite strictly simplifies; the bound only guards against a rule bug
  for (int guard = 0; guard < 10000; ++guard) {
    auto next = rewrite_once(current);
    if (!next) return current;
    current = *next;
  }
  throw Error(ErrorKind::Precondition, "rewriting did not terminate");
}

int torus_bundle_b2(int b2_base, int fiber_rank) {
  require(fiber_rank >= 0 && b2_base >= 0, ErrorKind::Precondition, "ranks must be nonnegative");
  require(fiber_rank <= b2_base, ErrorKind::RankTooLarge, "fiber rank exceeds b2 of the base");
  return b2_base - fiber_rank;
}

Manifold universal_cover_of_space_form_suspension(long order, long n) {
  require(order >= 1 && n >= 4, ErrorKind::Precondition, "need order >= 1 and n >= 4");
  if (order == 1) return Manifold::sphere(n + 1);
  return connected_sum_copies(Manifold::sphere_product(2, n - 1), static_cast<std::size_t>(order - 1));
}

Manifold prescribed_h3(const FgAbGroup& g, long m) {
  require(m >= 3, ErrorKind::Precondition, "prescribed H_3 construction needs m >= 3");
  std::vector<Manifold> parts;
  for (const Integer& k : g.torsion_part()) {
    require(k.fits_slong_p(), ErrorKind::Unsupported, "torsion coefficient too large");
    parts.push_back(suspend(Manifold::cp(m), EulerClass::divisible(k.get_si())));
  }
  for (unsigned i = 0; i < g.rank(); ++i) {
    parts.push_back(suspend(Manifold::sphere_product(2, 2 * m - 2), EulerClass::zero()));
  }
  if (parts.empty()) return Manifold::sphere(2 * m + 1);
  return parts.size() == 1 ? parts.front() : connected_sum(parts);
}

Manifold smale_suspension(long k) { return suspend(Manifold::smale(k), EulerClass::zero()); }

}  // namespace twsusp
