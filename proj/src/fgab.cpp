#include "twsusp/fgab.hpp"

#include <algorithm>
#include <cctype>

#include "twsusp/error.hpp"

namespace twsusp {

FgAbGroup FgAbGroup::free(unsigned rank) {
  FgAbGroup g;
  g.free_rank_ = rank;
  return g;
}

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
  return from_cyclic_orders(0, IntVector{order});
}

FgAbGroup FgAbGroup::from_cyclic_orders(unsigned free_rank, const IntVector& orders) {
  const std::size_t k = orders.size();
  IntMatrix diag(k, k);
  for (std::size_t i = 0; i < k; ++i) diag(i, i) = orders[i];
  FgAbGroup g = from_presentation(diag);
  g.free_rank_ += free_rank;
  return g;
}

FgAbGroup FgAbGroup::from_presentation(const IntMatrix& relations) {
  FgAbGroup g;
  const std::size_t generators = relations.cols();
  IntVector d = snf(relations).invariant_factors();
  std::size_t nonzero = 0;
  for (const Integer& x : d) {
    if (x == 0) continue;
    ++nonzero;
    if (x != 1) g.torsion_.push_back(x);
  }
  g.free_rank_ = static_cast<unsigned>(generators - nonzero);
  return g;
}

Integer FgAbGroup::order() const {
  if (free_rank_ > 0) return 0;
  Integer n = 1;
  for (const Integer& d : torsion_) n *= d;
  return n;
}

FgAbGroup FgAbGroup::torsion_subgroup() const {
  FgAbGroup g = *this;
  g.free_rank_ = 0;
  return g;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  if (free_rank_ == 1) {
    s = "Z";
  } else if (free_rank_ > 1) {
    s = "Z^" + std::to_string(free_rank_);
  }
  for (const Integer& d : torsion_) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  return s;
}

FgAbGroup FgAbGroup::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "0") return {};
  unsigned rank = 0;
  IntVector orders;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t end = t.find('+', pos);
    if (end == std::string::npos) end = t.size();
    std::string term = t.substr(pos, end - pos);
    try {
      if (term == "Z") {
        rank += 1;
      } else if (term.rfind("Z^", 0) == 0) {
        rank += static_cast<unsigned>(std::stoul(term.substr(2)));
      } else if (term.rfind("Z/", 0) == 0) {
        orders.emplace_back(term.substr(2));
      } else {
        throw Error(ErrorKind::Parse, "bad group term '" + term + "'");
      }
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::Parse, "bad group term '" + term + "'");
    }
    pos = end + 1;
  }
  return from_cyclic_orders(rank, orders);
}

FgAbGroup direct_sum(const FgAbGroup& g, const FgAbGroup& h) {
  IntVector orders = g.torsion_part();
  orders.insert(orders.end(), h.torsion_part().begin(), h.torsion_part().end());
  return FgAbGroup::from_cyclic_orders(g.rank() + h.rank(), orders);
}

FgAbGroup direct_sum(const std::vector<FgAbGroup>& groups) {
  unsigned rank = 0;
  IntVector orders;
  for (const FgAbGroup& g : groups) {
    rank += g.rank();
    orders.insert(orders.end(), g.torsion_part().begin(), g.torsion_part().end());
  }
  return FgAbGroup::from_cyclic_orders(rank, orders);
}

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

// Z (x) A = A, Z/a (x) Z/b = Z/gcd(a,b)
FgAbGroup tensor(const FgAbGroup& g, const FgAbGroup& h) {
  unsigned rank = g.rank() * h.rank();
  IntVector orders;
  for (unsigned i = 0; i < g.rank(); ++i) orders.insert(orders.end(), h.torsion_part().begin(), h.torsion_part().end());
  for (unsigned i = 0; i < h.rank(); ++i) orders.insert(orders.end(), g.torsion_part().begin(), g.torsion_part().end());
  for (const Integer& a : g.torsion_part())
    for (const Integer& b : h.torsion_part()) orders.push_back(gcd(a, b));
  return FgAbGroup::from_cyclic_orders(rank, orders);
}

// Tor(Z/a, Z/b) = Z/gcd(a,b); free summands contribute nothing
FgAbGroup tor(const FgAbGroup& g, const FgAbGroup& h) {
  IntVector orders;
  for (const Integer& a : g.torsion_part())
    for (const Integer& b : h.torsion_part()) orders.push_back(gcd(a, b));
  return FgAbGroup::from_cyclic_orders(0, orders);
}

}  // namespace twsusp
