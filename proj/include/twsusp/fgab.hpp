#pragma once

#include <string>
#include <vector>

#include "twsusp/intlat.hpp"

namespace twsusp {

/// Finitely generated abelian group Z^r + Z/d1 + ... + Z/dt in invariant-factor
/// form: every d_i >= 2 and d_i | d_{i+1}.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup free(unsigned rank);
  static FgAbGroup cyclic(const Integer& order);  // order 0 gives Z
  /// Normalizes arbitrary cyclic orders (0 entries count as Z summands).
  static FgAbGroup from_cyclic_orders(unsigned free_rank, const IntVector& orders);
  /// Cokernel of the relation matrix: rows are relations in Z^cols.
  static FgAbGroup from_presentation(const IntMatrix& relations);

  unsigned rank() const noexcept { return free_rank_; }
  const IntVector& torsion_part() const noexcept { return torsion_; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  /// Order of a finite group; 0 when infinite.
  Integer order() const;

  FgAbGroup torsion_subgroup() const;
  FgAbGroup free_part() const { return free(free_rank_); }

  /// Rendered as "Z^r + Z/d1 + Z/d2"; "Z" for rank one and "0" for the trivial group.
  std::string to_string() const;
  static FgAbGroup parse(const std::string& text);

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

 private:
  unsigned free_rank_ = 0;
  IntVector torsion_;
};

FgAbGroup direct_sum(const FgAbGroup& g, const FgAbGroup& h);
FgAbGroup direct_sum(const std::vector<FgAbGroup>& groups);
FgAbGroup tensor(const FgAbGroup& g, const FgAbGroup& h);
FgAbGroup tor(const FgAbGroup& g, const FgAbGroup& h);

inline bool equals(const FgAbGroup& g, const FgAbGroup& h) { return g == h; }

}  // namespace twsusp
