#pragma once

// Orbit-space data of cohomogeneity-two torus actions: a cyclically ordered
// list of isotropy labels on the edges of a polygon.

#include <string>
#include <vector>

#include "twsusp/intlat.hpp"

namespace twsusp {

struct GonLabelling {
  long n = 4;                   // manifold dimension
  std::vector<IntVector> labels;  // each in Z^{n-2}, cyclic order

  std::size_t m() const { return labels.size(); }
  /// (n-2) x m matrix with the labels as columns.
  IntMatrix label_matrix() const;
};

struct GonCheck {
  std::string condition;
  bool ok;
  std::string detail;
};

struct GonReport {
  std::vector<GonCheck> checks;
  bool valid() const;
  std::string first_failure() const;
};

/// Runs every condition and reports each, in order: shape, primitivity of each
/// label, basis extension of each cyclically adjacent pair, generation of Z^{n-2}.
GonReport validate(const GonLabelling& g);

/// m - n + 2. Throws InvalidLabelling when validate fails.
long betti2(const GonLabelling& g);

/// Unimodular m x m matrix whose top n-2 rows are the label matrix.
IntMatrix unimodular_model(const GonLabelling& g);

/// Applies the inverse label matrix so the labels become e_1, ..., e_{n-2}.
/// Throws NotMinimal unless m = n - 2.
GonLabelling normalize_minimal(const GonLabelling& g);

/// n = 4, 2l + 2 labels alternating (1,0), (0,1).
GonLabelling standard_gon(long l);

}  // namespace twsusp
