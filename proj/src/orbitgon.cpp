#include "twsusp/orbitgon.hpp"

#include "twsusp/error.hpp"

namespace twsusp {

IntMatrix GonLabelling::label_matrix() const {
  return IntMatrix::from_columns(labels, static_cast<std::size_t>(n - 2));
}

bool GonReport::valid() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

std::string GonReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return c.condition + (c.detail.empty() ? "" : " (" + c.detail + ")");
  return "";
}

GonReport validate(const GonLabelling& g) {
  GonReport report;
  const std::size_t dim = g.n >= 2 ? static_cast<std::size_t>(g.n - 2) : 0;
  bool shape = g.n >= 4 && g.m() >= 2;
  std::string why = shape ? "" : "need n >= 4 and at least 2 labels";
  for (std::size_t i = 0; shape && i < g.m(); ++i) {
    if (g.labels[i].size() != dim) {
      shape = false;
      why = "label " + std::to_string(i) + " is not in Z^" + std::to_string(dim);
    }
  }
  report.checks.push_back({"shape", shape, why});
  if (!shape) return report;

  bool all_primitive = true;
  for (std::size_t i = 0; i < g.m(); ++i) {
    const bool ok = divisibility(g.labels[i]) == 1;
    all_primitive = all_primitive && ok;
    report.checks.push_back({"primitive a" + std::to_string(i + 1), ok, to_string(g.labels[i])});
  }
  // with m = 2 the two cyclic pairs coincide
  const std::size_t pairs = g.m() == 2 ? 1 : g.m();
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t j = (i + 1) % g.m();
    const bool ok = extends_to_basis({g.labels[i], g.labels[j]}, dim);
    report.checks.push_back(
        {"pair (a" + std::to_string(i + 1) + ",a" + std::to_string(j + 1) + ") extends to a basis", ok, ""});
  }
  const IntVector d = snf(g.label_matrix()).invariant_factors();
  bool generates = d.size() == dim;
  for (const Integer& x : d) generates = generates && x == 1;
  report.checks.push_back({"labels generate Z^" + std::to_string(dim), generates, ""});
  return report;
}

namespace {

void require_valid(const GonLabelling& g) {
  GonReport r = validate(g);
  if (!r.valid()) throw Error(ErrorKind::InvalidLabelling, r.first_failure());
}

}  // namespace

long betti2(const GonLabelling& g) {
  require_valid(g);
  const long m = static_cast<long>(g.m());
  // generation forces m >= n - 2
  if (m < g.n - 2) throw Error(ErrorKind::InvalidLabelling, "fewer labels than n - 2");
  return m - g.n + 2;
}

IntMatrix unimodular_model(const GonLabelling& g) {
  require_valid(g);
  return unimodular_extension(g.label_matrix());
}

GonLabelling normalize_minimal(const GonLabelling& g) {
  require_valid(g);
  if (static_cast<long>(g.m()) != g.n - 2)
    throw Error(ErrorKind::NotMinimal, "normalization needs exactly n - 2 labels, got " + std::to_string(g.m()));
  const IntMatrix a = g.label_matrix();
  const IntMatrix image = unimodular_inverse(a) * a;
  GonLabelling out{g.n, {}};
  for (std::size_t c = 0; c < image.cols(); ++c) out.labels.push_back(image.column(c));
  return out;
}

GonLabelling standard_gon(long l) {
  if (l < 0) throw Error(ErrorKind::Precondition, "l must be nonnegative");
  GonLabelling g{4, {}};
  for (long i = 0; i < 2 * l + 2; ++i) g.labels.push_back(i % 2 == 0 ? to_int_vector({1, 0}) : to_int_vector({0, 1}));
  return g;
}

}  // namespace twsusp
