#include "subbergman/bergman.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "subbergman/errors.hpp"

namespace subbergman {

double monomial_norm_squared(double alpha, long long n) {
  if (n < 0) throw DomainError("monomial_norm_squared: negative exponent");
  if (!(alpha > -1.0)) throw DomainError("monomial_norm_squared: alpha must exceed -1");
  const double nn = static_cast<double>(n);
  return std::exp(std::lgamma(nn + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(nn + alpha + 2.0));
}

BergmanSpaceModel::BergmanSpaceModel(double alpha, int truncation) : alpha_(alpha), truncation_(truncation) {
  if (!(alpha > -1.0)) throw DomainError("BergmanSpaceModel: alpha must exceed -1");
  if (truncation < 1) throw DomainError("BergmanSpaceModel: truncation must be at least 1");
  norms_.resize(static_cast<size_t>(truncation) + 1);
  for (int n = 0; n <= truncation; ++n) norms_[n] = std::sqrt(subbergman::monomial_norm_squared(alpha, n));
}

double BergmanSpaceModel::monomial_norm(int n) const {
  if (n < 0 || n > truncation_) {
    std::ostringstream os;
    os << "monomial_norm: n = " << n << " outside 0.." << truncation_;
    throw DomainError(os.str());
  }
  return norms_[n];
}

double BergmanSpaceModel::monomial_norm_squared(int n) const {
  const double v = monomial_norm(n);
  return v * v;
}

Eigen::VectorXcd BergmanSpaceModel::to_orthonormal(const PowerSeriesPoly& f, int size) const {
  if (size > truncation_ + 1) throw DomainError("to_orthonormal: size exceeds the space truncation");
  Eigen::VectorXcd v(size);
  for (int n = 0; n < size; ++n) v[n] = f.coeff(n) * norms_[n];
  return v;
}

PowerSeriesPoly BergmanSpaceModel::from_orthonormal(const Eigen::VectorXcd& coords) const {
  if (coords.size() > truncation_ + 1) throw DomainError("from_orthonormal: size exceeds the space truncation");
  std::vector<Complex> c(static_cast<size_t>(coords.size()));
  for (Eigen::Index n = 0; n < coords.size(); ++n) c[n] = coords[n] / norms_[n];
  return PowerSeriesPoly(std::move(c));
}

Complex BergmanSpaceModel::inner_product(const PowerSeriesPoly& f, const PowerSeriesPoly& g) const {
  const int d = std::min(f.degree(), g.degree());
  if (d > truncation_) throw DomainError("inner_product: degree exceeds the space truncation");
  Complex acc{};
  for (int n = 0; n <= d; ++n) acc += f.coeff(n) * std::conj(g.coeff(n)) * (norms_[n] * norms_[n]);
  return acc;
}

double BergmanSpaceModel::norm(const PowerSeriesPoly& f) const { return std::sqrt(inner_product(f, f).real()); }

// ---------------------------------------------------------------------------
// Quadrature

void gauss_jacobi_unit_interval(double alpha, int count, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0)) throw DomainError("gauss_jacobi: alpha must exceed -1");
  // Jacobi matrix for (1 - x)^a (1 + x)^b on [-1, 1], here b = 0.
  const double a = alpha, b = 0.0, ab = a + b;
  Eigen::VectorXd diag(count), sub(std::max(count - 1, 1));
  diag[0] = (b - a) / (ab + 2.0);
  for (int n = 1; n < count; ++n) {
    const double s = 2.0 * n + ab;
    diag[n] = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int n = 1; n < count; ++n) {
    double v;
    if (n == 1) {
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * n + ab;
      v = 4.0 * n * (n + a) * (n + b) * (n + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[n - 1] = std::sqrt(v);
  }
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  if (count == 1) {
    nodes[0] = 0.5 * (1.0 + diag[0]);
    weights[0] = 1.0;
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(count - 1), Eigen::ComputeEigenvectors);
  for (int i = 0; i < count; ++i) {
    nodes[i] = 0.5 * (1.0 + solver.eigenvalues()[i]);
    const double v0 = solver.eigenvectors()(0, i);
    weights[i] = v0 * v0;
  }
}

QuadratureRule make_quadrature_rule(double alpha, int exactness_degree) {
  if (exactness_degree < 0) throw DomainError("make_quadrature_rule: negative exactness degree");
  QuadratureRule rule;
  rule.alpha = alpha;
  rule.exactness_degree = exactness_degree;
  const int radial = (exactness_degree + 3) / 2 + 2;  // ceil((d + 2) / 2) + 2
  gauss_jacobi_unit_interval(alpha, radial, rule.radial_nodes, rule.radial_weights);
  rule.angular_nodes = exactness_degree + 3;
  return rule;
}

Complex inner_product_quadrature(const PowerSeriesPoly& f, const PowerSeriesPoly& g, const QuadratureRule& rule) {
  if (f.is_zero() || g.is_zero()) return {};
  if (f.degree() + g.degree() > rule.exactness_degree) {
    std::ostringstream os;
    os << "inner_product_quadrature: deg f + deg g = " << f.degree() + g.degree() << " exceeds exactness degree "
       << rule.exactness_degree;
    throw DomainError(os.str());
  }
  const int m = rule.angular_nodes;
  std::vector<Complex> unit(m);
  for (int j = 0; j < m; ++j) unit[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
  Complex acc{};
  for (size_t i = 0; i < rule.radial_nodes.size(); ++i) {
    const double r = std::sqrt(rule.radial_nodes[i]);
    Complex ring{};
    for (int j = 0; j < m; ++j) {
      const Complex z = r * unit[j];
      ring += f(z) * std::conj(g(z));
    }
    acc += rule.radial_weights[i] * ring / static_cast<double>(m);
  }
  return acc;
}

Complex inner_product_quadrature(const PowerSeriesPoly& f, const PowerSeriesPoly& g, const BergmanSpaceModel& space) {
  if (f.degree() > space.truncation() || g.degree() > space.truncation())
    throw DomainError("inner_product_quadrature: degree exceeds the space truncation");
  return inner_product_quadrature(f, g, make_quadrature_rule(space.alpha(), 2 * space.truncation()));
}

// ---------------------------------------------------------------------------
// Kernels

KernelSpec::KernelSpec(Variant v) : v_(std::move(v)) {
  if (const auto* g = std::get_if<GeneralizedBergman>(&v_)) {
    if (!(g->s > 0.0)) throw DomainError("KernelSpec: exponent s must be positive");
  } else if (!(std::get<SubBergman>(v_).alpha > -1.0)) {
    throw DomainError("KernelSpec: sub-Bergman alpha must exceed -1");
  }
}

Complex kernel_eval(const KernelSpec& k, Complex z, Complex w) {
  if (!(std::abs(z) < 1.0 && std::abs(w) < 1.0)) throw DomainError("kernel_eval: points must lie in the open disk");
  const Complex base = 1.0 - z * std::conj(w);
  if (const auto* g = std::get_if<GeneralizedBergman>(&k.variant())) return std::pow(base, -g->s);
  const auto& sb = std::get<SubBergman>(k.variant());
  const Complex pz = eval_map(sb.phi, z), pw = eval_map(sb.phi, w);
  return (1.0 - pz * std::conj(pw)) * std::pow(base, -(2.0 + sb.alpha));
}

KernelSeriesValue kernel_series_oracle(double s, Complex z, Complex w, int terms) {
  const Complex x = z * std::conj(w);
  if (!(std::abs(x) < 1.0)) throw DomainError("kernel_series_oracle: requires |z conj(w)| < 1");
  if (terms < 1) return {Complex{}, std::numeric_limits<double>::infinity()};
  Complex acc{}, power = 1.0;
  double c = 1.0;
  for (int n = 0; n < terms; ++n) {
    acc += c * power;
    c *= (n + s) / (n + 1.0);
    power *= x;
  }
  // c and power now belong to index `terms`.
  const double ratio = std::max(1.0, (terms + s) / (terms + 1.0));
  const double q = ratio * std::abs(x);
  const double tail = q < 1.0 ? std::abs(c) * std::abs(power) / (1.0 - q) : std::numeric_limits<double>::infinity();
  return {acc, tail};
}

}  // namespace subbergman
