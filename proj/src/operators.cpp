#include "gheat/operators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace gheat {

VertexFunction Operator::apply(const VertexFunction& f) const {
  if (f.size() != size()) throw InputError("Operator::apply: dimension mismatch");
  return matrix_ * f;
}

Eigen::MatrixXd Operator::symmetrized() const {
  const int n = size();
  Eigen::VectorXd sqrt_m = measure_.array().sqrt();
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = sqrt_m[i] * matrix_(i, j) / sqrt_m[j];
  // Force exact symmetry; the formula is symmetric up to rounding.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

double Operator::spectral_radius_bound() const {
  double bound = 0.0;
  for (int i = 0; i < size(); ++i)
    bound = std::max(bound, matrix_.row(i).cwiseAbs().sum());
  return bound;
}

Operator laplacian(const WeightedGraph& g) {
  const int n = g.size();
  Operator op;
  op.matrix_ = Eigen::MatrixXd::Zero(n, n);
  op.measure_.resize(n);
  op.domain_.resize(n);
  op.whole_graph_ = true;
  for (Index x = 0; x < n; ++x) {
    op.domain_[x] = x;
    op.measure_[x] = g.measure(x);
    double off_sum = 0.0;
    for (const auto& [y, mu] : g.neighbors(x)) {
      if (y == x) continue;  // self-loops cancel in f(y) - f(x)
      op.matrix_(x, y) = mu / g.measure(x);
      off_sum += mu;
    }
    op.matrix_(x, x) = -off_sum / g.measure(x);
  }
  return op;
}

Operator dirichlet_laplacian(const WeightedGraph& g, const VertexSet& omega) {
  if (omega.empty()) throw InputError("dirichlet_laplacian: empty domain");
  if (!is_valid_vertex_set(g, omega))
    throw InputError("dirichlet_laplacian: invalid vertex set");
  const int k = static_cast<int>(omega.size());
  std::vector<int> local(g.size(), -1);
  for (int i = 0; i < k; ++i) local[omega[i]] = i;

  Operator op;
  op.matrix_ = Eigen::MatrixXd::Zero(k, k);
  op.measure_.resize(k);
  op.domain_ = omega;
  op.whole_graph_ = (k == g.size());
  for (int i = 0; i < k; ++i) {
    Index x = omega[i];
    op.measure_[i] = g.measure(x);
    double off_sum = 0.0;
    for (const auto& [y, mu] : g.neighbors(x)) {
      if (y == x) continue;
      off_sum += mu;  // full degree: the zero extension still feels the edge
      if (local[y] >= 0) op.matrix_(i, local[y]) = mu / g.measure(x);
    }
    op.matrix_(i, i) = -off_sum / g.measure(x);
  }
  return op;
}

double quadratic_form(const WeightedGraph& g, const VertexFunction& f) {
  if (f.size() != g.size()) throw InputError("quadratic_form: dimension mismatch");
  double q = 0.0;
  for (Index x = 0; x < g.size(); ++x)
    for (const auto& [y, mu] : g.neighbors(x)) {
      double d = f[y] - f[x];
      q += 0.5 * mu * d * d;  // each unordered pair appears twice in the scan
    }
  return q;
}

namespace {

// Smallest eigenpair of the symmetric PSD matrix A = -symmetrized Laplacian,
// by Lanczos with full reorthogonalization. Whole-graph operators start from
// the constant direction (the known kernel of A), Dirichlet ones from a
// deterministic pseudorandom vector.
void lanczos_bottom(const Eigen::MatrixXd& a, const Eigen::VectorXd& start,
                    int max_steps, double tol, double& value, Eigen::VectorXd& vec,
                    double& residual) {
  const int n = static_cast<int>(a.rows());
  const int m = std::min(max_steps, n);
  Eigen::MatrixXd basis(n, m);
  Eigen::VectorXd alpha(m), beta(m);
  Eigen::VectorXd v = start.normalized();
  basis.col(0) = v;
  Eigen::VectorXd w;
  int steps = 0;
  for (int j = 0; j < m; ++j) {
    w = a * basis.col(j);
    alpha[j] = basis.col(j).dot(w);
    w -= alpha[j] * basis.col(j);
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    // full reorthogonalization
    for (int i = 0; i <= j; ++i) w -= basis.col(i).dot(w) * basis.col(i);
    steps = j + 1;
    double nw = w.norm();
    if (j + 1 < m) {
      if (nw < tol) break;
      beta[j] = nw;
      basis.col(j + 1) = w / nw;
    }
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
  for (int j = 0; j < steps; ++j) {
    t(j, j) = alpha[j];
    if (j + 1 < steps) {
      t(j, j + 1) = beta[j];
      t(j + 1, j) = beta[j];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  value = es.eigenvalues()(0);
  vec = basis.leftCols(steps) * es.eigenvectors().col(0);
  vec.normalize();
  residual = (a * vec - value * vec).norm();
}

}  // namespace

SpectralData spectral_bottom(const Operator& op, const SpectralOptions& opts) {
  const int n = op.size();
  Eigen::MatrixXd a = -op.symmetrized();
  Eigen::VectorXd sqrt_m = op.measure().array().sqrt();
  SpectralData out;

  if (n <= opts.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
      throw Error("spectral_bottom: dense eigensolver did not converge");
    out.eigenvalues = es.eigenvalues();
    // Clamp the tiny negative rounding of the zero mode: -Delta is PSD.
    const double clamp = 1e-12 * std::max(1.0, a.norm());
    for (int i = 0; i < n; ++i)
      if (out.eigenvalues[i] < 0.0 && out.eigenvalues[i] > -clamp) out.eigenvalues[i] = 0.0;
    out.residual_max = 0.0;
    for (int i = 0; i < n; ++i) {
      double r = (a * es.eigenvectors().col(i) - es.eigenvalues()(i) * es.eigenvectors().col(i))
                     .norm();
      out.residual_max = std::max(out.residual_max, r);
    }
    // Map back to vertex coordinates; columns become m-orthonormal.
    out.eigenvectors = sqrt_m.cwiseInverse().asDiagonal() * es.eigenvectors();
    out.full = true;
  } else {
    Eigen::VectorXd start;
    if (op.is_whole_graph())
      start = sqrt_m;  // known kernel of a: deflation target and exact bottom
    else {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
      std::normal_distribution<double> dist;
      start.resize(n);
      for (int i = 0; i < n; ++i) start[i] = dist(rng);
    }
    double value = 0.0, residual = 0.0;
    Eigen::VectorXd w;
    lanczos_bottom(a, start, opts.lanczos_max_steps, opts.lanczos_tol, value, w, residual);
    out.eigenvalues = Eigen::VectorXd::Constant(1, std::max(value, 0.0));
    out.eigenvectors = sqrt_m.cwiseInverse().asDiagonal() * w;
    out.residual_max = residual;
    out.full = false;
  }
  return out;
}

double rayleigh_quotient(const Operator& op, const VertexFunction& f) {
  if (f.size() != op.size()) throw InputError("rayleigh_quotient: dimension mismatch");
  double denom = 0.0;
  for (int i = 0; i < op.size(); ++i) denom += op.measure()[i] * f[i] * f[i];
  if (denom == 0.0) throw InputError("rayleigh_quotient: zero function");
  VertexFunction lf = op.apply(f);
  double num = 0.0;
  for (int i = 0; i < op.size(); ++i) num += op.measure()[i] * (-lf[i]) * f[i];
  return num / denom;
}

}  // namespace gheat
