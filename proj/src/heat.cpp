#include "gheat/heat.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace gheat {

namespace {

constexpr int kDenseHeatLimit = 2000;

VertexFunction spectral_apply(const SpectralData& eig, const VertexFunction& m,
                              const VertexFunction& f0, double t) {
  // e^{tD} f0 = sum_i e^{-lambda_i t} <f0, v_i>_m v_i
  const auto& v = eig.eigenvectors;
  Eigen::VectorXd coeff = v.transpose() * (m.array() * f0.array()).matrix();
  coeff.array() *= (-eig.eigenvalues.array() * t).exp();
  return v * coeff;
}

// Dormand-Prince 5(4) for the linear system f' = L f, error controlled per
// unit step at `tol` absolute, step size capped by the stability limit from
// the Gershgorin spectral radius bound.
VertexFunction dopri_apply(const Operator& op, const VertexFunction& f0, double t,
                           double tol) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200, e6 = 11.0 / 84 - 187.0 / 2100,
                          e7 = -1.0 / 40;

  const Eigen::MatrixXd& l = op.matrix();
  const double rho = std::max(op.spectral_radius_bound(), 1e-12);
  const double h_stab = 2.5 / rho;

  VertexFunction y = f0;
  double remaining = t;
  double h = std::min(h_stab, remaining);
  while (remaining > 0.0) {
    h = std::min({h, h_stab, remaining});
    VertexFunction k1 = l * y;
    VertexFunction k2 = l * (y + h * a21 * k1);
    VertexFunction k3 = l * (y + h * (a31 * k1 + a32 * k2));
    VertexFunction k4 = l * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    VertexFunction k5 = l * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    VertexFunction k6 = l * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    VertexFunction y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    VertexFunction k7 = l * y5;
    double err =
        (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).norm();
    double target = tol * std::max(h, 1e-300);
    if (err <= target || h <= 1e-14 * t) {
      y = y5;
      remaining -= h;
    }
    double scale = 0.9 * std::pow(target / std::max(err, 1e-300), 0.2);
    h *= std::clamp(scale, 0.2, 5.0);
  }
  return y;
}

}  // namespace

HeatPropagator::HeatPropagator(Operator op) : op_(std::move(op)) {
  eig_ = std::make_shared<SpectralData>(spectral_bottom(op_));
  if (!eig_->full)
    throw Error("HeatPropagator: operator above the dense eigensolve limit");

  // Uniformized representation P = I + L/c, stored sparse.
  const int n = op_.size();
  const Eigen::MatrixXd& l = op_.matrix();
  for (int i = 0; i < n; ++i) rate_ = std::max(rate_, -l(i, i));
  row_ptr_.assign(n + 1, 0);
  if (rate_ > 0.0) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double p = l(i, j) / rate_ + (i == j ? 1.0 : 0.0);
        if (p != 0.0) {
          col_.push_back(j);
          val_.push_back(p);
        }
      }
      row_ptr_[i + 1] = static_cast<int>(col_.size());
    }
  }
}

VertexFunction HeatPropagator::uniformized_apply(const VertexFunction& f, double t) const {
  if (t < 0.0) throw InputError("heat: negative time");
  if (f.size() != op_.size()) throw InputError("heat: dimension mismatch");
  if (f.minCoeff() < 0.0)
    throw InputError("uniformized_apply: data must be entrywise nonnegative");
  if (t == 0.0 || rate_ == 0.0) return f;

  const int n = op_.size();
  VertexFunction u = f;
  double remaining = t;
  while (remaining > 0.0) {
    // keep c*dt small enough that e^{-c dt} stays in the normal double range
    double dt = std::min(remaining, 600.0 / rate_);
    remaining -= dt;
    const double ct = rate_ * dt;
    double weight = std::exp(-ct);
    VertexFunction acc = weight * u;
    VertexFunction v = u;
    VertexFunction w(n);
    for (int k = 1; weight > 0.0 && k < 1000000; ++k) {
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int idx = row_ptr_[i]; idx < row_ptr_[i + 1]; ++idx)
          s += val_[idx] * v[col_[idx]];
        w[i] = s;
      }
      v.swap(w);
      weight *= ct / k;
      acc += weight * v;
    }
    u = std::move(acc);
  }
  return u;
}

VertexFunction HeatPropagator::uniformized_column(int y, double t) const {
  if (y < 0 || y >= op_.size()) throw InputError("uniformized_column: index out of range");
  std::pair<int, std::uint64_t> key{y, 0};
  static_assert(sizeof(double) == sizeof(std::uint64_t));
  std::memcpy(&key.second, &t, sizeof(double));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = column_cache_.find(key);
  if (it != column_cache_.end()) return it->second;
  VertexFunction e_y = VertexFunction::Zero(op_.size());
  e_y[y] = 1.0;
  VertexFunction column = uniformized_apply(e_y, t);
  column_cache_.emplace(key, column);
  return column;
}

double HeatPropagator::kernel_entry_accurate(int x, int y, double t) const {
  if (prefers_uniformized(t))
    return uniformized_column(y, t)[x] / op_.measure()[y];
  return kernel_entry(x, y, t);
}

VertexFunction HeatPropagator::apply(const VertexFunction& f0, double t) const {
  if (t < 0.0) throw InputError("heat: negative time");
  if (f0.size() != op_.size()) throw InputError("heat: dimension mismatch");
  if (t == 0.0) return f0;
  return spectral_apply(*eig_, op_.measure(), f0, t);
}

Eigen::MatrixXd HeatPropagator::kernel(double t) const {
  if (t < 0.0) throw InputError("heat: negative time");
  const auto& v = eig_->eigenvectors;
  Eigen::VectorXd decay = (-eig_->eigenvalues.array() * t).exp();
  return v * decay.asDiagonal() * v.transpose();
}

double HeatPropagator::kernel_entry(int i, int j, double t) const {
  if (t < 0.0) throw InputError("heat: negative time");
  const auto& v = eig_->eigenvectors;
  double s = 0.0;
  for (int k = 0; k < v.cols(); ++k)
    s += v(i, k) * std::exp(-eig_->eigenvalues[k] * t) * v(j, k);
  return s;
}

HeatSolution::HeatSolution(Operator op, VertexFunction f0, HeatMethod method,
                           double ode_tol)
    : op_(std::move(op)), f0_(std::move(f0)), method_(method), ode_tol_(ode_tol) {
  if (f0_.size() != op_.size()) throw InputError("HeatSolution: dimension mismatch");
  if (method_ == HeatMethod::Auto)
    method_ = op_.size() <= kDenseHeatLimit ? HeatMethod::Spectral
                                            : HeatMethod::OdeIntegration;
  if (method_ == HeatMethod::Spectral)
    eig_ = std::make_shared<SpectralData>(spectral_bottom(op_));
}

VertexFunction HeatSolution::at(double t) const {
  if (t < 0.0) throw InputError("heat: negative time");
  if (t == 0.0) return f0_;
  if (method_ == HeatMethod::Spectral)
    return spectral_apply(*eig_, op_.measure(), f0_, t);
  return dopri_apply(op_, f0_, t, ode_tol_);
}

VertexFunction heat_apply(const Operator& op, const VertexFunction& f0, double t,
                          HeatMethod method, double ode_tol) {
  HeatSolution sol(op, f0, method, ode_tol);
  return sol.at(t);
}

HeatKernel heat_kernel(const WeightedGraph& g, double t) {
  HeatPropagator prop{laplacian(g)};
  return HeatKernel{t, prop.kernel(t)};
}

KernelInvariantReport kernel_invariants(const WeightedGraph& g, const HeatKernel& k) {
  KernelInvariantReport rep;
  const auto& p = k.p;
  const int n = static_cast<int>(p.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs(p(i, j) - p(j, i)));
      rep.min_entry = std::min(rep.min_entry, p(i, j));
    }
  if (n == g.size()) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += g.measure(j) * p(i, j);
      rep.max_rowsum_deviation = std::max(rep.max_rowsum_deviation, std::abs(s - 1.0));
    }
  }
  return rep;
}

VertexFunction solve_dirichlet_heat(const WeightedGraph& g, const VertexSet& omega,
                                    const VertexFunction& f0, double t) {
  if (f0.size() != g.size()) throw InputError("solve_dirichlet_heat: dimension mismatch");
  std::vector<char> inside(g.size(), 0);
  for (Index x : omega) inside[x] = 1;
  for (Index x = 0; x < g.size(); ++x)
    if (!inside[x] && f0[x] != 0.0)
      throw InputError("solve_dirichlet_heat: initial data not supported in Omega");

  Operator op = dirichlet_laplacian(g, omega);
  VertexFunction f0_local(op.size());
  for (int i = 0; i < op.size(); ++i) f0_local[i] = f0[op.domain()[i]];
  VertexFunction u_local = heat_apply(op, f0_local, t);
  VertexFunction u = VertexFunction::Zero(g.size());
  for (int i = 0; i < op.size(); ++i) u[op.domain()[i]] = u_local[i];
  return u;
}

ExhaustionResult exhaustion_kernel(const WeightedGraph& g,
                                   const std::vector<VertexSet>& nested, Index x, Index y,
                                   double t) {
  if (nested.empty()) throw InputError("exhaustion_kernel: empty exhaustion");
  for (size_t i = 0; i + 1 < nested.size(); ++i)
    if (!std::includes(nested[i + 1].begin(), nested[i + 1].end(), nested[i].begin(),
                       nested[i].end()))
      throw InputError("exhaustion_kernel: sets are not nested");
  ExhaustionResult out;
  for (const auto& omega : nested) {
    if (!std::binary_search(omega.begin(), omega.end(), x) ||
        !std::binary_search(omega.begin(), omega.end(), y))
      throw InputError("exhaustion_kernel: x,y must lie in every subset");
    Operator op = dirichlet_laplacian(g, omega);
    HeatPropagator prop{std::move(op)};
    int xi = static_cast<int>(std::lower_bound(omega.begin(), omega.end(), x) - omega.begin());
    int yi = static_cast<int>(std::lower_bound(omega.begin(), omega.end(), y) - omega.begin());
    out.values.push_back(prop.kernel_entry(xi, yi, t));
  }
  for (size_t i = 0; i + 1 < out.values.size(); ++i) {
    double drop = out.values[i] - out.values[i + 1];
    out.max_decrease = std::max(out.max_decrease, drop);
  }
  out.monotone = out.max_decrease <= 1e-12;
  return out;
}

WeightedEnergy weighted_energy(const WeightedGraph& g, const VertexFunction& f,
                               const VertexFunction& omega) {
  if (f.size() != g.size() || omega.size() != g.size())
    throw InputError("weighted_energy: dimension mismatch");
  WeightedEnergy e;
  const double max_omega = omega.maxCoeff();
  if (max_omega <= 300.0) {
    double sum = 0.0;
    for (Index x = 0; x < g.size(); ++x) {
      if (f[x] == 0.0) continue;  // also guards 0 * e^{+inf} off the support
      sum += g.measure(x) * f[x] * f[x] * std::exp(omega[x]);
    }
    e.value = sum;
    e.log_value = sum > 0.0 ? std::log(sum) : -kInf;
    return e;
  }
  // Log-space accumulation: terms are m_x f^2 e^{omega}, all nonnegative.
  double max_exponent = -kInf;
  std::vector<double> exponents(g.size(), -kInf);
  for (Index x = 0; x < g.size(); ++x) {
    if (f[x] == 0.0) continue;
    exponents[x] = std::log(g.measure(x)) + 2.0 * std::log(std::abs(f[x])) + omega[x];
    max_exponent = std::max(max_exponent, exponents[x]);
  }
  if (max_exponent == -kInf) return e;  // zero energy
  if (max_exponent == kInf) {
    e.value = kInf;
    e.log_value = kInf;
    e.overflowed = true;
    return e;
  }
  double acc = 0.0;
  for (Index x = 0; x < g.size(); ++x)
    if (exponents[x] > -kInf) acc += std::exp(exponents[x] - max_exponent);
  e.log_value = max_exponent + std::log(acc);
  if (e.log_value > std::log(std::numeric_limits<double>::max())) {
    e.value = kInf;
    e.overflowed = true;
  } else {
    e.value = std::exp(e.log_value);
  }
  return e;
}

}  // namespace gheat
