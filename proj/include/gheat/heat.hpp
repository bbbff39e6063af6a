#pragma once

#include <Eigen/Core>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "gheat/operators.hpp"

namespace gheat {

enum class HeatMethod { Auto, Spectral, OdeIntegration };

/// Largest c*t handled by the uniformized series before queries fall back to
/// the spectral expansion. Past this point the Gaussian envelopes are far
/// above the spectral noise floor, so the fallback loses nothing.
inline constexpr double kUniformizationBudget = 500.0;

/// Shared dense eigendecomposition of one operator, for repeated evaluation
/// of e^{t Delta} across a time grid. Construction pays the eigensolve once;
/// all later queries are read-only and safe to run concurrently.
///
/// Besides the spectral expansion it carries a uniformized representation
/// e^{t Delta} = e^{-ct} e^{ct P} with P = I + L/c entrywise nonnegative.
/// Applied to nonnegative data every term of that series is nonnegative, so
/// results keep full relative accuracy however small they are - the spectral
/// route cancels to an absolute noise floor around 1e-16, which would swamp
/// the sub-Gaussian tails the off-diagonal bounds are about.
class HeatPropagator {
 public:
  explicit HeatPropagator(Operator op);

  const Operator& op() const { return op_; }
  const SpectralData& spectrum() const { return *eig_; }

  /// e^{t Delta} f0 by spectral expansion.
  VertexFunction apply(const VertexFunction& f0, double t) const;

  /// Kernel matrix p_t on the domain: p_t(x,y) = sum_i v_i(x) e^{-lambda_i t} v_i(y).
  /// Carries the 1/m_y normalization, so m_x m_y p_t(x,y) is the heat content
  /// between unit masses at x and y.
  Eigen::MatrixXd kernel(double t) const;

  double kernel_entry(int i, int j, double t) const;

  /// Uniformization rate c = max_i |L_ii|.
  double uniformization_rate() const { return rate_; }

  /// True when the positivity-preserving series is the right route for this t.
  bool prefers_uniformized(double t) const { return rate_ * t <= kUniformizationBudget; }

  /// e^{t Delta} f for entrywise-nonnegative f via the uniformized series.
  VertexFunction uniformized_apply(const VertexFunction& f, double t) const;

  /// Cached e^{t Delta} 1_y (= m_y p_t(., y)), nonnegative to full relative
  /// accuracy. Shared across sweep cells that revisit the same (y, t).
  VertexFunction uniformized_column(int y, double t) const;

  /// p_t(x,y) through whichever route is accurate at this t.
  double kernel_entry_accurate(int x, int y, double t) const;

 private:
  Operator op_;
  std::shared_ptr<const SpectralData> eig_;

  // CSR of P = I + L/c
  double rate_ = 0.0;
  std::vector<int> row_ptr_, col_;
  std::vector<double> val_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int, std::uint64_t>, VertexFunction> column_cache_;
};

/// Solution f(t,.) = e^{t Delta} f0 of the (Dirichlet) heat equation, with the
/// solver method and tolerances it was built with. f(0,.) returns f0 exactly.
class HeatSolution {
 public:
  HeatSolution(Operator op, VertexFunction f0, HeatMethod method = HeatMethod::Auto,
               double ode_tol = 1e-10);

  const VertexFunction& initial() const { return f0_; }
  HeatMethod method() const { return method_; }
  double ode_tolerance() const { return ode_tol_; }

  VertexFunction at(double t) const;

 private:
  Operator op_;
  VertexFunction f0_;
  HeatMethod method_;
  double ode_tol_;
  std::shared_ptr<const SpectralData> eig_;
};

struct HeatKernel {
  double t = 0.0;
  Eigen::MatrixXd p;
};

/// Deviations of a kernel from its defining invariants; used by the CSV
/// sidecar and the test suites.
struct KernelInvariantReport {
  double max_asymmetry = 0.0;     // max |p(x,y) - p(y,x)|
  double min_entry = 0.0;         // most negative entry (>= -1e-12 floor expected)
  double max_rowsum_deviation = 0.0;  // max |sum_y m_y p(x,y) - 1|, whole-graph kernels
};

/// e^{t Delta} f0. Auto picks the spectral path for desk-scale operators and
/// adaptive explicit integration above the dense eigensolve crossover.
VertexFunction heat_apply(const Operator& op, const VertexFunction& f0, double t,
                          HeatMethod method = HeatMethod::Auto, double ode_tol = 1e-10);

/// Heat kernel of the whole graph at time t.
HeatKernel heat_kernel(const WeightedGraph& g, double t);

KernelInvariantReport kernel_invariants(const WeightedGraph& g, const HeatKernel& k);

/// Dirichlet heat solution on Omega extended by zero; f0 must be supported in
/// Omega. Result is a full-graph function, zero outside Omega for all t.
VertexFunction solve_dirichlet_heat(const WeightedGraph& g, const VertexSet& omega,
                                    const VertexFunction& f0, double t);

struct ExhaustionResult {
  std::vector<double> values;  // p_t^{Omega_n}(x,y)
  bool monotone = true;        // nondecreasing within 1e-12
  double max_decrease = 0.0;
};

/// Dirichlet kernels along a nested exhaustion Omega_1 c Omega_2 c ... ;
/// domain monotonicity makes the sequence nondecreasing.
ExhaustionResult exhaustion_kernel(const WeightedGraph& g,
                                   const std::vector<VertexSet>& nested, Index x, Index y,
                                   double t);

/// E = sum_x m_x f(x)^2 e^{omega(x)}, switching to log-space accumulation when
/// max omega exceeds 300. log_value is always meaningful; value is +inf when
/// the sum overflows the double range.
struct WeightedEnergy {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  bool overflowed = false;
};

WeightedEnergy weighted_energy(const WeightedGraph& g, const VertexFunction& f,
                               const VertexFunction& omega);

}  // namespace gheat
