#pragma once

#include <string>
#include <vector>

#include "gheat/heat.hpp"
#include "gheat/metric.hpp"

namespace gheat {

/// Arguments of the rate function zeta_s(t,r). Requires s > 0, t > 0, r >= 0;
/// r = +inf is allowed and sends zeta to +inf.
struct ZetaParams {
  double s = 1.0;
  double t = 1.0;
  double r = 0.0;
};

/// zeta_s(t,r) = (1/s^2) (rs asinh(rs/t) - sqrt(t^2 + r^2 s^2) + t),
/// evaluated in a cancellation-free arrangement. Zero at r = 0, nondecreasing
/// in r, nonincreasing in t; behaves like r^2/(2t) for t >> r.
double zeta(const ZetaParams& p);

struct ZetaVariational {
  double value = 0.0;
  double kappa_opt = 0.0;
};

/// Same quantity as -inf_{kappa>0} [ (1/s^2)(cosh(kappa s/2) - 1) t - kappa r / 2 ],
/// found by golden-section search bracketed around the stationary point
/// kappa* = (2/s) asinh(rs/t). Agrees with zeta to 1e-9 relative.
ZetaVariational zeta_variational(const ZetaParams& p);

/// cosh(u) - 1 without cancellation near u = 0.
double cosh_minus_one(double u);

struct CheckOptions {
  double rel_tol = 1e-10;         // additive slack tolerance, times the rhs
  double zero_rhs_floor = 1e-12;  // times sqrt(m(A)m(B)), for rhs == 0 (disconnected sets)
  double intrinsic_tol = 1e-9;
  double imp_tol = 1e-9;          // admissible relative increase in IMP reports
};

/// One checked inequality instance.
struct DggReport {
  std::string kind;  // "sets" | "functional" | "davies"
  double t = 0.0;
  double lambda = 0.0;
  double s = 0.0;
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;      // rhs - lhs
  double tolerance = 0.0;  // additive tolerance used for the verdict
  bool holds = false;
};

/// Heat content between sets against the Gaussian-type envelope:
/// sum_{x in A, y in B} m_x m_y p_t(x,y) <= sqrt(m(A)m(B)) e^{-lambda t - zeta_s(t, rho(A,B))}.
/// lambda is caller-supplied (spectral bottom or any valid lower bound; 0 is
/// always safe). Refuses non-intrinsic metrics and zero jump size.
DggReport check_dgg_sets(const WeightedGraph& g, const HeatPropagator& prop,
                         const PseudoMetric& rho, const IntrinsicCertificate& cert,
                         const VertexSet& a, const VertexSet& b, double t, double lambda,
                         const CheckOptions& opts = {});

DggReport check_dgg_sets(const WeightedGraph& g, const PseudoMetric& rho,
                         const VertexSet& a, const VertexSet& b, double t, double lambda,
                         const CheckOptions& opts = {});

/// |<e^{t Delta} f, g>| <= e^{-lambda t - zeta_s(t, rho(A,B))} |f| |g| for
/// supp f in A, supp g in B (support enforced exactly).
DggReport check_dgg_functional(const WeightedGraph& g, const HeatPropagator& prop,
                               const PseudoMetric& rho, const IntrinsicCertificate& cert,
                               const VertexFunction& f, const VertexFunction& gfn,
                               const VertexSet& a, const VertexSet& b, double t,
                               double lambda, const CheckOptions& opts = {});

DggReport check_dgg_functional(const WeightedGraph& g, const PseudoMetric& rho,
                               const VertexFunction& f, const VertexFunction& gfn,
                               const VertexSet& a, const VertexSet& b, double t,
                               double lambda, const CheckOptions& opts = {});

/// Davies' pointwise bound for the normalized Laplacian:
/// p_t(x,y) <= exp(-lambda t - zeta_1(t, d(x,y))) / sqrt(m_x m_y).
/// Requires the normalized measure policy.
double davies_bound(const WeightedGraph& g, Index x, Index y, double t, double lambda);

DggReport check_davies(const WeightedGraph& g, const HeatPropagator& prop, Index x,
                       Index y, double t, double lambda, const CheckOptions& opts = {});

/// Integral-maximum-principle check: monotonicity of
/// G(t) = exp(2 lambda_1(Omega) t - (2/s^2)(cosh(kappa s/2) - 1) t) E_Omega(t)
/// along a time grid, where E_Omega(t) = sum m_x f^2(t,x) e^{omega(x)}.
struct ImpReport {
  double kappa = 0.0;
  std::string omega_desc;
  double lambda1 = 0.0;
  double s = 0.0;
  double rate = 0.0;  // 2 lambda_1 - (2/s^2)(cosh(kappa s/2) - 1)
  std::vector<double> grid;
  std::vector<double> g_values;      // +inf where the energy overflows
  std::vector<double> log_g_values;  // always finite unless the energy vanishes
  double max_relative_increase = 0.0;
  double tolerance = 0.0;
  bool nonincreasing = false;
};

ImpReport check_imp_monotonicity(const WeightedGraph& g, const PseudoMetric& rho,
                                 const VertexSet& omega_set, const VertexFunction& f0,
                                 const VertexFunction& omega_fn, double kappa,
                                 const std::vector<double>& time_grid,
                                 const CheckOptions& opts = {});

}  // namespace gheat
