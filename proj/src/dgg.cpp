#include "gheat/dgg.hpp"

#include <algorithm>
#include <cmath>

namespace gheat {

double cosh_minus_one(double u) {
  double s = std::sinh(0.5 * u);
  return 2.0 * s * s;
}

namespace {

void validate(const ZetaParams& p) {
  if (!(p.s > 0.0) || std::isinf(p.s)) throw InputError("zeta: jump size s must be positive and finite");
  if (!(p.t > 0.0)) throw InputError("zeta: time t must be positive");
  if (std::isnan(p.r) || p.r < 0.0) throw InputError("zeta: distance r must be nonnegative");
}

}  // namespace

double zeta(const ZetaParams& p) {
  validate(p);
  if (std::isinf(p.r)) return kInf;
  if (p.r == 0.0) return 0.0;
  const double x = p.r * p.s;
  const double t = p.t;
  double core;
  if (x < 1e150) {
    // sqrt(t^2+x^2) - t rewritten as x^2 / (sqrt(t^2+x^2) + t): no cancellation
    // in the large-time regime x << t where zeta ~ x^2 / (2t).
    core = x * std::asinh(x / t) - x * x / (std::hypot(t, x) + t);
  } else {
    // x dominates everything; sqrt(t^2+x^2) = x + t^2/(2x) to double precision.
    core = x * std::asinh(x / t) - x + t - t * t / (2.0 * x);
  }
  return std::max(core / (p.s * p.s), 0.0);
}

ZetaVariational zeta_variational(const ZetaParams& p) {
  validate(p);
  if (std::isinf(p.r)) return {kInf, kInf};
  if (p.r == 0.0) return {0.0, 0.0};  // infimum attained in the limit kappa -> 0+

  const double s = p.s, t = p.t, r = p.r;
  const auto objective = [&](double kappa) {
    return (t / (s * s)) * cosh_minus_one(0.5 * kappa * s) - 0.5 * kappa * r;
  };
  // Stationarity sinh(kappa s / 2) = rs / t pins the minimum; the objective is
  // strictly convex, so a bracket around kappa* certainly contains it.
  const double kappa_star = (2.0 / s) * std::asinh(r * s / t);
  double lo = kappa_star / 4.0;
  double hi = kappa_star * 4.0;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - golden * (b - a);
  double d = a + golden * (b - a);
  double fc = objective(c), fd = objective(d);
  for (int iter = 0; iter < 200 && (b - a) > 1e-13 * (1.0 + kappa_star); ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - golden * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + golden * (b - a);
      fd = objective(d);
    }
  }
  double kappa_opt = 0.5 * (a + b);
  return {std::max(-objective(kappa_opt), 0.0), kappa_opt};
}

namespace {

double exp_envelope(double lambda, double t, double z) {
  // e^{-lambda t - zeta}; zeta = +inf collapses the envelope to exactly 0.
  if (std::isinf(z)) return 0.0;
  return std::exp(-lambda * t - z);
}

void require_hypotheses(const IntrinsicCertificate& cert) {
  if (!cert.is_intrinsic)
    throw HypothesisError("metric is not intrinsic (max ratio " +
                          std::to_string(cert.max_ratio) + ")");
  if (!(cert.jump_size > 0.0))
    throw HypothesisError("jump size must be positive");
  if (std::isinf(cert.jump_size))
    throw HypothesisError("jump size must be finite");
}

void require_whole_graph(const WeightedGraph& g, const HeatPropagator& prop) {
  if (!prop.op().is_whole_graph() || prop.op().size() != g.size())
    throw InputError("dgg check: propagator must act on the whole graph");
}

void require_support(const VertexFunction& f, const VertexSet& a, int n,
                     const char* what) {
  std::vector<char> inside(n, 0);
  for (Index x : a) inside[x] = 1;
  for (Index x = 0; x < n; ++x)
    if (!inside[x] && f[x] != 0.0)
      throw HypothesisError(std::string("dgg check: ") + what +
                            " is not supported in its set");
}

// sum_{x in A, y in B} m_x m_y p_t(x,y) = <e^{t Delta} 1_B, 1_A>_m. For small
// c*t the uniformized columns keep relative accuracy on sub-Gaussian tails
// far below the spectral noise floor; past the budget the spectral apply is
// accurate enough because the envelope itself is large.
double heat_content(const WeightedGraph& g, const HeatPropagator& prop,
                    const VertexSet& a, const VertexSet& b, double t) {
  if (prop.prefers_uniformized(t)) {
    double sum = 0.0;
    for (Index y : b) {
      VertexFunction column = prop.uniformized_column(y, t);
      for (Index x : a) sum += g.measure(x) * column[x];
    }
    return sum;
  }
  VertexFunction u = prop.apply(indicator(g, b), t);
  double sum = 0.0;
  for (Index x : a) sum += g.measure(x) * u[x];
  return sum;
}

// |<e^{t Delta} f, g>|: the positive/negative parts of f propagate separately
// through the nonnegative series, so the four quadrant terms each carry full
// relative accuracy and the final cancellation is bounded by the set-level
// envelope itself.
double functional_lhs(const WeightedGraph& g, const HeatPropagator& prop,
                      const VertexFunction& f, const VertexFunction& gfn, double t) {
  if (prop.prefers_uniformized(t)) {
    VertexFunction f_pos = f.cwiseMax(0.0);
    VertexFunction f_neg = (-f).cwiseMax(0.0);
    VertexFunction u_pos = prop.uniformized_apply(f_pos, t);
    VertexFunction u_neg = prop.uniformized_apply(f_neg, t);
    return std::abs(inner_m(g, u_pos - u_neg, gfn));
  }
  return std::abs(inner_m(g, prop.apply(f, t), gfn));
}

}  // namespace

DggReport check_dgg_sets(const WeightedGraph& g, const HeatPropagator& prop,
                         const PseudoMetric& rho, const IntrinsicCertificate& cert,
                         const VertexSet& a, const VertexSet& b, double t, double lambda,
                         const CheckOptions& opts) {
  require_hypotheses(cert);
  require_whole_graph(g, prop);
  if (a.empty() || b.empty()) throw InputError("check_dgg_sets: empty set");
  if (!(t > 0.0)) throw InputError("check_dgg_sets: t must be positive");

  DggReport rep;
  rep.kind = "sets";
  rep.t = t;
  rep.lambda = lambda;
  rep.s = cert.jump_size;
  rep.r = set_distance(rho, a, b);
  rep.lhs = heat_content(g, prop, a, b, t);
  const double mass = std::sqrt(g.set_measure(a) * g.set_measure(b));
  rep.rhs = mass * exp_envelope(lambda, t, zeta({rep.s, t, rep.r}));
  rep.slack = rep.rhs - rep.lhs;
  rep.tolerance = rep.rhs > 0.0 ? opts.rel_tol * rep.rhs : opts.zero_rhs_floor * mass;
  rep.holds = rep.slack >= -rep.tolerance;
  return rep;
}

DggReport check_dgg_sets(const WeightedGraph& g, const PseudoMetric& rho,
                         const VertexSet& a, const VertexSet& b, double t, double lambda,
                         const CheckOptions& opts) {
  HeatPropagator prop{laplacian(g)};
  return check_dgg_sets(g, prop, rho, certify_intrinsic(g, rho, opts.intrinsic_tol), a, b,
                        t, lambda, opts);
}

DggReport check_dgg_functional(const WeightedGraph& g, const HeatPropagator& prop,
                               const PseudoMetric& rho, const IntrinsicCertificate& cert,
                               const VertexFunction& f, const VertexFunction& gfn,
                               const VertexSet& a, const VertexSet& b, double t,
                               double lambda, const CheckOptions& opts) {
  require_hypotheses(cert);
  require_whole_graph(g, prop);
  if (a.empty() || b.empty()) throw InputError("check_dgg_functional: empty set");
  if (!(t > 0.0)) throw InputError("check_dgg_functional: t must be positive");
  if (f.size() != g.size() || gfn.size() != g.size())
    throw InputError("check_dgg_functional: dimension mismatch");
  require_support(f, a, g.size(), "f");
  require_support(gfn, b, g.size(), "g");

  DggReport rep;
  rep.kind = "functional";
  rep.t = t;
  rep.lambda = lambda;
  rep.s = cert.jump_size;
  rep.r = set_distance(rho, a, b);
  rep.lhs = functional_lhs(g, prop, f, gfn, t);
  const double mass = norm_m(g, f) * norm_m(g, gfn);
  rep.rhs = mass * exp_envelope(lambda, t, zeta({rep.s, t, rep.r}));
  rep.slack = rep.rhs - rep.lhs;
  rep.tolerance = rep.rhs > 0.0 ? opts.rel_tol * rep.rhs : opts.zero_rhs_floor * mass;
  rep.holds = rep.slack >= -rep.tolerance;
  return rep;
}

DggReport check_dgg_functional(const WeightedGraph& g, const PseudoMetric& rho,
                               const VertexFunction& f, const VertexFunction& gfn,
                               const VertexSet& a, const VertexSet& b, double t,
                               double lambda, const CheckOptions& opts) {
  HeatPropagator prop{laplacian(g)};
  return check_dgg_functional(g, prop, rho, certify_intrinsic(g, rho, opts.intrinsic_tol),
                              f, gfn, a, b, t, lambda, opts);
}

double davies_bound(const WeightedGraph& g, Index x, Index y, double t, double lambda) {
  if (g.measure_policy() != MeasurePolicy::Normalized)
    throw HypothesisError("davies_bound: normalized measure policy required");
  if (!(t > 0.0)) throw InputError("davies_bound: t must be positive");
  double d = combinatorial_distance(g, x, y);
  double z = zeta({1.0, t, d});
  return exp_envelope(lambda, t, z) / std::sqrt(g.measure(x) * g.measure(y));
}

DggReport check_davies(const WeightedGraph& g, const HeatPropagator& prop, Index x,
                       Index y, double t, double lambda, const CheckOptions& opts) {
  require_whole_graph(g, prop);
  DggReport rep;
  rep.kind = "davies";
  rep.t = t;
  rep.lambda = lambda;
  rep.s = 1.0;
  rep.r = combinatorial_distance(g, x, y);
  rep.lhs = prop.kernel_entry_accurate(x, y, t);
  rep.rhs = davies_bound(g, x, y, t, lambda);
  rep.slack = rep.rhs - rep.lhs;
  const double mass = 1.0 / std::sqrt(g.measure(x) * g.measure(y));
  rep.tolerance = rep.rhs > 0.0 ? opts.rel_tol * rep.rhs : opts.zero_rhs_floor * mass;
  rep.holds = rep.slack >= -rep.tolerance;
  return rep;
}

ImpReport check_imp_monotonicity(const WeightedGraph& g, const PseudoMetric& rho,
                                 const VertexSet& omega_set, const VertexFunction& f0,
                                 const VertexFunction& omega_fn, double kappa,
                                 const std::vector<double>& time_grid,
                                 const CheckOptions& opts) {
  if (time_grid.empty()) throw InputError("check_imp_monotonicity: empty time grid");
  if (time_grid.front() < 0.0)
    throw InputError("check_imp_monotonicity: grid must start at t >= 0");
  for (size_t i = 0; i + 1 < time_grid.size(); ++i)
    if (!(time_grid[i] < time_grid[i + 1]))
      throw InputError("check_imp_monotonicity: grid must be strictly increasing");
  if (kappa < 0.0) throw InputError("check_imp_monotonicity: kappa must be >= 0");

  IntrinsicCertificate cert = certify_intrinsic(g, rho, opts.intrinsic_tol);
  require_hypotheses(cert);
  double lc = lipschitz_constant(rho, omega_fn);
  if (lc > kappa * (1.0 + 1e-9) + 1e-300)
    throw HypothesisError("check_imp_monotonicity: omega is not kappa-Lipschitz (constant " +
                          std::to_string(lc) + ")");

  ImpReport rep;
  rep.kappa = kappa;
  rep.s = cert.jump_size;
  rep.tolerance = opts.imp_tol;

  Operator op = dirichlet_laplacian(g, omega_set);
  rep.lambda1 = spectral_bottom(op).bottom();
  rep.rate = 2.0 * rep.lambda1 -
             (2.0 / (rep.s * rep.s)) * cosh_minus_one(0.5 * kappa * rep.s);

  // Propagate once; the grid reuses the same decomposition.
  std::vector<char> inside(g.size(), 0);
  for (Index x : omega_set) inside[x] = 1;
  for (Index x = 0; x < g.size(); ++x)
    if (!inside[x] && f0[x] != 0.0)
      throw InputError("check_imp_monotonicity: f0 not supported in Omega");
  HeatPropagator prop{std::move(op)};
  VertexFunction f0_local(prop.op().size());
  for (int i = 0; i < prop.op().size(); ++i) f0_local[i] = f0[prop.op().domain()[i]];

  rep.grid = time_grid;
  for (double t : time_grid) {
    VertexFunction u_local = prop.apply(f0_local, t);
    VertexFunction u = VertexFunction::Zero(g.size());
    for (int i = 0; i < prop.op().size(); ++i) u[prop.op().domain()[i]] = u_local[i];
    WeightedEnergy e = weighted_energy(g, u, omega_fn);
    double log_g = rep.rate * t + e.log_value;
    rep.log_g_values.push_back(log_g);
    double g_val = std::exp(log_g);
    rep.g_values.push_back(g_val);
  }
  for (size_t i = 0; i + 1 < rep.log_g_values.size(); ++i) {
    double prev = rep.log_g_values[i];
    double next = rep.log_g_values[i + 1];
    double increase;
    if (prev == -kInf)
      increase = next == -kInf ? 0.0 : kInf;
    else
      increase = std::expm1(next - prev);
    rep.max_relative_increase = std::max(rep.max_relative_increase, increase);
  }
  rep.nonincreasing = rep.max_relative_increase <= opts.imp_tol;
  return rep;
}

}  // namespace gheat
