#pragma once

#include <span>
#include <string>
#include <vector>

#include "gheat/graph.hpp"

namespace gheat {

/// Modified Bessel function of the first kind, integer order. Ascending power
/// series for small arguments, Miller backward recurrence normalized by
/// I_0 + 2 sum_k I_k = e^t for large ones. Validated range: 0 <= t <= 500,
/// 0 <= n <= 200 (relative accuracy ~1e-12 wherever the value is
/// representable).
double bessel_i(int n, double t);

/// Heat kernel of the normalized Laplacian on the one-dimensional lattice:
/// p_t(x,y) = e^{-t} I_d(t) / 2 with d = |x-y| and m = 2 everywhere.
/// Ground truth for this closed form is the truncated-window kernel; the two
/// routes are cross-checked, so a bug in either shows up as disagreement.
double pang_kernel(int d, double t);

/// Window size sufficient for 1e-8 agreement between pang_kernel and the
/// Dirichlet kernel on the lattice window [-n, n].
int pang_window_size(int d, double t);

struct PangComparison {
  int d = 0;
  double t = 0.0;
  double oracle_p = 0.0;   // closed form
  double window_p = 0.0;   // truncated-lattice kernel
  double ratio = 0.0;      // window_p / oracle_p
  std::string regime;      // "t<=d" or "d<=t"
  double envelope_ratio = 0.0;  // p * e^{zeta_1(t,d)} * max(t,d)^{1/2}
};

struct EnvelopeScan {
  std::vector<PangComparison> cells;
  double min_ratio = 0.0;   // over envelope ratios
  double max_ratio = 0.0;
  double measured_c = 0.0;  // max(max_ratio, 1/min_ratio)
  double max_window_mismatch = 0.0;  // max |ratio - 1| against the window kernel
};

/// Sweeps Pang's two-sided envelope over a (d, t) grid and records the
/// empirical constant C. One shared window graph, sized for the whole grid,
/// supplies the cross-check values.
EnvelopeScan envelope_ratio_scan(const std::vector<int>& ds, const std::vector<double>& ts);

/// Least-squares slope of log p_t against t over the last decade of the grid
/// (t >= t_max / 10). Kernel values must be strictly positive.
double decay_slope(std::span<const double> ts, std::span<const double> ps);

}  // namespace gheat
