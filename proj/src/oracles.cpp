#include "gheat/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "gheat/dgg.hpp"
#include "gheat/heat.hpp"

namespace gheat {

namespace {

constexpr double kSeriesThreshold = 30.0;

double bessel_series(int n, double t) {
  // I_n(t) = sum_k (t/2)^{n+2k} / (k! (n+k)!), all terms positive.
  const double half = 0.5 * t;
  const double log_term0 = n * std::log(half) - std::lgamma(n + 1.0);
  double series = 1.0;  // term0 factored out
  double c = 1.0;
  for (int k = 0; k < 400; ++k) {
    c *= half * half / ((k + 1.0) * (n + k + 1.0));
    series += c;
    if (c < 1e-18 * series) break;
  }
  double log_value = log_term0 + std::log(series);
  if (log_value < std::log(std::numeric_limits<double>::min()) - 2.0) return 0.0;
  return std::exp(log_term0) * series;
}

double bessel_miller(int n, double t) {
  const double top = std::max<double>(n, std::ceil(t));
  const int start = static_cast<int>(top + std::ceil(10.0 * std::sqrt(top)) + 20.0);
  double b_above = 0.0;        // b_{k+1}
  double b_here = 1e-250;      // b_k, room to grow over the descent
  double norm = 0.0;           // accumulates b_0 + 2 sum_{k>=1} b_k
  double recorded = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k == n) recorded = b_here;
    if (k == 0)
      norm += b_here;
    else
      norm += 2.0 * b_here;
    double b_below = b_above + (2.0 * k / t) * b_here;
    b_above = b_here;
    b_here = b_below;
    if (std::abs(b_here) > 1e280) {  // safety rescale; not expected for t <= 500
      b_here *= 1e-280;
      b_above *= 1e-280;
      norm *= 1e-280;
      recorded *= 1e-280;
    }
  }
  return (recorded / norm) * std::exp(t);
}

}  // namespace

double bessel_i(int n, double t) {
  if (n < 0) throw InputError("bessel_i: order must be nonnegative");
  if (!(t >= 0.0)) throw InputError("bessel_i: argument must be nonnegative");
  if (n > 200 || t > 500.0)
    throw InputError("bessel_i: outside the validated range n <= 200, t <= 500");
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  if (t < kSeriesThreshold) return bessel_series(n, t);
  return bessel_miller(n, t);
}

double pang_kernel(int d, double t) {
  if (d < 0) throw InputError("pang_kernel: distance must be nonnegative");
  if (!(t >= 0.0)) throw InputError("pang_kernel: time must be nonnegative");
  return 0.5 * std::exp(-t) * bessel_i(d, t);
}

int pang_window_size(int d, double t) {
  return d + static_cast<int>(std::ceil(10.0 * std::sqrt(t))) + 20;
}

EnvelopeScan envelope_ratio_scan(const std::vector<int>& ds, const std::vector<double>& ts) {
  if (ds.empty() || ts.empty()) throw InputError("envelope_ratio_scan: empty grid");
  int n_win = 0;
  for (int d : ds) {
    if (d < 1) throw InputError("envelope_ratio_scan: d must be >= 1");
    for (double t : ts) n_win = std::max(n_win, pang_window_size(d, t));
  }
  WeightedGraph window = truncate_lattice(n_win, MeasurePolicy::Normalized);
  HeatPropagator prop{laplacian(window)};
  const Index origin = window.index_of("0");

  EnvelopeScan scan;
  scan.min_ratio = kInf;
  scan.max_ratio = 0.0;
  for (int d : ds)
    for (double t : ts) {
      PangComparison cell;
      cell.d = d;
      cell.t = t;
      cell.oracle_p = pang_kernel(d, t);
      // column keyed at the origin so the whole scan shares one apply per t;
      // the uniformized route keeps relative accuracy on the deep tails
      cell.window_p = prop.kernel_entry_accurate(origin + d, origin, t);
      cell.ratio = cell.window_p / cell.oracle_p;
      cell.regime = t <= d ? "t<=d" : "d<=t";
      double z = zeta({1.0, t, static_cast<double>(d)});
      cell.envelope_ratio = cell.oracle_p * std::exp(z) * std::sqrt(std::max(t, double(d)));
      scan.min_ratio = std::min(scan.min_ratio, cell.envelope_ratio);
      scan.max_ratio = std::max(scan.max_ratio, cell.envelope_ratio);
      scan.max_window_mismatch =
          std::max(scan.max_window_mismatch, std::abs(cell.ratio - 1.0));
      scan.cells.push_back(std::move(cell));
    }
  scan.measured_c = std::max(scan.max_ratio, 1.0 / scan.min_ratio);
  return scan;
}

double decay_slope(std::span<const double> ts, std::span<const double> ps) {
  if (ts.size() != ps.size() || ts.size() < 2)
    throw InputError("decay_slope: need matching grids with at least two points");
  for (double p : ps)
    if (!(p > 0.0))
      throw InputError("decay_slope: kernel values must be strictly positive");
  const double t_max = *std::max_element(ts.begin(), ts.end());
  const double cutoff = t_max / 10.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < cutoff) continue;
    double x = ts[i], y = std::log(ps[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw InputError("decay_slope: too few points in the last decade");
  double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace gheat
