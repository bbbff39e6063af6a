#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gheat/dgg.hpp"
#include "gheat/heat.hpp"
#include "gheat/oracles.hpp"
#include "helpers.hpp"

using namespace gheat;

namespace {

// 20-digit reference values for I_n(t) across the validated range.
struct BesselRef {
  int n;
  double t;
  double value;
};
constexpr BesselRef kBesselRefs[] = {
    {0, 1.0, 1.2660658777520084},    {1, 1.0, 0.56515910399248503},
    {0, 0.5, 1.0634833707413235},    {2, 0.25, 0.0078532696598645161},
    {5, 10.0, 777.18828640325996},   {10, 50.0, 1.0715971594776370e20},
    {50, 100.0, 4.8219580855940807e36}, {100, 250.0, 2.4228705607967021e98},
    {200, 500.0, 1.7064233617928463e198}, {0, 500.0, 2.5048094765700781e215},
    {1, 300.0, 4.4683813850369544e128},   {25, 30.0, 33892599.842663748},
};

}  // namespace

TEST_CASE("bessel reference values to 1e-12 relative") {
  for (const auto& ref : kBesselRefs) {
    double got = bessel_i(ref.n, ref.t);
    CHECK(got == doctest::Approx(ref.value).epsilon(1e-12));
  }
}

TEST_CASE("bessel at zero argument") {
  CHECK(bessel_i(0, 0.0) == 1.0);
  CHECK(bessel_i(1, 0.0) == 0.0);
  CHECK(bessel_i(37, 0.0) == 0.0);
}

TEST_CASE("bessel range validation") {
  CHECK_THROWS_AS(bessel_i(-1, 1.0), InputError);
  CHECK_THROWS_AS(bessel_i(0, -1.0), InputError);
  CHECK_THROWS_AS(bessel_i(201, 1.0), InputError);
  CHECK_THROWS_AS(bessel_i(0, 500.5), InputError);
}

TEST_CASE("three-term recurrence holds across the range") {
  for (double t : {0.5, 3.0, 17.0, 40.0, 170.0, 450.0})
    for (int n : {1, 2, 5, 20, 80, 150}) {
      double lhs = bessel_i(n - 1, t) - bessel_i(n + 1, t);
      double rhs = (2.0 * n / t) * bessel_i(n, t);
      if (bessel_i(n, t) == 0.0) continue;  // underflowed tail
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("pang kernel basics") {
  CHECK(pang_kernel(0, 1e-12) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(pang_kernel(3, 2.0) == doctest::Approx(0.014395611319735449).epsilon(1e-13));
  CHECK(pang_kernel(1, 0.5) == doctest::Approx(0.078210401592435849).epsilon(1e-13));
  CHECK_THROWS_AS(pang_kernel(-1, 1.0), InputError);
}

TEST_CASE("pang kernel conserves mass: e^{-t}(I_0 + 2 sum I_k) = 1") {
  for (double t : {1.0, 10.0, 100.0}) {
    double total = 2.0 * pang_kernel(0, t);  // m_x p_t(x,x)
    for (int k = 1; k <= 200; ++k) {
      double p = pang_kernel(k, t);
      total += 2.0 * 2.0 * p;  // both signs of the displacement, m = 2
      if (p < 1e-20 * total) break;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pang kernel agrees with the truncated window under the size rule") {
  const int d = 3;
  const double t = 2.0;
  const int n = pang_window_size(d, t);  // >= d + 10 sqrt(t) + 20
  WeightedGraph g = truncate_lattice(n, MeasurePolicy::Normalized);
  HeatPropagator prop{laplacian(g)};
  Index origin = g.index_of("0");
  double window = prop.kernel_entry(origin, origin + d, t);
  CHECK(window == doctest::Approx(pang_kernel(d, t)).epsilon(1e-8));
}

TEST_CASE("envelope scan on a small grid") {
  std::vector<int> ds;
  for (int d = 1; d <= 10; ++d) ds.push_back(d);
  std::vector<double> ts;
  for (int i = 0; i < 9; ++i) ts.push_back(0.25 * std::pow(2.0, i));  // 0.25 .. 64
  EnvelopeScan scan = envelope_ratio_scan(ds, ts);
  CHECK(std::isfinite(scan.measured_c));
  CHECK(scan.measured_c < 10.0);
  CHECK(scan.max_window_mismatch <= 1e-8);
  REQUIRE(scan.cells.size() == ds.size() * ts.size());
  for (const auto& cell : scan.cells) {
    CHECK(cell.envelope_ratio >= 1.0 / scan.measured_c - 1e-12);
    CHECK(cell.envelope_ratio <= scan.measured_c + 1e-12);
    CHECK(cell.regime == (cell.t <= cell.d ? "t<=d" : "d<=t"));
  }
}

TEST_CASE("both regime formulas agree near the diagonal up to a bounded factor") {
  for (int d : {2, 8, 32}) {
    double t = static_cast<double>(d);
    double p = pang_kernel(d, t);
    double z = zeta({1.0, t, static_cast<double>(d)});
    double with_t = p * std::exp(z) * std::sqrt(t);
    double with_d = p * std::exp(z) * std::sqrt(static_cast<double>(d));
    CHECK(with_t == doctest::Approx(with_d).epsilon(1e-12));  // max(t,d) continuous
  }
}

TEST_CASE("decay slope on a full connected graph stays below 1e-3") {
  WeightedGraph g = testing::random_connected_graph(127, 10, 20);
  HeatPropagator prop{laplacian(g)};
  // grid long enough for the spectral gap to kill the transient
  double gap = prop.spectrum().eigenvalues[1];
  double t_max = 200.0 / gap;
  std::vector<double> ts, ps;
  for (int i = 0; i < 25; ++i) {
    double t = t_max / 100.0 * std::pow(100.0, i / 24.0);
    ts.push_back(t);
    ps.push_back(prop.kernel_entry(0, 1, t));
  }
  CHECK(std::abs(decay_slope(ts, ps)) < 1e-3);
}

TEST_CASE("p2 cross kernel slope vanishes as the kernel equilibrates") {
  WeightedGraph g = testing::p2_physical();
  HeatPropagator prop{laplacian(g)};
  std::vector<double> ts, ps;
  for (int i = 0; i < 20; ++i) {
    double t = 10.0 * std::pow(10.0, i / 19.0);  // 10 .. 100
    ts.push_back(t);
    ps.push_back(prop.kernel_entry(0, 1, t));  // (1 - e^{-2t})/2
  }
  CHECK(std::abs(decay_slope(ts, ps)) < 1e-6);
}

TEST_CASE("decay slope on dirichlet domains") {
  std::vector<EdgeInput> edges;
  for (int i = 0; i + 1 < 10; ++i)
    edges.push_back({std::to_string(i), std::to_string(i + 1), 1.0});
  WeightedGraph g = build_graph(edges, MeasurePolicy::Physical);  // P_10
  VertexSet omega;
  for (Index i = 0; i < 5; ++i) omega.push_back(i);
  Operator dir = dirichlet_laplacian(g, omega);
  double lambda1 = spectral_bottom(dir).bottom();
  HeatPropagator prop{dir};
  double t_max = 50.0 / lambda1;
  std::vector<double> ts, ps;
  for (int i = 0; i < 30; ++i) {
    double t = t_max / 100.0 * std::pow(100.0, i / 29.0);
    ts.push_back(t);
    ps.push_back(prop.kernel_entry(2, 2, t));
  }
  double slope = decay_slope(ts, ps);
  CHECK(std::abs(slope + lambda1) <= 0.01 * lambda1);
}

TEST_CASE("decay slope recovers a pure eigenmode rate to 1e-6") {
  WeightedGraph g = truncate_lattice(6, MeasurePolicy::Normalized);
  Operator op = laplacian(g);
  SpectralData sd = spectral_bottom(op);
  HeatPropagator prop{op};
  const int mode = 3;
  VertexFunction v = sd.eigenvectors.col(mode);
  Index probe = 0;
  std::vector<double> ts, ps;
  for (int i = 0; i < 20; ++i) {
    double t = 0.1 + 0.3 * i;
    ts.push_back(t);
    ps.push_back(std::abs(prop.apply(v, t)[probe]));
  }
  double slope = decay_slope(ts, ps);
  CHECK(slope == doctest::Approx(-sd.eigenvalues[mode]).epsilon(1e-6));
}

TEST_CASE("decay slope input validation") {
  std::vector<double> ts{1.0, 2.0, 3.0};
  std::vector<double> bad{1.0, 0.0, 0.5};
  CHECK_THROWS_AS(decay_slope(ts, bad), InputError);
  std::vector<double> one{1.0};
  CHECK_THROWS_AS(decay_slope(one, one), InputError);
}
