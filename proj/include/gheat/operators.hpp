#pragma once

#include <Eigen/Core>

#include "gheat/graph.hpp"

namespace gheat {

/// Matrix form of the Laplacian, or of the Dirichlet Laplacian on a subset
/// Omega, in the m-weighted inner product. The matrix acts on functions
/// indexed by the domain; for Dirichlet domains the diagonal keeps the full
/// degree sums, which is exactly the zero extension outside Omega.
class Operator {
 public:
  int size() const { return static_cast<int>(domain_.size()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& measure() const { return measure_; }
  const std::vector<Index>& domain() const { return domain_; }
  bool is_whole_graph() const { return whole_graph_; }

  VertexFunction apply(const VertexFunction& f) const;

  /// M^{1/2} L M^{-1/2}: symmetric, similar to the Laplacian; standard
  /// symmetric eigensolvers apply to it.
  Eigen::MatrixXd symmetrized() const;

  /// Gershgorin bound on the spectral radius of the matrix.
  double spectral_radius_bound() const;

 private:
  friend Operator laplacian(const WeightedGraph&);
  friend Operator dirichlet_laplacian(const WeightedGraph&, const VertexSet&);

  Eigen::MatrixXd matrix_;
  Eigen::VectorXd measure_;
  std::vector<Index> domain_;
  bool whole_graph_ = false;
};

/// Eigendecomposition of -Delta in the m-inner product. Eigenvalues ascend;
/// eigenvector columns are m-orthonormal on the operator's domain. When `full`
/// is false only the bottom pair was computed (iterative path, large graphs).
struct SpectralData {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  double residual_max = 0.0;
  bool full = true;

  double bottom() const { return eigenvalues(0); }
};

struct SpectralOptions {
  /// Above this dimension spectral_bottom switches from a dense solve of the
  /// full spectrum to a Lanczos iteration for the bottom eigenpair only.
  int dense_limit = 2000;
  int lanczos_max_steps = 400;
  double lanczos_tol = 1e-12;
};

/// Delta f(x) = (1/m_x) sum_y mu_xy (f(y) - f(x)).
Operator laplacian(const WeightedGraph& g);

/// Delta restricted to Omega with zero Dirichlet extension outside.
Operator dirichlet_laplacian(const WeightedGraph& g, const VertexSet& omega);

/// Q(f) = 1/2 sum_{x,y} mu_xy |f(x) - f(y)|^2. Equals -<Delta f, f> on finite
/// graphs.
double quadratic_form(const WeightedGraph& g, const VertexFunction& f);

SpectralData spectral_bottom(const Operator& op, const SpectralOptions& opts = {});

/// <-Delta f, f> / <f, f> in l2_m; never below the bottom eigenvalue.
double rayleigh_quotient(const Operator& op, const VertexFunction& f);

/// Difference operator nabla_xy f = f(y) - f(x).
inline double nabla(const VertexFunction& f, Index x, Index y) { return f[y] - f[x]; }

}  // namespace gheat
