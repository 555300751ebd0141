#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nvgf/errors.hpp"
#include "nvgf/filters.hpp"
#include "nvgf/graph.hpp"
#include "nvgf/spectral.hpp"

namespace nvgf {

/// Pointwise nonlinearities the designer can target. A closed registry: custom
/// scalar maps are out of scope.
enum class Nonlinearity { identity, relu, tanh, abs };

inline double apply_nonlinearity(Nonlinearity rho, double x) {
  switch (rho) {
    case Nonlinearity::identity: return x;
    case Nonlinearity::relu: return x > 0.0 ? x : 0.0;
    case Nonlinearity::tanh: return std::tanh(x);
    case Nonlinearity::abs: return std::abs(x);
  }
  throw ConfigError("unknown nonlinearity");
}

inline Nonlinearity nonlinearity_from_string(const std::string& name) {
  if (name == "identity") return Nonlinearity::identity;
  if (name == "relu") return Nonlinearity::relu;
  if (name == "tanh") return Nonlinearity::tanh;
  if (name == "abs") return Nonlinearity::abs;
  throw ConfigError("unknown nonlinearity: " + name);
}

inline std::string to_string(Nonlinearity rho) {
  switch (rho) {
    case Nonlinearity::identity: return "identity";
    case Nonlinearity::relu: return "relu";
    case Nonlinearity::tanh: return "tanh";
    case Nonlinearity::abs: return "abs";
  }
  return "?";
}

/// First and second moments of the input signal and of its image under the
/// target nonlinearity; everything the design equations consume.
struct SignalMoments {
  Eigen::VectorXd mu_x;    // E[x]
  Eigen::MatrixXd c_x;     // cov(x), unbiased
  Eigen::VectorXd mu_rho;  // E[rho(x)] per node
  Eigen::MatrixXd cross;   // column i = E[(rho(x_i) - mu_rho_i)(x - mu_x)]
  Eigen::VectorXd var_rho; // E[(rho(x_i) - mu_rho_i)^2] per node
  long sample_count = 0;
};

/// Plug-in empirical moments with the unbiased n-1 divisor.
/// `samples` holds one signal per row.
inline SignalMoments estimate_moments(const Eigen::MatrixXd& samples, Nonlinearity rho) {
  const long n = samples.rows();
  const int dim = static_cast<int>(samples.cols());
  if (n < 2) throw NumericalError("moment estimation needs at least 2 samples");
  if (!samples.allFinite()) throw NumericalError("non-finite sample");

  SignalMoments m;
  m.sample_count = n;
  m.mu_x = samples.colwise().mean();
  Eigen::MatrixXd centered = samples.rowwise() - m.mu_x.transpose();
  m.c_x = centered.transpose() * centered / double(n - 1);

  Eigen::MatrixXd rho_vals = samples.unaryExpr([rho](double v) { return apply_nonlinearity(rho, v); });
  m.mu_rho = rho_vals.colwise().mean();
  Eigen::MatrixXd rho_centered = rho_vals.rowwise() - m.mu_rho.transpose();
  m.cross = centered.transpose() * rho_centered / double(n - 1);
  m.var_rho = rho_centered.colwise().squaredNorm() / double(n - 1);
  return m;
}

struct DesignDiagnostics {
  Eigen::VectorXd residual_mse;  // per-node MSE of the designed estimator
  Eigen::VectorXi solver_rank;   // per-node rank of the normal-equations matrix
  std::vector<std::string> warnings;
};

/// An optimal unbiased node-variant estimator of a pointwise nonlinearity:
/// y^ = H(S) x + c. The offset enforces unbiasedness, c = mu_rho - H(S) mu_x.
struct DesignedNvgf {
  NvTaps taps;
  Eigen::VectorXd offset;
  DesignDiagnostics diagnostics;
};

namespace detail {

/// Minimum-norm solution of a symmetric PSD system R h = p, relative
/// singular-value cutoff `rcond`. Returns the rank through `rank_out`.
inline Eigen::VectorXd min_norm_solve_psd(const Eigen::MatrixXd& r, const Eigen::VectorXd& p,
                                          double rcond, int* rank_out) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
  const Eigen::VectorXd& w = eig.eigenvalues();
  const double cutoff = rcond * std::max(w.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(r.rows());
  int rank = 0;
  for (int j = 0; j < w.size(); ++j) {
    if (w(j) > cutoff && w(j) > 0.0) {
      h += (eig.eigenvectors().col(j).dot(p) / w(j)) * eig.eigenvectors().col(j);
      ++rank;
    }
  }
  if (rank_out) *rank_out = rank;
  return h;
}

/// Minimum-norm least squares for a general rectangular system A h = b.
inline Eigen::VectorXd min_norm_lstsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                      double rcond, int* rank_out) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rcond);
  if (rank_out) *rank_out = static_cast<int>(svd.rank());
  return svd.solve(b);
}

inline Eigen::VectorXd apply_nv_from_basis(const NvTaps& taps, const SpectralBasis& basis,
                                           const Eigen::VectorXd& x) {
  GraphShift g;
  g.n = static_cast<int>(basis.v.rows());
  g.s = basis.v * basis.lambda.asDiagonal() * basis.v.transpose();
  return apply_nv(taps, x, g);
}

}  // namespace detail

inline constexpr double kDesignRcond = 1e-10;

/// Per-node normal equations R_i h_i = p_i with
///   R_i = Lambda^T diag(u_i) V^T C_x V diag(u_i) Lambda
///   p_i = Lambda^T diag(u_i) V^T cross[:, i]
/// where u_i is the i-th row of V. Singular systems take the minimum-norm
/// solution. The offset comes from the unbiasedness condition.
inline DesignedNvgf design_optimal(const SignalMoments& m, const SpectralBasis& basis, int order) {
  const int n = static_cast<int>(basis.v.rows());
  if (m.mu_x.size() != n || m.c_x.rows() != n || m.cross.rows() != n)
    throw DimensionError("moment dimensions do not match basis");
  if ((m.c_x - m.c_x.transpose()).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericalError("covariance is not symmetric");
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.c_x, Eigen::EigenvaluesOnly);
    const double floor = -1e-8 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    if (eig.eigenvalues().minCoeff() < floor)
      throw NumericalError("covariance is not positive semidefinite");
  }

  const Vandermonde vmd = vandermonde(basis.lambda, order);
  const Eigen::MatrixXd t = basis.v.transpose() * m.c_x * basis.v;  // V^T C_x V
  const Eigen::MatrixXd cross_gft = basis.v.transpose() * m.cross;  // column i = V^T cross[:, i]

  DesignedNvgf out;
  out.taps.hmat.resize(n, order + 1);
  out.diagnostics.residual_mse.resize(n);
  out.diagnostics.solver_rank.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd u = basis.v.row(i).transpose();
    const Eigen::MatrixXd lu = u.asDiagonal() * vmd.m;  // diag(u_i) Lambda
    const Eigen::MatrixXd r = lu.transpose() * t * lu;
    const Eigen::VectorXd p = lu.transpose() * cross_gft.col(i);
    int rank = 0;
    const Eigen::VectorXd h = detail::min_norm_solve_psd(r, p, kDesignRcond, &rank);
    out.taps.hmat.row(i) = h.transpose();
    out.diagnostics.solver_rank(i) = rank;
    const double mse = m.var_rho.size() == n ? m.var_rho(i) + h.dot(r * h) - 2.0 * p.dot(h) : 0.0;
    out.diagnostics.residual_mse(i) = std::max(mse, 0.0);
  }
  out.offset = m.mu_rho - detail::apply_nv_from_basis(out.taps, basis, m.mu_x);
  return out;
}

/// Stationary-process specialization: per node, solve
///   diag(u_i o q) Lambda h_i = cross_gft[:, i]
/// where q is the power spectral density and cross_gft[:, i] = V^T E[rho(x_i) x].
/// Rows with zero u_i o q entries contribute no constraint.
inline DesignedNvgf design_stationary(const Eigen::VectorXd& q, const Eigen::MatrixXd& cross_gft,
                                      const SpectralBasis& basis, int order,
                                      const Eigen::VectorXd& mu_rho) {
  const int n = static_cast<int>(basis.v.rows());
  if (q.size() != n || cross_gft.rows() != n || cross_gft.cols() != n)
    throw DimensionError("PSD or cross-correlation dimensions do not match basis");
  if (q.minCoeff() < 0.0) throw NumericalError("negative power spectral density entry");

  const Vandermonde vmd = vandermonde(basis.lambda, order);
  DesignedNvgf out;
  out.taps.hmat.resize(n, order + 1);
  out.diagnostics.residual_mse.resize(n);
  out.diagnostics.solver_rank.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd uq = basis.v.row(i).transpose().cwiseProduct(q);
    const Eigen::MatrixXd a = uq.asDiagonal() * vmd.m;
    int rank = 0;
    const Eigen::VectorXd h = detail::min_norm_lstsq(a, cross_gft.col(i), kDesignRcond, &rank);
    out.taps.hmat.row(i) = h.transpose();
    out.diagnostics.solver_rank(i) = rank;
    out.diagnostics.residual_mse(i) = (a * h - cross_gft.col(i)).squaredNorm();
  }
  out.offset = mu_rho;  // stationary processes are zero-mean, so c = mu_rho
  return out;
}

/// Zero-mean i.i.d. closed form: every node applies the gain xi2/sigma2 and
/// the offset mu_rho. For a ReLU on a symmetric distribution this is x/2.
inline DesignedNvgf closed_form_iid_relu(int n, double sigma2, double xi2, double mu_rho) {
  if (sigma2 <= 0.0) throw NumericalError("sigma2 must be positive");
  if (n < 1) throw DimensionError("node count must be positive");
  DesignedNvgf out;
  out.taps.hmat = Eigen::MatrixXd::Constant(n, 1, xi2 / sigma2);
  out.offset = Eigen::VectorXd::Constant(n, mu_rho);
  out.diagnostics.residual_mse = Eigen::VectorXd::Zero(n);
  out.diagnostics.solver_rank = Eigen::VectorXi::Ones(n);
  return out;
}

/// y^ = H(S) x + c.
inline Eigen::VectorXd apply_designed(const DesignedNvgf& d, const Eigen::VectorXd& x,
                                      const GraphShift& g) {
  return apply_nv(d.taps, x, g) + d.offset;
}

}  // namespace nvgf
