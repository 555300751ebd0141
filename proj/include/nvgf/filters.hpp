#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "nvgf/errors.hpp"
#include "nvgf/graph.hpp"

namespace nvgf {

/// Shift-invariant filter taps h_0..h_K (a polynomial in S with scalar coefficients).
struct LsiTaps {
  Eigen::VectorXd h;  // K+1 entries

  int order() const { return static_cast<int>(h.size()) - 1; }
};

/// Node-variant filter taps: row i holds the K+1 taps of node i,
/// column k holds the per-node tap vector h^(k).
struct NvTaps {
  Eigen::MatrixXd hmat;  // N x (K+1)

  int nodes() const { return static_cast<int>(hmat.rows()); }
  int order() const { return static_cast<int>(hmat.cols()) - 1; }
};

namespace detail {

inline void check_filter_dims(Eigen::Index taps_len, const Eigen::VectorXd& x,
                              const GraphShift& g) {
  if (taps_len < 1) throw DimensionError("filter needs at least one tap");
  if (x.size() != g.n) throw DimensionError("signal length does not match node count");
  if (g.s.rows() != g.n) throw DimensionError("graph matrix does not match node count");
}

inline void check_finite(const Eigen::VectorXd& z) {
  if (!z.allFinite()) throw NumericalError("non-finite intermediate in shift recursion");
}

}  // namespace detail

/// y = sum_k h_k S^k x via the shift recursion z_{k} = S z_{k-1}; no matrix powers.
inline Eigen::VectorXd apply_lsi(const LsiTaps& taps, const Eigen::VectorXd& x,
                                 const GraphShift& g) {
  detail::check_filter_dims(taps.h.size(), x, g);
  Eigen::VectorXd z = x;
  Eigen::VectorXd y = taps.h(0) * z;
  for (int k = 1; k < taps.h.size(); ++k) {
    z = g.s * z;
    detail::check_finite(z);
    y += taps.h(k) * z;
  }
  return y;
}

/// y = sum_k diag(h^(k)) S^k x via the shift recursion.
inline Eigen::VectorXd apply_nv(const NvTaps& taps, const Eigen::VectorXd& x,
                                const GraphShift& g) {
  if (taps.nodes() != g.n) throw DimensionError("tap rows do not match node count");
  detail::check_filter_dims(taps.hmat.cols(), x, g);
  Eigen::VectorXd z = x;
  Eigen::VectorXd y = taps.hmat.col(0).cwiseProduct(z);
  for (int k = 1; k < taps.hmat.cols(); ++k) {
    z = g.s * z;
    detail::check_finite(z);
    y += taps.hmat.col(k).cwiseProduct(z);
  }
  return y;
}

/// Explicit H(S) = sum_k h_k S^k. Test oracle and stability-analysis path only;
/// application goes through the recursions above.
inline Eigen::MatrixXd dense_operator(const LsiTaps& taps, const GraphShift& g) {
  if (taps.h.size() < 1) throw DimensionError("filter needs at least one tap");
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.n, g.n);
  Eigen::MatrixXd op = taps.h(0) * power;
  for (int k = 1; k < taps.h.size(); ++k) {
    power = g.s * power;
    op += taps.h(k) * power;
  }
  return op;
}

/// Explicit H(S) = sum_k diag(h^(k)) S^k.
inline Eigen::MatrixXd dense_operator(const NvTaps& taps, const GraphShift& g) {
  if (taps.nodes() != g.n) throw DimensionError("tap rows do not match node count");
  if (taps.hmat.cols() < 1) throw DimensionError("filter needs at least one tap");
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.n, g.n);
  Eigen::MatrixXd op = taps.hmat.col(0).asDiagonal() * power;
  for (int k = 1; k < taps.hmat.cols(); ++k) {
    power = g.s * power;
    op += taps.hmat.col(k).asDiagonal() * power;
  }
  return op;
}

/// All rows equal to h: the node-variant filter that coincides with the LSI one.
inline NvTaps embed_lsi_as_nv(const LsiTaps& taps, int n) {
  if (n < 1) throw DimensionError("node count must be positive");
  NvTaps out;
  out.hmat = taps.h.transpose().replicate(n, 1);
  return out;
}

}  // namespace nvgf
