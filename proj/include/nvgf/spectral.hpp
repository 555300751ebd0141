#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nvgf/errors.hpp"
#include "nvgf/filters.hpp"
#include "nvgf/graph.hpp"

namespace nvgf {

/// Vandermonde matrix of the eigenvalues: m(i, k) = lambda_i^k.
struct Vandermonde {
  Eigen::MatrixXd m;  // N x (K+1); column 0 is all ones
};

inline Vandermonde vandermonde(const Eigen::VectorXd& lambda, int order) {
  if (order < 0) throw DimensionError("filter order must be nonnegative");
  Vandermonde v;
  v.m.resize(lambda.size(), order + 1);
  v.m.col(0).setOnes();
  for (int k = 1; k <= order; ++k) v.m.col(k) = v.m.col(k - 1).cwiseProduct(lambda);
  return v;
}

/// GFT coefficients of a signal together with the basis they live in.
struct FrequencyReport {
  Eigen::VectorXd xt;              // V^T x
  const SpectralBasis* basis = nullptr;
};

inline FrequencyReport gft(const Eigen::VectorXd& x, const SpectralBasis& b) {
  if (x.size() != b.v.rows()) throw DimensionError("signal length does not match basis");
  return FrequencyReport{b.v.transpose() * x, &b};
}

inline Eigen::VectorXd igft(const Eigen::VectorXd& xt, const SpectralBasis& b) {
  if (xt.size() != b.v.cols()) throw DimensionError("coefficient length does not match basis");
  return b.v * xt;
}

inline Eigen::VectorXd igft(const FrequencyReport& r) {
  if (r.basis == nullptr) throw DimensionError("frequency report carries no basis");
  return igft(r.xt, *r.basis);
}

/// h~(lambda_i) = sum_k h_k lambda_i^k for every eigenvalue.
inline Eigen::VectorXd lsi_frequency_response(const LsiTaps& taps, const Vandermonde& vmd) {
  if (taps.h.size() != vmd.m.cols())
    throw DimensionError("tap count does not match Vandermonde columns");
  return vmd.m * taps.h;
}

/// Per-node responses evaluated at every eigenvalue: (i, j) = h~_i(lambda_j).
inline Eigen::MatrixXd nv_frequency_responses(const NvTaps& taps, const Vandermonde& vmd) {
  if (taps.hmat.cols() != vmd.m.cols())
    throw DimensionError("tap count does not match Vandermonde columns");
  return taps.hmat * vmd.m.transpose();
}

/// The matrix B = V^T (V o (H Lambda^T)) mapping input GFT coefficients to
/// output GFT coefficients of a node-variant filter. Diagonal exactly when the
/// filter is shift-invariant; off-diagonal entries move energy across
/// frequencies.
struct NvFrequencyMatrix {
  Eigen::MatrixXd b;  // N x N
};

inline NvFrequencyMatrix nv_frequency_matrix(const NvTaps& taps, const SpectralBasis& basis) {
  const int n = static_cast<int>(basis.v.rows());
  if (taps.nodes() != n) throw DimensionError("tap rows do not match basis");
  const Vandermonde vmd = vandermonde(basis.lambda, taps.order());
  const Eigen::MatrixXd responses = nv_frequency_responses(taps, vmd);  // H Lambda^T
  NvFrequencyMatrix out;
  out.b = basis.v.transpose() * basis.v.cwiseProduct(responses);
  return out;
}

struct CreationIndex {
  double offdiag_energy = 0.0;
  bool creates = false;
};

/// Frequency-creation detector: a node-variant filter creates frequencies
/// exactly when its frequency matrix is not diagonal. Floating point demands a
/// tolerance: relative 1e-9 with an absolute floor of 1e-12.
inline CreationIndex creation_index(const NvFrequencyMatrix& m) {
  Eigen::MatrixXd off = m.b;
  off.diagonal().setZero();
  CreationIndex idx;
  idx.offdiag_energy = off.norm();
  const double tau = std::max(1e-9 * m.b.norm(), 1e-12);
  idx.creates = idx.offdiag_energy > tau;
  return idx;
}

}  // namespace nvgf
