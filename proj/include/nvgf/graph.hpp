#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nvgf/errors.hpp"

namespace nvgf {

/// A graph matrix description: any symmetric matrix respecting the graph's
/// sparsity pattern (adjacency, Laplacian, or a normalization thereof).
struct GraphShift {
  int n = 0;
  Eigen::MatrixXd s;                      // dense symmetric n x n
  std::vector<std::string> node_labels;   // optional; empty or size n
};

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;
};

struct LoadOptions {
  bool symmetrize = false;  // if set, directed input becomes (W + W^T)/2
};

inline constexpr double kSymmetryTol = 1e-12;

inline void check_symmetric(const Eigen::MatrixXd& s, double tol = kSymmetryTol) {
  if (s.rows() != s.cols()) throw DimensionError("graph matrix must be square");
  const double dev = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw NumericalError("graph matrix is asymmetric (max deviation " + std::to_string(dev) + ")");
}

/// Accumulates an edge list into a GraphShift. Duplicate edges are summed.
/// Asymmetric accumulations are rejected unless opts.symmetrize is set.
inline GraphShift load_graph(const std::vector<Edge>& edges, int n, LoadOptions opts = {}) {
  if (n <= 0) throw DimensionError("node count must be positive");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw DimensionError("edge index out of range: (" + std::to_string(e.src) + ", " +
                           std::to_string(e.dst) + ") with n = " + std::to_string(n));
    if (!std::isfinite(e.weight))
      throw NumericalError("non-finite edge weight at (" + std::to_string(e.src) + ", " +
                           std::to_string(e.dst) + ")");
    w(e.src, e.dst) += e.weight;
  }
  GraphShift g;
  g.n = n;
  if (opts.symmetrize) {
    g.s = 0.5 * (w + w.transpose());
  } else {
    check_symmetric(w);
    g.s = std::move(w);
  }
  return g;
}

/// Orthonormal eigenbasis of a GraphShift, eigenvalues sorted ascending.
struct SpectralBasis {
  Eigen::MatrixXd v;       // columns are eigenvectors
  Eigen::VectorXd lambda;  // ascending
  bool repeated_eigenvalues = false;  // flagged, not rejected
};

/// Symmetric eigendecomposition with a deterministic sign convention: the
/// entry of largest magnitude in each eigenvector is made positive (ties
/// resolved toward the lowest index).
inline SpectralBasis eigendecompose(const GraphShift& g) {
  check_symmetric(g.s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.s);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed to converge: iteration budget exhausted");
  SpectralBasis b;
  b.lambda = solver.eigenvalues();  // ascending
  b.v = solver.eigenvectors();
  const int n = g.n;
  for (int j = 0; j < n; ++j) {
    int pivot = 0;
    double best = std::abs(b.v(0, j));
    for (int i = 1; i < n; ++i) {
      const double mag = std::abs(b.v(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (b.v(pivot, j) < 0.0) b.v.col(j) = -b.v.col(j);
  }
  const double scale = std::max(1.0, b.lambda.cwiseAbs().maxCoeff());
  for (int j = 0; j + 1 < n; ++j) {
    if (b.lambda(j + 1) - b.lambda(j) <= 1e-10 * scale) {
      b.repeated_eigenvalues = true;
      break;
    }
  }
  return b;
}

/// Largest singular value of a symmetric matrix (= max |eigenvalue|).
inline double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed to converge while computing spectral norm");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Rescales S to unit spectral norm.
inline GraphShift spectral_normalize(const GraphShift& g) {
  check_symmetric(g.s);
  const double norm = spectral_norm(g.s);
  if (norm == 0.0) throw NumericalError("cannot normalize an all-zero graph matrix");
  GraphShift out;
  out.n = g.n;
  out.s = g.s / norm;
  out.node_labels = g.node_labels;
  return out;
}

}  // namespace nvgf
