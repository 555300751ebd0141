#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nvgf/detail/rng.hpp"
#include "nvgf/errors.hpp"
#include "nvgf/filters.hpp"
#include "nvgf/graph.hpp"
#include "nvgf/spectral.hpp"

namespace nvgf {

/// Largest slope of the per-node frequency responses across eigenvalue pairs:
/// C = max over nodes t and pairs i != j of |h~_t(lambda_j) - h~_t(lambda_i)| / |lambda_j - lambda_i|.
/// Pairs closer than 1e-12 are skipped. Evaluated on the spectrum of the
/// unperturbed graph.
inline double lipschitz_constant(const NvTaps& taps, const SpectralBasis& basis) {
  const int n = static_cast<int>(basis.lambda.size());
  if (taps.nodes() != n) throw DimensionError("tap rows do not match basis");
  const Eigen::MatrixXd resp = nv_frequency_responses(taps, vandermonde(basis.lambda, taps.order()));
  double c = 0.0;
  bool any_pair = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double gap = std::abs(basis.lambda(j) - basis.lambda(i));
      if (gap < 1e-12) continue;
      any_pair = true;
      for (int t = 0; t < n; ++t)
        c = std::max(c, std::abs(resp(t, j) - resp(t, i)) / gap);
    }
  }
  if (!any_pair) throw NumericalError("all eigenvalues are equal; Lipschitz constant undefined");
  return c;
}

/// S^ = S + E with E a random symmetric direction rescaled to spectral norm
/// epsilon exactly. Sparsity is not preserved: the theorem only constrains
/// the spectral norm of the perturbation.
inline GraphShift random_perturbation(const GraphShift& g, double epsilon, std::uint64_t seed) {
  if (epsilon <= 0.0) throw NumericalError("perturbation size must be positive");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd a = detail::gaussian_matrix(g.n, g.n, rng);
  Eigen::MatrixXd e = 0.5 * (a + a.transpose());
  const double norm = spectral_norm(e);
  if (norm == 0.0) throw NumericalError("degenerate zero perturbation direction");
  e *= epsilon / norm;
  GraphShift out;
  out.n = g.n;
  out.s = g.s + e;
  out.node_labels = g.node_labels;
  return out;
}

/// Edge-preserving alternative: jitters existing edge weights only, then
/// rescales to spectral norm epsilon.
inline GraphShift edge_jitter_perturbation(const GraphShift& g, double epsilon,
                                           std::uint64_t seed) {
  if (epsilon <= 0.0) throw NumericalError("perturbation size must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j)
      if (g.s(i, j) != 0.0) e(i, j) = e(j, i) = dist(rng) * g.s(i, j);
  const double norm = spectral_norm(e);
  if (norm == 0.0) throw NumericalError("graph has no edges to jitter");
  e *= epsilon / norm;
  GraphShift out{g.n, g.s + e, g.node_labels};
  return out;
}

/// || H^nv(S^) x - H^nv(S) x ||_2 with identical taps on both graphs.
inline double empirical_deviation(const NvTaps& taps, const GraphShift& g, const GraphShift& gp,
                                  const Eigen::VectorXd& x) {
  if (g.n != gp.n) throw DimensionError("graphs have different node counts");
  return (apply_nv(taps, x, gp) - apply_nv(taps, x, g)).norm();
}

struct StabilityReport {
  double epsilon = 0.0;
  int trial = 0;
  double lipschitz_c = 0.0;
  double bound = 0.0;     // eps * C * sqrt(N) * (1 + 8N) * ||x||
  double empirical = 0.0; // deviation actually measured
  double ratio = 0.0;     // empirical / bound
};

struct BoundCheck {
  std::vector<StabilityReport> reports;
  double loglog_slope = 0.0;  // slope of log(max deviation) vs log(epsilon)
};

/// Evaluates the first-order stability bound over an epsilon grid. Each trial
/// draws its own perturbation direction and input signal from a seed derived
/// deterministically from the master seed.
inline BoundCheck check_bound(const NvTaps& taps, const GraphShift& g,
                              const std::vector<double>& epsilons, int trials,
                              std::uint64_t seed) {
  const SpectralBasis basis = eigendecompose(g);
  const double c = lipschitz_constant(taps, basis);
  const double n = static_cast<double>(g.n);
  const double scale = c * std::sqrt(n) * (1.0 + 8.0 * n);

  BoundCheck out;
  std::vector<double> max_dev(epsilons.size(), 0.0);
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    const double eps = epsilons[e];
    if (eps <= 0.0) throw NumericalError("epsilon grid must be positive");
    for (int t = 0; t < trials; ++t) {
      std::uint64_t sub = detail::substream_seed(seed, e * 1000003ULL + t);
      GraphShift gp = random_perturbation(g, eps, sub);
      std::mt19937_64 rng(detail::splitmix64(sub));
      Eigen::VectorXd x = detail::gaussian_vector(g.n, rng);
      StabilityReport rep;
      rep.epsilon = eps;
      rep.trial = t;
      rep.lipschitz_c = c;
      rep.bound = eps * scale * x.norm();
      rep.empirical = empirical_deviation(taps, g, gp, x);
      rep.ratio = rep.bound > 0.0 ? rep.empirical / rep.bound : 0.0;
      max_dev[e] = std::max(max_dev[e], rep.empirical);
      out.reports.push_back(rep);
    }
  }

  // least-squares line through (log eps, log max_dev)
  if (epsilons.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      if (max_dev[e] <= 0.0) continue;
      const double lx = std::log(epsilons[e]);
      const double ly = std::log(max_dev[e]);
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
      ++m;
    }
    if (m >= 2) out.loglog_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return out;
}

}  // namespace nvgf
