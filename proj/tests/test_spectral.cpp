#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nvgf/spectral.hpp"
#include "test_helpers.hpp"

using namespace nvgf;

TEST_CASE("gft and igft", "[spectral]") {
  std::mt19937_64 rng(53);
  GraphShift g = testutil::random_symmetric_graph(8, rng);
  SpectralBasis b = eigendecompose(g);

  SECTION("an eigenvector maps to a unit coordinate vector") {
    FrequencyReport r = gft(b.v.col(2), b);
    Eigen::VectorXd e3 = Eigen::VectorXd::Unit(8, 2);
    REQUIRE((r.xt - e3).norm() < 1e-12);
  }
  SECTION("zero maps to zero") {
    REQUIRE(gft(Eigen::VectorXd::Zero(8), b).xt.norm() == 0.0);
    REQUIRE(igft(Eigen::VectorXd::Zero(8), b).norm() == 0.0);
  }
  SECTION("igft inverts gft") {
    Eigen::VectorXd x = testutil::random_vector(8, rng);
    REQUIRE((igft(gft(x, b)) - x).norm() < 1e-12);
  }
  SECTION("igft of a unit coordinate vector is the eigenvector") {
    REQUIRE((igft(Eigen::VectorXd::Unit(8, 0), b) - b.v.col(0)).norm() < 1e-12);
  }
  SECTION("Parseval") {
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd x = testutil::random_vector(8, rng);
      REQUIRE(std::abs(gft(x, b).xt.norm() - x.norm()) < 1e-10);
      Eigen::VectorXd xt = testutil::random_vector(8, rng);
      REQUIRE(std::abs(igft(xt, b).norm() - xt.norm()) < 1e-12);
    }
  }
  SECTION("dimension mismatch") {
    REQUIRE_THROWS_AS(gft(Eigen::VectorXd::Zero(5), b), DimensionError);
    REQUIRE_THROWS_AS(igft(Eigen::VectorXd::Zero(5), b), DimensionError);
  }
}

TEST_CASE("vandermonde matrix", "[spectral]") {
  Eigen::VectorXd lambda = (Eigen::VectorXd(3) << -1.0, 0.5, 2.0).finished();
  Vandermonde v = vandermonde(lambda, 2);
  REQUIRE(v.m.col(0).isOnes());
  REQUIRE((v.m.col(1) - lambda).norm() == 0.0);
  REQUIRE((v.m.col(2) - lambda.cwiseProduct(lambda)).norm() < 1e-15);
}

TEST_CASE("lsi_frequency_response", "[spectral]") {
  SECTION("identity filter has an all-ones response") {
    Vandermonde v = vandermonde((Eigen::VectorXd(4) << -1, -0.2, 0.3, 1).finished(), 2);
    LsiTaps h{(Eigen::VectorXd(3) << 1.0, 0.0, 0.0).finished()};
    REQUIRE(lsi_frequency_response(h, v).isOnes());
  }
  SECTION("pure shift responds with the eigenvalues") {
    Eigen::VectorXd lambda = (Eigen::VectorXd(3) << -0.8, 0.1, 0.9).finished();
    Vandermonde v = vandermonde(lambda, 1);
    LsiTaps h{(Eigen::VectorXd(2) << 0.0, 1.0).finished()};
    REQUIRE((lsi_frequency_response(h, v) - lambda).norm() < 1e-15);
  }
  SECTION("polynomial evaluation at 0.5") {
    Vandermonde v = vandermonde(Eigen::VectorXd::Constant(1, 0.5), 2);
    LsiTaps h{(Eigen::VectorXd(3) << 1.0, 2.0, 1.0).finished()};
    REQUIRE(lsi_frequency_response(h, v)(0) == Catch::Approx(2.25));
  }
}

TEST_CASE("nv_frequency_matrix", "[spectral]") {
  std::mt19937_64 rng(59);
  GraphShift g = testutil::random_connected_graph(6, rng);
  SpectralBasis b = eigendecompose(g);

  SECTION("embedded LSI taps give diag of the LSI response") {
    LsiTaps h = testutil::random_lsi(2, rng);
    NvFrequencyMatrix m = nv_frequency_matrix(embed_lsi_as_nv(h, 6), b);
    Eigen::VectorXd resp = lsi_frequency_response(h, vandermonde(b.lambda, 2));
    Eigen::MatrixXd expect = resp.asDiagonal();
    REQUIRE((m.b - expect).norm() < 1e-10);
  }
  SECTION("zero taps give the zero matrix") {
    NvTaps zero{Eigen::MatrixXd::Zero(6, 3)};
    REQUIRE(nv_frequency_matrix(zero, b).b.norm() == 0.0);
  }
  SECTION("matrix reproduces the vertex-domain filter in the spectral domain") {
    NvTaps nv = testutil::random_nv(6, 2, rng);
    NvFrequencyMatrix m = nv_frequency_matrix(nv, b);
    Eigen::VectorXd x = testutil::random_vector(6, rng);
    Eigen::VectorXd lhs = gft(apply_nv(nv, x, g), b).xt;
    Eigen::VectorXd rhs = m.b * gft(x, b).xt;
    REQUIRE((lhs - rhs).norm() < 1e-10);
  }
}

TEST_CASE("creation_index", "[spectral]") {
  std::mt19937_64 rng(61);
  GraphShift g = testutil::random_connected_graph(8, rng);
  SpectralBasis b = eigendecompose(g);

  SECTION("embedded LSI taps create nothing") {
    CreationIndex idx = creation_index(nv_frequency_matrix(embed_lsi_as_nv(testutil::random_lsi(3, rng), 8), b));
    REQUIRE_FALSE(idx.creates);
    REQUIRE(idx.offdiag_energy <= 1e-10);
  }
  SECTION("distinct rows on a connected graph create frequencies") {
    CreationIndex idx = creation_index(nv_frequency_matrix(testutil::random_nv(8, 2, rng), b));
    REQUIRE(idx.creates);
  }
}

TEST_CASE("single-frequency input spreads exactly as the per-node responses dictate",
          "[spectral]") {
  std::mt19937_64 rng(67);
  GraphShift g = testutil::random_connected_graph(7, rng);
  SpectralBasis b = eigendecompose(g);
  NvTaps nv = testutil::random_nv(7, 2, rng);
  const int t = 5;
  Eigen::VectorXd out = gft(apply_nv(nv, b.v.col(t), g), b).xt;
  // entry i of the output GFT is sum_j h~_j(lambda_t) v_ji v_jt
  Eigen::MatrixXd resp = nv_frequency_responses(nv, vandermonde(b.lambda, 2));
  for (int i = 0; i < 7; ++i) {
    double expect = 0.0;
    for (int j = 0; j < 7; ++j) expect += resp(j, t) * b.v(j, i) * b.v(j, t);
    REQUIRE(out(i) == Catch::Approx(expect).margin(1e-10));
  }
}

TEST_CASE("convolution theorem over 200 random LSI instances", "[spectral]") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> size(4, 32);
  std::uniform_int_distribution<int> order(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    GraphShift g = testutil::random_symmetric_graph(n, rng);
    GraphShift gn = spectral_normalize(g);
    SpectralBasis b = eigendecompose(gn);
    LsiTaps h = testutil::random_lsi(order(rng), rng);
    Eigen::VectorXd x = testutil::random_vector(n, rng);
    Eigen::VectorXd lhs = gft(apply_lsi(h, x, gn), b).xt;
    Eigen::VectorXd resp = lsi_frequency_response(h, vandermonde(b.lambda, h.order()));
    Eigen::VectorXd rhs = resp.cwiseProduct(gft(x, b).xt);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("LSI filters cannot create frequencies", "[spectral]") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    GraphShift g = spectral_normalize(testutil::random_symmetric_graph(10, rng));
    SpectralBasis b = eigendecompose(g);
    Eigen::VectorXd xt = testutil::random_vector(10, rng);
    xt(3) = 0.0;
    xt(7) = 0.0;
    Eigen::VectorXd y = apply_lsi(testutil::random_lsi(4, rng), igft(xt, b), g);
    Eigen::VectorXd yt = gft(y, b).xt;
    REQUIRE(std::abs(yt(3)) < 1e-12);
    REQUIRE(std::abs(yt(7)) < 1e-12);
  }
}

TEST_CASE("node-variant spectral map over 200 random instances", "[spectral]") {
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<int> size(4, 32);
  std::uniform_int_distribution<int> order(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    GraphShift g = spectral_normalize(testutil::random_symmetric_graph(n, rng));
    SpectralBasis b = eigendecompose(g);
    NvTaps nv = testutil::random_nv(n, order(rng), rng);
    Eigen::VectorXd x = testutil::random_vector(n, rng);
    Eigen::VectorXd lhs = gft(apply_nv(nv, x, g), b).xt;
    Eigen::VectorXd rhs = nv_frequency_matrix(nv, b).b * gft(x, b).xt;
    REQUIRE((lhs - rhs).norm() <= 1e-10 * std::max(1.0, x.norm()));
  }
}
