#include <catch_amalgamated.hpp>

#include <algorithm>

#include "oracles.hpp"

using namespace raysep;

namespace {

double rel_herm_error(const CMatrix& c) { return (c - c.adjoint()).norm() / c.norm(); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

}  // namespace

TEST_CASE("trispectrum matches the quadruple-loop oracle") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Eigen::Index l = 1 + static_cast<Eigen::Index>(seed % 4);
    const Eigen::Index r = 2 + static_cast<Eigen::Index>(3 * seed % 11);
    const CMatrix x = oracle::random_matrix(l, r, seed);
    const CMatrix c = estimate_trispectrum(x);
    CHECK((c - oracle::cumulant_quadruple_loop(x)).cwiseAbs().maxCoeff() <= 1e-10);
  }
  const CMatrix x = oracle::random_matrix(2, 3, 77);
  CHECK((estimate_trispectrum(x) - oracle::cumulant_quadruple_loop(x)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("identical realizations give minus the Kronecker square") {
  const CVector v = oracle::random_matrix(5, 1, 3).col(0);
  const CMatrix x = v.replicate(1, 9);
  const CMatrix c = estimate_trispectrum(x);
  const CMatrix xx = v * v.adjoint();
  CMatrix kron(25, 25);
  for (Eigen::Index a = 0; a < 5; ++a)
    for (Eigen::Index b = 0; b < 5; ++b) kron.block(a * 5, b * 5, 5, 5) = xx(a, b) * xx.conjugate();
  CHECK((c + kron).norm() / kron.norm() <= 1e-12);
}

TEST_CASE("covariance examples") {
  const CVector v = oracle::random_matrix(4, 1, 11).col(0);
  CHECK((estimate_covariance(CMatrix(v)) - v * v.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  const CMatrix eye = CMatrix::Identity(6, 6);
  CHECK((estimate_covariance(eye) - eye / 6.0).cwiseAbs().maxCoeff() <= 1e-15);
  const CMatrix x = oracle::random_matrix(5, 13, 12);
  CHECK((estimate_covariance(x) - oracle::covariance_loop(x)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Hermitian symmetry and covariance PSD") {
  const CMatrix x = oracle::random_matrix(6, 40, 5);
  const CMatrix c4 = estimate_trispectrum(x);
  const CMatrix c2 = estimate_covariance(x);
  CHECK(rel_herm_error(c4) <= 1e-12);
  CHECK(rel_herm_error(c2) <= 1e-12);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(c2);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().maxCoeff());
}

TEST_CASE("scale equivariance") {
  const CMatrix x = oracle::random_matrix(4, 25, 8);
  const double s = 1.7;
  const CMatrix c4 = estimate_trispectrum(x);
  const CMatrix c2 = estimate_covariance(x);
  CHECK((estimate_trispectrum(s * x) - std::pow(s, 4) * c4).norm() <= 1e-12 * c4.norm() * std::pow(s, 4));
  CHECK((estimate_covariance(s * x) - s * s * c2).norm() <= 1e-13 * c2.norm() * s * s);
}

TEST_CASE("accumulation modes agree; deterministic mode is bitwise stable") {
  const CMatrix x = oracle::random_matrix(5, 300, 21);
  const CMatrix serial = estimate_trispectrum(x);
  AccumulationOptions det{4, true, 16};
  const CMatrix a = estimate_trispectrum(x, det);
  const CMatrix b = estimate_trispectrum(x, det);
  CHECK(a == b);
  CHECK((a - serial).norm() <= 1e-12 * serial.norm());
  AccumulationOptions loose{3, false, 16};
  CHECK((estimate_trispectrum(x, loose) - serial).norm() <= 1e-12 * serial.norm());
  AccumulationOptions det1{1, true, 16};
  CHECK(estimate_trispectrum(x, det1) == a);
}

TEST_CASE("Gaussian cumulants shrink with averaging") {
  for (bool colored : {false, true}) {
    std::vector<double> ratio;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      NoiseSpec s{colored ? NoiseKind::colored : NoiseKind::white, 0.0, {0.8}, 100 + seed};
      const CVector n = generate_noise({1, 1, 4 * 4096}, s);
      auto frob = [&](Eigen::Index r) {
        return estimate_trispectrum(Eigen::Map<const CMatrix>(n.data(), 4, r)).norm();
      };
      ratio.push_back(frob(4096) / frob(64));
    }
    CHECK(median(ratio) < 0.25);
  }
}

TEST_CASE("invalid realizations are rejected") {
  CHECK_THROWS_AS(estimate_trispectrum(CMatrix(3, 0)), Error);
  CHECK_THROWS_AS(estimate_covariance(CMatrix(0, 2)), Error);
  CMatrix bad = CMatrix::Ones(2, 2);
  bad(0, 0) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(estimate_trispectrum(bad), Error);
}
