#pragma once

#include <complex>
#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "raysep/geometry.hpp"

namespace raysep {

enum class StatisticOrder { second, fourth };

/// Which eigenvalues count as "largest".
///   signed:    lambda_1 >= lambda_2 >= ...
///   magnitude: |lambda_1| >= |lambda_2| >= ...
/// Fourth-order signal eigenvalues of constant-modulus arrivals are negative,
/// so the fourth-order default is magnitude.
enum class EigenOrdering { signed_value, magnitude };

struct EigenOptions {
  EigenOrdering ordering = EigenOrdering::signed_value;
  // Compute the noise basis explicitly. When false and the matrix is large,
  // only the signal eigenvectors are formed (all eigenvalues are still returned).
  bool want_noise_basis = true;
  Eigen::Index truncate_above = 512;
  double hermitian_tolerance = 1e-10;
};

inline EigenOptions default_eigen_options(StatisticOrder order) {
  EigenOptions o;
  o.ordering = order == StatisticOrder::fourth ? EigenOrdering::magnitude : EigenOrdering::signed_value;
  return o;
}

struct EigenSplit {
  RVector eigenvalues;     // sorted per `ordering`
  CMatrix signal_basis;    // dim x signal_dim
  CMatrix noise_basis;     // dim x (dim - signal_dim), empty when truncated
  std::size_t signal_dim = 0;
  std::size_t dim = 0;
  StatisticOrder order = StatisticOrder::second;
  EigenOrdering ordering = EigenOrdering::signed_value;

  bool has_noise_basis() const { return noise_basis.cols() > 0 || signal_dim == dim; }

  /// d^H Un Un^H d via the complement identity |d|^2 - |Us^H d|^2.
  double noise_energy(const CVector& d) const {
    return std::max(0.0, d.squaredNorm() - (signal_basis.adjoint() * d).squaredNorm());
  }
};

namespace detail {

inline void lapack_check(lapack_int info, const char* what) {
  if (info != 0) fail(ErrorCategory::numeric, std::string(what) + " failed with info=" + std::to_string(info));
}

// Indices (into ascending eigenvalues) of the `k` largest under the ordering,
// listed largest first, followed by the remaining indices in the same order.
inline std::vector<Eigen::Index> ordered_indices(const RVector& ascending, EigenOrdering ordering) {
  const Eigen::Index n = ascending.size();
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(n));
  if (ordering == EigenOrdering::signed_value) {
    for (Eigen::Index i = n - 1; i >= 0; --i) idx.push_back(i);
    return idx;
  }
  Eigen::Index lo = 0, hi = n - 1;
  while (lo <= hi) {
    // Ties go to the positive end so the ordering is deterministic.
    if (std::abs(ascending(hi)) >= std::abs(ascending(lo))) {
      idx.push_back(hi--);
    } else {
      idx.push_back(lo++);
    }
  }
  return idx;
}

struct Tridiagonal {
  CMatrix reflectors;
  std::vector<cplx> tau;
  std::vector<double> diag, offdiag;
};

inline Tridiagonal tridiagonalize(const CMatrix& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  Tridiagonal t{a, std::vector<cplx>(std::max<std::size_t>(1, a.rows() - 1)),
                std::vector<double>(a.rows()), std::vector<double>(std::max<std::size_t>(1, a.rows() - 1))};
  lapack_check(LAPACKE_zhetrd(LAPACK_COL_MAJOR, 'L', n, t.reflectors.data(), n, t.diag.data(), t.offdiag.data(),
                              t.tau.data()),
               "zhetrd");
  return t;
}

// Eigenvectors for ascending eigenvalue indices [il, iu] (zero-based, inclusive).
inline CMatrix tridiagonal_vectors(const Tridiagonal& t, Eigen::Index il, Eigen::Index iu) {
  const auto n = static_cast<lapack_int>(t.diag.size());
  const auto k = static_cast<lapack_int>(iu - il + 1);
  std::vector<double> d = t.diag, e = t.offdiag, w(t.diag.size());
  e.resize(t.diag.size());
  CMatrix z(n, k);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(k));
  lapack_int found = 0;
  lapack_logical tryrac = 1;
  lapack_check(LAPACKE_zstemr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0,
                              static_cast<lapack_int>(il + 1), static_cast<lapack_int>(iu + 1), &found, w.data(),
                              z.data(), n, k, isuppz.data(), &tryrac),
               "zstemr");
  if (found != k) fail(ErrorCategory::numeric, "zstemr returned fewer eigenvectors than requested");
  lapack_check(LAPACKE_zunmtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', n, k, t.reflectors.data(), n, t.tau.data(), z.data(),
                              n),
               "zunmtr");
  return z;
}

}  // namespace detail

/// Hermitian eigendecomposition split into signal and noise subspaces.
///
/// signal_dim is P for second-order matrices and P^2 for fourth-order ones.
inline EigenSplit eigensplit(const CMatrix& matrix, std::size_t paths, StatisticOrder order,
                             const EigenOptions& opt) {
  require(matrix.rows() == matrix.cols() && matrix.rows() > 0, "eigensplit: matrix must be square and nonempty");
  require(matrix.allFinite(), "eigensplit: non-finite matrix entries");
  const auto dim = static_cast<std::size_t>(matrix.rows());
  const std::size_t signal_dim = order == StatisticOrder::fourth ? paths * paths : paths;
  const std::size_t side = order == StatisticOrder::fourth ? static_cast<std::size_t>(std::llround(std::sqrt(dim))) : dim;
  require(paths >= 1, "eigensplit: path count P must be >= 1");
  if (signal_dim >= dim) {
    fail(ErrorCategory::invalid_argument,
         "eigensplit: signal dimension " + std::to_string(signal_dim) + " (P=" + std::to_string(paths) +
             ") must be smaller than the matrix dimension " + std::to_string(dim) + " (L=" + std::to_string(side) +
             "); increase the sub-array sizes or reduce P");
  }
  const double scale = matrix.norm();
  const double asym = (matrix - matrix.adjoint()).norm();
  if (asym > opt.hermitian_tolerance * std::max(scale, 1e-300)) {
    fail(ErrorCategory::numeric, "eigensplit: matrix is not Hermitian (relative asymmetry " +
                                     std::to_string(asym / std::max(scale, 1e-300)) + ")");
  }
  const CMatrix herm = 0.5 * (matrix + matrix.adjoint());
  const auto n = static_cast<lapack_int>(dim);

  EigenSplit out;
  out.signal_dim = signal_dim;
  out.dim = dim;
  out.order = order;
  out.ordering = opt.ordering;
  const auto k = static_cast<Eigen::Index>(signal_dim);

  const bool truncated = !opt.want_noise_basis && herm.rows() > opt.truncate_above;
  if (!truncated) {
    CMatrix vecs = herm;
    RVector ascending(herm.rows());
    detail::lapack_check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, vecs.data(), n, ascending.data()), "zheevd");
    const auto idx = detail::ordered_indices(ascending, opt.ordering);
    out.eigenvalues.resize(herm.rows());
    out.signal_basis.resize(herm.rows(), k);
    out.noise_basis.resize(herm.rows(), herm.rows() - k);
    for (Eigen::Index i = 0; i < herm.rows(); ++i) {
      const Eigen::Index src = idx[static_cast<std::size_t>(i)];
      out.eigenvalues(i) = ascending(src);
      if (i < k) {
        out.signal_basis.col(i) = vecs.col(src);
      } else {
        out.noise_basis.col(i - k) = vecs.col(src);
      }
    }
    return out;
  }

  const auto tri = detail::tridiagonalize(herm);
  RVector ascending(herm.rows());
  {
    std::vector<double> d = tri.diag, e = tri.offdiag;
    detail::lapack_check(LAPACKE_dsterf(n, d.data(), e.data()), "dsterf");
    for (Eigen::Index i = 0; i < herm.rows(); ++i) ascending(i) = d[static_cast<std::size_t>(i)];
  }
  const auto idx = detail::ordered_indices(ascending, opt.ordering);
  out.eigenvalues.resize(herm.rows());
  for (Eigen::Index i = 0; i < herm.rows(); ++i) out.eigenvalues(i) = ascending(idx[static_cast<std::size_t>(i)]);

  // The selected set is a run at the bottom plus a run at the top of the ascending list.
  std::vector<Eigen::Index> sel(idx.begin(), idx.begin() + k);
  std::sort(sel.begin(), sel.end());
  Eigen::Index low_count = 0;
  while (low_count < k && sel[static_cast<std::size_t>(low_count)] == low_count) ++low_count;
  const Eigen::Index high_count = k - low_count;

  CMatrix low, high;
  if (low_count > 0) low = detail::tridiagonal_vectors(tri, 0, low_count - 1);
  if (high_count > 0) high = detail::tridiagonal_vectors(tri, herm.rows() - high_count, herm.rows() - 1);
  out.signal_basis.resize(herm.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index src = idx[static_cast<std::size_t>(i)];
    out.signal_basis.col(i) = src < low_count ? low.col(src) : high.col(src - (herm.rows() - high_count));
  }
  return out;
}

inline EigenSplit eigensplit(const CMatrix& matrix, std::size_t paths, StatisticOrder order) {
  return eigensplit(matrix, paths, order, default_eigen_options(order));
}

}  // namespace raysep
