#pragma once

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#include "raysep/geometry.hpp"

namespace raysep {

struct AccumulationOptions {
  unsigned threads = 1;
  // Fixed pairwise reduction tree over realization blocks. Without it, worker
  // partial sums are folded in completion order.
  bool deterministic = true;
  Eigen::Index block = 64;
};

namespace detail {

inline void check_realizations(const CMatrix& x) {
  require(x.cols() >= 1, "cumulant: at least one realization is required");
  require(x.rows() >= 1, "cumulant: realizations must be nonempty");
  require(x.allFinite(), "cumulant: non-finite realization entries");
}

/// Columns kron(x_r, conj(x_r)) for r in [begin, end).
inline CMatrix lifted_columns(const CMatrix& x, Eigen::Index begin, Eigen::Index end) {
  const Eigen::Index l = x.rows();
  CMatrix y(l * l, end - begin);
  for (Eigen::Index r = begin; r < end; ++r) {
    for (Eigen::Index a = 0; a < l; ++a) y.col(r - begin).segment(a * l, l) = x(a, r) * x.col(r).conjugate();
  }
  return y;
}

/// Lower triangle of sum_r y_r y_r^H for r in the block.
inline CMatrix block_gram(const CMatrix& x, Eigen::Index begin, Eigen::Index end) {
  const CMatrix y = lifted_columns(x, begin, end);
  CMatrix g = CMatrix::Zero(y.rows(), y.rows());
  g.selfadjointView<Eigen::Lower>().rankUpdate(y);
  return g;
}

/// sum_r y_r y_r^H accumulated block-wise. Returns the lower triangle only.
inline CMatrix lifted_gram(const CMatrix& x, const AccumulationOptions& opt) {
  const Eigen::Index r = x.cols();
  const Eigen::Index block = std::max<Eigen::Index>(1, opt.block);
  const Eigen::Index nblocks = (r + block - 1) / block;
  auto range = [&](Eigen::Index b) { return std::pair{b * block, std::min(r, (b + 1) * block)}; };
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(nblocks)));

  if (opt.deterministic) {
    // Pairwise tree: level-0 leaves are blocks; siblings are summed left + right.
    std::vector<CMatrix> leaves(static_cast<std::size_t>(nblocks));
    if (threads == 1) {
      for (Eigen::Index b = 0; b < nblocks; ++b) {
        auto [lo, hi] = range(b);
        leaves[static_cast<std::size_t>(b)] = block_gram(x, lo, hi);
      }
    } else {
      std::atomic<Eigen::Index> next{0};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (Eigen::Index b = next++; b < nblocks; b = next++) {
            auto [lo, hi] = range(b);
            leaves[static_cast<std::size_t>(b)] = block_gram(x, lo, hi);
          }
        });
      }
      for (auto& th : pool) th.join();
    }
    while (leaves.size() > 1) {
      std::vector<CMatrix> up;
      up.reserve((leaves.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < leaves.size(); i += 2) {
        leaves[i] += leaves[i + 1];
        up.push_back(std::move(leaves[i]));
      }
      if (leaves.size() % 2 == 1) up.push_back(std::move(leaves.back()));
      leaves = std::move(up);
    }
    return std::move(leaves.front());
  }

  const Eigen::Index l2 = x.rows() * x.rows();
  CMatrix total = CMatrix::Zero(l2, l2);
  std::mutex mu;
  std::atomic<Eigen::Index> next{0};
  auto worker = [&] {
    CMatrix local = CMatrix::Zero(l2, l2);
    for (Eigen::Index b = next++; b < nblocks; b = next++) {
      auto [lo, hi] = range(b);
      local += block_gram(x, lo, hi);
    }
    std::lock_guard lock(mu);
    total += local;
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return total;
}

inline void hermitize(CMatrix& c) {
  c = (0.5 * (c + c.adjoint())).eval();
}

}  // namespace detail

/// Sample covariance mean_r[x_r x_r^H] of the realization columns.
inline CMatrix estimate_covariance(const CMatrix& x) {
  detail::check_realizations(x);
  CMatrix c = CMatrix::Zero(x.rows(), x.rows());
  c.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / static_cast<double>(x.cols()));
  c = c.selfadjointView<Eigen::Lower>();
  return c;
}

/// Smoothed trispectrum (fourth-order cumulant) matrix of the realization columns.
///
/// With y_r = x_r (x) conj(x_r):
///   C = mean[y y^H] - mean[y] mean[y]^H - mean[x x^H] (x) conj(mean[x x^H]).
/// Entry ((a,b),(c,d)) is E[x_a x_b* x_c* x_d] - E[x_a x_b*]E[x_c* x_d] - E[x_a x_c*]E[x_b* x_d].
inline CMatrix estimate_trispectrum(const CMatrix& x, const AccumulationOptions& opt = {}) {
  detail::check_realizations(x);
  const Eigen::Index l = x.rows();
  const double inv_r = 1.0 / static_cast<double>(x.cols());

  CMatrix c = detail::lifted_gram(x, opt);
  c = c.selfadjointView<Eigen::Lower>();
  c *= inv_r;

  CVector mean_y = CVector::Zero(l * l);
  for (Eigen::Index r = 0; r < x.cols(); ++r) {
    for (Eigen::Index a = 0; a < l; ++a) mean_y.segment(a * l, l) += x(a, r) * x.col(r).conjugate();
  }
  mean_y *= inv_r;
  c.noalias() -= mean_y * mean_y.adjoint();

  const CMatrix cov = estimate_covariance(x);
  for (Eigen::Index a = 0; a < l; ++a) {
    for (Eigen::Index b = 0; b < l; ++b) {
      c.block(a * l, b * l, l, l) -= cov(a, b) * cov.conjugate();
    }
  }
  detail::hermitize(c);
  return c;
}

}  // namespace raysep
