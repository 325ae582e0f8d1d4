#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wcle/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wcle {

// Point estimate with standard error; the unit every Monte-Carlo operation
// reports in.
struct MCEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

// Mean vector with covariance of the mean, for delta-method error bars on
// ratios of jointly estimated quantities.
struct MCStats {
  std::uint64_t n = 0;
  std::vector<double> mean;      // dim
  std::vector<double> cov_mean;  // dim*dim, row-major

  double std_error(int i) const {
    double v = cov_mean[static_cast<std::size_t>(i) * mean.size() + i];
    return v > 0.0 ? std::sqrt(v) : 0.0;
  }
};

// Runs `fn` for n samples, sample i drawing from its own stream Rng(seed, i),
// and accumulates dim outputs per sample. Chunk partials are reduced in chunk
// order, so the result is bit-identical for any worker count (and for the
// serial reference path used by the benchmark).
inline MCStats run_mc(std::uint64_t seed, std::uint64_t n, int dim,
                      const std::function<void(std::uint64_t, Rng&, double*)>& fn,
                      bool force_serial = false) {
  if (dim <= 0) throw std::invalid_argument("run_mc: dim must be positive");
  const std::uint64_t chunk = 1024;
  const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
  const int d = dim;

  // per-chunk partials: sums (d) then cross-products (d*d upper incl. diag)
  const int stride = d + d * d;
  std::vector<double> partial(n_chunks * static_cast<std::uint64_t>(stride), 0.0);

  auto run_chunk = [&](std::uint64_t c) {
    double* out = partial.data() + c * static_cast<std::uint64_t>(stride);
    std::vector<double> x(static_cast<std::size_t>(d));
    const std::uint64_t lo = c * chunk;
    const std::uint64_t hi = std::min(n, lo + chunk);
    for (std::uint64_t i = lo; i < hi; ++i) {
      Rng rng(seed, i);
      for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] = 0.0;
      fn(i, rng, x.data());
      for (int a = 0; a < d; ++a) {
        out[a] += x[static_cast<std::size_t>(a)];
        for (int b = 0; b < d; ++b) {
          out[d + a * d + b] += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(b)];
        }
      }
    }
  };

  if (force_serial) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
      run_chunk(static_cast<std::uint64_t>(c));
    }
  }

  // fixed-order reduction
  std::vector<double> sum(static_cast<std::size_t>(d), 0.0);
  std::vector<double> cross(static_cast<std::size_t>(d) * d, 0.0);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    const double* out = partial.data() + c * static_cast<std::uint64_t>(stride);
    for (int a = 0; a < d; ++a) sum[static_cast<std::size_t>(a)] += out[a];
    for (int ab = 0; ab < d * d; ++ab) cross[static_cast<std::size_t>(ab)] += out[d + ab];
  }

  MCStats s;
  s.n = n;
  s.mean.resize(static_cast<std::size_t>(d));
  s.cov_mean.assign(static_cast<std::size_t>(d) * d, 0.0);
  const double dn = static_cast<double>(n);
  for (int a = 0; a < d; ++a) s.mean[static_cast<std::size_t>(a)] = sum[static_cast<std::size_t>(a)] / dn;
  if (n > 1) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const double c2 = cross[static_cast<std::size_t>(a) * d + b] -
                          dn * s.mean[static_cast<std::size_t>(a)] * s.mean[static_cast<std::size_t>(b)];
        s.cov_mean[static_cast<std::size_t>(a) * d + b] = c2 / (dn * (dn - 1.0));
      }
    }
  }
  return s;
}

inline MCEstimate run_mc_scalar(std::uint64_t seed, std::uint64_t n,
                                const std::function<double(std::uint64_t, Rng&)>& fn,
                                bool force_serial = false) {
  MCStats s = run_mc(
      seed, n, 1,
      [&](std::uint64_t i, Rng& rng, double* out) { out[0] = fn(i, rng); },
      force_serial);
  MCEstimate e;
  e.estimate = s.mean[0];
  e.std_error = s.std_error(0);
  e.n = n;
  e.seed = seed;
  return e;
}

}  // namespace wcle
