#pragma once

#include <cstdint>

#include "wcle/interp.hpp"
#include "wcle/mc.hpp"
#include "wcle/rng.hpp"

namespace wcle {

// Moment E(R^rho) of the CLE conformal radius:
//   -cos(4 pi/kappa) / cos(pi sqrt((1 - 4/kappa)^2 - 8 rho/kappa))
// for rho above the critical exponent rho_min(kappa); +infinity at or below it.
double cr_moment(double kappa, double rho);

// d/drho of cr_moment, in closed form (tan/tanh continuation with a series
// patch across the branch point).
double cr_moment_deriv(double kappa, double rho);

// Density of X = -log R on (0, inf): two dual alternating-exponential series,
// selected by which converges faster at this x.
double cr_log_density(double kappa, double x);

// The two series individually (each converges for every x > 0; they are dual
// theta-function representations and must agree). Exposed for cross-checks.
double cr_log_density_series_large(double kappa, double x);
double cr_log_density_series_small(double kappa, double x);

// P(X > x), exact term-by-term integral of the large-x series. Valid for all
// x > 0; below ~1/kappa it is evaluated as 1 - integral of the density.
double cr_log_survival(double kappa, double x);

// Inverse-CDF sampler for X = -log R: monotone-cubic inverse CDF over the
// bulk, exact series bisection in the exponential tail.
class CrSampler {
 public:
  explicit CrSampler(double kappa, std::size_t knots = 4096);
  double sample(Rng& rng) const;
  double cdf(double x) const;
  double kappa() const { return kappa_; }
  double tail_start() const { return x_tail_; }

 private:
  double kappa_ = 0.0;
  double x_lo_ = 0.0, x_tail_ = 0.0;
  double cdf_lo_ = 0.0, cdf_tail_ = 0.0;
  double tail_rate_ = 0.0;
  MonotoneCubic inverse_cdf_;  // u -> x on [cdf_lo_, cdf_tail_]
  MonotoneCubic cdf_;          // x -> u, for KS-style checks
};

// Limit constant of the nesting-count renewal asymptotics:
//   eps^{rho} E(e^{sigma N_eps}) -> e^{-sigma}(1 - e^{-sigma}) / (rho * (-cr_moment_deriv)),
// rho = rho_from_sigma(kappa, sigma), with the sigma -> 0 expansion
//   1 + sigma (m2 / (2 m1^2) - 1)
// used for |sigma| < 1e-4.
double nesting_constant(double kappa, double sigma);

struct RenewalSpec {
  double t = 8.0;            // horizon log(1/eps)
  std::uint64_t n = 100000;  // sample paths
  std::uint64_t seed = 1;
};

// Monte-Carlo estimate of e^{-rho t} E(e^{sigma N}) with N the renewal count
// of i.i.d. increments drawn from the conformal-radius log law.
MCEstimate nesting_renewal_estimate(double kappa, double sigma, const RenewalSpec& spec);

// One-point weight (1 - |z|^2)^{rho_sigma} at radius z_abs in [0, 1).
double one_point_phi(double kappa, double sigma, double z_abs);

}  // namespace wcle
