#include "wcle/radius.hpp"

#include <cmath>
#include <stdexcept>

#include "wcle/params.hpp"
#include "wcle/quadrature.hpp"

namespace wcle {

namespace {

constexpr double kPi = 3.14159265358979323846;

double neg_cos_a(double kappa) { return -std::cos(4.0 * kPi / kappa); }

// radicand of the moment formula
double radicand(double kappa, double rho) {
  const double s = 1.0 - 4.0 / kappa;
  return s * s - 8.0 * rho / kappa;
}

// tan(pi sqrt(r)) / sqrt(r), continued through r = 0
double tan_ratio(double r) {
  if (std::abs(r) < 1e-4) {
    const double p2 = kPi * kPi;
    return kPi * (1.0 + p2 * r / 3.0 + 2.0 * p2 * p2 * r * r / 15.0 +
                  17.0 * p2 * p2 * p2 * r * r * r / 315.0);
  }
  if (r > 0.0) {
    const double t = std::sqrt(r);
    return std::tan(kPi * t) / t;
  }
  const double t = std::sqrt(-r);
  return std::tanh(kPi * t) / t;
}

struct SeriesParams {
  double a;   // (4 - kappa)^2 / (8 kappa)
  double c1;  // -cos(4 pi/kappa) * kappa / (4 pi)
  double c2;  // 4 sqrt(2 pi / kappa) * (-cos(4 pi/kappa))
};

SeriesParams series_params(double kappa) {
  const double m = neg_cos_a(kappa);
  return {(4.0 - kappa) * (4.0 - kappa) / (8.0 * kappa), m * kappa / (4.0 * kPi),
          4.0 * std::sqrt(2.0 * kPi / kappa) * m};
}

}  // namespace

double cr_moment(double kappa, double rho) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(rho > rho_min(kappa))) return std::numeric_limits<double>::infinity();
  const double r = radicand(kappa, rho);  // < 1/4
  const double denom = r > 0.0 ? std::cos(kPi * std::sqrt(r)) : std::cosh(kPi * std::sqrt(-r));
  return neg_cos_a(kappa) / denom;
}

double cr_moment_deriv(double kappa, double rho) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(rho > rho_min(kappa))) {
    throw std::domain_error("cr_moment_deriv: rho must exceed rho_min");
  }
  const double r = radicand(kappa, rho);
  return cr_moment(kappa, rho) * (-4.0 * kPi / kappa) * tan_ratio(r);
}

double cr_log_density_series_large(double kappa, double x) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(x > 0.0)) throw std::domain_error("cr_log_density: need x > 0");
  const SeriesParams sp = series_params(kappa);
  double sum = 0.0;
  for (int n = 0; n < 400; ++n) {
    const double half = n + 0.5;
    const double term = (n % 2 == 0 ? 1.0 : -1.0) * half *
                        std::exp(sp.a * x - half * half * kappa * x / 8.0);
    sum += term;
    if (n > 2 && std::abs(term) < 1e-14 * std::abs(sum) + 1e-300) break;
  }
  return sp.c1 * sum;
}

double cr_log_density_series_small(double kappa, double x) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(x > 0.0)) throw std::domain_error("cr_log_density: need x > 0");
  const SeriesParams sp = series_params(kappa);
  double sum = 0.0;
  for (int n = 0; n < 400; ++n) {
    const double half = n + 0.5;
    const double term = (n % 2 == 0 ? 1.0 : -1.0) * half *
                        std::exp(sp.a * x - 8.0 * kPi * kPi * half * half / (kappa * x));
    sum += term;
    if (n > 2 && std::abs(term) < 1e-14 * std::abs(sum) + 1e-300) break;
  }
  return sp.c2 * std::pow(x, -1.5) * sum;
}

double cr_log_density(double kappa, double x) {
  return x < 8.0 * kPi / kappa ? cr_log_density_series_small(kappa, x)
                               : cr_log_density_series_large(kappa, x);
}

double cr_log_survival(double kappa, double x) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(x > 0.0)) throw std::domain_error("cr_log_survival: need x > 0");
  const SeriesParams sp = series_params(kappa);
  if (x * kappa < 1.0) {
    // term-by-term series is slowly converging here; integrate the density
    auto f = [&](double t) { return cr_log_density(kappa, t); };
    return 1.0 - integrate(f, 0.0, x);
  }
  double sum = 0.0;
  for (int n = 0; n < 2000; ++n) {
    const double half = n + 0.5;
    const double rate = half * half * kappa / 8.0 - sp.a;  // b_n - a > 0
    const double term = (n % 2 == 0 ? 1.0 : -1.0) * half * std::exp(-rate * x) / rate;
    sum += term;
    if (n > 2 && std::abs(term) < 1e-14 * std::abs(sum) + 1e-300) break;
  }
  return sp.c1 * sum;
}

CrSampler::CrSampler(double kappa, std::size_t knots) : kappa_(kappa) {
  require_kappa(kappa, /*allow_four=*/true);
  if (knots < 16) throw std::invalid_argument("CrSampler: too few knots");
  tail_rate_ = -rho_min(kappa);  // decay rate of the leading tail exponential

  // tail switch where about 0.5% of the mass remains
  x_tail_ = std::max(1.0, 2.0 / kappa);
  for (int k = 0; k < 200 && cr_log_survival(kappa, x_tail_) > 5e-3; ++k) {
    x_tail_ += std::max(0.5, 0.2 / tail_rate_);
  }
  cdf_tail_ = 1.0 - cr_log_survival(kappa, x_tail_);

  // lower cutoff below which the CDF is < ~1e-12 (the small-x series decays
  // super-exponentially)
  x_lo_ = 1.0 / kappa;
  auto f = [&](double t) { return cr_log_density(kappa, t); };
  while (x_lo_ > 1e-8 && integrate(f, 1e-12, x_lo_) > 1e-12) x_lo_ *= 0.5;
  cdf_lo_ = integrate(f, 1e-12, x_lo_);

  std::vector<double> xs(knots), us(knots);
  double acc = cdf_lo_;
  xs[0] = x_lo_;
  us[0] = acc;
  for (std::size_t i = 1; i < knots; ++i) {
    const double x_prev = xs[i - 1];
    const double x_next =
        x_lo_ + (x_tail_ - x_lo_) * static_cast<double>(i) / static_cast<double>(knots - 1);
    acc += integrate(f, x_prev, x_next);
    xs[i] = x_next;
    us[i] = acc;
  }
  if (std::abs(us.back() - cdf_tail_) > 1e-7) {
    throw std::runtime_error("CrSampler: cumulative density and tail series disagree");
  }
  us.back() = cdf_tail_;
  // CDF is strictly increasing on the range; guard against roundoff ties
  for (std::size_t i = 1; i < knots; ++i) {
    if (us[i] <= us[i - 1]) us[i] = std::nextafter(us[i - 1], 2.0);
  }
  cdf_ = MonotoneCubic(xs, us);
  inverse_cdf_ = MonotoneCubic(us, xs);
}

double CrSampler::cdf(double x) const {
  if (x <= x_lo_) return 0.0;
  if (x <= x_tail_) return cdf_(x);
  return 1.0 - cr_log_survival(kappa_, x);
}

double CrSampler::sample(Rng& rng) const {
  const double u = rng.uniform();
  if (u <= cdf_tail_) {
    if (u <= cdf_lo_) return x_lo_;
    return inverse_cdf_(u);
  }
  // solve survival(x) = 1 - u exactly on the tail
  const double target = 1.0 - u;
  double lo = x_tail_;
  double hi = x_tail_ + (std::log((1.0 - cdf_tail_) / target) + 5.0) / tail_rate_ + 1.0;
  while (cr_log_survival(kappa_, hi) > target) hi += 10.0 / tail_rate_;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cr_log_survival(kappa_, mid) > target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double nesting_constant(double kappa, double sigma) {
  require_kappa(kappa, /*allow_four=*/true);
  const double m1 = -cr_moment_deriv(kappa, 0.0);
  if (std::abs(sigma) < 1e-4) {
    // second moment from a central difference of the analytic first derivative
    const double h = 1e-5;
    const double m2 = (cr_moment_deriv(kappa, h) - cr_moment_deriv(kappa, -h)) / (2.0 * h);
    return 1.0 + sigma * (m2 / (2.0 * m1 * m1) - 1.0);
  }
  const double rho = rho_from_sigma(kappa, sigma);
  const double es = std::exp(-sigma);
  return es * (1.0 - es) / (rho * (-cr_moment_deriv(kappa, rho)));
}

MCEstimate nesting_renewal_estimate(double kappa, double sigma, const RenewalSpec& spec) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(spec.t > 0.0) || spec.n == 0) {
    throw std::invalid_argument("nesting_renewal_estimate: need t > 0 and n > 0");
  }
  const double rho = rho_from_sigma(kappa, sigma);
  const CrSampler sampler(kappa);
  const double scale = std::exp(-rho * spec.t);
  return run_mc_scalar(spec.seed, spec.n, [&](std::uint64_t, Rng& rng) {
    double s = 0.0;
    std::uint64_t count = 0;
    for (;;) {
      const double x = sampler.sample(rng);
      if (s + x > spec.t) break;
      s += x;
      ++count;
    }
    return scale * std::exp(sigma * static_cast<double>(count));
  });
}

double one_point_phi(double kappa, double sigma, double z_abs) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(z_abs >= 0.0 && z_abs < 1.0)) {
    throw std::domain_error("one_point_phi: need |z| in [0,1)");
  }
  return std::pow(1.0 - z_abs * z_abs, rho_from_sigma(kappa, sigma));
}

}  // namespace wcle
