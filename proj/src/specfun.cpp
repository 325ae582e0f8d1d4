#include "wcle/specfun.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace wcle {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void domain_error(const std::string& msg) { throw std::domain_error(msg); }

bool near_nonpositive_integer(double b, double tol = 1e-9) {
  if (b > tol) return false;
  return std::abs(b - std::round(b)) < tol;
}

}  // namespace

double bessel_k(double nu, double x, const QuadratureSpec& spec) {
  nu = std::abs(nu);  // K_{-nu} = K_nu
  if (!(x > 0.0)) domain_error("bessel_k: need x > 0");
  if (x > 745.0) return 0.0;  // e^{-x} underflows
  // scaled integrand e^{-x(cosh t - 1)} cosh(nu t) stays O(1) near t = 0
  auto f = [&](double t) {
    double c = std::cosh(t);
    return std::exp(-x * (c - 1.0)) * std::cosh(nu * t);
  };
  QuadratureSpec s = spec;
  if (s.cutoff <= 0.0) s.cutoff = std::acosh(1.0 + 60.0 / x) + 3.0 + nu;
  return std::exp(-x) * integrate_upper(f, 0.0, s);
}

double bessel_k_alt(double nu, double x, const QuadratureSpec& spec) {
  nu = std::abs(nu);
  if (!(x > 0.0)) domain_error("bessel_k_alt: need x > 0");
  const double q = 0.25 * x * x;  // (x/2)^2
  // y = e^s turns the power kernel into a doubly-decaying integrand in s
  auto f = [&](double s) {
    return std::exp(-q * std::exp(s) - std::exp(-s) - nu * s);
  };
  const double s_lo = -std::log(60.0) - 2.0;
  const double s_hi = std::log(60.0 / q + 1.0) + 2.0 + 40.0 / (1.0 + nu);
  const double integral = integrate(f, s_lo, s_hi, spec);
  return 0.5 * std::pow(0.5 * x, -nu) * integral;
}

double bessel_k_fast(double nu, double x) {
  nu = std::abs(nu);
  if (!(x > 0.0)) domain_error("bessel_k_fast: need x > 0");
  gsl_sf_result r;
  int status = gsl_sf_bessel_lnKnu_e(nu, x, &r);
  if (status != GSL_SUCCESS) domain_error("bessel_k_fast: gsl lnKnu failed");
  return std::exp(r.val);
}

double kbar(double nu, double x, const QuadratureSpec& spec) {
  if (!(nu > 0.0)) domain_error("kbar: need nu > 0");
  if (x == 0.0) return 1.0;
  if (!(x > 0.0)) domain_error("kbar: need x >= 0");
  return 2.0 * std::pow(0.5 * x, nu) * bessel_k(nu, x, spec) / std::tgamma(nu);
}

double kbar_small_x(double nu, double x) {
  if (!(nu > 0.0 && nu < 3.0) || std::abs(nu - 1.0) < 1e-6 || std::abs(nu - 2.0) < 1e-6) {
    domain_error("kbar_small_x: nu must avoid 1 and 2");
  }
  // Kbar_nu(x) = Gamma(1-nu) [ sum_k (x/2)^{2k} / (k! Gamma(k+1-nu))
  //                           - (x/2)^{2nu} sum_k (x/2)^{2k} / (k! Gamma(k+1+nu)) ]
  const double q = 0.25 * x * x;
  double even = 0.0, frac = 0.0, qk = 1.0, fact = 1.0;
  for (int k = 0; k <= 3; ++k) {
    even += qk / (fact * gamma_fn(k + 1.0 - nu));
    frac += qk / (fact * gamma_fn(k + 1.0 + nu));
    qk *= q;
    fact *= (k + 1.0);
  }
  return gamma_fn(1.0 - nu) * (even - std::pow(0.5 * x, 2.0 * nu) * frac);
}

double gamma_fn(double x) {
  if (x > 0.0) return std::tgamma(x);
  if (x == std::floor(x)) domain_error("gamma_fn: pole at nonpositive integer");
  return kPi / (std::sin(kPi * x) * std::tgamma(1.0 - x));
}

double beta_fn(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) domain_error("beta_fn: need a, b > 0");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double beta_inc(double x, double a, double b) {
  if (!(a > 0.0)) domain_error("beta_inc: need a > 0");
  if (!(x >= 0.0 && x < 1.0)) domain_error("beta_inc: need x in [0,1)");
  if (x == 0.0) return 0.0;
  if (b > 0.0) {
    gsl_sf_result r;
    int status = gsl_sf_beta_inc_e(a, b, x, &r);
    if (status != GSL_SUCCESS) domain_error("beta_inc: gsl beta_inc failed");
    return r.val * beta_fn(a, b);
  }
  if (near_nonpositive_integer(b)) {
    domain_error("beta_inc: b too close to a nonpositive integer");
  }
  // raise b past 0, then walk back down with
  //   B_x(a, b) = ((a+b)/b) B_x(a, b+1) - x^a (1-x)^b / b
  int k = static_cast<int>(std::ceil(-b)) + 1;
  if (b + k < 1e-9) ++k;
  double val = beta_inc(x, a, b + k);
  const double xa = std::pow(x, a);
  for (int j = k - 1; j >= 0; --j) {
    const double bj = b + j;
    val = ((a + bj) / bj) * val - xa * std::pow(1.0 - x, bj) / bj;
  }
  return val;
}

namespace {

// theta^2 as a smooth function of d = rho - 1 for the acos branch, analytically
// continued (negative values correspond to the acosh branch).
double theta_sq_of_d(double d) { return -2.0 * d + d * d / 3.0; }

}  // namespace

double cosh_ratio_integral(double alpha, double rho, EvalMode mode,
                           const QuadratureSpec& spec) {
  if (!(alpha > 0.0 && alpha < 1.0)) domain_error("cosh_ratio_integral: need alpha in (0,1)");
  if (!(rho > -1.0)) domain_error("cosh_ratio_integral: need rho > -1");

  if (mode == EvalMode::kQuadrature) {
    auto f = [&](double t) { return std::cosh(alpha * t) / (std::cosh(t) + rho); };
    QuadratureSpec s = spec;
    if (s.cutoff <= 0.0) s.cutoff = 30.0 / (1.0 - alpha) + 10.0;
    return integrate_upper(f, 0.0, s);
  }

  const double pref = kPi / std::sin(kPi * alpha);
  const double d = rho - 1.0;
  if (std::abs(d) < 1e-4) {
    // unified even series in w = theta^2 across the branch point
    const double w = theta_sq_of_d(d);
    const double a2 = alpha * alpha;
    const double f = alpha * (1.0 + (1.0 - a2) * w / 6.0 +
                              (7.0 - 10.0 * a2 + 3.0 * a2 * a2) * w * w / 360.0);
    return pref * f;
  }
  if (rho < 1.0) {
    const double th = std::acos(rho);
    return pref * std::sin(alpha * th) / std::sin(th);
  }
  const double th = std::acosh(rho);
  return pref * std::sinh(alpha * th) / std::sinh(th);
}

double cosh_ratio_integral_sq(double beta, double rho, EvalMode mode,
                              const QuadratureSpec& spec) {
  if (!(beta > 0.0 && beta < 2.0) || std::abs(beta - 1.0) < 1e-6) {
    domain_error("cosh_ratio_integral_sq: need beta in (0,2) away from 1");
  }
  if (!(rho > -1.0)) domain_error("cosh_ratio_integral_sq: need rho > -1");

  if (mode == EvalMode::kQuadrature) {
    auto f = [&](double t) {
      const double c = std::cosh(t) + rho;
      return std::cosh(beta * t) / (c * c);
    };
    QuadratureSpec s = spec;
    if (s.cutoff <= 0.0) s.cutoff = 30.0 / (2.0 - beta) + 10.0;
    return integrate_upper(f, 0.0, s);
  }

  const double pref = kPi / std::sin(kPi * beta);
  const double d = rho - 1.0;
  if (std::abs(d) < 1e-4) {
    const double w = theta_sq_of_d(d);
    const double b2 = beta * beta;
    const double f = beta * (1.0 - b2) / 3.0 +
                     beta * w * (b2 * b2 / 30.0 - b2 / 6.0 + 2.0 / 15.0);
    return pref * f;
  }
  if (rho < 1.0) {
    const double th = std::acos(rho);
    const double s = std::sin(th);
    return pref * (beta * std::cos(beta * th) - (std::cos(th) / s) * std::sin(beta * th)) / (s * s);
  }
  const double th = std::acosh(rho);
  const double s = std::sinh(th);
  return pref * ((std::cosh(th) / s) * std::sinh(beta * th) - beta * std::cosh(beta * th)) / (s * s);
}

double levy_symbol_integral(double nu, double rho, bool compensated, EvalMode mode,
                            const QuadratureSpec& spec) {
  if (compensated) {
    if (!(nu > 1.0 && nu < 2.0)) domain_error("levy_symbol_integral: compensated needs nu in (1,2)");
  } else {
    if (!(nu > 0.0 && nu < 1.0)) domain_error("levy_symbol_integral: uncompensated needs nu in (0,1)");
  }
  if (!(rho > -1.0)) domain_error("levy_symbol_integral: need rho > -1");

  if (mode == EvalMode::kClosedForm) {
    const double branch = rho < 1.0 ? std::cos(nu * std::acos(rho))
                                    : std::cosh(nu * std::acosh(rho));
    const double pref = compensated
                            ? std::pow(2.0, 1.0 - nu) * kPi /
                                  (std::sin(-kPi * nu) * std::tgamma(1.0 + nu))
                            : -std::pow(2.0, 1.0 - nu) * kPi /
                                  (std::sin(kPi * nu) * std::tgamma(1.0 + nu));
    return pref * branch;
  }

  const double gamma_nu = std::tgamma(nu);
  auto kbar_at = [&](double h) {
    return 2.0 * std::pow(0.5 * h, nu) * bessel_k_fast(nu, h) / gamma_nu;
  };
  // series pieces of Kbar - 1 for the cancellation-free small-h integrand
  const double c_even = gamma_fn(1.0 - nu) / gamma_fn(2.0 - nu);
  const double c_even2 = gamma_fn(1.0 - nu) / (2.0 * gamma_fn(3.0 - nu));
  const double c_frac = -gamma_fn(1.0 - nu) / gamma_fn(1.0 + nu);
  const double c_frac2 = -gamma_fn(1.0 - nu) / gamma_fn(2.0 + nu);
  auto kbar_minus_one = [&](double h) {
    const double q = 0.25 * h * h;
    return q * (c_even + q * c_even2) +
           std::pow(0.5 * h, 2.0 * nu) * (c_frac + q * c_frac2);
  };

  const double A = 1.0;
  auto integrand = [&](double h) {
    if (compensated) {
      if (h < 0.01) {
        return (std::expm1(-rho * h) + rho * h +
                std::exp(-rho * h) * kbar_minus_one(h)) *
               std::pow(h, -1.0 - nu);
      }
      return (std::exp(-rho * h) * kbar_at(h) - 1.0 + rho * h) * std::pow(h, -1.0 - nu);
    }
    if (h < 0.01) {
      return (std::expm1(-rho * h) + std::exp(-rho * h) * kbar_minus_one(h)) *
             std::pow(h, -1.0 - nu);
    }
    return (std::exp(-rho * h) * kbar_at(h) - 1.0) * std::pow(h, -1.0 - nu);
  };
  double val = integrate(integrand, 0.0, A, spec);

  // beyond A: the subtracted terms integrate in closed form, the Kbar part decays
  double tail_closed = -std::pow(A, -nu) / nu;
  if (compensated) tail_closed += rho * std::pow(A, 1.0 - nu) / (nu - 1.0);
  auto tail_f = [&](double h) {
    return std::exp(-rho * h) * kbar_at(h) * std::pow(h, -1.0 - nu);
  };
  QuadratureSpec ts = spec;
  ts.cutoff = A + 60.0 / (1.0 + std::min(rho, 1.0)) + 10.0;
  return val + tail_closed + integrate_upper(tail_f, A, ts);
}

namespace {

struct ATerms {
  double p;          // 4/kappa
  double cos_coeff;  // -cos(4 pi / kappa)
};

ATerms a_validate(double kappa, double theta, double u, bool compensated) {
  if (compensated) {
    if (!(kappa > 8.0 / 3.0 && kappa < 4.0)) {
      domain_error("a_theta_u: compensated needs kappa in (8/3, 4)");
    }
  } else {
    if (!(kappa > 4.0 && kappa < 8.0)) {
      domain_error("a_theta_u: uncompensated needs kappa in (4, 8)");
    }
  }
  const double p = 4.0 / kappa;
  if (!(theta < p)) domain_error("a_theta_u: need theta < 4/kappa");
  if (!(u > 0.0 && u < 1.0)) domain_error("a_theta_u: need u in (0,1)");
  return {p, -std::cos(4.0 * kPi / kappa)};
}

// (1+h)^theta - 1, stable for small h
double pow1p_m1(double h, double theta) { return std::expm1(theta * std::log1p(h)); }

}  // namespace

double a_theta_u(double kappa, double theta, double u, bool compensated,
                 EvalMode mode, const QuadratureSpec& spec) {
  const ATerms at = a_validate(kappa, theta, u, compensated);
  const double p = at.p;

  if (mode == EvalMode::kClosedForm) {
    double i1, i2u, i2v;
    if (compensated) {
      const double c = theta * (theta - 1.0) / (p * (p - 1.0));
      i1 = c * beta_fn(2.0 - p, p - theta);
      auto i2 = [&](double v) {
        return c * beta_inc(v, 2.0 - p, theta - 1.0) +
               theta * std::pow(v, 1.0 - p) * std::pow(1.0 - v, theta - 1.0) /
                   (p * (p - 1.0)) -
               std::pow(v, -p) * std::pow(1.0 - v, theta) / p;
      };
      i2u = i2(u);
      i2v = i2(1.0 - u);
    } else {
      i1 = (theta / p) * beta_fn(1.0 - p, p - theta);
      auto i2 = [&](double v) {
        return -(theta / p) * beta_inc(v, 1.0 - p, theta) -
               std::pow(v, -p) * std::pow(1.0 - v, theta) / p;
      };
      i2u = i2(u);
      i2v = i2(1.0 - u);
    }
    return at.cos_coeff * i1 + 0.5 * (i2u + i2v);
  }

  // quadrature route: bulk on [0, A], closed elementary tails, and the
  // (1+h)^theta tail mapped to a finite interval by s = 1/h
  const double A = 2.0;
  auto g1 = [&](double h) {
    const double base = pow1p_m1(h, theta) - (compensated ? theta * h : 0.0);
    return base * std::pow(h, -1.0 - p);
  };
  double i1 = integrate(g1, 0.0, A, spec);
  {
    double tail = -std::pow(A, -p) / p;  // the "-1" piece
    if (compensated) tail -= theta * std::pow(A, 1.0 - p) / (p - 1.0);
    auto g1_tail = [&](double s) { return std::pow(s, p - theta - 1.0) * std::pow(1.0 + s, theta); };
    i1 += tail + integrate(g1_tail, 0.0, 1.0 / A, spec);
  }

  auto i2 = [&](double v) {
    auto g2 = [&](double h) {
      const double base = std::expm1(theta * std::log1p(-h)) + (compensated ? theta * h : 0.0);
      return base * std::pow(h, -1.0 - p);
    };
    double val = integrate(g2, 0.0, v, spec);
    double tail = -std::pow(v, -p) / p;
    if (compensated) tail += theta * std::pow(v, 1.0 - p) / (p - 1.0);
    return val + tail;
  };

  return at.cos_coeff * i1 + 0.5 * (i2(u) + i2(1.0 - u));
}

double a_theta_u_combined(double kappa, double theta, double u, bool compensated,
                          EvalMode mode, const QuadratureSpec& spec) {
  const ATerms at = a_validate(kappa, theta, u, compensated);
  if (!(theta > -1.0)) domain_error("a_theta_u_combined: need theta > -1");
  const double p = at.p;

  if (mode == EvalMode::kClosedForm) {
    return -std::cos(kPi * theta) * beta_fn(theta + 1.0, p - theta);
  }

  auto wedge = [&](double v) {
    auto f = [&](double h) { return std::pow(h, theta) * std::pow(1.0 - h, -1.0 - p); };
    return integrate(f, 0.0, v, spec);
  };
  return a_theta_u(kappa, theta, u, compensated, EvalMode::kQuadrature, spec) +
         0.5 * (wedge(u) + wedge(1.0 - u));
}

double lambda_of_rho(double nu, double c, double rho) {
  if (!(nu > 1.0 && nu < 2.0)) domain_error("lambda_of_rho: need nu in (1,2)");
  if (!(c > 0.0)) domain_error("lambda_of_rho: need c > 0");
  const double cp = std::pow(c, nu) * std::pow(2.0, 1.0 - nu);
  const double r = rho / c;
  if (!(r > std::cos(0.5 * kPi / nu))) {
    domain_error("lambda_of_rho: rho below the invertible branch");
  }
  if (r <= 1.0) return cp * std::cos(nu * std::acos(r));
  return cp * std::cosh(nu * std::acosh(r));
}

double rho_lambda(double nu, double c, double lambda) {
  if (!(nu > 1.0 && nu < 2.0)) domain_error("rho_lambda: need nu in (1,2)");
  if (!(c > 0.0)) domain_error("rho_lambda: need c > 0");
  if (!(lambda >= 0.0)) domain_error("rho_lambda: need lambda >= 0");
  const double cp = std::pow(c, nu) * std::pow(2.0, 1.0 - nu);
  double lo = c * std::cos(0.5 * kPi / nu);
  double hi = lambda <= cp ? c : c * std::cosh(std::acosh(lambda / cp) / nu) + 1.0;
  // the closed endpoints already bracket; bisect to 1e-12 interval width
  const double width = 1e-12 * std::max(1.0, c);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (lambda_of_rho(nu, c, mid) < lambda) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

KbarTable::KbarTable(double nu, std::size_t knots) : nu_(nu) {
  if (!(nu > 0.0 && nu < 3.0) || std::abs(nu - 1.0) < 1e-6 || std::abs(nu - 2.0) < 1e-6) {
    domain_error("KbarTable: nu must be in (0,3) away from 1 and 2");
  }
  x_lo_ = 1e-4;
  x_hi_ = 100.0;
  const double ln_gamma_nu = std::lgamma(nu);
  std::vector<double> ss(knots), ys(knots);
  const double s0 = std::log(x_lo_), s1 = std::log(x_hi_);
  for (std::size_t i = 0; i < knots; ++i) {
    const double s = s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(knots - 1);
    const double x = std::exp(s);
    gsl_sf_result r;
    if (gsl_sf_bessel_lnKnu_e(nu, x, &r) != GSL_SUCCESS) {
      domain_error("KbarTable: lnKnu failed");
    }
    ss[i] = s;
    ys[i] = std::exp(std::log(2.0) + nu * std::log(0.5 * x) + r.val - ln_gamma_nu);
  }
  spline_ = MonotoneCubic(std::move(ss), std::move(ys));
}

double KbarTable::operator()(double x) const {
  if (x == 0.0) return 1.0;
  if (!(x > 0.0)) domain_error("KbarTable: need x >= 0");
  if (x < x_lo_) return kbar_small_x(nu_, x);
  if (x >= x_hi_) return 0.0;
  return spline_(std::log(x));
}

}  // namespace wcle
