#pragma once

#include <vector>

#include "wcle/interp.hpp"
#include "wcle/quadrature.hpp"

namespace wcle {

// Route selector for the dual-evaluation functions: every identity below has
// an independent quadrature route and a closed/series route, and tests compare
// the two rather than trusting either alone.
enum class EvalMode { kClosedForm, kQuadrature };

// Macdonald function K_nu(x) for x > 0, computed by adaptive quadrature of
// the cosh-kernel integral representation.
double bessel_k(double nu, double x, const QuadratureSpec& spec = {});

// Same function via the independent power-kernel representation
//   K_nu(x) = (1/2) (x/2)^{-nu} * Int_0^inf exp(-(x/2)^2 y - 1/y) y^{-1-nu} dy,
// used only to cross-check bessel_k.
double bessel_k_alt(double nu, double x, const QuadratureSpec& spec = {});

// Library-backed evaluation (underflow-safe via the log form); fast enough for
// inner loops of other quadratures. Independent of the two routes above.
double bessel_k_fast(double nu, double x);

// Normalized Macdonald function  Kbar_nu(x) = 2 (x/2)^nu K_nu(x) / Gamma(nu),
// which satisfies Kbar_nu(0) = 1 and decreases to 0.
double kbar(double nu, double x, const QuadratureSpec& spec = {});

// Small-x expansion of Kbar (series in x^2 and x^{2 nu}, three terms each);
// valid for nu in (0,1) u (1,2) and x away from the crossover to the integral
// representation. Exposed for tests and for tail handling in tables.
double kbar_small_x(double nu, double x);

// Gamma with reflection for negative non-integer arguments.
double gamma_fn(double x);

// Euler Beta for a, b > 0.
double beta_fn(double a, double b);

// Unnormalized incomplete Beta  B_x(a,b) = Int_0^x t^{a-1}(1-t)^{b-1} dt for
// a > 0, x in [0,1), and any real b (nonpositive b handled by the raising
// recurrence; b within 1e-9 of a nonpositive integer is a domain error).
double beta_inc(double x, double a, double b);

// Int_0^inf cosh(alpha t) / (cosh t + rho) dt for alpha in (0,1), rho > -1.
// Closed route: pi/sin(pi alpha) * { sin(alpha theta)/sin(theta),  rho = cos(theta) in (-1,1)
//                                  { alpha,                        rho = 1
//                                  { sinh(alpha theta)/sinh(theta), rho = cosh(theta) > 1
// with a unified even series in theta^2 used within |rho - 1| < 1e-4.
double cosh_ratio_integral(double alpha, double rho, EvalMode mode,
                           const QuadratureSpec& spec = {});

// Int_0^inf cosh(beta t) / (cosh t + rho)^2 dt for beta in (0,2) \ {1}.
double cosh_ratio_integral_sq(double beta, double rho, EvalMode mode,
                              const QuadratureSpec& spec = {});

// Exponential functional of the Macdonald kernel:
//   compensated (nu in (1,2)):  Int_0^inf h^{-1-nu} (e^{-rho h} Kbar_nu(h) - 1 + rho h) dh
//   uncompensated (nu in (0,1)): Int_0^inf h^{-1-nu} (e^{-rho h} Kbar_nu(h) - 1) dh
// Closed route: (+-) 2^{1-nu} pi / (sin(-+pi nu) Gamma(1+nu)) * {cos, cosh}(nu theta)
// with rho = {cos, cosh}(theta).
double levy_symbol_integral(double nu, double rho, bool compensated, EvalMode mode,
                            const QuadratureSpec& spec = {});

// Jump-measure moment functional A^theta_u for kappa in (8/3,4) (compensated)
// or (4,8) (uncompensated), theta < 4/kappa, u in (0,1):
//   A = -cos(4 pi/kappa) I1 + (I2(u) + I2(1-u)) / 2,
// I1 over (1+h)^theta and I2 over (1-h)^theta 1(h<u), with full (resp. no)
// linear compensation. Closed route via incomplete-Beta building blocks.
double a_theta_u(double kappa, double theta, double u, bool compensated,
                 EvalMode mode, const QuadratureSpec& spec = {});

// The combination  A^theta_u + (B_u(theta+1,-4/kappa) + B_{1-u}(theta+1,-4/kappa))/2,
// equal to -cos(pi theta) B(theta+1, 4/kappa - theta) for theta in (-1, 4/kappa).
double a_theta_u_combined(double kappa, double theta, double u, bool compensated,
                          EvalMode mode, const QuadratureSpec& spec = {});

// Forward map rho -> lambda = c^nu 2^{1-nu} * {cos,cosh}(nu theta),
// rho = c {cos,cosh}(theta), on the branch containing rho = c (lambda = 0 at
// theta such that nu theta = pi/2 ... ; strictly increasing for
// rho > c cos(pi/(2 nu))).
double lambda_of_rho(double nu, double c, double rho);

// Inverse of lambda_of_rho by bisection to interval width 1e-12: the unique
// rho > c cos(pi/(2 nu)) with lambda_of_rho(nu, c, rho) = lambda, lambda >= 0.
double rho_lambda(double nu, double c, double lambda);

// Tabulated Kbar_nu for hot loops: monotone cubic in log x over the bulk,
// series below, zero beyond the underflow point. Relative accuracy ~1e-9.
class KbarTable {
 public:
  explicit KbarTable(double nu, std::size_t knots = 4096);
  double operator()(double x) const;
  double nu() const { return nu_; }

 private:
  double nu_ = 0.0;
  double x_lo_ = 0.0, x_hi_ = 0.0;
  MonotoneCubic spline_;  // in s = log x
};

}  // namespace wcle
