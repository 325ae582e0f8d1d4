#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace wcle {

// Controls for adaptive quadrature. cutoff = 0 lets half-line integrals pick
// their own initial truncation point before doubling.
struct QuadratureSpec {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  int max_subdiv = 800;
  double cutoff = 0.0;
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive integral of f over [a, b] (endpoint singularities tolerated).
// Throws QuadratureError if the requested tolerance cannot be certified.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Integral of f over [a, inf): truncate at a cutoff and keep doubling it until
// two consecutive increments are negligible against the running total.
double integrate_upper(const std::function<double(double)>& f, double a,
                       const QuadratureSpec& spec = {});

}  // namespace wcle
