#pragma once

#include <string>
#include <vector>

namespace wcle {

// Throws std::domain_error unless kappa is in (8/3, 8); kappa = 4 is rejected
// too unless allow_four (the conformal-radius laws are the one place it is
// meaningful, the stable-process modules need 4/kappa != 1).
void require_kappa(double kappa, bool allow_four = false);

// Global parameter record shared by every module: kappa with its derived
// quantities and the jump asymmetry beta.
struct ModelParams {
  double kappa;  // (8/3, 8), 4 excluded unless allow_four
  double beta;   // [-1, 1]
  double gamma;  // min(sqrt(kappa), 4/sqrt(kappa))
  double nu;     // 4/kappa, stability index of the boundary-length pair

  explicit ModelParams(double kappa_in, double beta_in = 0.0,
                       bool allow_four = false);
};

// Q(x) = x/2 + 2/x.
double q_of(double x);

// gamma = min(sqrt(kappa), 4/sqrt(kappa)).
double gamma_of_kappa(double kappa);

// Endpoints of the alpha-map: sigma ranges over (-inf, sigma_alpha_max) and
// alpha over (alpha_min, alpha_max) = (Q_gamma - sqrt(kappa)/4, Q_gamma).
double sigma_alpha_max(double kappa);  // -log(-cos(4 pi / kappa))
double alpha_min(double kappa);
double alpha_max(double kappa);

// Lower endpoint of the rho-map range: -1 + 2/kappa + 3 kappa / 32.
double rho_min(double kappa);

// Strictly increasing bijection (-inf, sigma_alpha_max) -> (alpha_min, alpha_max)
// defined through  e^{-sigma} = -cos(4 pi/kappa) / (-cos(4 pi/kappa - 2 pi alpha / sqrt(kappa))),
// and its inverse.
double alpha_from_sigma(double kappa, double sigma);
double sigma_from_alpha(double kappa, double alpha);

// Strictly increasing bijection R -> (rho_min, inf) defined through
//   e^{-sigma} = -cos(4 pi/kappa) / cos(pi sqrt((1 - 4/kappa)^2 - 8 rho / kappa)),
// cos turning into cosh when the radicand goes negative, and its inverse.
double rho_from_sigma(double kappa, double sigma);
double sigma_from_rho(double kappa, double rho);

// Weight-exponent family on the subsets of a finite label set A. Subsets are
// bitmasks over the sorted label vector; mask 0 is the empty set with sigma 0.
struct SigmaFamily {
  std::vector<int> labels;    // sorted ascending, distinct
  std::vector<double> sigma;  // size 2^|A|; sigma[0] = 0
  std::vector<bool> given;    // which masks were explicitly provided

  static SigmaFamily make(std::vector<int> labels);

  int n() const { return static_cast<int>(labels.size()); }
  unsigned full_mask() const { return (1u << labels.size()) - 1u; }

  void set(unsigned mask, double value);
  double get(unsigned mask) const;

  // Fill every unset non-singleton subset B with min_{i in B} sigma_{i} - 0.1.
  void fill_defaults();

  std::vector<int> members(unsigned mask) const;
  std::string key(unsigned mask) const;  // comma-joined sorted labels, "" for empty

  std::string to_json() const;
  static SigmaFamily from_json(const std::string& text);
};

struct SigmaFamilyReport {
  bool ok = true;
  std::vector<std::string> notes;
};

// Structural and domain checks; reports rather than throws.
SigmaFamilyReport validate_sigma_family(const SigmaFamily& fam, double kappa);

}  // namespace wcle
