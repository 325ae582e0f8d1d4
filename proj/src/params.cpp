#include "wcle/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wcle {

namespace {

constexpr double kPi = 3.14159265358979323846;

// -cos(4 pi / kappa), strictly positive on (8/3, 8)
double neg_cos_a(double kappa) { return -std::cos(4.0 * kPi / kappa); }

}  // namespace

void require_kappa(double kappa, bool allow_four) {
  if (!(kappa > 8.0 / 3.0 && kappa < 8.0)) {
    throw std::domain_error("kappa must lie in (8/3, 8)");
  }
  if (!allow_four && kappa == 4.0) {
    throw std::domain_error("kappa = 4 is excluded here");
  }
}

ModelParams::ModelParams(double kappa_in, double beta_in, bool allow_four)
    : kappa(kappa_in), beta(beta_in) {
  require_kappa(kappa, allow_four);
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw std::domain_error("ModelParams: beta must lie in [-1, 1]");
  }
  gamma = gamma_of_kappa(kappa);
  nu = 4.0 / kappa;
}

double q_of(double x) {
  if (x == 0.0) throw std::domain_error("q_of: x must be nonzero");
  return 0.5 * x + 2.0 / x;
}

double gamma_of_kappa(double kappa) {
  require_kappa(kappa, /*allow_four=*/true);
  const double s = std::sqrt(kappa);
  return std::min(s, 4.0 / s);
}

double sigma_alpha_max(double kappa) {
  require_kappa(kappa, /*allow_four=*/true);
  return -std::log(neg_cos_a(kappa));
}

double alpha_min(double kappa) { return q_of(gamma_of_kappa(kappa)) - 0.25 * std::sqrt(kappa); }

double alpha_max(double kappa) { return q_of(gamma_of_kappa(kappa)); }

double rho_min(double kappa) {
  require_kappa(kappa, /*allow_four=*/true);
  return -1.0 + 2.0 / kappa + 3.0 * kappa / 32.0;
}

double alpha_from_sigma(double kappa, double sigma) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(sigma < sigma_alpha_max(kappa))) {
    throw std::domain_error("alpha_from_sigma: sigma must be below sigma_alpha_max");
  }
  // with chi = 4 pi/kappa - 2 pi alpha / sqrt(kappa) in (-pi, -pi/2), the
  // defining relation reads -cos(chi) = -cos(4 pi/kappa) e^sigma =: m in (0,1)
  const double m = neg_cos_a(kappa) * std::exp(sigma);
  const double chi = -std::acos(-m);
  return std::sqrt(kappa) / (2.0 * kPi) * (4.0 * kPi / kappa - chi);
}

double sigma_from_alpha(double kappa, double alpha) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(alpha > alpha_min(kappa) && alpha < alpha_max(kappa))) {
    throw std::domain_error("sigma_from_alpha: alpha out of range");
  }
  const double chi = 4.0 * kPi / kappa - 2.0 * kPi * alpha / std::sqrt(kappa);
  const double m = -std::cos(chi);
  return std::log(m / neg_cos_a(kappa));
}

double rho_from_sigma(double kappa, double sigma) {
  require_kappa(kappa, /*allow_four=*/true);
  if (sigma == 0.0) return 0.0;
  // cos(pi sqrt(rad)) = -cos(4 pi/kappa) e^sigma =: m, continued to cosh for m > 1
  const double m = neg_cos_a(kappa) * std::exp(sigma);
  if (!(m > 0.0)) throw std::domain_error("rho_from_sigma: map not invertible here");
  const double s = 1.0 - 4.0 / kappa;
  double rad;
  if (m < 1.0) {
    const double t = std::acos(m) / kPi;
    rad = t * t;
  } else {
    const double t = std::acosh(m) / kPi;
    rad = -t * t;
  }
  return kappa * (s * s - rad) / 8.0;
}

double sigma_from_rho(double kappa, double rho) {
  require_kappa(kappa, /*allow_four=*/true);
  if (!(rho > rho_min(kappa))) {
    throw std::domain_error("sigma_from_rho: rho must exceed rho_min");
  }
  const double s = 1.0 - 4.0 / kappa;
  const double rad = s * s - 8.0 * rho / kappa;  // < 1/4 by the rho_min check
  const double m = rad > 0.0 ? std::cos(kPi * std::sqrt(rad))
                             : std::cosh(kPi * std::sqrt(-rad));
  return std::log(m / neg_cos_a(kappa));
}

SigmaFamily SigmaFamily::make(std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  if (labels.empty()) throw std::invalid_argument("SigmaFamily: empty label set");
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw std::invalid_argument("SigmaFamily: duplicate labels");
  }
  if (labels.size() > 16) throw std::invalid_argument("SigmaFamily: label set too large");
  SigmaFamily f;
  f.labels = std::move(labels);
  const std::size_t m = std::size_t{1} << f.labels.size();
  f.sigma.assign(m, 0.0);
  f.given.assign(m, false);
  f.given[0] = true;  // sigma_empty = 0, fixed
  return f;
}

void SigmaFamily::set(unsigned mask, double value) {
  if (mask == 0 || mask > full_mask()) throw std::out_of_range("SigmaFamily::set: bad mask");
  sigma[mask] = value;
  given[mask] = true;
}

double SigmaFamily::get(unsigned mask) const {
  if (mask > full_mask()) throw std::out_of_range("SigmaFamily::get: bad mask");
  if (!given[mask]) throw std::logic_error("SigmaFamily::get: sigma not set for " + key(mask));
  return sigma[mask];
}

void SigmaFamily::fill_defaults() {
  for (unsigned mask = 1; mask <= full_mask(); ++mask) {
    if (given[mask]) continue;
    if ((mask & (mask - 1)) == 0) {
      throw std::logic_error("SigmaFamily: singleton sigma missing for " + key(mask));
    }
    double lo = 0.0;
    bool first = true;
    for (int i = 0; i < n(); ++i) {
      if (!(mask & (1u << i))) continue;
      const double si = get(1u << i);
      lo = first ? si : std::min(lo, si);
      first = false;
    }
    sigma[mask] = lo - 0.1;
    given[mask] = true;
  }
}

std::vector<int> SigmaFamily::members(unsigned mask) const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i) {
    if (mask & (1u << i)) out.push_back(labels[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::string SigmaFamily::key(unsigned mask) const {
  std::ostringstream os;
  bool first = true;
  for (int label : members(mask)) {
    if (!first) os << ',';
    os << label;
    first = false;
  }
  return os.str();
}

std::string SigmaFamily::to_json() const {
  nlohmann::ordered_json j;
  j["A"] = labels;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (unsigned mask = 1; mask <= full_mask(); ++mask) {
    if (given[mask]) s[key(mask)] = sigma[mask];
  }
  j["sigma"] = s;
  return j.dump();
}

SigmaFamily SigmaFamily::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("A") || !j["A"].is_array()) {
    throw std::invalid_argument("SigmaFamily: missing label array \"A\"");
  }
  SigmaFamily f = make(j["A"].get<std::vector<int>>());
  if (j.contains("sigma")) {
    for (auto it = j["sigma"].begin(); it != j["sigma"].end(); ++it) {
      // parse the comma-joined label list back into a mask
      std::istringstream is(it.key());
      unsigned mask = 0;
      std::string tok;
      while (std::getline(is, tok, ',')) {
        const int label = std::stoi(tok);
        auto pos = std::lower_bound(f.labels.begin(), f.labels.end(), label);
        if (pos == f.labels.end() || *pos != label) {
          throw std::invalid_argument("SigmaFamily: sigma key uses unknown label " + tok);
        }
        mask |= 1u << (pos - f.labels.begin());
      }
      if (mask == 0) throw std::invalid_argument("SigmaFamily: empty sigma key");
      f.set(mask, it.value().get<double>());
    }
  }
  return f;
}

SigmaFamilyReport validate_sigma_family(const SigmaFamily& fam, double kappa) {
  SigmaFamilyReport rep;
  if (fam.labels.empty()) {
    rep.ok = false;
    rep.notes.push_back("label set is empty");
    return rep;
  }
  if (!std::is_sorted(fam.labels.begin(), fam.labels.end()) ||
      std::adjacent_find(fam.labels.begin(), fam.labels.end()) != fam.labels.end()) {
    rep.ok = false;
    rep.notes.push_back("labels must be sorted and distinct");
  }
  const double smax = sigma_alpha_max(kappa);
  for (unsigned mask = 1; mask <= fam.full_mask(); ++mask) {
    const bool singleton = (mask & (mask - 1)) == 0;
    if (!fam.given[mask]) {
      if (singleton) {
        rep.ok = false;
        rep.notes.push_back("sigma missing for singleton {" + fam.key(mask) + "}");
      } else {
        rep.notes.push_back("sigma for {" + fam.key(mask) + "} not set; default rule applies");
      }
      continue;
    }
    if (singleton && !(fam.sigma[mask] < smax)) {
      rep.notes.push_back("sigma for {" + fam.key(mask) +
                          "} is outside the alpha-map domain (closed one-point forms unavailable)");
    }
  }
  return rep;
}

}  // namespace wcle
