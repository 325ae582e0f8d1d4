#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "wcle/mc.hpp"
#include "wcle/params.hpp"
#include "wcle/rng.hpp"

namespace wcle {

// Jump-measure coefficients of the boundary-length pair (L, R): positive jumps
// on side L (resp. R) have density c_pos_l (resp. c_pos_r) * h^{-1-p} and
// negative jumps density c_neg * |h|^{-1-p} on each side, p = 4/kappa.
// For kappa < 4 the small jumps are compensated (the pair is a martingale);
// for kappa > 4 they are absolutely summable and enter uncompensated.
struct JumpMeasure {
  double p = 0.0;        // 4/kappa
  double c_pos_l = 0.0;  // -cos(4 pi/kappa) (1 - beta)/2
  double c_pos_r = 0.0;  // -cos(4 pi/kappa) (1 + beta)/2
  double c_neg = 0.5;
  bool compensated = false;  // kappa < 4

  static JumpMeasure from(const ModelParams& mp);

  // mass of {h > cutoff} for the sign class with coefficient c
  double tail_mass(double c, double cutoff) const;
  // -\int_{|h|>cutoff} h mu_side(dh): the drift that keeps the truncated
  // path a martingale (compensated regime only; 0 otherwise)
  double drift(double c_pos, double cutoff) const;
  // \int_{|h|<cutoff} h^2 mu_side(dh): variance rate of the suppressed jumps
  double small_var(double c_pos, double cutoff) const;
  // \int_{|h|<cutoff} h mu_side(dh): mean rate of the suppressed jumps
  // (finite only in the uncompensated regime)
  double small_mean(double c_pos, double cutoff) const;
};

struct JumpEvent {
  double time = 0.0;
  int side = 0;  // 0 = L, 1 = R
  double height = 0.0;  // |height| >= cutoff
};

// Truncated path of the raw pair: jumps above the cutoff, the per-side linear
// drift standing in for the suppressed small jumps, and the recorded
// mean/variance rates of what was suppressed (tests use them to Gaussian-
// augment the path or to bound the truncation error).
struct JumpSkeleton {
  double kappa = 0.0;
  double beta = 0.0;
  double horizon = 0.0;
  double cutoff = 0.0;
  double l0 = 0.0, r0 = 0.0;
  double drift_l = 0.0, drift_r = 0.0;          // per unit time; 0 for kappa > 4
  double small_var_l = 0.0, small_var_r = 0.0;  // per unit time
  double small_mean_l = 0.0, small_mean_r = 0.0;  // per unit time; 0 for kappa < 4
  std::vector<JumpEvent> events;  // time-sorted
};

// Jumps above the cutoff from a Poisson field with the (L, R) intensities,
// plus compensation drift in the kappa < 4 regime.
JumpSkeleton stable_pair_simulate(const ModelParams& mp, double l, double r,
                                  double horizon, double cutoff, Rng& rng);

// CSV dump, columns time,side,height (header mandatory; side is L or R).
void write_skeleton_csv(std::ostream& os, const JumpSkeleton& sk);

// Walks the piecewise-drift path of a skeleton.  segment(t0, t1, l, r, dl, dr)
// is invoked on every maximal drift interval (state at t0 and the drift in
// force), jump(t, side, h, l_post, r_post) on every retained jump while the
// path is alive.  The walk stops at the horizon or when a coordinate hits
// zero (by drift or by jump overshoot); returns the exit time, +inf if the
// path is alive at the horizon.  Final state available through `out`.
struct WalkEnd {
  double l = 0.0, r = 0.0;
  bool alive = false;
};
template <class SegmentF, class JumpF>
double walk_skeleton(const JumpSkeleton& sk, SegmentF&& segment, JumpF&& jump,
                     WalkEnd* out = nullptr) {
  double l = sk.l0, r = sk.r0;
  double t = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  auto finish = [&](double texit, bool alive) {
    if (out != nullptr) {
      out->l = l;
      out->r = r;
      out->alive = alive;
    }
    return texit;
  };
  auto drift_exit = [&](double from) {
    // earliest time > `from` at which drift alone takes a coordinate to 0
    double te = inf;
    if (sk.drift_l < 0.0) te = std::min(te, from + l / (-sk.drift_l));
    if (sk.drift_r < 0.0) te = std::min(te, from + r / (-sk.drift_r));
    return te;
  };
  std::size_t next = 0;
  while (true) {
    const double tj = next < sk.events.size() ? sk.events[next].time : inf;
    const double tstop = std::min(tj, sk.horizon);
    const double te = drift_exit(t);
    if (te <= tstop) {
      if (te > t) segment(t, te, l, r, sk.drift_l, sk.drift_r);
      l += sk.drift_l * (te - t);
      r += sk.drift_r * (te - t);
      return finish(te, false);
    }
    if (tstop > t) segment(t, tstop, l, r, sk.drift_l, sk.drift_r);
    l += sk.drift_l * (tstop - t);
    r += sk.drift_r * (tstop - t);
    t = tstop;
    if (tj >= sk.horizon) return finish(inf, true);
    const JumpEvent& ev = sk.events[next++];
    if (ev.side == 0) {
      l += ev.height;
    } else {
      r += ev.height;
    }
    if (l <= 0.0 || r <= 0.0) return finish(t, false);
    jump(ev.time, ev.side, ev.height, l, r);
  }
}

// Path functional for weighted_expectation: receives the generating skeleton
// and the realized pair at the evaluation time.
struct PathPoint {
  double l = 0.0, r = 0.0;
};
using PathFunctional = std::function<double(const JumpSkeleton&, PathPoint)>;

// E[g(path); t < lifetime] for the weighted absorbed pair, computed as the
// mean over raw stable paths of (w(L_t,R_t)/w(l,r)) g 1(t before quadrant
// exit), with w(l,r) = (l+r)^{-1-4/kappa}.
MCEstimate weighted_expectation(const ModelParams& mp, double l, double r,
                                double t, const PathFunctional& g, double cutoff,
                                std::int64_t n, std::uint64_t seed);

// Moments A_+/- = E sum |jump|^theta over positive/negative jumps of the
// weighted absorbed pair, by the Palm time-integral representation: the jump
// sums reduce to closed Beta-type integrands evaluated along raw paths with
// the w-ratio weight, integrated in time segment by segment.
struct JumpSumMoments {
  MCEstimate a_plus;
  MCEstimate a_minus;
  double ratio = 0.0;         // a_plus / (1 - a_minus)
  double ratio_stderr = 0.0;  // delta-method, using the (A+, A-) covariance
  std::vector<double> grid;   // the time grid used
  std::vector<double> segment_plus;   // mean contribution per grid segment
  std::vector<double> segment_minus;
  double tail_bound_plus = 0.0;   // geometric extrapolation of the segment series
  double tail_bound_minus = 0.0;
  bool tail_ok = false;           // last segment ratios < 1 so the bound is finite
  double weighted_survival = 0.0;  // E[(x_T/x_0)^{-1-p}; alive at T]
};
JumpSumMoments jump_sum_moments(const ModelParams& mp, double theta, double l,
                                double r, const std::vector<double>& time_grid,
                                double cutoff, std::int64_t n,
                                std::uint64_t seed);

// cos(4 pi/kappa) / cos(4 pi/kappa - pi theta) on theta in
// (4/kappa + 1/2, 4/kappa + 3/2); equals A_+/(1-A_-) there.
double power_theta_closed(const ModelParams& mp, double theta);

// ---------------------------------------------------------------------------
// Marked process: (length pair, subset of marks) with weight-tilted jumps.

struct MarkedState {
  double l = 0.0, r = 0.0;
  unsigned mask = 0;  // subset of the label set, bitmask per SigmaFamily
};

// One weight evaluator per subset mask.  w[0] plays the role of the empty-set
// weight: positive, non-increasing, <= 1, with 1 - w[0](h) vanishing like
// h^{2 min(1, 4/kappa)} near 0.  doubling_bound is a recorded constant D with
// w[B](x) <= D w[B](y) whenever y <= x <= 2y, used to extend thinning bounds
// beyond the scanned window.
struct WeightFunctionSet {
  std::vector<std::function<double(double)>> w;
  double doubling_bound = 4.0;
};

// All-ones weight set over 2^n subsets (reduces the marked process to the
// plain weighted absorbed pair).
WeightFunctionSet unit_weight_set(int n_labels);

// Grid check of the WeightFunctionSet conditions; reports, does not throw.
struct WeightSetReport {
  bool ok = true;
  std::vector<std::string> notes;
  double observed_doubling = 1.0;
};
WeightSetReport check_weight_set(const WeightFunctionSet& wf, int n_labels,
                                 double kappa);

struct MarkedJumpRecord {
  double time = 0.0;
  int side = 0;
  double height = 0.0;  // signed
  unsigned set_before = 0, set_after = 0;
};

struct MarkedPath {
  std::vector<double> times;         // 0, then each jump time
  std::vector<MarkedState> states;   // state after the corresponding time
  std::vector<MarkedJumpRecord> jumps;
  bool absorbed = false;
  double absorption_time = std::numeric_limits<double>::infinity();
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
  std::int64_t bound_violations = 0;  // thinning bound exceeded (clamped)
};

// Continuous-time simulation by thinning a dominating stable intensity:
// proposed jumps are accepted with probability proportional to the weight
// ratio of the displayed generator (transfer factor for the moved marks, the
// length-weight ratio, and e^{sigma} on positive transfer jumps), and the
// dominating constant is a safety-factored grid scan extended by the doubling
// bound.  Absorbed once the total length falls below floor_frac * initial.
MarkedPath marked_process_simulate(const ModelParams& mp, const SigmaFamily& fam,
                                   const WeightFunctionSet& wf, MarkedState start,
                                   double cutoff, double horizon, Rng& rng,
                                   double floor_frac = 1e-6);

// Pointwise quadrature evaluation of the marked-process generator applied to
// a smooth test function f(l, r, B):
//   (1) f * integral of (w_empty(|h|) - 1) against both jump measures,
//   (2) the tilted integro-differential term through w * W^B * f,
//   (3)+(4) the mark-transfer integrals over proper subsets C of B.
using MarkedTestFunction = std::function<double(double, double, unsigned)>;
double generator_apply(const ModelParams& mp, const SigmaFamily& fam,
                       const WeightFunctionSet& wf, const MarkedTestFunction& f,
                       const MarkedState& state);

}  // namespace wcle
