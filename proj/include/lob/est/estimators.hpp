#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lob/sde/linear_sde.hpp"
#include "lob/spectral/expansion.hpp"

namespace lob::est {

// Uniformly sampled depth observations, one value per grid point and side,
// with an optional mid-price column for the price-based volatility route.
struct DepthSeries {
  sde::TimeGrid grid;
  std::vector<double> d_b;
  std::vector<double> d_a;
  std::vector<double> mid; // empty when no price column is available

  bool has_price() const { return !mid.empty(); }
};

// Average book profile in relative coordinates: tick[i] is the distance from
// the same-side best price in ticks (>= 1), size[i] the average resting size.
struct TickProfile {
  std::vector<double> tick;
  std::vector<double> size;
};

// Least-squares / peak fit of U(l) = V exp(-gamma l^a) sin(l^a pi / L).
struct ProfileFit {
  double gamma = 0.0;
  double volume_scale = 0.0;
  double scaling_exponent_a = 1.0;
  double residual = 0.0; // sum of squared misfits at the returned parameters
  bool converged = false;
  bool gamma_at_boundary = false; // optimum pinned at gamma = 0
  bool peak_at_first_tick = false; // gamma only bounded from below
  int iterations = 0;
};

ProfileFit fit_profile_ls(const TickProfile& profile, double L,
                          bool nonlinear_scaling);
ProfileFit fit_profile_peak(const TickProfile& profile, double L);

// Sample mean and the tail index of the stationary depth distribution:
// c = 1 + dbar^2 / (m2 - dbar^2). heavy_tail flags c <= 5, where the
// fourth-moment condition behind the asymptotic normality results fails.
struct MomentEstimates {
  double dbar = 0.0;
  double c = 0.0;
  bool heavy_tail = false;
};

MomentEstimates estimate_mom(const std::vector<double>& values);
MomentEstimates estimate_mom(const DepthSeries& series, spectral::Side side);

// Martingale-estimating-function drift estimator for the mean-reverting
// factor: nu = log(-A/B)/dt with
//   A = sum (dbar - v_{n-1})^2 / v_{n-1}^2,
//   B = sum (dbar - v_{n-1}) (v_n - dbar) / v_{n-1}^2.
// A nonpositive log argument signals a sample without mean reversion; the
// result then carries ok = false and a diagnostic instead of a value.
struct MefResult {
  double nu = 0.0;
  bool ok = false;
  std::string diagnostic;
};

MefResult estimate_nu_mef(const std::vector<double>& values, double dbar,
                          double dt);
MefResult estimate_nu_mef(const DepthSeries& series, spectral::Side side,
                          double dbar);

// Joint volatility/correlation estimates. The RV route uses realized
// variation of log-depth increments; the RCG route uses sigma^2 = 2 nu / c
// from the stationary reciprocal-Gamma law and needs no price data either.
struct VolCorrEstimates {
  double sigma_b_rv = 0.0;
  double sigma_a_rv = 0.0;
  double rho = 0.0;
  double sigma_b_rcg = 0.0;
  double sigma_a_rcg = 0.0;
  bool rcg_ok = false;
  std::string diagnostic;
};

VolCorrEstimates estimate_sigma_rho(const DepthSeries& series);

// One row of the three-way intraday volatility comparison: the depth-based
// RV and RCG routes against the realized standard deviation of mid-price
// changes (NaN when the series carries no price column).
struct WindowVol {
  double t_begin = 0.0;
  double t_end = 0.0;
  double sigma_rv = 0.0;
  double sigma_rcg = 0.0;
  double sigma_realized = 0.0;
};

std::vector<WindowVol> vol_compare(const DepthSeries& series, double c_s,
                                   double theta, double window_seconds);

// Full parameter table from one depth series. The headline sigma_b/sigma_a
// are the depth-only RCG values; the RV-route values ride along for
// comparison. heavy_tail_* flags c <= 5 per side.
struct ParamEstimates {
  double dbar_b = 0.0, dbar_a = 0.0;
  double c_b = 0.0, c_a = 0.0;
  double nu_b = 0.0, nu_a = 0.0;
  double sigma_b = 0.0, sigma_a = 0.0;
  double sigma_b_rv = 0.0, sigma_a_rv = 0.0;
  double rho_ab = 0.0;
  bool heavy_tail_b = false, heavy_tail_a = false;
  bool ok = false; // both MEF fits admissible and RCG sigmas real
  std::string diagnostic;
};

ParamEstimates estimate_all(const DepthSeries& series);

} // namespace lob::est
