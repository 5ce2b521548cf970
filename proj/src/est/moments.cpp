#include <cmath>
#include <limits>
#include <vector>

#include "lob/common.hpp"
#include "lob/est/estimators.hpp"

namespace lob::est {

namespace {

const std::vector<double>& side_values(const DepthSeries& s,
                                       spectral::Side side) {
  return side == spectral::Side::bid ? s.d_b : s.d_a;
}

} // namespace

MomentEstimates estimate_mom(const std::vector<double>& values) {
  if (values.size() < 2)
    throw data_error("moment estimation needs at least 2 samples");
  double m1 = 0.0, m2 = 0.0;
  for (double v : values) {
    m1 += v;
    m2 += v * v;
  }
  const double n = static_cast<double>(values.size());
  m1 /= n;
  m2 /= n;
  double var = m2 - m1 * m1;
  if (!(var > 0.0))
    throw data_error("constant series: tail index undefined (zero variance)");
  MomentEstimates out;
  out.dbar = m1;
  out.c = 1.0 + m1 * m1 / var;
  out.heavy_tail = out.c <= 5.0;
  return out;
}

MomentEstimates estimate_mom(const DepthSeries& series, spectral::Side side) {
  return estimate_mom(side_values(series, side));
}

MefResult estimate_nu_mef(const std::vector<double>& values, double dbar,
                          double dt) {
  if (values.size() < 2)
    throw data_error("drift estimation needs at least 2 samples");
  if (!(dt > 0.0)) throw config_error("sampling interval must be > 0");
  double a = 0.0, b = 0.0;
  for (std::size_t n = 1; n < values.size(); ++n) {
    double prev = values[n - 1];
    if (!(prev > 0.0)) throw data_error("depths must be strictly positive");
    double d = (dbar - prev) / (prev * prev);
    a += d * (dbar - prev);
    b += d * (values[n] - dbar);
  }
  MefResult out;
  if (!(a > 0.0)) {
    out.nu = std::numeric_limits<double>::quiet_NaN();
    out.diagnostic = "series constant at its mean: drift unidentified";
    return out;
  }
  double arg = -a / b;
  if (!(arg > 0.0) || !std::isfinite(arg)) {
    out.nu = std::numeric_limits<double>::quiet_NaN();
    out.diagnostic = "nonpositive log argument: sample shows no mean reversion";
    return out;
  }
  out.nu = std::log(arg) / dt;
  out.ok = true;
  return out;
}

MefResult estimate_nu_mef(const DepthSeries& series, spectral::Side side,
                          double dbar) {
  return estimate_nu_mef(side_values(series, side), dbar, series.grid.dt);
}

} // namespace lob::est
