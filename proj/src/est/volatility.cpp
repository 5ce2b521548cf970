#include <cmath>
#include <limits>
#include <vector>

#include "lob/common.hpp"
#include "lob/est/estimators.hpp"

namespace lob::est {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

struct RealizedStats {
  double sigma_b = 0.0, sigma_a = 0.0, rho = 0.0;
};

// Realized variation of log-depth increments over samples [first, last].
RealizedStats realized_from_range(const DepthSeries& s, std::size_t first,
                                  std::size_t last) {
  double sbb = 0.0, saa = 0.0, sba = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    if (!(s.d_b[k] > 0.0) || !(s.d_a[k] > 0.0) || !(s.d_b[k + 1] > 0.0) ||
        !(s.d_a[k + 1] > 0.0))
      throw data_error("depths must be strictly positive");
    double db = std::log(s.d_b[k + 1]) - std::log(s.d_b[k]);
    double da = std::log(s.d_a[k + 1]) - std::log(s.d_a[k]);
    sbb += db * db;
    saa += da * da;
    sba += db * da;
  }
  double T = static_cast<double>(last - first) * s.grid.dt;
  RealizedStats out;
  out.sigma_b = std::sqrt(sbb / T);
  out.sigma_a = std::sqrt(saa / T);
  double denom = std::sqrt(sbb * saa);
  out.rho = denom > 0.0 ? sba / denom : 0.0;
  return out;
}

struct RcgSide {
  double sigma = nan_v;
  bool ok = false;
  std::string diagnostic;
};

// Depth-only route: sigma^2 = 2 nu / c with nu from the martingale
// estimating function and c from the stationary moment identity.
RcgSide rcg_side(const std::vector<double>& values, std::size_t first,
                 std::size_t last, double dt) {
  RcgSide out;
  std::vector<double> window(values.begin() + static_cast<std::ptrdiff_t>(first),
                             values.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  MomentEstimates mom;
  try {
    mom = estimate_mom(window);
  } catch (const data_error& e) {
    out.diagnostic = e.what();
    return out;
  }
  MefResult mef = estimate_nu_mef(window, mom.dbar, dt);
  if (!mef.ok) {
    out.diagnostic = mef.diagnostic;
    return out;
  }
  if (!(mef.nu > 0.0)) {
    out.diagnostic = "nonpositive reversion rate: variance formula undefined";
    return out;
  }
  out.sigma = std::sqrt(2.0 * mef.nu / mom.c);
  out.ok = true;
  return out;
}

} // namespace

VolCorrEstimates estimate_sigma_rho(const DepthSeries& series) {
  const std::size_t n = series.d_b.size();
  if (n < 2 || series.d_a.size() != n)
    throw data_error("volatility estimation needs two aligned samples or more");
  RealizedStats rv = realized_from_range(series, 0, n - 1);
  VolCorrEstimates out;
  out.sigma_b_rv = rv.sigma_b;
  out.sigma_a_rv = rv.sigma_a;
  out.rho = rv.rho;
  RcgSide b = rcg_side(series.d_b, 0, n - 1, series.grid.dt);
  RcgSide a = rcg_side(series.d_a, 0, n - 1, series.grid.dt);
  out.sigma_b_rcg = b.sigma;
  out.sigma_a_rcg = a.sigma;
  out.rcg_ok = b.ok && a.ok;
  if (!b.ok) out.diagnostic = "bid: " + b.diagnostic;
  if (!a.ok) {
    if (!out.diagnostic.empty()) out.diagnostic += "; ";
    out.diagnostic += "ask: " + a.diagnostic;
  }
  return out;
}

std::vector<WindowVol> vol_compare(const DepthSeries& series, double c_s,
                                   double theta, double window_seconds) {
  const std::size_t n = series.d_b.size();
  if (series.d_a.size() != n || (series.has_price() && series.mid.size() != n))
    throw data_error("depth series columns differ in length");
  if (!(window_seconds > 0.0)) throw config_error("window length must be > 0");
  const double dt = series.grid.dt;
  const auto m = static_cast<std::size_t>(std::llround(window_seconds / dt));
  if (m < 1) throw data_error("window shorter than two samples");
  if (n < m + 1) throw data_error("series shorter than one window");

  auto combine = [&](double sb, double sa, double rho) {
    return c_s * theta *
           std::sqrt(std::max(0.0, sb * sb + sa * sa - 2.0 * sb * sa * rho));
  };

  std::vector<WindowVol> out;
  for (std::size_t first = 0; first + m < n; first += m) {
    std::size_t last = first + m;
    WindowVol w;
    w.t_begin = series.grid.time(first);
    w.t_end = series.grid.time(last);
    RealizedStats rv = realized_from_range(series, first, last);
    w.sigma_rv = combine(rv.sigma_b, rv.sigma_a, rv.rho);
    RcgSide b = rcg_side(series.d_b, first, last, dt);
    RcgSide a = rcg_side(series.d_a, first, last, dt);
    w.sigma_rcg = b.ok && a.ok ? combine(b.sigma, a.sigma, rv.rho) : nan_v;
    if (series.has_price()) {
      double ss = 0.0;
      for (std::size_t k = first; k < last; ++k) {
        double ds = series.mid[k + 1] - series.mid[k];
        ss += ds * ds;
      }
      w.sigma_realized = std::sqrt(ss / (static_cast<double>(m) * dt));
    } else {
      w.sigma_realized = nan_v;
    }
    out.push_back(w);
  }
  return out;
}

ParamEstimates estimate_all(const DepthSeries& series) {
  ParamEstimates out;
  MomentEstimates mb = estimate_mom(series, spectral::Side::bid);
  MomentEstimates ma = estimate_mom(series, spectral::Side::ask);
  out.dbar_b = mb.dbar;
  out.dbar_a = ma.dbar;
  out.c_b = mb.c;
  out.c_a = ma.c;
  out.heavy_tail_b = mb.heavy_tail;
  out.heavy_tail_a = ma.heavy_tail;
  MefResult nb = estimate_nu_mef(series, spectral::Side::bid, mb.dbar);
  MefResult na = estimate_nu_mef(series, spectral::Side::ask, ma.dbar);
  out.nu_b = nb.ok ? nb.nu : nan_v;
  out.nu_a = na.ok ? na.nu : nan_v;
  VolCorrEstimates v = estimate_sigma_rho(series);
  out.sigma_b = v.sigma_b_rcg;
  out.sigma_a = v.sigma_a_rcg;
  out.sigma_b_rv = v.sigma_b_rv;
  out.sigma_a_rv = v.sigma_a_rv;
  out.rho_ab = v.rho;
  out.ok = nb.ok && na.ok && v.rcg_ok;
  if (!nb.ok) out.diagnostic = "bid: " + nb.diagnostic;
  if (!na.ok) {
    if (!out.diagnostic.empty()) out.diagnostic += "; ";
    out.diagnostic += "ask: " + na.diagnostic;
  }
  if (!v.rcg_ok && v.diagnostic != out.diagnostic &&
      out.diagnostic.find(v.diagnostic) == std::string::npos) {
    if (!out.diagnostic.empty()) out.diagnostic += "; ";
    out.diagnostic += v.diagnostic;
  }
  return out;
}

} // namespace lob::est
