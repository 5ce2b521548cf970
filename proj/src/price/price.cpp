#include "lob/price/price.hpp"

#include <cmath>
#include <numbers>

#include "lob/common.hpp"

namespace lob::price {

double increment(const model::ModelParams& p, double dlogv_b, double dlogv_a) {
  return p.c_s * p.theta * (dlogv_b - dlogv_a);
}

double mid_vol(const model::ModelParams& p) {
  double s2 = p.sigma_b * p.sigma_b + p.sigma_a * p.sigma_a -
              2.0 * p.sigma_a * p.sigma_b * p.rho_ab;
  return p.c_s * p.theta * std::sqrt(s2);
}

double drift(const model::ModelParams& p) {
  return -p.c_s * p.theta * (p.nu_b() - p.nu_a());
}

double prob_up_move(const model::ModelParams& p, double d0_b, double d0_a,
                    double dbar_b, double dbar_a, double y, double dt) {
  if (!(d0_b > 0.0) || !(d0_a > 0.0))
    throw config_error("prob_up_move needs positive current depths");
  if (!(dt > 0.0)) throw config_error("prob_up_move needs dt > 0");
  double sig_s = mid_vol(p);
  if (!(sig_s > 0.0))
    throw numerical_error("prob_up_move degenerate: zero mid-price volatility");
  double sdt = std::sqrt(dt);
  double drift_term = p.nu_b() * (dbar_b - d0_b) / d0_b -
                      p.nu_a() * (dbar_a - d0_a) / d0_a;
  double z = p.c_s * p.theta * sdt / sig_s * drift_term - y / (sig_s * sdt);
  return normal_cdf(z);
}

double expected_order_flow(double nu, double dbar, double d0, double dt) {
  return dt * nu * (dbar - d0);
}

double expected_order_flow(const model::ModelParams& p, spectral::Side side,
                           double d0, double dt) {
  double nu = side == spectral::Side::ask ? p.nu_a() : p.nu_b();
  double vbar = side == spectral::Side::ask ? p.vbar_a : p.vbar_b;
  const auto& sp = side == spectral::Side::ask ? p.ask : p.bid;
  if (!(nu > 0.0))
    throw config_error("expected order flow needs a mean-reverting side");
  // Stationary depth: pi/(2L) theta^2 times the stationary volume vbar/nu.
  double dbar =
      std::numbers::pi / (2.0 * sp.L) * p.theta * p.theta * vbar / nu;
  return expected_order_flow(nu, dbar, d0, dt);
}

namespace {
double scale_to_absolute(double x, double a) {
  // Inverse of the scaling map x(d) = sign(d)|d|^a.
  if (x == 0.0) return 0.0;
  double mag = std::pow(std::abs(x), 1.0 / a);
  return x > 0.0 ? mag : -mag;
}

double scale_to_centered(double d, double a) {
  if (d == 0.0) return 0.0;
  double mag = std::pow(std::abs(d), a);
  return d > 0.0 ? mag : -mag;
}
} // namespace

AbsoluteDensity to_absolute(const model::BookDensity& u, double s,
                            const model::ModelParams& p) {
  double a = p.scaling_exponent_a;
  if (!(a > 0.0)) throw config_error("scaling exponent must be > 0");
  AbsoluteDensity v;
  v.s = s;
  std::size_t nb = u.bid.values.size(), na = u.ask.values.size();
  v.p_grid.reserve(nb + na - 1);
  v.values.reserve(nb + na - 1);
  for (std::size_t i = 0; i < nb; ++i) {
    v.p_grid.push_back(s + scale_to_absolute(u.bid.x(i), a));
    v.values.push_back(u.bid.values[i]);
  }
  // Skip the shared x = 0 point of the ask grid.
  for (std::size_t i = 1; i < na; ++i) {
    v.p_grid.push_back(s + scale_to_absolute(u.ask.x(i), a));
    v.values.push_back(u.ask.values[i]);
  }
  return v;
}

model::BookDensity from_absolute(const AbsoluteDensity& v,
                                 const model::ModelParams& p) {
  double a = p.scaling_exponent_a;
  if (!(a > 0.0)) throw config_error("scaling exponent must be > 0");
  std::size_t n = v.p_grid.size();
  if (n < 3 || n % 2 == 0)
    throw data_error("absolute density grid malformed (needs odd point count)");
  std::size_t mid = n / 2;
  model::BookDensity u;
  u.bid.x0 = scale_to_centered(v.p_grid.front() - v.s, a);
  u.bid.x1 = 0.0;
  u.bid.values.assign(v.values.begin(),
                      v.values.begin() + static_cast<long>(mid) + 1);
  u.ask.x0 = 0.0;
  u.ask.x1 = scale_to_centered(v.p_grid.back() - v.s, a);
  u.ask.values.assign(v.values.begin() + static_cast<long>(mid),
                      v.values.end());
  return u;
}

} // namespace lob::price
