#include "lob/sde/linear_sde.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lob/common.hpp"

namespace lob::sde {

namespace {

void check_jumps(const DriverPath& x) {
  for (const auto& j : x.jumps) {
    if (!(j.dx > -1.0))
      throw config_error("driver jump <= -1: cancellation ratio invalid");
  }
}

// Sum of jump marks taking effect exactly at grid point k.
double jump_at(const DriverPath& x, std::size_t k) {
  double s = 0.0;
  for (const auto& j : x.jumps)
    if (x.jump_index(j) == k) s += j.dx;
  return s;
}

} // namespace

std::size_t DriverPath::jump_index(const Jump& j) const {
  if (grid.dt <= 0.0) throw config_error("time grid has dt <= 0");
  double steps = (j.time - grid.t0) / grid.dt;
  auto idx = static_cast<std::size_t>(std::max(1.0, std::ceil(steps - 1e-12)));
  return std::min(idx, grid.n_steps);
}

double InverseGammaLaw::mean() const {
  if (!(shape > 1.0)) throw numerical_error("inverse-gamma mean needs shape > 1");
  return 1.0 / (scale * (shape - 1.0));
}

double InverseGammaLaw::variance() const {
  if (!(shape > 2.0))
    throw numerical_error("inverse-gamma variance needs shape > 2");
  double m = mean();
  return m * m / (shape - 2.0);
}

double InverseGammaLaw::sample(CounterRng& rng) const {
  std::gamma_distribution<double> g(shape, scale);
  return 1.0 / g(rng);
}

DriverPath brownian_driver(const TimeGrid& grid, double sigma, CounterRng& rng) {
  if (grid.dt <= 0.0 || grid.n_steps < 1)
    throw config_error("time grid needs dt > 0 and n_steps >= 1");
  DriverPath x;
  x.grid = grid;
  x.values.resize(grid.n_points());
  x.quadratic_variation_c.resize(grid.n_points());
  x.values[0] = 0.0;
  x.quadratic_variation_c[0] = 0.0;
  std::normal_distribution<double> normal(0.0, std::sqrt(grid.dt));
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    x.values[k + 1] = x.values[k] + sigma * normal(rng);
    x.quadratic_variation_c[k + 1] =
        sigma * sigma * static_cast<double>(k + 1) * grid.dt;
  }
  return x;
}

DriverPath driver_from_increments(const TimeGrid& grid,
                                  const std::vector<double>& dw, double sigma) {
  if (dw.size() != grid.n_steps)
    throw config_error("increment count does not match grid");
  DriverPath x;
  x.grid = grid;
  x.values.resize(grid.n_points());
  x.quadratic_variation_c.resize(grid.n_points());
  x.values[0] = 0.0;
  x.quadratic_variation_c[0] = 0.0;
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    x.values[k + 1] = x.values[k] + sigma * dw[k];
    x.quadratic_variation_c[k + 1] =
        sigma * sigma * static_cast<double>(k + 1) * grid.dt;
  }
  return x;
}

void add_jump(DriverPath& x, double time, double dx) {
  if (!(dx > -1.0))
    throw config_error("driver jump <= -1: cancellation ratio invalid");
  Jump j{time, dx};
  std::size_t idx = x.jump_index(j);
  for (std::size_t k = idx; k < x.values.size(); ++k) x.values[k] += dx;
  auto pos = std::upper_bound(
      x.jumps.begin(), x.jumps.end(), j,
      [](const Jump& a, const Jump& b) { return a.time < b.time; });
  x.jumps.insert(pos, j);
}

Path stochastic_exponential(const DriverPath& x) {
  check_jumps(x);
  Path e;
  e.grid = x.grid;
  e.values.resize(x.values.size());
  // Product of (1+dX) e^{-dX} over jumps applied so far, advanced lazily.
  double jump_factor = 1.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    while (next < x.jumps.size() && x.jump_index(x.jumps[next]) <= k) {
      double dx = x.jumps[next].dx;
      jump_factor *= (1.0 + dx) * std::exp(-dx);
      ++next;
    }
    e.values[k] =
        std::exp(x.values[k] - 0.5 * x.quadratic_variation_c[k]) * jump_factor;
  }
  return e;
}

DriverPath reciprocal_driver(const DriverPath& x) {
  check_jumps(x);
  DriverPath y;
  y.grid = x.grid;
  y.values.resize(x.values.size());
  y.quadratic_variation_c = x.quadratic_variation_c; // [Y,Y]^c = [X,X]^c
  y.jumps.reserve(x.jumps.size());
  for (const auto& j : x.jumps)
    y.jumps.push_back({j.time, -j.dx / (1.0 + j.dx)});
  // Y = -X + [X,X]^c + sum_{s<=t} dX_s^2/(1+dX_s), accumulated by grid index.
  double jump_sum = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < x.values.size(); ++k) {
    while (next < x.jumps.size() && x.jump_index(x.jumps[next]) <= k) {
      double dx = x.jumps[next].dx;
      jump_sum += dx * dx / (1.0 + dx);
      ++next;
    }
    y.values[k] = -x.values[k] + x.quadratic_variation_c[k] + jump_sum;
  }
  return y;
}

Path solve_linear_sde(const LinearSDEParams& p, const DriverPath& w, double z0) {
  if (!(z0 > 0.0)) throw config_error("solve_linear_sde needs z0 > 0");
  check_jumps(w);
  const double h = w.grid.dt;
  Path z;
  z.grid = w.grid;
  z.values.resize(w.values.size());
  z.values[0] = z0;
  for (std::size_t k = 0; k < w.grid.n_steps; ++k) {
    // Split the step factor into its continuous part and the jump mark at the
    // step end; the trapezoid endpoint uses the pre-jump value (the E_{s-}
    // convention of the explicit solution).
    double jw = jump_at(w, k + 1);
    double dw_cont = w.values[k + 1] - w.values[k] - jw;
    double dqv = w.quadratic_variation_c[k + 1] - w.quadratic_variation_c[k];
    double g = std::exp(p.a * h + p.b * dw_cont - 0.5 * p.b * p.b * dqv);
    double zc = g * z.values[k] + p.c * 0.5 * h * (g + 1.0);
    z.values[k + 1] = (1.0 + p.b * jw) * zc;
    if (!(z.values[k + 1] > 0.0))
      throw numerical_error("linear SDE path lost positivity");
  }
  return z;
}

Path solve_linear_sde_milstein(const LinearSDEParams& p, const DriverPath& w,
                               double z0) {
  if (!(z0 > 0.0)) throw config_error("solve_linear_sde needs z0 > 0");
  if (!w.jumps.empty())
    throw config_error("Milstein scheme supports continuous drivers only");
  const double h = w.grid.dt;
  Path z;
  z.grid = w.grid;
  z.values.resize(w.values.size());
  z.values[0] = z0;
  for (std::size_t k = 0; k < w.grid.n_steps; ++k) {
    double v = z.values[k];
    double dw = w.values[k + 1] - w.values[k];
    double next = v + (p.a * v + p.c) * h + p.b * v * dw +
                  0.5 * p.b * p.b * v * (dw * dw - h);
    if (!(next > 0.0))
      throw numerical_error("Milstein step lost positivity; reduce dt");
    z.values[k + 1] = next;
  }
  return z;
}

InverseGammaLaw stationary_law(const LinearSDEParams& p) {
  if (!(p.a < 0.0) || !(p.c > 0.0) || p.b == 0.0)
    throw config_error(
        "stationary law needs a < 0, c > 0, b != 0 (ergodic regime)");
  return {1.0 - 2.0 * p.a / (p.b * p.b), p.b * p.b / (2.0 * p.c)};
}

double mean_at(const LinearSDEParams& p, double z0, double t) {
  if (p.a == 0.0) return z0 + p.c * t; // analytic limit
  double r = p.c / p.a;
  return (z0 + r) * std::exp(p.a * t) - r;
}

double stationary_autocorrelation(const LinearSDEParams& p, double lag) {
  if (!(p.a < 0.0) || !(p.c > 0.0))
    throw config_error("autocorrelation needs the ergodic regime a < 0, c > 0");
  if (lag < 0.0) throw config_error("lag must be nonnegative");
  return std::exp(p.a * lag);
}

Path reciprocal_process(const Path& z) {
  Path y;
  y.grid = z.grid;
  y.values.resize(z.values.size());
  for (std::size_t k = 0; k < z.values.size(); ++k) {
    if (!(z.values[k] > 0.0))
      throw numerical_error("reciprocal of a nonpositive path value");
    y.values[k] = 1.0 / z.values[k];
  }
  return y;
}

} // namespace lob::sde
