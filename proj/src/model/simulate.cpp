#include "lob/model/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "lob/common.hpp"
#include "lob/price/price.hpp"

namespace lob::model {

namespace {
constexpr double pi = std::numbers::pi;

void check_state(const FactorState& st) {
  if (!(st.v_b > 0.0) || !(st.v_a > 0.0))
    throw config_error("factor state needs positive volumes");
}

void check_grid(const sde::TimeGrid& grid) {
  if (!(grid.dt > 0.0) || grid.n_steps < 1)
    throw config_error("time grid needs dt > 0 and n_steps >= 1");
}
} // namespace

void ModelParams::validate() const {
  bid.validate();
  ask.validate();
  if (bid.side != spectral::Side::bid || ask.side != spectral::Side::ask)
    throw config_error("side tags of bid/ask parameters are swapped");
  if (!(sigma_b > 0.0) || !(sigma_a > 0.0))
    throw config_error("factor volatilities must be > 0");
  if (!(rho_ab >= -1.0 && rho_ab <= 1.0))
    throw config_error("correlation must lie in [-1, 1]");
  if (!(theta > 0.0)) throw config_error("tick size must be > 0");
  if (vbar_b < 0.0 || vbar_a < 0.0)
    throw config_error("source intensities must be >= 0");
  if (!(scaling_exponent_a > 0.0))
    throw config_error("scaling exponent must be > 0");
}

std::vector<WienerIncrement> correlated_increments(const sde::TimeGrid& grid,
                                                   double rho,
                                                   CounterRng& rng) {
  check_grid(grid);
  std::normal_distribution<double> normal(0.0, std::sqrt(grid.dt));
  std::vector<WienerIncrement> out(grid.n_steps);
  double comp = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  for (auto& inc : out) {
    double z1 = normal(rng);
    double z2 = normal(rng);
    inc.dw_a = z1;
    inc.dw_b = rho * z1 + comp * z2;
  }
  return out;
}

Trajectory simulate_two_factor(const ModelParams& p, const FactorState& init,
                               const sde::TimeGrid& grid, std::uint64_t seed,
                               std::uint64_t stream) {
  p.validate();
  check_state(init);
  check_grid(grid);
  if (p.vbar_b != 0.0 || p.vbar_a != 0.0)
    throw config_error("two-factor dynamics need vbar = 0 (homogeneous flow)");

  CounterRng rng(seed, stream);
  Trajectory tr;
  tr.grid = grid;
  tr.increments = correlated_increments(grid, p.rho_ab, rng);
  tr.states.resize(grid.n_points());
  tr.states[0] = init;

  const double h = grid.dt;
  const double nu_b = p.nu_b(), nu_a = p.nu_a();
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    const auto& st = tr.states[k];
    const auto& inc = tr.increments[k];
    FactorState next;
    next.v_b = st.v_b * std::exp(p.sigma_b * inc.dw_b -
                                 (nu_b + 0.5 * p.sigma_b * p.sigma_b) * h);
    next.v_a = st.v_a * std::exp(p.sigma_a * inc.dw_a -
                                 (nu_a + 0.5 * p.sigma_a * p.sigma_a) * h);
    // Relative order-flow increments dV/V of the underlying dynamics.
    double r_b = -nu_b * h + p.sigma_b * inc.dw_b;
    double r_a = -nu_a * h + p.sigma_a * inc.dw_a;
    next.s = st.s + price::increment(p, r_b, r_a);
    tr.states[k + 1] = next;
  }
  return tr;
}

Trajectory simulate_mean_reverting(const ModelParams& p,
                                   const FactorState& init,
                                   const sde::TimeGrid& grid,
                                   std::uint64_t seed, std::uint64_t stream,
                                   Scheme scheme) {
  p.validate();
  check_state(init);
  check_grid(grid);
  if (!(p.vbar_b > 0.0) || !(p.vbar_a > 0.0))
    throw config_error("mean-reverting dynamics need vbar > 0 on both sides");

  CounterRng rng(seed, stream);
  Trajectory tr;
  tr.grid = grid;
  tr.increments = correlated_increments(grid, p.rho_ab, rng);
  tr.states.resize(grid.n_points());
  tr.states[0] = init;

  std::vector<double> dw_b(grid.n_steps), dw_a(grid.n_steps);
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    dw_b[k] = tr.increments[k].dw_b;
    dw_a[k] = tr.increments[k].dw_a;
  }
  auto w_b = sde::driver_from_increments(grid, dw_b, 1.0);
  auto w_a = sde::driver_from_increments(grid, dw_a, 1.0);
  sde::LinearSDEParams pb{-p.nu_b(), p.sigma_b, p.vbar_b};
  sde::LinearSDEParams pa{-p.nu_a(), p.sigma_a, p.vbar_a};
  sde::Path vb, va;
  if (scheme == Scheme::exact) {
    vb = sde::solve_linear_sde(pb, w_b, init.v_b);
    va = sde::solve_linear_sde(pa, w_a, init.v_a);
  } else {
    vb = sde::solve_linear_sde_milstein(pb, w_b, init.v_b);
    va = sde::solve_linear_sde_milstein(pa, w_a, init.v_a);
  }

  const double h = grid.dt;
  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    tr.states[k].v_b = vb.values[k];
    tr.states[k].v_a = va.values[k];
  }
  tr.states[0].s = init.s;
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    const auto& st = tr.states[k];
    const auto& inc = tr.increments[k];
    double r_b = (p.vbar_b / st.v_b - p.nu_b()) * h + p.sigma_b * inc.dw_b;
    double r_a = (p.vbar_a / st.v_a - p.nu_a()) * h + p.sigma_a * inc.dw_a;
    tr.states[k + 1].s = st.s + price::increment(p, r_b, r_a);
  }
  return tr;
}

BookEvolution simulate_general_initial(const ModelParams& p,
                                       const BookDensity& u0,
                                       const sde::TimeGrid& grid, int K,
                                       std::uint64_t seed,
                                       std::uint64_t stream) {
  p.validate();
  check_grid(grid);
  if (K < 1) throw config_error("truncation order must be >= 1");
  bool homogeneous = p.vbar_b == 0.0 && p.vbar_a == 0.0;
  if (!homogeneous && (p.vbar_b <= 0.0 || p.vbar_a <= 0.0))
    throw config_error("source intensities must be zero or positive on both sides");

  CounterRng rng(seed, stream);
  auto increments = correlated_increments(grid, p.rho_ab, rng);
  const double h = grid.dt;
  const std::size_t n_pts = grid.n_points();

  struct SideWork {
    const spectral::SideParams* sp;
    double sigma, vbar, nu1, c1;
    std::vector<double> coeffs;        // residual coefficients, k >= 1
    std::vector<double> decay;         // e^{-nu_k h} per mode
    std::vector<std::vector<double>> hk; // basis values on the output grid
    std::vector<double> h1_norm;       // L1-normalized principal profile
    double v0;
    std::size_t n_grid;
    double x0, x1;
  };

  auto prep = [&](const spectral::SideParams& sp, const spectral::SampledFn& u0s,
                  double sigma, double vbar) {
    SideWork w;
    w.sp = &sp;
    w.sigma = sigma;
    w.vbar = vbar;
    w.nu1 = spectral::eigenvalue(sp, 1);
    w.n_grid = u0s.values.size();
    w.x0 = u0s.x0;
    w.x1 = u0s.x1;
    auto pp = spectral::principal_profile(sp, w.n_grid);
    w.c1 = pp.c1;
    auto e = spectral::expand(u0s, sp, K);
    w.coeffs = e.coeffs;
    w.v0 = w.coeffs[0] / w.c1;
    w.coeffs[0] = 0.0; // the principal component rides on the factor path
    w.decay.resize(static_cast<std::size_t>(K));
    w.hk.resize(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
      w.decay[static_cast<std::size_t>(k - 1)] =
          std::exp(-spectral::eigenvalue(sp, k) * h);
      auto s = spectral::sample_eigenfunction(sp, k, w.n_grid);
      w.hk[static_cast<std::size_t>(k - 1)] = s.values;
    }
    w.h1_norm = pp.profile.values;
    return w;
  };

  SideWork wb = prep(p.bid, u0.bid, p.sigma_b, p.vbar_b);
  SideWork wa = prep(p.ask, u0.ask, p.sigma_a, p.vbar_a);
  if (!homogeneous && (!(wb.v0 > 0.0) || !(wa.v0 > 0.0)))
    throw config_error(
        "mean-reverting evolution needs positive principal components in u0");

  BookEvolution out;
  out.grid = grid;
  out.densities.resize(n_pts);
  out.exp_b.assign(n_pts, 1.0);
  out.exp_a.assign(n_pts, 1.0);
  out.v_b.assign(n_pts, wb.v0);
  out.v_a.assign(n_pts, wa.v0);
  out.s.assign(n_pts, 0.0);

  // Factor paths: geometric decay of the principal coefficient in the
  // homogeneous case, the mean-reverting factor equation otherwise. Both use
  // the same one-step factor g = e^{-nu1 h} E_{t+h}/E_t as the density itself.
  auto emit = [&](std::size_t t_idx) {
    BookDensity d;
    auto fill = [&](const SideWork& w, double e_t, double v_t,
                    spectral::SampledFn& dst) {
      dst.x0 = w.x0;
      dst.x1 = w.x1;
      dst.values.assign(w.n_grid, 0.0);
      for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
        double c = w.coeffs[k] * e_t;
        if (c == 0.0) continue;
        const auto& hk = w.hk[k];
        for (std::size_t i = 0; i < w.n_grid; ++i)
          dst.values[i] += c * hk[i];
      }
      for (std::size_t i = 0; i < w.n_grid; ++i)
        dst.values[i] += v_t * w.h1_norm[i];
    };
    fill(wb, out.exp_b[t_idx], out.v_b[t_idx], d.bid);
    fill(wa, out.exp_a[t_idx], out.v_a[t_idx], d.ask);
    out.densities[t_idx] = d;
  };

  emit(0);
  double vb = wb.v0, va = wa.v0;
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    const auto& inc = increments[k];
    double gb = std::exp(p.sigma_b * inc.dw_b - 0.5 * p.sigma_b * p.sigma_b * h);
    double ga = std::exp(p.sigma_a * inc.dw_a - 0.5 * p.sigma_a * p.sigma_a * h);
    out.exp_b[k + 1] = out.exp_b[k] * gb;
    out.exp_a[k + 1] = out.exp_a[k] * ga;
    // Residual modes evolve by one semigroup step inside the exponential.
    for (std::size_t m = 0; m < wb.coeffs.size(); ++m)
      wb.coeffs[m] *= wb.decay[m];
    for (std::size_t m = 0; m < wa.coeffs.size(); ++m)
      wa.coeffs[m] *= wa.decay[m];

    double r_b, r_a;
    if (homogeneous) {
      double step_b = gb * std::exp(-wb.nu1 * h);
      double step_a = ga * std::exp(-wa.nu1 * h);
      vb *= step_b;
      va *= step_a;
      r_b = -wb.nu1 * h + p.sigma_b * inc.dw_b;
      r_a = -wa.nu1 * h + p.sigma_a * inc.dw_a;
    } else {
      // One trapezoid step of the explicit linear-SDE solution.
      double gb_full = gb * std::exp(-wb.nu1 * h);
      double ga_full = ga * std::exp(-wa.nu1 * h);
      r_b = (p.vbar_b / vb - wb.nu1) * h + p.sigma_b * inc.dw_b;
      r_a = (p.vbar_a / va - wa.nu1) * h + p.sigma_a * inc.dw_a;
      vb = gb_full * vb + p.vbar_b * 0.5 * h * (gb_full + 1.0);
      va = ga_full * va + p.vbar_a * 0.5 * h * (ga_full + 1.0);
    }
    out.v_b[k + 1] = vb;
    out.v_a[k + 1] = va;
    out.s[k + 1] = out.s[k] + price::increment(p, r_b, r_a);
    emit(k + 1);
  }
  return out;
}

Depths depth(const ModelParams& p, const FactorState& st) {
  check_state(st);
  Depths d;
  d.d_b = pi / (2.0 * p.bid.L) * p.theta * p.theta * st.v_b;
  d.d_a = pi / (2.0 * p.ask.L) * p.theta * p.theta * st.v_a;
  return d;
}

VolumeImbalance volume_and_imbalance(const ModelParams& p,
                                     const FactorState& st) {
  Depths d = depth(p, st);
  return {st.v_b + st.v_a, d.d_b - d.d_a};
}

BalanceResidual balance_condition(const ModelParams& p) {
  auto res = [](const spectral::SideParams& s) {
    return s.alpha - s.eta * pi * pi / (s.L * s.L) -
           s.beta * s.beta / (4.0 * s.eta);
  };
  return {res(p.bid), res(p.ask)};
}

BookDensity two_factor_density(const ModelParams& p, const FactorState& st,
                               std::size_t n_points_per_side) {
  check_state(st);
  auto pb = spectral::principal_profile(p.bid, n_points_per_side);
  auto pa = spectral::principal_profile(p.ask, n_points_per_side);
  BookDensity d;
  d.bid = pb.profile;
  d.ask = pa.profile;
  for (auto& v : d.bid.values) v *= st.v_b;
  for (auto& v : d.ask.values) v *= st.v_a;
  return d;
}

} // namespace lob::model
