#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "lob/common.hpp"
#include "lob/est/estimators.hpp"

namespace lob::est {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_iterations = 100;
constexpr double step_tol = 1e-10;

struct FitData {
  std::vector<double> tick;
  std::vector<double> size;
  double omega; // pi / L
};

// Basis value g(l) = exp(-gamma w) sin(w omega), w = l^a, and the optimal
// scale V* = sum(g y) / sum(g^2) projected out in closed form.
double basis(const FitData& d, double tick, double gamma, double a) {
  double w = std::pow(tick, a);
  return std::exp(-gamma * w) * std::sin(w * d.omega);
}

double projected_ssr(const FitData& d, double gamma, double a,
                     double* v_out = nullptr) {
  double gg = 0.0, gy = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < d.tick.size(); ++i) {
    double g = basis(d, d.tick[i], gamma, a);
    gg += g * g;
    gy += g * d.size[i];
    yy += d.size[i] * d.size[i];
  }
  double v = gg > 0.0 ? gy / gg : 0.0;
  if (v_out) *v_out = v;
  return yy - 2.0 * v * gy + v * v * gg;
}

// Solve the (small) symmetric normal-equation system in place.
bool solve_normal(std::vector<std::vector<double>>& m, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (std::fabs(m[piv][c]) < 1e-300) return false;
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t k = c + 1; k < n; ++k) b[c] -= m[c][k] * b[k];
    b[c] /= m[c][c];
  }
  return true;
}

void validate_profile(const TickProfile& profile) {
  if (profile.tick.size() != profile.size.size())
    throw data_error("profile tick/size arrays differ in length");
  if (profile.tick.size() < 3)
    throw data_error("profile fit needs at least 3 levels");
  double total = 0.0;
  for (std::size_t i = 0; i < profile.tick.size(); ++i) {
    if (!(profile.tick[i] > 0.0))
      throw data_error("profile ticks must be positive distances");
    if (profile.size[i] < 0.0) throw data_error("profile sizes must be >= 0");
    total += profile.size[i];
  }
  if (total == 0.0) throw data_error("all-zero profile cannot be fitted");
}

} // namespace

ProfileFit fit_profile_ls(const TickProfile& profile, double L,
                          bool nonlinear_scaling) {
  validate_profile(profile);
  if (!(L > 0.0)) throw config_error("profile length scale must be > 0");

  FitData d{profile.tick, profile.size, pi / L};

  // Coarse deterministic grid seed over gamma (and a when free).
  double best_g = 0.0, best_a = 1.0;
  double best_ssr = std::numeric_limits<double>::infinity();
  std::vector<double> gamma_grid{0.0};
  for (double g = 1e-3; g <= 5.0; g *= 1.6) gamma_grid.push_back(g);
  std::vector<double> a_grid{1.0};
  if (nonlinear_scaling)
    for (double a = 0.3; a <= 1.51; a += 0.1) a_grid.push_back(a);
  for (double a : a_grid)
    for (double g : gamma_grid) {
      double ssr = projected_ssr(d, g, a);
      if (ssr < best_ssr) {
        best_ssr = ssr;
        best_g = g;
        best_a = a;
      }
    }

  // Joint Gauss-Newton on (V, gamma[, a]) with step-halving.
  double v;
  double ssr = projected_ssr(d, best_g, best_a, &v);
  double gamma = best_g, a = best_a;
  ProfileFit fit;
  const std::size_t n_par = nonlinear_scaling ? 3u : 2u;
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::vector<std::vector<double>> jtj(n_par, std::vector<double>(n_par, 0.0));
    std::vector<double> jtr(n_par, 0.0);
    for (std::size_t i = 0; i < d.tick.size(); ++i) {
      double w = std::pow(d.tick[i], a);
      double e = std::exp(-gamma * w);
      double s = std::sin(w * d.omega), c = std::cos(w * d.omega);
      double u = v * e * s;
      double r = u - d.size[i];
      double grad[3];
      grad[0] = e * s;       // dU/dV
      grad[1] = -w * u;      // dU/dgamma
      grad[2] = w * std::log(d.tick[i]) *
                (-gamma * u + v * d.omega * e * c); // dU/da
      for (std::size_t p = 0; p < n_par; ++p) {
        jtr[p] += grad[p] * r;
        for (std::size_t q = 0; q < n_par; ++q) jtj[p][q] += grad[p] * grad[q];
      }
    }
    std::vector<double> step = jtr;
    if (!solve_normal(jtj, step)) break;

    double scale = 1.0;
    bool improved = false;
    double nv = v, ng = gamma, na = a, nssr = ssr;
    for (int half = 0; half < 40; ++half, scale *= 0.5) {
      nv = v - scale * step[0];
      ng = std::max(0.0, gamma - scale * step[1]);
      na = n_par == 3 ? std::max(0.05, a - scale * step[2]) : a;
      double cand_v;
      double cand = projected_ssr(d, ng, na, &cand_v);
      if (cand <= ssr) {
        nssr = cand;
        nv = cand_v; // re-project the scale at the new shape parameters
        improved = true;
        break;
      }
    }
    if (!improved) break;
    double rel = std::fabs(ng - gamma) / (1.0 + std::fabs(gamma)) +
                 std::fabs(na - a) / (1.0 + std::fabs(a)) +
                 std::fabs(nv - v) / (1.0 + std::fabs(v));
    v = nv;
    gamma = ng;
    a = na;
    ssr = nssr;
    if (rel < step_tol) {
      fit.converged = true;
      ++it;
      break;
    }
  }
  if (it == max_iterations) fit.converged = false;
  if (gamma <= 1e-8) {
    gamma = std::max(0.0, gamma);
    fit.gamma_at_boundary = true;
    fit.converged = true; // pinned boundary optimum counts as resolved
  }

  fit.gamma = gamma;
  fit.volume_scale = v;
  fit.scaling_exponent_a = a;
  fit.residual = ssr;
  fit.iterations = it;
  return fit;
}

ProfileFit fit_profile_peak(const TickProfile& profile, double L) {
  validate_profile(profile);
  if (!(L > 0.0)) throw config_error("profile length scale must be > 0");

  std::size_t i_max = 0;
  for (std::size_t i = 1; i < profile.tick.size(); ++i)
    if (profile.size[i] > profile.size[i_max]) i_max = i;
  if (i_max + 1 == profile.tick.size())
    throw data_error("profile has no interior maximum");

  const double omega = pi / L;
  ProfileFit fit;
  double x_hat, height;
  if (i_max == 0) {
    // Peak sits at the first observable tick: the true maximum may lie
    // anywhere at or below it, so gamma is only bounded from below.
    fit.peak_at_first_tick = true;
    x_hat = profile.tick[0];
    height = profile.size[0];
  } else {
    // Parabolic refinement through the three points around the maximum.
    double fm = profile.size[i_max - 1], f0 = profile.size[i_max],
           fp = profile.size[i_max + 1];
    double denom = fm - 2.0 * f0 + fp;
    double dl = profile.tick[i_max] - profile.tick[i_max - 1];
    double shift = denom < 0.0 ? 0.5 * dl * (fm - fp) / denom : 0.0;
    x_hat = profile.tick[i_max] + shift;
    height = denom < 0.0 ? f0 - 0.125 * (fm - fp) * (fm - fp) / denom : f0;
  }

  double t = std::tan(omega * x_hat);
  double gamma = t > 0.0 ? omega / t : 0.0;
  gamma = std::max(0.0, gamma);
  if (gamma == 0.0) fit.gamma_at_boundary = true;

  fit.gamma = gamma;
  double shape = std::exp(-gamma * x_hat) * std::sin(omega * x_hat);
  fit.volume_scale = shape > 0.0 ? height / shape : 0.0;
  fit.scaling_exponent_a = 1.0;
  fit.converged = true;

  FitData d{profile.tick, profile.size, omega};
  double r = 0.0;
  for (std::size_t i = 0; i < d.tick.size(); ++i) {
    double e = fit.volume_scale * basis(d, d.tick[i], gamma, 1.0) - d.size[i];
    r += e * e;
  }
  fit.residual = r;
  return fit;
}

} // namespace lob::est
