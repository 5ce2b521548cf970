#include "lob/spectral/expansion.hpp"

#include <cmath>
#include <numbers>

#include "lob/common.hpp"

namespace lob::spectral {

namespace {
constexpr double pi = std::numbers::pi;

void check_sampled(const SampledFn& f) {
  if (f.values.size() < 3 || !(f.x1 > f.x0))
    throw config_error("sampled function needs >= 3 points and x1 > x0");
}
} // namespace

void SideParams::validate() const {
  if (!(eta > 0.0)) throw config_error("side params need eta > 0");
  if (beta < 0.0) throw config_error("side params need beta >= 0");
  if (!(L > 0.0)) throw config_error("side params need L > 0");
}

double integrate(const std::vector<double>& y, double dx) {
  std::size_t n = y.size();
  if (n < 3) throw config_error("integration needs >= 3 sample points");
  std::size_t intervals = n - 1;
  double s = 0.0;
  std::size_t start = 0;
  if (intervals % 2 == 1) {
    // Simpson 3/8 on the first three intervals, plain Simpson on the rest.
    s += 3.0 * dx / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]);
    start = 3;
  }
  for (std::size_t i = start; i + 2 < n; i += 2)
    s += dx / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  return s;
}

double eigenvalue(const SideParams& p, int k) {
  if (k < 1) throw config_error("mode index must be >= 1");
  p.validate();
  double kk = static_cast<double>(k);
  return -p.alpha + p.eta * kk * kk * pi * pi / (p.L * p.L) +
         p.beta * p.beta / (4.0 * p.eta);
}

EigenPair eigen_pair(const SideParams& p, int k) {
  return {k, eigenvalue(p, k), p.gamma()};
}

double eigenfunction(const SideParams& p, int k, double x) {
  if (k < 1) throw config_error("mode index must be >= 1");
  double g = p.gamma();
  double phase = static_cast<double>(k) * pi * x / p.L;
  double damp = p.side == Side::ask ? std::exp(-g * x) : std::exp(g * x);
  return damp * std::sin(phase);
}

SampledFn sample_eigenfunction(const SideParams& p, int k,
                               std::size_t n_points) {
  return sample_side(p, n_points,
                     [&](double x) { return eigenfunction(p, k, x); });
}

SampledFn sample_side(const SideParams& p, std::size_t n_points,
                      const std::function<double(double)>& f) {
  if (n_points < 3) throw config_error("need >= 3 sample points");
  SampledFn s;
  s.x0 = p.x_lo();
  s.x1 = p.x_hi();
  s.values.resize(n_points);
  double dx = (s.x1 - s.x0) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i)
    s.values[i] = f(s.x0 + static_cast<double>(i) * dx);
  return s;
}

double weighted_inner_product(const SampledFn& f, const SampledFn& g,
                              const SideParams& p) {
  check_sampled(f);
  check_sampled(g);
  if (f.values.size() != g.values.size() || f.x0 != g.x0 || f.x1 != g.x1)
    throw config_error("weighted inner product needs matching grids");
  double gam = p.gamma();
  double w_sign = p.side == Side::ask ? 2.0 : -2.0;
  std::vector<double> y(f.values.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = f.values[i] * g.values[i] * std::exp(w_sign * gam * f.x(i));
  return 2.0 / p.L * integrate(y, f.dx());
}

SpectralExpansion expand(const SampledFn& h0, const SideParams& p, int K) {
  if (K < 1) throw config_error("truncation order must be >= 1");
  check_sampled(h0);
  SpectralExpansion e;
  e.side = p;
  e.coeffs.resize(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
    SampledFn hk = sample_eigenfunction(p, k, h0.values.size());
    e.coeffs[static_cast<std::size_t>(k - 1)] =
        weighted_inner_product(h0, hk, p);
  }
  return e;
}

SpectralExpansion evolve(const SpectralExpansion& e, double t) {
  if (t < 0.0) throw config_error("evolution time must be >= 0");
  SpectralExpansion out = e;
  for (std::size_t k = 0; k < out.coeffs.size(); ++k)
    out.coeffs[k] *=
        std::exp(-eigenvalue(e.side, static_cast<int>(k) + 1) * t);
  return out;
}

SampledFn reconstruct(const SpectralExpansion& e, std::size_t n_points) {
  SampledFn s = sample_side(e.side, n_points, [](double) { return 0.0; });
  for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
    if (e.coeffs[k] == 0.0) continue;
    for (std::size_t i = 0; i < n_points; ++i)
      s.values[i] += e.coeffs[k] *
                     eigenfunction(e.side, static_cast<int>(k) + 1, s.x(i));
  }
  return s;
}

double truncation_tail_bound(const SampledFn& h0, const SpectralExpansion& e,
                             double t) {
  // || h0 - P_K h0 ||_gamma * e^{-nu_{K+1} t}: the unresolved remainder decays
  // at least as fast as the slowest mode beyond the truncation.
  SampledFn rec = reconstruct(e, h0.values.size());
  SampledFn resid = rec;
  for (std::size_t i = 0; i < resid.values.size(); ++i)
    resid.values[i] = h0.values[i] - rec.values[i];
  double norm2 = weighted_inner_product(resid, resid, e.side);
  double nu_next =
      eigenvalue(e.side, static_cast<int>(e.coeffs.size()) + 1);
  return std::sqrt(std::max(0.0, norm2)) * std::exp(-nu_next * t);
}

PrincipalProfile principal_profile(const SideParams& p, std::size_t n_points) {
  p.validate();
  double g = p.gamma();
  double w = pi / p.L;
  // 1/c1 = Int_0^L e^{-gamma x} sin(pi x/L) dx = w (1 + e^{-gamma L})/(gamma^2 + w^2);
  // the bid side integral of |h_1| has the same value by mirror symmetry.
  double c1 = (g * g + w * w) / (w * (1.0 + std::exp(-g * p.L)));
  // Peak of e^{-gamma x} sin(w x): tan(w x) = w/gamma.
  double x_hat_mag = std::atan2(w, g) / w;
  double peak = c1 * std::exp(-g * x_hat_mag) * std::sin(w * x_hat_mag);

  PrincipalProfile out;
  out.c1 = c1;
  out.x_hat = p.side == Side::ask ? x_hat_mag : -x_hat_mag;
  out.peak_value = peak;
  out.profile = sample_side(
      p, n_points, [&](double x) { return c1 * eigenfunction(p, 1, x); });
  return out;
}

} // namespace lob::spectral
