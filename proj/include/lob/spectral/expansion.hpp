#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace lob::spectral {

enum class Side { bid, ask };

// Per-side coefficients of the drift operator A = eta*Lap + beta*Grad + alpha
// on (0, L) (ask) resp. A = eta*Lap - beta*Grad + alpha on (-L, 0) (bid),
// with Dirichlet boundary conditions.
struct SideParams {
  double eta = 1.0;   // diffusion, price^2/s, > 0
  double beta = 0.0;  // convection magnitude, price/s, >= 0
  double alpha = 0.0; // net inflow rate, 1/s
  double L = 1.0;     // half-width of the band, price units, > 0
  Side side = Side::ask;

  double gamma() const { return beta / (2.0 * eta); }
  double x_lo() const { return side == Side::ask ? 0.0 : -L; }
  double x_hi() const { return side == Side::ask ? L : 0.0; }
  void validate() const; // throws config_error
};

struct EigenPair {
  int k = 1;
  double nu = 0.0;    // eigenvalue of -A
  double gamma = 0.0; // beta/(2 eta)
};

// Values on a uniform grid over [x0, x1], endpoints included.
struct SampledFn {
  double x0 = 0.0;
  double x1 = 0.0;
  std::vector<double> values;

  double dx() const {
    return (x1 - x0) / static_cast<double>(values.size() - 1);
  }
  double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx(); }
};

// Coefficients of a profile in the weighted eigenbasis {h_k}, k = 1..K.
struct SpectralExpansion {
  SideParams side;
  std::vector<double> coeffs;

  std::size_t order() const { return coeffs.size(); }
};

// Composite Simpson weights on any grid of >= 3 points (a 3/8 block absorbs an
// odd interval count). Returns integral of the sampled values times dx.
double integrate(const std::vector<double>& y, double dx);

// nu_k = -alpha + eta k^2 pi^2 / L^2 + beta^2/(4 eta); strictly increasing in k.
double eigenvalue(const SideParams& p, int k);
EigenPair eigen_pair(const SideParams& p, int k);

// h_k(x) = e^{-gamma x} sin(k pi x / L) on the ask side,
// h_k(x) = e^{+gamma x} sin(k pi x / L) on the bid side. Orthonormal in the
// side's weighted inner product; zero at the interval endpoints.
double eigenfunction(const SideParams& p, int k, double x);
SampledFn sample_eigenfunction(const SideParams& p, int k, std::size_t n_points);

// Samples an arbitrary function on the side's interval.
SampledFn sample_side(const SideParams& p, std::size_t n_points,
                      const std::function<double(double)>& f);

// <f, g> = (2/L) Int f g e^{+2 gamma x} dx on the ask side (weight e^{-2 gamma x}
// on the bid side), the inner product that makes {h_k} orthonormal.
double weighted_inner_product(const SampledFn& f, const SampledFn& g,
                              const SideParams& p);

// Coefficients <h0, h_k> for k = 1..K.
SpectralExpansion expand(const SampledFn& h0, const SideParams& p, int K);

// Semigroup action c_k -> e^{-nu_k t} c_k.
SpectralExpansion evolve(const SpectralExpansion& e, double t);

// Pointwise reconstruction sum_k c_k h_k on a fresh uniform grid.
SampledFn reconstruct(const SpectralExpansion& e, std::size_t n_points);

// Weighted L2 norm of the part of h0 not captured by the expansion, damped by
// the slowest unresolved mode: a bound on the truncation error of evolve at t.
double truncation_tail_bound(const SampledFn& h0, const SpectralExpansion& e,
                             double t);

// L1-normalized principal eigenfunction with its peak metadata.
//   c1         : normalization, 1/c1 = Int |h_1|
//   x_hat      : location of the maximum of |H_1| (negative on the bid side)
//   peak_value : |H_1(x_hat)|
struct PrincipalProfile {
  SampledFn profile;
  double x_hat = 0.0;
  double peak_value = 0.0;
  double c1 = 0.0;
};
PrincipalProfile principal_profile(const SideParams& p,
                                   std::size_t n_points = 4097);

} // namespace lob::spectral
