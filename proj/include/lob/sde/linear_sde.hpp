#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lob/rng.hpp"

namespace lob::sde {

// Uniform time grid t0 + k*dt, k = 0..n_steps.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t n_steps = 0;

  std::size_t n_points() const { return n_steps + 1; }
  double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
  double horizon() const { return static_cast<double>(n_steps) * dt; }
};

struct Jump {
  double time;
  double dx; // relative jump size, must stay > -1
};

// Cadlag scalar driver X sampled on a grid: a Brownian part plus jump marks.
// values[k] includes every jump applied at or before grid point k; a jump is
// applied at the end of the step containing its time. The continuous quadratic
// variation [X,X]^c is carried analytically (sigma^2 * t for a Brownian part),
// not accumulated from squared increments.
struct DriverPath {
  TimeGrid grid;
  std::vector<double> values;
  std::vector<Jump> jumps; // sorted by time
  std::vector<double> quadratic_variation_c;

  // Grid index at which a jump takes effect (end of the step containing it).
  std::size_t jump_index(const Jump& j) const;
};

// dZ = (a Z + c) dt + b Z dW; the additive-noise coefficient of the general
// linear equation is fixed to zero (the case of interest throughout).
struct LinearSDEParams {
  double a = 0.0; // drift slope, 1/s
  double b = 0.0; // multiplicative volatility, 1/sqrt(s)
  double c = 0.0; // drift constant, units of Z per s
};

// Inverse Gamma in the (shape, scale) convention with mean 1/(scale*(shape-1)).
struct InverseGammaLaw {
  double shape = 0.0;
  double scale = 0.0;

  double mean() const;     // requires shape > 1
  double variance() const; // requires shape > 2
  double sample(CounterRng& rng) const; // reciprocal of a Gamma draw
};

// Plain sampled path (no driver semantics).
struct Path {
  TimeGrid grid;
  std::vector<double> values;
};

// Brownian driver with volatility sigma; one normal draw per step.
DriverPath brownian_driver(const TimeGrid& grid, double sigma, CounterRng& rng);

// Driver assembled from externally supplied Brownian increments (one per
// step, variance dt each), scaled by sigma. Lets several consumers share one
// noise realization.
DriverPath driver_from_increments(const TimeGrid& grid,
                                  const std::vector<double>& dw, double sigma);

// Registers a jump mark; takes effect at the end of the step containing
// `time`. Keeps the jump list time-sorted.
void add_jump(DriverPath& x, double time, double dx);

// Doleans-Dade exponential E(X) = exp(X - [X,X]^c/2) * prod (1+dX) e^{-dX}.
Path stochastic_exponential(const DriverPath& x);

// The driver Y with E(X) E(Y) = 1: Y = -X + [X,X]^c + sum dX^2/(1+dX).
DriverPath reciprocal_driver(const DriverPath& x);

// Explicit solution Z_t = E_t(X) e^{at} (z0 + c Int_0^t e^{-as} E_{s-}(Y) ds)
// with X = b*w, integrated per step by the trapezoidal rule. The one-step
// update multiplies by G = e^{a dt} E_{t+dt}(X)/E_t(X), whose conditional mean
// is exactly e^{a dt}, so discrete transition slopes carry no scheme bias.
Path solve_linear_sde(const LinearSDEParams& p, const DriverPath& w, double z0);

// Milstein discretization of the same equation; an independent cross-check
// consuming the same increments (one normal per step). Continuous drivers only.
Path solve_linear_sde_milstein(const LinearSDEParams& p, const DriverPath& w,
                               double z0);

// Stationary law for a < 0, c > 0, b != 0: shape 1 - 2a/b^2, scale b^2/(2c).
InverseGammaLaw stationary_law(const LinearSDEParams& p);

// E[Z_t] = (z0 + c/a) e^{at} - c/a; the a = 0 limit is z0 + c t.
double mean_at(const LinearSDEParams& p, double z0, double t);

// Stationary autocorrelation e^{a * lag}; requires a < 0, c > 0, lag >= 0.
double stationary_autocorrelation(const LinearSDEParams& p, double lag);

// Pointwise reciprocal of a strictly positive path; 1/Z solves the logistic
// equation dY = -Y (a - b^2 + c Y) dt - b Y dW.
Path reciprocal_process(const Path& z);

} // namespace lob::sde
