#pragma once

#include <cstdint>
#include <vector>

#include "lob/sde/linear_sde.hpp"
#include "lob/spectral/expansion.hpp"

namespace lob::model {

// Full parameter set for the two-sided book.
struct ModelParams {
  spectral::SideParams bid{1.0, 0.0, 0.0, 1.0, spectral::Side::bid};
  spectral::SideParams ask{1.0, 0.0, 0.0, 1.0, spectral::Side::ask};
  double sigma_b = 0.1; // factor volatility, 1/sqrt(s)
  double sigma_a = 0.1;
  double rho_ab = 0.0;  // driver correlation
  double theta = 0.01;  // tick size, price units
  double c_s = 0.5;     // price-impact constant
  double vbar_b = 0.0;  // source intensity (0 = homogeneous)
  double vbar_a = 0.0;
  double scaling_exponent_a = 1.0;

  // Mean-reversion rates: the principal eigenvalues per side.
  double nu_b() const { return spectral::eigenvalue(bid, 1); }
  double nu_a() const { return spectral::eigenvalue(ask, 1); }

  void validate() const; // throws config_error
};

struct FactorState {
  double v_b = 0.0; // bid-side volume factor, > 0
  double v_a = 0.0; // ask-side volume factor, > 0
  double s = 0.0;   // mid-price
};

// One pair of correlated Brownian increments over a step.
struct WienerIncrement {
  double dw_b = 0.0;
  double dw_a = 0.0;
};

struct Trajectory {
  sde::TimeGrid grid;
  std::vector<FactorState> states;          // n_points entries
  std::vector<WienerIncrement> increments;  // n_steps entries
};

// Signed density over the band: bid part on [-L_b, 0], ask part on [0, L_a].
struct BookDensity {
  spectral::SampledFn bid; // values <= 0
  spectral::SampledFn ask; // values >= 0
};

// Full spectral evolution of a general initial profile, with the per-side
// factor paths and stochastic exponentials exposed for diagnostics.
struct BookEvolution {
  sde::TimeGrid grid;
  std::vector<BookDensity> densities;
  std::vector<double> exp_b, exp_a; // E_t(sigma W) per side
  std::vector<double> v_b, v_a;     // principal factor paths
  std::vector<double> s;            // mid-price path
};

enum class Scheme { exact, milstein };

// Correlated increments: dW_a = sqrt(dt) z1, dW_b = rho sqrt(dt) z1 +
// sqrt(1-rho^2) sqrt(dt) z2; two normal draws per step.
std::vector<WienerIncrement> correlated_increments(const sde::TimeGrid& grid,
                                                   double rho, CounterRng& rng);

// Homogeneous two-factor dynamics: exact geometric updates
// V_{t+h} = V_t exp(sigma dW - (nu + sigma^2/2) h) per side; the mid-price
// moves by the relative order-flow increments each step.
Trajectory simulate_two_factor(const ModelParams& p, const FactorState& init,
                               const sde::TimeGrid& grid, std::uint64_t seed,
                               std::uint64_t stream = 0);

// Mean-reverting factors dV = (vbar - nu V) dt + sigma V dW via the explicit
// linear-SDE solution (or the Milstein cross-check scheme).
Trajectory simulate_mean_reverting(const ModelParams& p,
                                   const FactorState& init,
                                   const sde::TimeGrid& grid,
                                   std::uint64_t seed, std::uint64_t stream = 0,
                                   Scheme scheme = Scheme::exact);

// Spectral evolution of a general initial profile:
//   u_t = V_t H_1 + E_t(sigma W) sum_{k>=2} e^{-nu_k t} <u0, h_k> h_k
// per side, with V_0 = <u0, h_1>/c1 (which zeroes the k = 1 remainder, making
// the output independent of the split) and V driven by the side's factor
// equation; the homogeneous case vbar = 0 collapses to
// u_t = E_t sum_k e^{-nu_k t} <u0, h_k> h_k.
BookEvolution simulate_general_initial(const ModelParams& p,
                                       const BookDensity& u0,
                                       const sde::TimeGrid& grid, int K,
                                       std::uint64_t seed,
                                       std::uint64_t stream = 0);

struct Depths {
  double d_b = 0.0;
  double d_a = 0.0;
};

// Top-of-book depth D = pi/(2 L) theta^2 V per side (the first-level volume
// implied by the principal-profile gradient at the touch).
Depths depth(const ModelParams& p, const FactorState& st);

struct VolumeImbalance {
  double volume = 0.0;    // V_b + V_a
  double imbalance = 0.0; // D_b - D_a
};
VolumeImbalance volume_and_imbalance(const ModelParams& p,
                                     const FactorState& st);

// Residual alpha - eta pi^2/L^2 - beta^2/(4 eta) per side; zero exactly when
// order flow is balanced (equivalently when the principal eigenvalue vanishes).
struct BalanceResidual {
  double bid = 0.0;
  double ask = 0.0;
};
BalanceResidual balance_condition(const ModelParams& p);

// Two-factor book density at a state: V_b H_1^b + V_a H_1^a.
BookDensity two_factor_density(const ModelParams& p, const FactorState& st,
                               std::size_t n_points_per_side = 513);

} // namespace lob::model
