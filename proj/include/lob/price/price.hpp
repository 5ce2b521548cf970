#pragma once

#include <vector>

#include "lob/model/model.hpp"

namespace lob::price {

// dS = c_s theta (dV_b/V_b - dV_a/V_a): the mid-price step implied by the
// relative order-flow changes of the two sides.
double increment(const model::ModelParams& p, double dlogv_b, double dlogv_a);

// sigma_S = c_s theta sqrt(sigma_b^2 + sigma_a^2 - 2 sigma_a sigma_b rho).
double mid_vol(const model::ModelParams& p);

// Deterministic drift -c_s theta (nu_b - nu_a) of the homogeneous price.
double drift(const model::ModelParams& p);

// First-order probability of an upward move of at least y over dt, given
// current depths d0 and long-run depths dbar:
//   Phi( (c_s theta sqrt(dt)/sigma_S) (nu_b (dbar_b - d0_b)/d0_b
//        - nu_a (dbar_a - d0_a)/d0_a) - y/(sigma_S sqrt(dt)) ).
double prob_up_move(const model::ModelParams& p, double d0_b, double d0_a,
                    double dbar_b, double dbar_a, double y, double dt);

// E[D_t - D_0] = t nu (dbar - d0) + o(t).
double expected_order_flow(double nu, double dbar, double d0, double dt);
// Convenience overload taking nu and the stationary depth from the model.
double expected_order_flow(const model::ModelParams& p, spectral::Side side,
                           double d0, double dt);

// Density in absolute price coordinates: v(q) = u(x(q - s)) with the scaling
// map x(d) = sign(d) |d|^a. Emitted on the image of u's grid, so re-centering
// recovers u exactly; v vanishes outside (s - L_b^{1/a}, s + L_a^{1/a}).
struct AbsoluteDensity {
  std::vector<double> p_grid;
  std::vector<double> values;
  double s = 0.0;
};
AbsoluteDensity to_absolute(const model::BookDensity& u, double s,
                            const model::ModelParams& p);
model::BookDensity from_absolute(const AbsoluteDensity& v,
                                 const model::ModelParams& p);

} // namespace lob::price
