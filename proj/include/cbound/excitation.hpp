#pragma once

#include <span>

#include "cbound/bounds_core.hpp"

namespace cbound::excite {

// Events are mean produced quanta N >= 0 (real-valued occupation numbers).
// N = sinh^2(Theta) ties them to the transfer-matrix angle.

/// Theta = asinh(sqrt(N)).
double theta_from_particles(double particles);

/// N = sinh^2(Theta); theta capped where sinh^2 would overflow.
double particles_from_theta(double theta);

/// Two-event interval {sqrt(N1(N2+1)) -+ sqrt(N2(N1+1))}^2.
BoundInterval two_event_bounds(double n1, double n2);

/// The explicit three/four-event upper-bound formulas (cyclic sums of
/// sqrt(N_i (1+N_j) ...) terms).
double closed_form_upper_34(std::span<const double> events);

/// Theta-space interval over Theta_i = asinh(sqrt(N_i)).
BoundInterval theta_bounds(std::span<const double> events);

/// General-n interval [sinh^2(theta_lo), sinh^2(theta_hi)].
BoundInterval n_event_bounds(std::span<const double> events);

} // namespace cbound::excite
