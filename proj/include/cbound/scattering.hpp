#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "cbound/bounds_core.hpp"

namespace cbound::scatter {

// Hyperbolic angle ceiling: cosh^2 overflows binary64 near 355.
inline constexpr double kMaxTheta = 350.0;

// SU(1,1) transfer matrix [[alpha, conj(beta)], [beta, conj(alpha)]] with
// |alpha|^2 - |beta|^2 = 1. Parametrized by (Theta, phi, psi) through
// alpha = cosh(Theta) e^{i phi}, beta = sinh(Theta) e^{i psi}.
class TransferMatrix {
public:
    TransferMatrix(std::complex<double> alpha, std::complex<double> beta);
    static TransferMatrix identity();

    std::complex<double> alpha() const noexcept { return alpha_; }
    std::complex<double> beta() const noexcept { return beta_; }

    double theta() const noexcept; // acosh |alpha|
    double phi() const noexcept;   // arg alpha
    double psi() const noexcept;   // arg beta; 0 by convention at Theta = 0

    // | |alpha|^2 - |beta|^2 - 1 | / max(1, |alpha|^2); relative so long
    // large-Theta chains validate at full precision.
    double unitarity_defect() const noexcept;

private:
    struct unchecked_t {};
    TransferMatrix(std::complex<double> a, std::complex<double> b, unchecked_t)
        : alpha_(a), beta_(b) {}
    friend TransferMatrix compose_transfer(std::span<const TransferMatrix>);

    std::complex<double> alpha_;
    std::complex<double> beta_;
};

// One barrier characterized by its transmission probability alone;
// transmission + reflection == 1 by construction. T = 0 is rejected: its
// hyperbolic angle diverges and every composed bound trivializes.
struct BarrierSpec {
    static BarrierSpec from_transmission(double transmission);
    static BarrierSpec from_reflection(double reflection);

    double transmission;
    double reflection;

    double theta() const; // asinh(sqrt(R/T)), stable for all T in (0, 1]

private:
    BarrierSpec(double t, double r) : transmission(t), reflection(r) {}
};

/// Build a matrix from its hyperbolic parameters; theta in [0, kMaxTheta].
TransferMatrix from_theta_phases(double theta, double phi, double psi);

/// Ordered matrix product; empty input gives the identity. Throws
/// internal_error if the SU(1,1) invariant drifts past tolerance.
TransferMatrix compose_transfer(std::span<const TransferMatrix> ms);

struct TransmissionReflection {
    double transmission;
    double reflection;
};

/// T = sech^2(Theta), R = tanh^2(Theta); summing to 1 within roundoff.
TransmissionReflection transmission_reflection(const TransferMatrix& m);

/// sech^2, evaluated in exp form past Theta = 20 to dodge cosh overflow.
double transmission_from_theta(double theta);
/// tanh^2, clamped strictly below 1.
double reflection_from_theta(double theta);

struct TRBounds {
    BoundInterval transmission;
    BoundInterval reflection;
};

/// Closed-form two-barrier bounds:
///   T1 T2 / (1 +- sqrt(1-T1) sqrt(1-T2))^2  and the sqrt(R) Moebius pair.
/// The subtractive denominator is evaluated via
///   1 - sqrt((1-T1)(1-T2)) = (T1 + T2 - T1 T2) / (1 + sqrt((1-T1)(1-T2)))
/// which is the same expression without the small-T cancellation.
TRBounds two_barrier_bounds(const BarrierSpec& b1, const BarrierSpec& b2);

struct ClosedForm34 {
    double transmission_lower;
    double reflection_upper;
};

/// The explicit three/four-barrier bound formulas (cyclic sums of
/// sqrt(R_i R_j ...) terms), evaluated as written.
ClosedForm34 closed_form_bounds_34(std::span<const BarrierSpec> specs);

/// Theta-space bound interval over Theta_i = asinh(sqrt(R_i/T_i)).
BoundInterval theta_bounds(std::span<const BarrierSpec> specs);

/// General-n bounds as the sech^2 / tanh^2 images of theta_bounds.
TRBounds n_barrier_bounds(std::span<const BarrierSpec> specs);

/// Per-barrier (phi, psi) phases whose ordered composition lands on
/// target_theta. Junction phases solve
///   |cosh(t_j) cosh(Theta) + e^{i delta} sinh(t_j) sinh(Theta)| = cosh(t_{j+1})
/// against the partial targets from plan_chain_targets.
std::vector<std::pair<double, double>> plan_phases(const MagnitudeList& thetas,
                                                   double target_theta);

} // namespace cbound::scatter
