#pragma once

#include <array>
#include <span>
#include <vector>

#include "cbound/bounds_core.hpp"

namespace cbound::rel {

// tanh saturates to 1.0 in binary64 far earlier, and cosh^2 overflows near
// 355; beyond this magnitude a rapidity is rejected instead of silently
// composing to speed 1.
inline constexpr double kMaxRapidity = 350.0;

// Signed speed in units of c, strictly inside (-1, 1).
struct Speed {
    explicit Speed(double value_in);
    double value;
};

// Rapidity magnitude plus a unit 3-direction.
struct RapidityVector {
    RapidityVector(double magnitude_in, std::array<double, 3> direction_in);
    double magnitude;
    std::array<double, 3> direction;
};

// 4x4 real matrix preserving eta = diag(-1,1,1,1) with Lambda^0_0 >= 1.
// Products of boosts pick up spatial (Wigner) rotations and stay in this
// class; speed extraction is insensitive to them.
class LorentzBoost {
public:
    static LorentzBoost identity();
    // Validates the metric invariant and orthochronicity.
    static LorentzBoost from_matrix(const std::array<double, 16>& row_major);

    double operator()(int i, int j) const noexcept { return m_[4 * i + j]; }
    const std::array<double, 16>& data() const noexcept { return m_; }

    LorentzBoost operator*(const LorentzBoost& rhs) const;

    // max |(L^T eta L - eta)_ij| over max(1, (L^0_0)^2); relative so that
    // large-rapidity products validate at the same precision as small ones.
    double metric_defect() const noexcept;

private:
    LorentzBoost() = default;
    std::array<double, 16> m_{};
};

/// atanh: odd, monotone, rejects |v| >= 1.
double speed_to_rapidity(double v);

/// tanh, clamped to stay strictly below 1 in magnitude; rejects
/// |zeta| > kMaxRapidity.
double rapidity_to_speed(double zeta);

/// (v1 + v2) / (1 + v1 v2) for signed collinear speeds.
Speed compose_collinear(Speed v1, Speed v2);

/// Left fold of compose_collinear.
Speed collinear_chain(std::span<const Speed> speeds);

/// Elementary-symmetric rational forms for three and four collinear
/// speeds; kept separate from the fold so the equivalence is testable.
double collinear_three(double v1, double v2, double v3);
double collinear_four(double v1, double v2, double v3, double v4);

/// Bounds on |v_{1..n}|: map magnitudes to rapidities, bound there, map
/// back through tanh. Inputs in [0, 1).
BoundInterval speed_bounds(const std::vector<double>& speed_magnitudes);

/// Pure boost along r.direction with rapidity r.magnitude.
LorentzBoost boost_matrix(const RapidityVector& r);

/// |(L^1_0, L^2_0, L^3_0)| / L^0_0, strictly < 1.
double extract_speed(const LorentzBoost& boost);

/// Multiply the boosts in order and extract the composite speed. Serves as
/// the oracle for the vectorial composition rule.
double compose_boosts_extract_speed(std::span<const RapidityVector> boosts);

/// Composite rapidity magnitude at a given angle between the two boost
/// directions: cosh z12 = cosh z1 cosh z2 + cos(angle) sinh z1 sinh z2.
/// Monotone decreasing in angle on [0, pi] between z1+z2 and |z1-z2|.
double compose_at_angle(double zeta1, double zeta2, double angle);

/// n-1 inter-boost angles realizing target_speed (in [0,1)) for the given
/// speed magnitudes; inverts compose_at_angle joint by joint against
/// plan_chain_targets in rapidity space.
std::vector<double> plan_relative_angles(const std::vector<double>& speed_magnitudes,
                                         double target_speed);

/// Build the planned chain as actual boost matrices (axes laid out in a
/// plane, each at the prescribed angle to the running composite) and
/// extract the achieved speed.
double compose_planned(const std::vector<double>& speed_magnitudes,
                       const std::vector<double>& angles);

} // namespace cbound::rel
