#pragma once

#include <cstdint>
#include <vector>

#include "cbound/bounds_core.hpp"

namespace cbound::walk {

// One jump: a nonnegative length and a unit direction in d >= 1 dimensions.
struct Step {
    Step(double length_in, std::vector<double> direction_in);

    double length;
    std::vector<double> direction; // |direction| = 1 within 1e-12
};

// Ordered steps sharing one ambient dimension.
class Walk {
public:
    explicit Walk(std::vector<Step> steps);

    const std::vector<Step>& steps() const noexcept { return steps_; }
    std::size_t dimension() const noexcept { return steps_.front().direction.size(); }
    std::size_t size() const noexcept { return steps_.size(); }

    MagnitudeList lengths() const;

private:
    std::vector<Step> steps_;
};

struct Resultant {
    std::vector<double> displacement;
    double norm;
};

/// Net displacement sum(n_i * l_i) and its Euclidean norm.
Resultant resultant(const Walk& w);

/// [max{2*peak - total, 0}, total] on |resultant|; delegates to bounds_core.
BoundInterval displacement_bounds(const MagnitudeList& lengths);

/// Planar (d = 2) walk whose resultant norm equals target. Joint angles are
/// solved from the law of cosines against the partial targets produced by
/// plan_chain_targets, so any point of the bound interval is attainable.
/// Throws std::domain_error when target is outside the interval.
Walk plan_angles(const MagnitudeList& lengths, double target);

/// Walk with i.i.d. uniform directions on S^{dim-1}. Direction i depends
/// only on (seed, i), never on evaluation order. dim >= 2; in d = 1 the
/// attainable set of |resultant| is discrete, so sampling there would not
/// exercise the interval (1D walks are still expressible via +-1 steps).
Walk random_walk(const MagnitudeList& lengths, int dim, std::uint64_t seed);

} // namespace cbound::walk
