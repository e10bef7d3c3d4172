#pragma once

#include <cstddef>
#include <vector>

namespace cbound {

// Ordered list of nonnegative composition magnitudes. The same container
// carries Euclidean step lengths, rapidities, or transfer-matrix angles;
// everything in this header is agnostic to which.
class MagnitudeList {
public:
    // Requires at least one entry, every entry finite and >= 0, and a
    // finite total (the total is the upper bound, so it must not overflow).
    explicit MagnitudeList(std::vector<double> values);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

private:
    std::vector<double> values_;
};

// Validated [lo, hi] with 0 <= lo <= hi.
struct BoundInterval {
    BoundInterval(double lo_in, double hi_in);

    double lo;
    double hi;

    double width() const noexcept { return hi - lo; }
    bool contains(double x, double tol = 0.0) const noexcept {
        return x >= lo - tol && x <= hi + tol;
    }
};

/// Two-step interval [|a-b|, a+b]; a, b >= 0 and finite.
BoundInterval pairwise_interval(double a, double b);

/// Upper bound M: the plain total of the magnitudes.
double upper_total(const MagnitudeList& mags);

/// Lower bound via the step-by-step recursion
/// m_1 = l_1,  m_{j+1} = max{ l_{j+1} - M_j,  m_j - l_{j+1},  0 }.
double lower_iterative(const MagnitudeList& mags);

/// Lower bound in closed form: max{ 2*peak - total, 0 }. Agrees with
/// lower_iterative to the last place; both are exposed so the equivalence
/// stays testable.
double lower_closed(const MagnitudeList& mags);

/// [lower_closed, upper_total].
BoundInterval bound_interval(const MagnitudeList& mags);

/// True iff every magnitude is at most the sum of the others (the n-gon
/// closure condition). Only the peak entry can violate, so this is exactly
/// lower_closed == 0; requires length >= 2.
bool polygon_satisfied(const MagnitudeList& mags);

/// Partial-resultant targets t_1..t_n with t_1 = mags[0], t_n = target,
/// every consecutive pair reachable in one step and every prefix value
/// inside its own bound interval. Backward propagation clamps t_{j+1} to
/// the nearest point of the feasible intersection, so the output is
/// deterministic. Throws std::domain_error (reporting the interval) if
/// target lies outside bound_interval(mags) beyond roundoff slack.
std::vector<double> plan_chain_targets(const MagnitudeList& mags, double target);

} // namespace cbound
