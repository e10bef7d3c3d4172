#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cbound::verify {

enum class Domain { walk, velocity, barrier, excitation };

/// Throws std::invalid_argument (a usage error, not a domain error) on an
/// unknown tag.
Domain parse_domain(std::string_view tag);
std::string_view domain_name(Domain d);

// Outcome of one verification pass. The observable depends on the domain
// and check: |resultant| / speed / T / N for containment, and the planner's
// native coordinate for saturation (displacement, speed, or theta).
struct VerificationReport {
    std::string domain;
    std::string check;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t violations = 0;
    double observed_min = 0.0;
    double observed_max = 0.0;
    double bound_lo = 0.0;
    double bound_hi = 0.0;
    double max_saturation_gap = 0.0;

    bool passed() const noexcept { return violations == 0; }

    /// Stable field order; identical reports serialize byte-identically.
    std::string to_json() const;
};

/// Sample `samples` random configurations (walk directions on S^2, boost
/// axes, or junction phases) and count results outside the bound interval
/// beyond tol (scaled by the interval magnitude, floored at 1e-12).
/// Sample i draws from a stream derived from (seed, i) alone, so any
/// thread count yields the identical report.
VerificationReport mc_containment(Domain domain, const std::vector<double>& params,
                                  std::uint64_t samples, std::uint64_t seed, double tol = 1e-9,
                                  int threads = 1);

/// Run the domain planner against grid_points uniform targets across the
/// bound interval and record the worst |achieved - target|. Saturating the
/// whole interval certifies the bounds are tight.
VerificationReport saturation_check(Domain domain, const std::vector<double>& params,
                                    int grid_points, double tol = 1e-9);

/// Per trial, compare the explicit closed-form bound formulas against
/// their hyperbolic-image counterparts (or the iterative against the
/// closed lower bound, for walks) on random inputs.
VerificationReport cross_formula_check(Domain domain, std::uint64_t trials, std::uint64_t seed);

} // namespace cbound::verify
