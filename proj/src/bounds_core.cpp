#include "cbound/bounds_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cbound/errors.hpp"

namespace cbound {

namespace {

void require_magnitude(double x, const char* who) {
    if (!std::isfinite(x) || x < 0.0) {
        std::ostringstream os;
        os << who << ": magnitudes must be finite and >= 0, got " << x;
        throw std::domain_error(os.str());
    }
}

} // namespace

MagnitudeList::MagnitudeList(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::domain_error("MagnitudeList: need at least one magnitude");
    double sum = 0.0;
    for (double x : values_) {
        require_magnitude(x, "MagnitudeList");
        sum += x;
    }
    if (!std::isfinite(sum)) throw std::domain_error("MagnitudeList: total overflows binary64");
}

BoundInterval::BoundInterval(double lo_in, double hi_in) : lo(lo_in), hi(hi_in) {
    if (!(0.0 <= lo && lo <= hi)) {
        std::ostringstream os;
        os << "BoundInterval: need 0 <= lo <= hi, got [" << lo << ", " << hi << "]";
        throw std::domain_error(os.str());
    }
}

BoundInterval pairwise_interval(double a, double b) {
    require_magnitude(a, "pairwise_interval");
    require_magnitude(b, "pairwise_interval");
    return BoundInterval(std::fabs(a - b), a + b);
}

double upper_total(const MagnitudeList& mags) {
    double sum = 0.0;
    for (double x : mags.values()) sum += x;
    return sum;
}

double lower_iterative(const MagnitudeList& mags) {
    const auto& v = mags.values();
    double m = v[0];
    double prefix_total = v[0];
    for (std::size_t j = 1; j < v.size(); ++j) {
        m = std::max({v[j] - prefix_total, m - v[j], 0.0});
        prefix_total += v[j];
    }
    return m;
}

double lower_closed(const MagnitudeList& mags) {
    double sum = 0.0;
    double peak = 0.0;
    for (double x : mags.values()) {
        sum += x;
        peak = std::max(peak, x);
    }
    return std::max(2.0 * peak - sum, 0.0);
}

BoundInterval bound_interval(const MagnitudeList& mags) {
    return BoundInterval(lower_closed(mags), upper_total(mags));
}

bool polygon_satisfied(const MagnitudeList& mags) {
    if (mags.size() < 2) {
        throw std::domain_error("polygon_satisfied: undefined for fewer than 2 magnitudes");
    }
    // l_i <= sum_{j != i} l_j  <=>  2 l_i <= total, and only the peak can
    // fail that; sharing lower_closed keeps the equivalence bit-exact.
    return lower_closed(mags) == 0.0;
}

std::vector<double> plan_chain_targets(const MagnitudeList& mags, double target) {
    const BoundInterval iv = bound_interval(mags);
    const double tol = 1e-9 * std::max(1.0, iv.hi);
    if (!(target >= iv.lo - tol && target <= iv.hi + tol)) {
        std::ostringstream os;
        os << "plan_chain_targets: target " << target << " outside attainable interval ["
           << iv.lo << ", " << iv.hi << "]";
        throw std::domain_error(os.str());
    }

    const auto& v = mags.values();
    const std::size_t n = v.size();

    // Prefix bounds, same fold order as lower_closed/upper_total.
    std::vector<double> pref_lo(n), pref_hi(n);
    {
        double sum = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += v[i];
            peak = std::max(peak, v[i]);
            pref_hi[i] = sum;
            pref_lo[i] = std::max(2.0 * peak - sum, 0.0);
        }
    }

    std::vector<double> t(n);
    t[n - 1] = std::clamp(target, pref_lo[n - 1], pref_hi[n - 1]);
    for (std::size_t j = n - 1; j-- > 0;) {
        const double step = v[j + 1];
        double lo = std::max(pref_lo[j], std::fabs(t[j + 1] - step));
        double hi = std::min(pref_hi[j], t[j + 1] + step);
        if (lo > hi) {
            // Forced chains can cross by roundoff; a real gap is a bug.
            if (lo - hi > tol) {
                throw internal_error("plan_chain_targets: backward feasibility interval collapsed");
            }
            lo = hi = 0.5 * (lo + hi);
        }
        t[j] = std::clamp(t[j + 1], lo, hi);
    }
    // |x_1| = l_1 always; the loop gets there only up to the collapse slack.
    t[0] = v[0];
    return t;
}

} // namespace cbound
