#include "cbound/euclid_walk.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cbound/numeric.hpp"
#include "cbound/rng.hpp"

namespace cbound::walk {

namespace {

double norm_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

} // namespace

Step::Step(double length_in, std::vector<double> direction_in)
    : length(length_in), direction(std::move(direction_in)) {
    if (!std::isfinite(length) || length < 0.0) {
        throw std::domain_error("Step: length must be finite and >= 0");
    }
    if (direction.empty()) throw std::domain_error("Step: direction needs dimension >= 1");
    const double n = norm_of(direction);
    if (!std::isfinite(n) || std::fabs(n - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "Step: direction must be a unit vector (|n| = " << n << ")";
        throw std::domain_error(os.str());
    }
}

Walk::Walk(std::vector<Step> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw std::domain_error("Walk: need at least one step");
    const std::size_t d = steps_.front().direction.size();
    for (const auto& s : steps_) {
        if (s.direction.size() != d) {
            throw std::domain_error("Walk: steps mix ambient dimensions");
        }
    }
}

MagnitudeList Walk::lengths() const {
    std::vector<double> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(s.length);
    return MagnitudeList(std::move(out));
}

Resultant resultant(const Walk& w) {
    std::vector<double> x(w.dimension(), 0.0);
    for (const auto& s : w.steps()) {
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += s.direction[k] * s.length;
    }
    const double n = norm_of(x);
    return Resultant{std::move(x), n};
}

BoundInterval displacement_bounds(const MagnitudeList& lengths) {
    return bound_interval(lengths);
}

Walk plan_angles(const MagnitudeList& lengths, double target) {
    const auto targets = plan_chain_targets(lengths, target);
    const std::size_t n = lengths.size();

    std::vector<Step> steps;
    steps.reserve(n);
    double px = 0.0, py = 0.0; // running position
    double ux = 1.0, uy = 0.0; // unit direction of the running resultant

    for (std::size_t j = 0; j < n; ++j) {
        double dx = 1.0, dy = 0.0;
        if (j == 0) {
            // first step along +x; |x_1| = l_1 = targets[0]
        } else {
            const double tj = targets[j - 1];
            const double len = lengths[j];
            double c = 1.0; // angle 0 is as good as any when a factor vanishes
            if (tj > 0.0 && len > 0.0) {
                c = (targets[j] * targets[j] - tj * tj - len * len) / (2.0 * tj * len);
                c = num::clamp_cosine(c);
            }
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            dx = c * ux - s * uy;
            dy = s * ux + c * uy;
        }
        px += lengths[j] * dx;
        py += lengths[j] * dy;
        steps.emplace_back(lengths[j], std::vector<double>{dx, dy});

        const double pn = std::hypot(px, py);
        if (pn > 1e-300) {
            ux = px / pn;
            uy = py / pn;
        }
    }
    return Walk(std::move(steps));
}

Walk random_walk(const MagnitudeList& lengths, int dim, std::uint64_t seed) {
    if (dim < 2) {
        throw std::domain_error("random_walk: dim must be >= 2 (1D attainable set is discrete)");
    }
    std::vector<Step> steps;
    steps.reserve(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        auto eng = rng::substream(seed, i);
        steps.emplace_back(lengths[i], rng::unit_vector(eng, dim));
    }
    return Walk(std::move(steps));
}

} // namespace cbound::walk
