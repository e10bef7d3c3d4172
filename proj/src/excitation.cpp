#include "cbound/excitation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cbound::excite {

namespace {

void require_particles(double n, const char* who) {
    if (!std::isfinite(n) || n < 0.0) {
        throw std::domain_error(std::string(who) + ": particle number must be finite and >= 0");
    }
}

double sq(double x) { return x * x; }

} // namespace

double theta_from_particles(double particles) {
    require_particles(particles, "theta_from_particles");
    return std::asinh(std::sqrt(particles));
}

double particles_from_theta(double theta) {
    if (!std::isfinite(theta) || theta < 0.0) {
        throw std::domain_error("particles_from_theta: theta must be finite and >= 0");
    }
    if (theta > 350.0) {
        throw std::domain_error("particles_from_theta: sinh^2 overflows binary64 past 350");
    }
    return sq(std::sinh(theta));
}

BoundInterval two_event_bounds(double n1, double n2) {
    require_particles(n1, "two_event_bounds");
    require_particles(n2, "two_event_bounds");
    const double a = std::sqrt(n1 * (n2 + 1.0));
    const double b = std::sqrt(n2 * (n1 + 1.0));
    return BoundInterval(sq(a - b), sq(a + b));
}

double closed_form_upper_34(std::span<const double> events) {
    for (double n : events) require_particles(n, "closed_form_upper_34");
    if (events.size() == 3) {
        const double n1 = events[0], n2 = events[1], n3 = events[2];
        const double root = std::sqrt(n1 * (1.0 + n2) * (1.0 + n3)) +
                            std::sqrt(n2 * (1.0 + n3) * (1.0 + n1)) +
                            std::sqrt(n3 * (1.0 + n1) * (1.0 + n2)) + std::sqrt(n1 * n2 * n3);
        return sq(root);
    }
    if (events.size() == 4) {
        const double n1 = events[0], n2 = events[1], n3 = events[2], n4 = events[3];
        double root = 0.0;
        root += std::sqrt(n1 * (1.0 + n2) * (1.0 + n3) * (1.0 + n4));
        root += std::sqrt(n2 * (1.0 + n3) * (1.0 + n4) * (1.0 + n1));
        root += std::sqrt(n3 * (1.0 + n4) * (1.0 + n1) * (1.0 + n2));
        root += std::sqrt(n4 * (1.0 + n1) * (1.0 + n2) * (1.0 + n3));
        root += std::sqrt(n1 * n2 * n3 * (1.0 + n4));
        root += std::sqrt(n2 * n3 * n4 * (1.0 + n1));
        root += std::sqrt(n3 * n4 * n1 * (1.0 + n2));
        root += std::sqrt(n4 * n1 * n2 * (1.0 + n3));
        return sq(root);
    }
    throw std::domain_error("closed_form_upper_34: expects exactly 3 or 4 events");
}

BoundInterval theta_bounds(std::span<const double> events) {
    std::vector<double> thetas;
    thetas.reserve(events.size());
    for (double n : events) thetas.push_back(theta_from_particles(n));
    return bound_interval(MagnitudeList(std::move(thetas)));
}

BoundInterval n_event_bounds(std::span<const double> events) {
    const BoundInterval th = theta_bounds(events);
    return BoundInterval(particles_from_theta(th.lo), particles_from_theta(th.hi));
}

} // namespace cbound::excite
