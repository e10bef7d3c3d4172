#include "cbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cbound/bounds_core.hpp"
#include "cbound/errors.hpp"
#include "cbound/euclid_walk.hpp"
#include "cbound/excitation.hpp"
#include "cbound/numeric.hpp"
#include "cbound/relativity.hpp"
#include "cbound/rng.hpp"
#include "cbound/scattering.hpp"

namespace cbound::verify {

namespace {

constexpr double kPi = std::numbers::pi;

double scaled_tol(double tol, double hi) { return std::max(1e-12, tol * std::max(1.0, hi)); }

std::vector<scatter::BarrierSpec> to_specs(const std::vector<double>& transmissions) {
    std::vector<scatter::BarrierSpec> specs;
    specs.reserve(transmissions.size());
    for (double t : transmissions) specs.push_back(scatter::BarrierSpec::from_transmission(t));
    return specs;
}

// One containment observable drawn from the stream for (seed, index).
double sample_observable(Domain domain, const std::vector<double>& params,
                         std::uint64_t seed, std::uint64_t index) {
    switch (domain) {
    case Domain::walk: {
        const auto w = walk::random_walk(MagnitudeList(params), 3, rng::derive_seed(seed, index));
        return walk::resultant(w).norm;
    }
    case Domain::velocity: {
        auto eng = rng::substream(seed, index);
        std::vector<rel::RapidityVector> boosts;
        boosts.reserve(params.size());
        for (double v : params) {
            const auto axis = rng::unit_vector(eng, 3);
            boosts.emplace_back(rel::speed_to_rapidity(v),
                                std::array<double, 3>{axis[0], axis[1], axis[2]});
        }
        return rel::compose_boosts_extract_speed(boosts);
    }
    case Domain::barrier:
    case Domain::excitation: {
        auto eng = rng::substream(seed, index);
        std::vector<scatter::TransferMatrix> ms;
        ms.reserve(params.size());
        for (double p : params) {
            const double theta = (domain == Domain::barrier)
                                     ? scatter::BarrierSpec::from_transmission(p).theta()
                                     : excite::theta_from_particles(p);
            const double phi = rng::uniform(eng, -kPi, kPi);
            const double psi = rng::uniform(eng, -kPi, kPi);
            ms.push_back(scatter::from_theta_phases(theta, phi, psi));
        }
        const auto composed = scatter::compose_transfer(ms);
        if (domain == Domain::barrier) {
            return scatter::transmission_reflection(composed).transmission;
        }
        return std::norm(composed.beta()); // |beta|^2 = mean produced quanta
    }
    }
    throw std::invalid_argument("unreachable domain");
}

BoundInterval containment_interval(Domain domain, const std::vector<double>& params) {
    switch (domain) {
    case Domain::walk:
        return bound_interval(MagnitudeList(params));
    case Domain::velocity:
        return rel::speed_bounds(params);
    case Domain::barrier: {
        const auto specs = to_specs(params);
        return scatter::n_barrier_bounds(specs).transmission;
    }
    case Domain::excitation:
        return excite::n_event_bounds(params);
    }
    throw std::invalid_argument("unreachable domain");
}

struct Accumulator {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    std::uint64_t violations = 0;

    void merge(const Accumulator& o) {
        min = std::min(min, o.min);
        max = std::max(max, o.max);
        violations += o.violations;
    }
};

} // namespace

Domain parse_domain(std::string_view tag) {
    if (tag == "walk") return Domain::walk;
    if (tag == "velocity") return Domain::velocity;
    if (tag == "barrier") return Domain::barrier;
    if (tag == "excitation") return Domain::excitation;
    throw std::invalid_argument("unknown domain tag: " + std::string(tag));
}

std::string_view domain_name(Domain d) {
    switch (d) {
    case Domain::walk: return "walk";
    case Domain::velocity: return "velocity";
    case Domain::barrier: return "barrier";
    case Domain::excitation: return "excitation";
    }
    return "?";
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["domain"] = domain;
    j["check"] = check;
    j["samples"] = samples;
    j["seed"] = seed;
    j["violations"] = violations;
    j["observed_min"] = observed_min;
    j["observed_max"] = observed_max;
    j["bound"] = {{"lo", bound_lo}, {"hi", bound_hi}};
    j["max_saturation_gap"] = max_saturation_gap;
    return j.dump();
}

VerificationReport mc_containment(Domain domain, const std::vector<double>& params,
                                  std::uint64_t samples, std::uint64_t seed, double tol,
                                  int threads) {
    if (samples < 1) throw std::domain_error("mc_containment: samples must be >= 1");
    if (threads < 1) throw std::domain_error("mc_containment: threads must be >= 1");

    const BoundInterval iv = containment_interval(domain, params);
    const double tol_eff = scaled_tol(tol, iv.hi);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, Accumulator& acc) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const double x = sample_observable(domain, params, seed, i);
            acc.min = std::min(acc.min, x);
            acc.max = std::max(acc.max, x);
            if (!iv.contains(x, tol_eff)) ++acc.violations;
        }
    };

    Accumulator total;
    const auto n_threads =
        static_cast<std::uint64_t>(std::min<std::uint64_t>(threads, samples));
    if (n_threads <= 1) {
        run_range(0, samples, total);
    } else {
        std::vector<Accumulator> parts(n_threads);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (samples + n_threads - 1) / n_threads;
        for (std::uint64_t t = 0; t < n_threads; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min(samples, begin + chunk);
            pool.emplace_back(run_range, begin, end, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
        // min/max/count merging commutes, so the aggregate is schedule-free
        for (const auto& p : parts) total.merge(p);
    }

    VerificationReport rep;
    rep.domain = std::string(domain_name(domain));
    rep.check = "containment";
    rep.samples = samples;
    rep.seed = seed;
    rep.violations = total.violations;
    rep.observed_min = total.min;
    rep.observed_max = total.max;
    rep.bound_lo = iv.lo;
    rep.bound_hi = iv.hi;
    rep.max_saturation_gap = 0.0;
    return rep;
}

VerificationReport saturation_check(Domain domain, const std::vector<double>& params,
                                    int grid_points, double tol) {
    if (grid_points < 2) throw std::domain_error("saturation_check: grid_points must be >= 2");

    // Plan in the coordinate the planner natively controls: displacement
    // for walks, speed for velocities, theta for barriers and excitations.
    BoundInterval iv = [&] {
        switch (domain) {
        case Domain::walk: return bound_interval(MagnitudeList(params));
        case Domain::velocity: return rel::speed_bounds(params);
        case Domain::barrier: {
            const auto specs = to_specs(params);
            return scatter::theta_bounds(specs);
        }
        case Domain::excitation: return excite::theta_bounds(params);
        }
        throw std::invalid_argument("unreachable domain");
    }();

    std::vector<double> thetas_for_plan;
    if (domain == Domain::barrier) {
        for (const auto& s : to_specs(params)) thetas_for_plan.push_back(s.theta());
    } else if (domain == Domain::excitation) {
        for (double n : params) thetas_for_plan.push_back(excite::theta_from_particles(n));
    }

    auto achieve = [&](double target) -> double {
        switch (domain) {
        case Domain::walk:
            return walk::resultant(walk::plan_angles(MagnitudeList(params), target)).norm;
        case Domain::velocity:
            return rel::compose_planned(params, rel::plan_relative_angles(params, target));
        case Domain::barrier:
        case Domain::excitation: {
            const MagnitudeList tl(thetas_for_plan);
            const auto phases = scatter::plan_phases(tl, target);
            std::vector<scatter::TransferMatrix> ms;
            ms.reserve(phases.size());
            for (std::size_t k = 0; k < phases.size(); ++k) {
                ms.push_back(scatter::from_theta_phases(tl[k], phases[k].first,
                                                        phases[k].second));
            }
            return scatter::compose_transfer(ms).theta();
        }
        }
        throw std::invalid_argument("unreachable domain");
    };

    const double tol_eff = scaled_tol(tol, iv.hi);
    VerificationReport rep;
    rep.domain = std::string(domain_name(domain));
    rep.check = "saturation";
    rep.samples = static_cast<std::uint64_t>(grid_points);
    rep.seed = 0;
    rep.bound_lo = iv.lo;
    rep.bound_hi = iv.hi;

    double obs_min = std::numeric_limits<double>::infinity();
    double obs_max = -std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int k = 0; k < grid_points; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(grid_points - 1);
        const double target = iv.lo + frac * (iv.hi - iv.lo);
        const double achieved = achieve(target);
        obs_min = std::min(obs_min, achieved);
        obs_max = std::max(obs_max, achieved);
        const double gap = std::fabs(achieved - target);
        worst = std::max(worst, gap);
        if (gap > tol_eff) ++rep.violations;
    }
    rep.observed_min = obs_min;
    rep.observed_max = obs_max;
    rep.max_saturation_gap = worst;
    return rep;
}

VerificationReport cross_formula_check(Domain domain, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("cross_formula_check: trials must be >= 1");

    auto trial_deviation = [&](std::uint64_t i) -> double {
        auto eng = rng::substream(seed, i);
        switch (domain) {
        case Domain::walk: {
            const int n = 1 + static_cast<int>(eng() % 16);
            std::vector<double> vals(static_cast<std::size_t>(n));
            for (auto& v : vals) {
                v = (rng::uniform(eng, 0.0, 1.0) < 0.1) ? 0.0 : rng::uniform(eng, 0.0, 100.0);
            }
            const MagnitudeList mags(vals);
            const double a = lower_iterative(mags);
            const double b = lower_closed(mags);
            return std::fabs(a - b) / std::max(1.0, upper_total(mags));
        }
        case Domain::velocity: {
            const int n = 3 + static_cast<int>(eng() % 2);
            std::vector<double> v(static_cast<std::size_t>(n));
            std::vector<rel::Speed> sp;
            double zeta_sum = 0.0;
            for (auto& x : v) {
                x = std::tanh(rng::uniform(eng, -2.0, 2.0));
                sp.emplace_back(x);
                zeta_sum += std::atanh(x);
            }
            const double fold = rel::collinear_chain(sp).value;
            const double closed = (n == 3) ? rel::collinear_three(v[0], v[1], v[2])
                                           : rel::collinear_four(v[0], v[1], v[2], v[3]);
            const double via_rapidity = std::tanh(zeta_sum);
            return std::max(num::rel_gap(fold, closed), num::rel_gap(fold, via_rapidity));
        }
        case Domain::barrier: {
            const int n = 2 + static_cast<int>(eng() % 3);
            std::vector<scatter::BarrierSpec> specs;
            double theta_sum = 0.0;
            for (int k = 0; k < n; ++k) {
                const double t = std::pow(10.0, rng::uniform(eng, -6.0, 0.0));
                specs.push_back(scatter::BarrierSpec::from_transmission(t));
                theta_sum += specs.back().theta();
            }
            if (n == 2) {
                const auto tb = scatter::two_barrier_bounds(specs[0], specs[1]);
                const double d = std::fabs(specs[0].theta() - specs[1].theta());
                double dev = num::rel_gap(tb.transmission.lo,
                                          scatter::transmission_from_theta(theta_sum));
                dev = std::max(dev, num::rel_gap(tb.transmission.hi,
                                                 scatter::transmission_from_theta(d)));
                dev = std::max(dev, num::rel_gap(tb.reflection.lo,
                                                 scatter::reflection_from_theta(d)));
                dev = std::max(dev, num::rel_gap(tb.reflection.hi,
                                                 scatter::reflection_from_theta(theta_sum)));
                return dev;
            }
            const auto cf = scatter::closed_form_bounds_34(specs);
            double dev = num::rel_gap(cf.transmission_lower,
                                      scatter::transmission_from_theta(theta_sum));
            dev = std::max(dev, num::rel_gap(cf.reflection_upper,
                                             scatter::reflection_from_theta(theta_sum)));
            return dev;
        }
        case Domain::excitation: {
            const int n = 2 + static_cast<int>(eng() % 3);
            std::vector<double> ev(static_cast<std::size_t>(n));
            double theta_sum = 0.0;
            for (auto& x : ev) {
                x = (rng::uniform(eng, 0.0, 1.0) < 0.1) ? 0.0 : rng::uniform(eng, 0.0, 1e4);
                theta_sum += excite::theta_from_particles(x);
            }
            if (n == 2) {
                const auto tb = excite::two_event_bounds(ev[0], ev[1]);
                const double d =
                    std::fabs(excite::theta_from_particles(ev[0]) -
                              excite::theta_from_particles(ev[1]));
                double dev = num::rel_gap(tb.lo, excite::particles_from_theta(d));
                dev = std::max(dev,
                               num::rel_gap(tb.hi, excite::particles_from_theta(theta_sum)));
                return dev;
            }
            const double upper = excite::closed_form_upper_34(ev);
            return num::rel_gap(upper, excite::particles_from_theta(theta_sum));
        }
        }
        throw std::invalid_argument("unreachable domain");
    };

    constexpr double kTol = 1e-12;
    VerificationReport rep;
    rep.domain = std::string(domain_name(domain));
    rep.check = "cross_formula";
    rep.samples = trials;
    rep.seed = seed;
    rep.bound_lo = 0.0;
    rep.bound_hi = kTol;

    double dev_min = std::numeric_limits<double>::infinity();
    double dev_max = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const double dev = trial_deviation(i);
        dev_min = std::min(dev_min, dev);
        dev_max = std::max(dev_max, dev);
        if (dev > kTol) ++rep.violations;
    }
    rep.observed_min = dev_min;
    rep.observed_max = dev_max;
    rep.max_saturation_gap = dev_max;
    return rep;
}

} // namespace cbound::verify
