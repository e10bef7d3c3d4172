// cbound: interval bounds for compound processes (walks, relativistic
// velocity chains, multi-barrier scattering, parametric excitation),
// with seeded Monte Carlo containment and constructive saturation checks.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbound/bounds_core.hpp"
#include "cbound/errors.hpp"
#include "cbound/euclid_walk.hpp"
#include "cbound/excitation.hpp"
#include "cbound/relativity.hpp"
#include "cbound/scattering.hpp"
#include "cbound/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerification = 4;

// Inline JSON array, or @path to read the array from a file.
std::vector<double> parse_number_list(const std::string& payload, const char* flag) {
    std::string text = payload;
    if (!payload.empty() && payload.front() == '@') {
        std::ifstream in(payload.substr(1));
        if (!in) {
            throw std::invalid_argument(std::string(flag) + ": cannot read file " +
                                        payload.substr(1));
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string(flag) + ": malformed JSON: " + e.what());
    }
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument(std::string(flag) + ": expected a non-empty JSON array");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw std::invalid_argument(std::string(flag) + ": array entries must be numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

ordered_json interval_json(const cbound::BoundInterval& iv) {
    return ordered_json{{"lo", iv.lo}, {"hi", iv.hi}};
}

ordered_json walk_json(const cbound::walk::Walk& w) {
    ordered_json lengths = ordered_json::array();
    ordered_json directions = ordered_json::array();
    for (const auto& s : w.steps()) {
        lengths.push_back(s.length);
        directions.push_back(s.direction);
    }
    return ordered_json{{"lengths", lengths},
                        {"directions", directions},
                        {"dim", w.dimension()}};
}

void print_table(const ordered_json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            print_table(value, prefix.empty() ? key : prefix + "." + key, os);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            print_table(j[i], prefix + "[" + std::to_string(i) + "]", os);
        }
    } else {
        os << prefix << "\t" << j.dump() << "\n";
    }
}

void emit(const ordered_json& out, bool table) {
    if (table) {
        print_table(out, "", std::cout);
    } else {
        std::cout << out.dump() << "\n";
    }
}

struct CommonFlags {
    std::uint64_t seed = 0;
    std::uint64_t samples = 10000;
    double tol = 1e-9;
    int grid = 11;
    int threads = 1;
    bool table = false;
};

int run_walk(const std::string& lengths_str, bool has_target, double target, bool table) {
    const cbound::MagnitudeList mags(parse_number_list(lengths_str, "--lengths"));
    const auto iv = cbound::bound_interval(mags);

    ordered_json out;
    out["interval"] = interval_json(iv);
    if (mags.size() >= 2) {
        out["polygon"] = cbound::polygon_satisfied(mags);
    } else {
        out["polygon"] = nullptr; // undefined for a single step
    }
    if (has_target) {
        const auto w = cbound::walk::plan_angles(mags, target);
        ordered_json plan;
        plan["target"] = target;
        plan["walk"] = walk_json(w);
        plan["achieved"] = cbound::walk::resultant(w).norm;
        out["plan"] = plan;
    }
    emit(out, table);
    return kExitOk;
}

int run_velocity(const std::string& speeds_str, bool collinear, bool has_target, double target,
                 bool table) {
    const auto speeds = parse_number_list(speeds_str, "--speeds");
    ordered_json out;
    if (collinear) {
        std::vector<cbound::rel::Speed> sp;
        sp.reserve(speeds.size());
        for (double v : speeds) sp.emplace_back(v);
        const double composed = cbound::rel::collinear_chain(sp).value;
        out["composed"] = composed;
        out["rapidity"] = std::atanh(composed);
    } else {
        const auto iv = cbound::rel::speed_bounds(speeds);
        std::vector<double> zetas;
        zetas.reserve(speeds.size());
        for (double v : speeds) zetas.push_back(cbound::rel::speed_to_rapidity(v));
        const auto zi = cbound::bound_interval(cbound::MagnitudeList(zetas));
        out["interval"] = interval_json(iv);
        out["rapidity_interval"] = interval_json(zi);
        if (has_target) {
            const auto angles = cbound::rel::plan_relative_angles(speeds, target);
            ordered_json plan;
            plan["target"] = target;
            plan["angles"] = angles;
            plan["achieved"] = cbound::rel::compose_planned(speeds, angles);
            out["plan"] = plan;
        }
    }
    emit(out, table);
    return kExitOk;
}

std::vector<cbound::scatter::BarrierSpec> barrier_specs(const std::string& t_str,
                                                        const std::string& theta_str) {
    std::vector<cbound::scatter::BarrierSpec> specs;
    if (!t_str.empty()) {
        for (double t : parse_number_list(t_str, "--T")) {
            specs.push_back(cbound::scatter::BarrierSpec::from_transmission(t));
        }
    } else {
        for (double th : parse_number_list(theta_str, "--theta")) {
            specs.push_back(cbound::scatter::BarrierSpec::from_transmission(
                cbound::scatter::transmission_from_theta(th)));
        }
    }
    return specs;
}

int run_barriers(const std::string& t_str, const std::string& theta_str, bool has_target,
                 double target_theta, bool table) {
    if (t_str.empty() == theta_str.empty()) {
        throw std::invalid_argument("barriers: provide exactly one of --T or --theta");
    }
    const auto specs = barrier_specs(t_str, theta_str);
    const auto tr = cbound::scatter::n_barrier_bounds(specs);
    const auto th = cbound::scatter::theta_bounds(specs);

    ordered_json out;
    out["T"] = interval_json(tr.transmission);
    out["R"] = interval_json(tr.reflection);
    out["theta"] = interval_json(th);
    if (specs.size() == 2) {
        const auto cf = cbound::scatter::two_barrier_bounds(specs[0], specs[1]);
        out["closed_form"] = ordered_json{{"T_lo", cf.transmission.lo},
                                          {"T_hi", cf.transmission.hi},
                                          {"R_lo", cf.reflection.lo},
                                          {"R_hi", cf.reflection.hi}};
    } else if (specs.size() == 3 || specs.size() == 4) {
        const auto cf = cbound::scatter::closed_form_bounds_34(specs);
        out["closed_form"] = ordered_json{{"T_lo", cf.transmission_lower},
                                          {"R_hi", cf.reflection_upper}};
    }
    if (has_target) {
        std::vector<double> thetas;
        thetas.reserve(specs.size());
        for (const auto& s : specs) thetas.push_back(s.theta());
        const cbound::MagnitudeList tl(thetas);
        const auto phases = cbound::scatter::plan_phases(tl, target_theta);
        std::vector<cbound::scatter::TransferMatrix> ms;
        ordered_json phase_list = ordered_json::array();
        for (std::size_t k = 0; k < phases.size(); ++k) {
            ms.push_back(cbound::scatter::from_theta_phases(tl[k], phases[k].first,
                                                            phases[k].second));
            phase_list.push_back(ordered_json{{"phi", phases[k].first},
                                              {"psi", phases[k].second}});
        }
        const auto composed = cbound::scatter::compose_transfer(ms);
        ordered_json plan;
        plan["target_theta"] = target_theta;
        plan["phases"] = phase_list;
        plan["achieved_theta"] = composed.theta();
        plan["achieved_T"] = cbound::scatter::transmission_reflection(composed).transmission;
        out["plan"] = plan;
    }
    emit(out, table);
    return kExitOk;
}

int run_excitation(const std::string& n_str, const std::string& theta_str, bool table) {
    if (n_str.empty() == theta_str.empty()) {
        throw std::invalid_argument("excitation: provide exactly one of --N or --theta");
    }
    std::vector<double> events;
    if (!n_str.empty()) {
        events = parse_number_list(n_str, "--N");
        for (double n : events) {
            if (!(std::isfinite(n) && n >= 0.0)) {
                throw std::domain_error("excitation: N values must be finite and >= 0");
            }
        }
    } else {
        for (double th : parse_number_list(theta_str, "--theta")) {
            events.push_back(cbound::excite::particles_from_theta(th));
        }
    }
    const auto iv = cbound::excite::n_event_bounds(events);
    const auto th = cbound::excite::theta_bounds(events);

    ordered_json out;
    out["interval"] = interval_json(iv);
    out["theta"] = interval_json(th);
    if (events.size() == 2) {
        const auto cf = cbound::excite::two_event_bounds(events[0], events[1]);
        out["closed_form"] = interval_json(cf);
    } else if (events.size() == 3 || events.size() == 4) {
        out["closed_form"] =
            ordered_json{{"upper", cbound::excite::closed_form_upper_34(events)}};
    }
    emit(out, table);
    return kExitOk;
}

int run_verify(const std::string& domain_str, const std::string& check,
               const std::string& lengths_str, const std::string& speeds_str,
               const std::string& t_str, const std::string& n_str,
               const std::string& theta_str, const CommonFlags& flags) {
    const auto domain = cbound::verify::parse_domain(domain_str);

    std::vector<double> params;
    switch (domain) {
    case cbound::verify::Domain::walk:
        if (lengths_str.empty()) throw std::invalid_argument("verify walk: needs --lengths");
        params = parse_number_list(lengths_str, "--lengths");
        break;
    case cbound::verify::Domain::velocity:
        if (speeds_str.empty()) throw std::invalid_argument("verify velocity: needs --speeds");
        params = parse_number_list(speeds_str, "--speeds");
        break;
    case cbound::verify::Domain::barrier:
        if (t_str.empty() && theta_str.empty()) {
            throw std::invalid_argument("verify barrier: needs --T or --theta");
        }
        if (!t_str.empty()) {
            params = parse_number_list(t_str, "--T");
        } else {
            for (double th : parse_number_list(theta_str, "--theta")) {
                params.push_back(cbound::scatter::transmission_from_theta(th));
            }
        }
        break;
    case cbound::verify::Domain::excitation:
        if (n_str.empty() && theta_str.empty()) {
            throw std::invalid_argument("verify excitation: needs --N or --theta");
        }
        if (!n_str.empty()) {
            params = parse_number_list(n_str, "--N");
        } else {
            for (double th : parse_number_list(theta_str, "--theta")) {
                params.push_back(cbound::excite::particles_from_theta(th));
            }
        }
        break;
    }

    cbound::verify::VerificationReport rep;
    if (check == "containment") {
        rep = cbound::verify::mc_containment(domain, params, flags.samples, flags.seed,
                                             flags.tol, flags.threads);
    } else if (check == "saturation") {
        rep = cbound::verify::saturation_check(domain, params, flags.grid, flags.tol);
    } else if (check == "cross") {
        rep = cbound::verify::cross_formula_check(domain, flags.samples, flags.seed);
    } else {
        throw std::invalid_argument("verify: --check must be containment, saturation, or cross");
    }

    const auto j = ordered_json::parse(rep.to_json());
    emit(j, flags.table);
    return rep.passed() ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval bounds for compound processes"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string lengths_str, speeds_str, t_str, n_str, theta_str;
    std::string domain_str, check = "containment";
    double target = 0.0, target_theta = 0.0;
    bool collinear = false;

    auto* walk_cmd = app.add_subcommand("walk", "bounds on |resultant| of a compound walk");
    walk_cmd->add_option("--lengths", lengths_str, "JSON array of step lengths (or @file)")
        ->required();
    auto* walk_target = walk_cmd->add_option("--target", target, "plan a planar walk attaining this |resultant|");
    walk_cmd->add_flag("--table", flags.table, "tabular output");
    walk_cmd->add_flag("--json", "JSON output (default)");

    auto* vel_cmd = app.add_subcommand("velocity", "bounds on relativistic velocity composition");
    vel_cmd->add_option("--speeds", speeds_str, "JSON array of speeds in units of c (or @file)")
        ->required();
    vel_cmd->add_flag("--collinear", collinear,
                      "compose signed collinear speeds exactly instead of bounding");
    auto* vel_target = vel_cmd->add_option("--target", target, "plan boost angles attaining this speed");
    vel_cmd->add_flag("--table", flags.table, "tabular output");
    vel_cmd->add_flag("--json", "JSON output (default)");

    auto* bar_cmd = app.add_subcommand("barriers", "bounds on chained transmission/reflection");
    bar_cmd->add_option("--T", t_str, "JSON array of transmission probabilities (or @file)");
    bar_cmd->add_option("--theta", theta_str, "JSON array of hyperbolic angles (or @file)");
    auto* bar_target =
        bar_cmd->add_option("--target-theta", target_theta, "plan phases attaining this theta");
    bar_cmd->add_flag("--table", flags.table, "tabular output");
    bar_cmd->add_flag("--json", "JSON output (default)");

    auto* exc_cmd = app.add_subcommand("excitation", "bounds on chained particle production");
    exc_cmd->add_option("--N", n_str, "JSON array of mean produced quanta (or @file)");
    exc_cmd->add_option("--theta", theta_str, "JSON array of hyperbolic angles (or @file)");
    exc_cmd->add_flag("--table", flags.table, "tabular output");
    exc_cmd->add_flag("--json", "JSON output (default)");

    auto* ver_cmd = app.add_subcommand("verify", "seeded containment/saturation/identity checks");
    ver_cmd->add_option("--domain", domain_str, "walk | velocity | barrier | excitation")
        ->required();
    ver_cmd->add_option("--check", check, "containment (default) | saturation | cross");
    ver_cmd->add_option("--lengths", lengths_str, "walk step lengths (JSON array)");
    ver_cmd->add_option("--speeds", speeds_str, "speed magnitudes (JSON array)");
    ver_cmd->add_option("--T", t_str, "transmission probabilities (JSON array)");
    ver_cmd->add_option("--N", n_str, "mean produced quanta (JSON array)");
    ver_cmd->add_option("--theta", theta_str, "hyperbolic angles (JSON array)");
    ver_cmd->add_option("--seed", flags.seed, "RNG seed (default 0)");
    ver_cmd->add_option("--samples", flags.samples, "Monte Carlo samples / trials (default 10000)");
    ver_cmd->add_option("--tol", flags.tol, "tolerance (default 1e-9, scaled by the interval)");
    ver_cmd->add_option("--grid", flags.grid, "saturation grid points (default 11)");
    ver_cmd->add_option("--threads", flags.threads, "sampling threads (default 1)");
    ver_cmd->add_flag("--table", flags.table, "tabular output");
    ver_cmd->add_flag("--json", "JSON output (default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (walk_cmd->parsed()) {
            return run_walk(lengths_str, walk_target->count() > 0, target, flags.table);
        }
        if (vel_cmd->parsed()) {
            return run_velocity(speeds_str, collinear, vel_target->count() > 0, target,
                                flags.table);
        }
        if (bar_cmd->parsed()) {
            return run_barriers(t_str, theta_str, bar_target->count() > 0, target_theta,
                                flags.table);
        }
        if (exc_cmd->parsed()) {
            return run_excitation(n_str, theta_str, flags.table);
        }
        if (ver_cmd->parsed()) {
            if (flags.grid < 2) throw std::invalid_argument("verify: --grid must be >= 2");
            if (flags.threads < 1) throw std::invalid_argument("verify: --threads must be >= 1");
            if (flags.samples < 1) throw std::invalid_argument("verify: --samples must be >= 1");
            return run_verify(domain_str, check, lengths_str, speeds_str, t_str, n_str,
                              theta_str, flags);
        }
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cbound::internal_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
