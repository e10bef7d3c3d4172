#include "cbound/scattering.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cbound/errors.hpp"
#include "cbound/numeric.hpp"

namespace cbound::scatter {

namespace {

constexpr double kUnitarityTol = 1e-10;

double sq(double x) { return x * x; }

void require_theta(double theta, const char* who) {
    if (!std::isfinite(theta) || theta < 0.0) {
        throw std::domain_error(std::string(who) + ": theta must be finite and >= 0");
    }
    if (theta > kMaxTheta) {
        std::ostringstream os;
        os << who << ": theta " << theta << " exceeds " << kMaxTheta
           << " (cosh^2 overflows binary64)";
        throw std::domain_error(os.str());
    }
}

} // namespace

TransferMatrix::TransferMatrix(std::complex<double> alpha, std::complex<double> beta)
    : alpha_(alpha), beta_(beta) {
    if (!(unitarity_defect() <= kUnitarityTol)) {
        throw std::domain_error("TransferMatrix: |alpha|^2 - |beta|^2 = 1 violated");
    }
}

TransferMatrix TransferMatrix::identity() { return TransferMatrix(1.0, 0.0); }

double TransferMatrix::theta() const noexcept {
    return std::acosh(std::max(std::abs(alpha_), 1.0));
}

double TransferMatrix::phi() const noexcept { return std::arg(alpha_); }

double TransferMatrix::psi() const noexcept {
    if (std::abs(beta_) == 0.0) return 0.0;
    return std::arg(beta_);
}

double TransferMatrix::unitarity_defect() const noexcept {
    const double a2 = std::norm(alpha_);
    const double b2 = std::norm(beta_);
    return std::fabs(a2 - b2 - 1.0) / std::max(1.0, a2);
}

BarrierSpec BarrierSpec::from_transmission(double transmission) {
    if (!std::isfinite(transmission) || transmission < 0.0 || transmission > 1.0) {
        throw std::domain_error("BarrierSpec: transmission must lie in (0, 1]");
    }
    if (transmission == 0.0) {
        throw std::domain_error(
            "BarrierSpec: T = 0 is an opaque barrier; its theta diverges and all composed "
            "bounds trivialize");
    }
    return BarrierSpec(transmission, 1.0 - transmission);
}

BarrierSpec BarrierSpec::from_reflection(double reflection) {
    if (!std::isfinite(reflection) || reflection < 0.0 || reflection >= 1.0) {
        throw std::domain_error("BarrierSpec: reflection must lie in [0, 1)");
    }
    return BarrierSpec(1.0 - reflection, reflection);
}

double BarrierSpec::theta() const { return std::asinh(std::sqrt(reflection / transmission)); }

TransferMatrix from_theta_phases(double theta, double phi, double psi) {
    require_theta(theta, "from_theta_phases");
    const std::complex<double> alpha = std::polar(std::cosh(theta), phi);
    const std::complex<double> beta = std::polar(std::sinh(theta), psi);
    return TransferMatrix(alpha, beta);
}

TransferMatrix compose_transfer(std::span<const TransferMatrix> ms) {
    std::complex<double> a = 1.0, b = 0.0;
    for (const auto& m : ms) {
        // [[a, b*], [b, a*]] * [[a2, b2*], [b2, a2*]]
        const std::complex<double> a2 = m.alpha(), b2 = m.beta();
        const std::complex<double> na = a * a2 + std::conj(b) * b2;
        const std::complex<double> nb = b * a2 + std::conj(a) * b2;
        a = na;
        b = nb;
    }
    TransferMatrix out(a, b, TransferMatrix::unchecked_t{});
    if (!(out.unitarity_defect() <= kUnitarityTol)) {
        throw internal_error("compose_transfer: SU(1,1) invariant drifted past tolerance");
    }
    return out;
}

TransmissionReflection transmission_reflection(const TransferMatrix& m) {
    const double th = m.theta();
    return TransmissionReflection{transmission_from_theta(th), reflection_from_theta(th)};
}

double transmission_from_theta(double theta) {
    if (!std::isfinite(theta) || theta < 0.0) {
        throw std::domain_error("transmission_from_theta: theta must be finite and >= 0");
    }
    if (theta <= 20.0) {
        return sq(1.0 / std::cosh(theta));
    }
    // sech^2 = 4 e^{-2 theta} / (1 + e^{-2 theta})^2; exact same quantity,
    // no cosh overflow for large theta.
    const double e = std::exp(-2.0 * theta);
    return 4.0 * e / sq(1.0 + e);
}

double reflection_from_theta(double theta) {
    if (!std::isfinite(theta) || theta < 0.0) {
        throw std::domain_error("reflection_from_theta: theta must be finite and >= 0");
    }
    const double r = sq(std::tanh(theta));
    return (r >= 1.0) ? num::below_one() : r;
}

TRBounds two_barrier_bounds(const BarrierSpec& b1, const BarrierSpec& b2) {
    const double t1 = b1.transmission, t2 = b2.transmission;
    const double s = std::sqrt(b1.reflection * b2.reflection); // sqrt(R1 R2)
    const double one_plus = 1.0 + s;
    const double one_minus = (t1 + t2 - t1 * t2) / one_plus; // 1 - s, cancellation-free

    const double t_lo = t1 * t2 / sq(one_plus);
    const double t_hi = std::min(1.0, t1 * t2 / sq(one_minus));

    const double u = std::sqrt(b1.reflection), w = std::sqrt(b2.reflection);
    const double r_lo = sq((u - w) / one_minus);
    const double r_hi = std::min(1.0, sq((u + w) / one_plus));

    return TRBounds{BoundInterval(t_lo, t_hi), BoundInterval(r_lo, r_hi)};
}

ClosedForm34 closed_form_bounds_34(std::span<const BarrierSpec> specs) {
    if (specs.size() == 3) {
        const double r1 = specs[0].reflection, r2 = specs[1].reflection, r3 = specs[2].reflection;
        const double den = 1.0 + std::sqrt(r2 * r3) + std::sqrt(r3 * r1) + std::sqrt(r1 * r2);
        const double t_lower =
            specs[0].transmission * specs[1].transmission * specs[2].transmission / sq(den);
        const double r_upper =
            sq((std::sqrt(r1 * r2 * r3) + std::sqrt(r1) + std::sqrt(r2) + std::sqrt(r3)) / den);
        return ClosedForm34{t_lower, std::min(1.0, r_upper)};
    }
    if (specs.size() == 4) {
        const double r1 = specs[0].reflection, r2 = specs[1].reflection;
        const double r3 = specs[2].reflection, r4 = specs[3].reflection;
        double pair_sum = 0.0;
        pair_sum += std::sqrt(r1 * r2) + std::sqrt(r1 * r3) + std::sqrt(r1 * r4);
        pair_sum += std::sqrt(r2 * r3) + std::sqrt(r2 * r4) + std::sqrt(r3 * r4);
        const double den = 1.0 + pair_sum + std::sqrt(r1 * r2 * r3 * r4);
        const double t_lower = specs[0].transmission * specs[1].transmission *
                               specs[2].transmission * specs[3].transmission / sq(den);
        const double singles = std::sqrt(r1) + std::sqrt(r2) + std::sqrt(r3) + std::sqrt(r4);
        const double triples = std::sqrt(r2 * r3 * r4) + std::sqrt(r3 * r4 * r1) +
                               std::sqrt(r4 * r1 * r2) + std::sqrt(r1 * r2 * r3);
        const double r_upper = sq((singles + triples) / den);
        return ClosedForm34{t_lower, std::min(1.0, r_upper)};
    }
    throw std::domain_error("closed_form_bounds_34: expects exactly 3 or 4 barriers");
}

BoundInterval theta_bounds(std::span<const BarrierSpec> specs) {
    std::vector<double> thetas;
    thetas.reserve(specs.size());
    for (const auto& s : specs) thetas.push_back(s.theta());
    return bound_interval(MagnitudeList(std::move(thetas)));
}

TRBounds n_barrier_bounds(std::span<const BarrierSpec> specs) {
    const BoundInterval th = theta_bounds(specs);
    // sech^2 is antitone in theta, tanh^2 is monotone.
    return TRBounds{
        BoundInterval(transmission_from_theta(th.hi), transmission_from_theta(th.lo)),
        BoundInterval(reflection_from_theta(th.lo), reflection_from_theta(th.hi))};
}

std::vector<std::pair<double, double>> plan_phases(const MagnitudeList& thetas,
                                                   double target_theta) {
    for (double th : thetas.values()) require_theta(th, "plan_phases");
    const auto targets = plan_chain_targets(thetas, target_theta);

    std::vector<std::pair<double, double>> phases;
    phases.reserve(thetas.size());
    phases.emplace_back(0.0, 0.0);
    TransferMatrix acc = from_theta_phases(thetas[0], 0.0, 0.0);

    for (std::size_t j = 1; j < thetas.size(); ++j) {
        const double th_acc = acc.theta();
        const double th_next = thetas[j];
        const double c_big = std::cosh(th_acc) * std::cosh(th_next);
        const double s_big = std::sinh(th_acc) * std::sinh(th_next);

        double delta = 0.0;
        if (s_big > 0.0) {
            const double cd = (sq(std::cosh(targets[j])) - sq(c_big) - sq(s_big)) /
                              (2.0 * c_big * s_big);
            delta = std::acos(num::clamp_cosine(cd));
        }
        // relative junction phase: delta = psi_next - psi_acc - phi_acc - phi_next
        const double psi_next =
            std::remainder(delta + acc.psi() + acc.phi(), 2.0 * std::numbers::pi);
        phases.emplace_back(0.0, psi_next);
        const TransferMatrix next = from_theta_phases(th_next, 0.0, psi_next);
        const TransferMatrix pair[] = {acc, next};
        acc = compose_transfer(pair);
    }

    const double achieved = acc.theta();
    if (std::fabs(achieved - targets.back()) > 1e-9 * std::max(1.0, targets.back())) {
        throw internal_error("plan_phases: composed theta missed its own target");
    }
    return phases;
}

} // namespace cbound::scatter
