#include "cbound/relativity.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cbound/errors.hpp"
#include "cbound/numeric.hpp"

namespace cbound::rel {

namespace {

constexpr double kMetricTol = 1e-10;

void require_speed(double v, const char* who) {
    if (!std::isfinite(v) || std::fabs(v) >= 1.0) {
        std::ostringstream os;
        os << who << ": speed must satisfy |v| < 1, got " << v;
        throw std::domain_error(os.str());
    }
}

void require_rapidity(double z, const char* who) {
    if (!std::isfinite(z) || std::fabs(z) > kMaxRapidity) {
        std::ostringstream os;
        os << who << ": rapidity magnitude must be finite and <= " << kMaxRapidity
           << " (tanh saturates in binary64), got " << z;
        throw std::domain_error(os.str());
    }
}

double clamp_below_one(double v) {
    if (v >= 1.0) return num::below_one();
    if (v <= -1.0) return -num::below_one();
    return v;
}

} // namespace

Speed::Speed(double value_in) : value(value_in) { require_speed(value, "Speed"); }

RapidityVector::RapidityVector(double magnitude_in, std::array<double, 3> direction_in)
    : magnitude(magnitude_in), direction(direction_in) {
    require_rapidity(magnitude, "RapidityVector");
    if (magnitude < 0.0) throw std::domain_error("RapidityVector: magnitude must be >= 0");
    const double n = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                               direction[2] * direction[2]);
    if (!std::isfinite(n) || std::fabs(n - 1.0) > 1e-12) {
        throw std::domain_error("RapidityVector: direction must be a unit vector");
    }
}

LorentzBoost LorentzBoost::identity() {
    LorentzBoost b;
    for (int i = 0; i < 4; ++i) b.m_[4 * i + i] = 1.0;
    return b;
}

LorentzBoost LorentzBoost::from_matrix(const std::array<double, 16>& row_major) {
    LorentzBoost b;
    b.m_ = row_major;
    if (b(0, 0) < 1.0 - kMetricTol) {
        throw std::domain_error("LorentzBoost: matrix is not orthochronous (Lambda^0_0 < 1)");
    }
    if (!(b.metric_defect() <= kMetricTol)) {
        throw std::domain_error("LorentzBoost: matrix does not preserve the metric");
    }
    return b;
}

LorentzBoost LorentzBoost::operator*(const LorentzBoost& rhs) const {
    LorentzBoost out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += m_[4 * i + k] * rhs.m_[4 * k + j];
            out.m_[4 * i + j] = s;
        }
    }
    if (!(out.metric_defect() <= kMetricTol)) {
        throw internal_error("LorentzBoost: metric invariant drifted during composition");
    }
    return out;
}

double LorentzBoost::metric_defect() const noexcept {
    // eta = diag(-1, 1, 1, 1)
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            double s = -m_[0 + i] * m_[0 + j]; // column i dot column j under eta
            for (int k = 1; k < 4; ++k) s += m_[4 * k + i] * m_[4 * k + j];
            const double want = (i != j) ? 0.0 : (i == 0 ? -1.0 : 1.0);
            worst = std::max(worst, std::fabs(s - want));
        }
    }
    const double g = m_[0];
    return worst / std::max(1.0, g * g);
}

double speed_to_rapidity(double v) {
    require_speed(v, "speed_to_rapidity");
    return std::atanh(v);
}

double rapidity_to_speed(double zeta) {
    require_rapidity(zeta, "rapidity_to_speed");
    return clamp_below_one(std::tanh(zeta));
}

Speed compose_collinear(Speed v1, Speed v2) {
    const double v = (v1.value + v2.value) / (1.0 + v1.value * v2.value);
    return Speed(clamp_below_one(v));
}

Speed collinear_chain(std::span<const Speed> speeds) {
    if (speeds.empty()) throw std::domain_error("collinear_chain: need at least one speed");
    Speed acc = speeds[0];
    for (std::size_t i = 1; i < speeds.size(); ++i) acc = compose_collinear(acc, speeds[i]);
    return acc;
}

double collinear_three(double v1, double v2, double v3) {
    require_speed(v1, "collinear_three");
    require_speed(v2, "collinear_three");
    require_speed(v3, "collinear_three");
    const double num = v1 + v2 + v3 + v1 * v2 * v3;
    const double den = 1.0 + v1 * v2 + v2 * v3 + v3 * v1;
    return clamp_below_one(num / den);
}

double collinear_four(double v1, double v2, double v3, double v4) {
    require_speed(v1, "collinear_four");
    require_speed(v2, "collinear_four");
    require_speed(v3, "collinear_four");
    require_speed(v4, "collinear_four");
    const double num =
        v1 + v2 + v3 + v4 + v1 * v2 * v3 + v2 * v3 * v4 + v3 * v4 * v1 + v4 * v1 * v2;
    const double den = 1.0 + v1 * v2 + v2 * v3 + v3 * v4 + v4 * v1 + v1 * v3 + v2 * v4 +
                       v1 * v2 * v3 * v4;
    return clamp_below_one(num / den);
}

BoundInterval speed_bounds(const std::vector<double>& speed_magnitudes) {
    std::vector<double> zetas;
    zetas.reserve(speed_magnitudes.size());
    for (double v : speed_magnitudes) {
        require_speed(v, "speed_bounds");
        if (v < 0.0) throw std::domain_error("speed_bounds: expects magnitudes in [0, 1)");
        zetas.push_back(std::atanh(v));
    }
    const BoundInterval zi = bound_interval(MagnitudeList(std::move(zetas)));
    return BoundInterval(clamp_below_one(std::tanh(zi.lo)), clamp_below_one(std::tanh(zi.hi)));
}

LorentzBoost boost_matrix(const RapidityVector& r) {
    const double ch = std::cosh(r.magnitude);
    const double sh = std::sinh(r.magnitude);
    const auto& n = r.direction;
    std::array<double, 16> m{};
    m[0] = ch;
    for (int i = 0; i < 3; ++i) {
        m[0 * 4 + (i + 1)] = sh * n[i];
        m[(i + 1) * 4 + 0] = sh * n[i];
        for (int j = 0; j < 3; ++j) {
            m[(i + 1) * 4 + (j + 1)] = (i == j ? 1.0 : 0.0) + (ch - 1.0) * n[i] * n[j];
        }
    }
    return LorentzBoost::from_matrix(m);
}

double extract_speed(const LorentzBoost& boost) {
    const double g = boost(0, 0);
    const double sx = boost(1, 0), sy = boost(2, 0), sz = boost(3, 0);
    const double v = std::sqrt(sx * sx + sy * sy + sz * sz) / g;
    return clamp_below_one(v);
}

double compose_boosts_extract_speed(std::span<const RapidityVector> boosts) {
    LorentzBoost acc = LorentzBoost::identity();
    for (const auto& r : boosts) acc = acc * boost_matrix(r);
    return extract_speed(acc);
}

double compose_at_angle(double zeta1, double zeta2, double angle) {
    require_rapidity(zeta1, "compose_at_angle");
    require_rapidity(zeta2, "compose_at_angle");
    if (zeta1 < 0.0 || zeta2 < 0.0) {
        throw std::domain_error("compose_at_angle: rapidity magnitudes must be >= 0");
    }
    const double c = std::cosh(zeta1) * std::cosh(zeta2) +
                     std::cos(angle) * std::sinh(zeta1) * std::sinh(zeta2);
    return std::acosh(std::max(c, 1.0));
}

std::vector<double> plan_relative_angles(const std::vector<double>& speed_magnitudes,
                                         double target_speed) {
    if (!std::isfinite(target_speed) || target_speed < 0.0 || target_speed >= 1.0) {
        throw std::domain_error("plan_relative_angles: target speed must lie in [0, 1)");
    }
    std::vector<double> zetas;
    zetas.reserve(speed_magnitudes.size());
    for (double v : speed_magnitudes) {
        require_speed(v, "plan_relative_angles");
        if (v < 0.0) throw std::domain_error("plan_relative_angles: expects magnitudes in [0, 1)");
        zetas.push_back(std::atanh(v));
    }
    const MagnitudeList zl(zetas);
    const auto targets = plan_chain_targets(zl, std::atanh(target_speed));

    std::vector<double> angles;
    angles.reserve(zetas.size() > 0 ? zetas.size() - 1 : 0);
    for (std::size_t j = 1; j < zetas.size(); ++j) {
        const double t_prev = targets[j - 1];
        const double z = zetas[j];
        const double s = std::sinh(t_prev) * std::sinh(z);
        double c = 1.0;
        if (s > 0.0) {
            c = (std::cosh(targets[j]) - std::cosh(t_prev) * std::cosh(z)) / s;
            c = num::clamp_cosine(c);
        }
        angles.push_back(std::acos(c));
    }
    return angles;
}

double compose_planned(const std::vector<double>& speed_magnitudes,
                       const std::vector<double>& angles) {
    if (speed_magnitudes.empty()) {
        throw std::domain_error("compose_planned: need at least one speed");
    }
    if (angles.size() + 1 != speed_magnitudes.size()) {
        throw std::domain_error("compose_planned: need one angle per joint (n - 1)");
    }
    for (double v : speed_magnitudes) {
        require_speed(v, "compose_planned");
        if (v < 0.0) throw std::domain_error("compose_planned: expects magnitudes in [0, 1)");
    }

    LorentzBoost acc =
        boost_matrix(RapidityVector(std::atanh(speed_magnitudes[0]), {1.0, 0.0, 0.0}));
    for (std::size_t j = 1; j < speed_magnitudes.size(); ++j) {
        const double zeta = std::atanh(speed_magnitudes[j]);
        // Direction of the running composite as seen in its own rest frame:
        // the row-0 spatial part of the accumulated matrix (norm sinh t).
        std::array<double, 3> w{acc(0, 1), acc(0, 2), acc(0, 3)};
        const double wn = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        std::array<double, 3> axis{1.0, 0.0, 0.0};
        if (wn > 1e-300) {
            for (auto& c : w) c /= wn;
            // any unit vector orthogonal to w
            std::array<double, 3> ref =
                (std::fabs(w[2]) < 0.9) ? std::array<double, 3>{0.0, 0.0, 1.0}
                                        : std::array<double, 3>{1.0, 0.0, 0.0};
            const double proj = ref[0] * w[0] + ref[1] * w[1] + ref[2] * w[2];
            std::array<double, 3> p{ref[0] - proj * w[0], ref[1] - proj * w[1],
                                    ref[2] - proj * w[2]};
            const double pn = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            for (auto& c : p) c /= pn;
            const double ca = std::cos(angles[j - 1]);
            const double sa = std::sin(angles[j - 1]);
            for (int k = 0; k < 3; ++k) axis[k] = ca * w[k] + sa * p[k];
            const double an = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
            for (auto& c : axis) c /= an;
        }
        acc = acc * boost_matrix(RapidityVector(zeta, axis));
    }
    return extract_speed(acc);
}

} // namespace cbound::rel
