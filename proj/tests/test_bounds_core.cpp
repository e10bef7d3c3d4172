#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cbound/bounds_core.hpp"
#include "cbound/errors.hpp"
#include "cbound/numeric.hpp"
#include "cbound/rng.hpp"

using cbound::BoundInterval;
using cbound::MagnitudeList;

namespace {

MagnitudeList ml(std::initializer_list<double> v) { return MagnitudeList(std::vector<double>(v)); }

std::vector<double> random_magnitudes(std::mt19937_64& eng, int max_len = 16,
                                      double max_val = 100.0) {
    const int n = 1 + static_cast<int>(eng() % static_cast<unsigned>(max_len));
    std::vector<double> v(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> val(0.0, max_val);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto& x : v) x = (coin(eng) < 0.08) ? 0.0 : val(eng);
    return v;
}

// Independent 1D oracle: extremes of |sum of +-l_i| over all sign choices.
// The max over signs is always the total; when the polygon inequalities
// fail, the min over signs equals the closed-form lower bound (peak one
// way, everything else the other).
struct SignExtremes {
    double min;
    double max;
};

SignExtremes brute_force_sign_extremes(const std::vector<double>& v) {
    SignExtremes e{std::numeric_limits<double>::infinity(), 0.0};
    const std::size_t combos = std::size_t{1} << v.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (mask >> i & 1u) ? -v[i] : v[i];
        }
        e.min = std::min(e.min, std::fabs(s));
        e.max = std::max(e.max, std::fabs(s));
    }
    return e;
}

} // namespace

TEST_CASE("pairwise_interval basics") {
    const auto iv = cbound::pairwise_interval(3.0, 5.0);
    CHECK(iv.lo == 2.0);
    CHECK(iv.hi == 8.0);

    const auto same = cbound::pairwise_interval(4.25, 4.25);
    CHECK(same.lo == 0.0);
    CHECK(same.hi == 8.5);

    const auto zero = cbound::pairwise_interval(7.0, 0.0);
    CHECK(zero.lo == 7.0);
    CHECK(zero.hi == 7.0);

    CHECK_THROWS_AS(cbound::pairwise_interval(-1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(cbound::pairwise_interval(1.0, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(cbound::pairwise_interval(1.0, std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("MagnitudeList validation") {
    CHECK_THROWS_AS(MagnitudeList({}), std::domain_error);
    CHECK_THROWS_AS(ml({1.0, -0.5}), std::domain_error);
    CHECK_THROWS_AS(ml({1.0, std::nan("")}), std::domain_error);
    CHECK_THROWS_AS(ml({1e308, 1e308}), std::domain_error); // total overflows
    CHECK(ml({0.0}).size() == 1);                           // zero magnitudes are legal
}

TEST_CASE("upper_total sums") {
    CHECK(cbound::upper_total(ml({5, 1, 2})) == 8.0);
    CHECK(cbound::upper_total(ml({4.5})) == 4.5);
    CHECK(cbound::upper_total(ml({1, 1, 1})) == 3.0);
}

TEST_CASE("lower_iterative frozen traces") {
    // hand trace: m1 = 5, m12 = max(1-5, 5-1, 0) = 4, m123 = max(2-6, 4-2, 0) = 2
    CHECK(cbound::lower_iterative(ml({5, 1, 2})) == 2.0);
    CHECK(cbound::lower_iterative(ml({1, 1, 1})) == 0.0);
    CHECK(cbound::lower_iterative(ml({3.5, 3.5})) == 0.0);
}

TEST_CASE("lower_closed frozen values") {
    CHECK(cbound::lower_closed(ml({5, 1, 2})) == 2.0);
    CHECK(cbound::lower_closed(ml({1, 1, 1})) == 0.0);
    CHECK(cbound::lower_closed(ml({9, 1})) == 8.0);
}

TEST_CASE("bound_interval composition") {
    const auto iv = cbound::bound_interval(ml({5, 1, 2}));
    CHECK(iv.lo == 2.0);
    CHECK(iv.hi == 8.0);

    const auto single = cbound::bound_interval(ml({3.25}));
    CHECK(single.lo == 3.25);
    CHECK(single.hi == 3.25);

    const auto pair = cbound::bound_interval(ml({1, 2}));
    CHECK(pair.lo == 1.0);
    CHECK(pair.hi == 3.0);
}

TEST_CASE("BoundInterval validation") {
    CHECK_THROWS_AS(BoundInterval(2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(BoundInterval(-1.0, 1.0), std::domain_error);
    CHECK(BoundInterval(0.0, 0.0).contains(0.0));
    CHECK(BoundInterval(1.0, 2.0).contains(2.0000001, 1e-6));
    CHECK_FALSE(BoundInterval(1.0, 2.0).contains(2.0000001, 1e-9));
}

TEST_CASE("polygon_satisfied classification") {
    CHECK(cbound::polygon_satisfied(ml({1, 1, 1})));
    CHECK_FALSE(cbound::polygon_satisfied(ml({5, 1, 2})));
    CHECK(cbound::polygon_satisfied(ml({2, 2}))); // degenerate 2-gon: equality
    CHECK_FALSE(cbound::polygon_satisfied(ml({7, 0})));
    CHECK(cbound::polygon_satisfied(ml({0, 0})));
    CHECK_THROWS_AS(cbound::polygon_satisfied(ml({1})), std::domain_error);
}

TEST_CASE("polygon matches the literal per-side inequalities on integers") {
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 2 + static_cast<int>(eng() % 7);
        std::vector<double> v(static_cast<std::size_t>(n));
        long long total = 0;
        for (auto& x : v) {
            const long long k = static_cast<long long>(eng() % 13);
            x = static_cast<double>(k);
            total += k;
        }
        bool literal = true;
        for (double x : v) {
            if (x > static_cast<double>(total) - x) literal = false;
        }
        CAPTURE(v);
        CHECK(cbound::polygon_satisfied(MagnitudeList(v)) == literal);
        CHECK((cbound::lower_closed(MagnitudeList(v)) == 0.0) == literal);
    }
}

TEST_CASE("iterative and closed lower bounds agree to the last place") {
    std::mt19937_64 eng(42);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 20000; ++trial) {
        const auto v = random_magnitudes(eng);
        const MagnitudeList mags(v);
        const double a = cbound::lower_iterative(mags);
        const double b = cbound::lower_closed(mags);
        const double anchor = std::max({std::fabs(a), std::fabs(b)});
        if (a != b) {
            CAPTURE(v);
            CHECK(std::fabs(a - b) <= cbound::num::ulp_of(anchor));
        }
        worst_rel = std::max(worst_rel, std::fabs(a - b) /
                                            std::max(1.0, cbound::upper_total(mags)));
    }
    CHECK(worst_rel <= 1e-15);
}

TEST_CASE("at most one recursion branch is positive (Heaviside form)") {
    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto v = random_magnitudes(eng, 12);
        double m = v[0];
        double prefix = v[0];
        for (std::size_t j = 1; j < v.size(); ++j) {
            const bool first = v[j] - prefix > 0.0;
            const bool second = m - v[j] > 0.0;
            CHECK_FALSE((first && second));
            m = std::max({v[j] - prefix, m - v[j], 0.0});
            prefix += v[j];
        }
    }
}

TEST_CASE("permutation symmetry of the lower bound") {
    std::mt19937_64 eng(99);
    // exact on integer-valued inputs
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> v(2 + eng() % 8);
        for (auto& x : v) x = static_cast<double>(eng() % 50);
        const double base = cbound::lower_closed(MagnitudeList(v));
        for (int s = 0; s < 5; ++s) {
            std::shuffle(v.begin(), v.end(), eng);
            CHECK(cbound::lower_closed(MagnitudeList(v)) == base);
        }
    }
    // last-place agreement on arbitrary doubles
    for (int trial = 0; trial < 500; ++trial) {
        auto v = random_magnitudes(eng, 8);
        const MagnitudeList m0(v);
        const double base = cbound::lower_closed(m0);
        const double scale = std::max(1.0, cbound::upper_total(m0));
        for (int s = 0; s < 5; ++s) {
            std::shuffle(v.begin(), v.end(), eng);
            const double perm = cbound::lower_closed(MagnitudeList(v));
            CHECK(std::fabs(perm - base) <=
                  static_cast<double>(v.size()) * cbound::num::ulp_of(scale));
        }
    }
}

TEST_CASE("appending a magnitude follows the one-step recursion") {
    std::mt19937_64 eng(123);
    for (int trial = 0; trial < 2000; ++trial) {
        auto v = random_magnitudes(eng, 10);
        const MagnitudeList before(v);
        const auto iv = cbound::bound_interval(before);
        const double extra = (trial % 10 == 0) ? 0.0 : cbound::rng::uniform(eng, 0.0, 100.0);
        v.push_back(extra);
        const MagnitudeList after(v);
        const auto jv = cbound::bound_interval(after);

        CHECK(jv.hi == iv.hi + extra);
        const double expected_lo = std::max({extra - iv.hi, iv.lo - extra, 0.0});
        const double scale = std::max(1.0, jv.hi);
        CHECK(std::fabs(jv.lo - expected_lo) <= cbound::num::ulp_of(scale));
        if (extra == 0.0) {
            CHECK(jv.lo == iv.lo); // zero steps are identity elements
            CHECK(jv.hi == iv.hi);
        }
    }
}

TEST_CASE("1D sign-enumeration oracle brackets the interval") {
    std::mt19937_64 eng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const auto v = random_magnitudes(eng, 10);
        const MagnitudeList mags(v);
        const auto iv = cbound::bound_interval(mags);
        const auto brute = brute_force_sign_extremes(v);
        const double tol = 1e-9 * std::max(1.0, iv.hi);

        CHECK(brute.max == doctest::Approx(iv.hi).epsilon(1e-12));
        CHECK(brute.min >= iv.lo - tol);
        const bool closes = v.size() >= 2 && cbound::polygon_satisfied(mags);
        if (!closes) {
            // polygon violated: the 1D minimum is exactly the lower bound
            CHECK(brute.min == doctest::Approx(iv.lo).epsilon(1e-12));
        }
    }
}

TEST_CASE("plan_chain_targets frozen examples") {
    const auto a = cbound::plan_chain_targets(ml({5, 1, 2}), 2.0);
    REQUIRE(a.size() == 3);
    CHECK(a[0] == 5.0);
    CHECK(a[1] == 4.0); // backward intersection [0,4] with [4,6]
    CHECK(a[2] == 2.0);

    const auto b = cbound::plan_chain_targets(ml({1, 1}), 0.0);
    CHECK(b == std::vector<double>{1.0, 0.0});

    const auto c = cbound::plan_chain_targets(ml({1, 1, 1}), 3.0);
    CHECK(c == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("plan_chain_targets rejects infeasible targets with the interval") {
    try {
        cbound::plan_chain_targets(ml({5, 1, 2}), 1.0);
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("2") != std::string::npos);
        CHECK(msg.find("8") != std::string::npos);
    }
    CHECK_THROWS_AS(cbound::plan_chain_targets(ml({5, 1, 2}), 8.1), std::domain_error);
}

TEST_CASE("plan_chain_targets postcondition holds on random cases") {
    std::mt19937_64 eng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto v = random_magnitudes(eng, 12);
        const MagnitudeList mags(v);
        const auto iv = cbound::bound_interval(mags);
        const double target = iv.lo + cbound::rng::uniform(eng, 0.0, 1.0) * (iv.hi - iv.lo);
        const auto t = cbound::plan_chain_targets(mags, target);
        const double tol = 1e-9 * std::max(1.0, iv.hi);

        REQUIRE(t.size() == v.size());
        CHECK(t.front() == v.front());
        CHECK(std::fabs(t.back() - target) <= tol);

        double sum = 0.0, peak = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            sum += v[j];
            peak = std::max(peak, v[j]);
            const double plo = std::max(2.0 * peak - sum, 0.0);
            CAPTURE(v);
            CAPTURE(target);
            CHECK(t[j] >= plo - tol);
            CHECK(t[j] <= sum + tol);
            if (j + 1 < v.size()) {
                CHECK(t[j + 1] >= std::fabs(t[j] - v[j + 1]) - tol);
                CHECK(t[j + 1] <= t[j] + v[j + 1] + tol);
            }
        }
    }
}
