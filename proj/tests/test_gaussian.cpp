#include "doctest.h"
#include "oracle.hpp"

#include "quadent/criteria.hpp"
#include "quadent/gaussian.hpp"

#include <numbers>
#include <random>

using namespace quadent;

namespace {

constexpr double half_pi = std::numbers::pi / 2;

CovarianceMatrix from_oracle(const oracle::Mat4& m) {
    std::array<double, 16> flat{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) flat[4 * i + j] = m[i][j];
    return CovarianceMatrix::from_entries(flat);
}

double max_abs_diff(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// A random physical two-mode state: random mixed product input through the
// circuit at a random phase, then random asymmetric loss.
CovarianceMatrix random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> s(0.05, 1.0), extra(0.0, 3.0), phase(0.0, 6.3),
        eta(0.0, 1.0);
    const double s1 = s(rng), s2 = s(rng);
    const ModeCovariance m1 = squeezed_state({s1, 1.0 / s1 + extra(rng)});
    const ModeCovariance m2 = squeezed_state({s2, 1.0 / s2 + extra(rng)});
    return apply_loss(entangle(m1, m2, phase(rng)), {eta(rng), eta(rng)});
}

}  // namespace

TEST_SUITE("squeezed_state") {
    TEST_CASE("no squeezing is vacuum") {
        const ModeCovariance m = squeezed_state({1.0, 1.0});
        CHECK(m.matrix().isApprox(Eigen::Matrix2d::Identity()));
    }

    TEST_CASE("diagonal form") {
        const ModeCovariance m = squeezed_state({0.5, 2.0});
        CHECK(m(0, 0) == 0.5);
        CHECK(m(1, 1) == 2.0);
        CHECK(m(0, 1) == 0.0);
    }

    TEST_CASE("4.1 dB pure source") {
        const SqueezerSpec spec = SqueezerSpec::from_db(4.1);
        CHECK(spec.squeezed == doctest::Approx(0.3890451).epsilon(1e-6));
        CHECK(spec.anti == doctest::Approx(2.5703958).epsilon(1e-6));
        CHECK(spec.is_pure());
        const ModeCovariance m = squeezed_state(spec);
        CHECK(m(0, 0) == doctest::Approx(0.389045));
    }

    TEST_CASE("unphysical sources are rejected") {
        CHECK_THROWS_AS(squeezed_state({0.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(squeezed_state({-0.5, 2.0}), std::invalid_argument);
        CHECK_THROWS_AS(squeezed_state({0.5, 1.9}), std::invalid_argument);
        CHECK_NOTHROW(squeezed_state({0.5, 2.5}));
    }
}

TEST_SUITE("entangle") {
    TEST_CASE("two vacua stay vacuum at any phase") {
        for (const double phi : {0.0, 0.3, half_pi, 2.0}) {
            const CovarianceMatrix v = entangle(ModeCovariance{}, ModeCovariance{}, phi);
            CHECK(max_abs_diff(v, CovarianceMatrix::vacuum()) < 1e-15);
        }
    }

    TEST_CASE("s=0.5 sources at pi/2 match the explicit matrix product") {
        const ModeCovariance m = squeezed_state({0.5, 2.0});
        const CovarianceMatrix v = entangle(m, m, half_pi);
        const CovarianceMatrix expected = from_oracle(oracle::entangled(0.5, 2.0, 0.5, 2.0, half_pi));
        CHECK(max_abs_diff(v, expected) < 1e-14);
        // frozen from the oracle
        for (const Beam b : {Beam::x, Beam::y}) {
            CHECK(v.variance(b, Quadrature::amplitude) == doctest::Approx(1.25).epsilon(1e-14));
            CHECK(v.variance(b, Quadrature::phase) == doctest::Approx(1.25).epsilon(1e-14));
        }
        CHECK(v.cross(Quadrature::amplitude) == doctest::Approx(-0.75).epsilon(1e-14));
        CHECK(v.cross(Quadrature::phase) == doctest::Approx(0.75).epsilon(1e-14));
    }

    TEST_CASE("zero relative phase gives a separable pair") {
        const double s = 0.3;
        const ModeCovariance m = squeezed_state(SqueezerSpec::pure(s));
        const CovarianceMatrix v = entangle(m, m, 0.0);
        CHECK(max_abs_diff(v, from_oracle(oracle::entangled(s, 1 / s, s, 1 / s, 0.0))) < 1e-13);
        CHECK(duan_product(v).product >= 1.0 - 1e-12);
    }

    TEST_CASE("arbitrary phases agree with the oracle") {
        for (const double phi : {0.1, 0.7, 1.9, 3.0, 4.4}) {
            const ModeCovariance m1 = squeezed_state({0.2, 6.0});
            const ModeCovariance m2 = squeezed_state({0.7, 1.6});
            const CovarianceMatrix v = entangle(m1, m2, phi);
            CHECK(max_abs_diff(v, from_oracle(oracle::entangled(0.2, 6.0, 0.7, 1.6, phi))) < 1e-13);
        }
    }
}

TEST_SUITE("apply_loss") {
    TEST_CASE("unit efficiency is the identity channel") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 20; ++i) {
            const CovarianceMatrix v = random_state(rng);
            CHECK(max_abs_diff(apply_loss(v, {1.0, 1.0}), v) < 1e-15);
        }
    }

    TEST_CASE("single-mode block eta V + (1 - eta)") {
        const CovarianceMatrix v =
            CovarianceMatrix::product(squeezed_state({0.5, 2.0}), ModeCovariance{});
        const CovarianceMatrix out = apply_loss(v, {0.8, 0.8});
        CHECK(out(0, 0) == doctest::Approx(0.6).epsilon(1e-14));
        CHECK(out(1, 1) == doctest::Approx(1.8).epsilon(1e-14));
    }

    TEST_CASE("zero efficiency replaces the beam by vacuum") {
        const CovarianceMatrix v = entangled_pair({0.4, 3.0});
        const CovarianceMatrix out = apply_loss(v, {0.0, 1.0});
        CHECK(out.mode(Beam::x).matrix().isApprox(Eigen::Matrix2d::Identity()));
        CHECK(out(0, 2) == 0.0);
        CHECK(out(2, 2) == v(2, 2));
    }

    TEST_CASE("loss on the entangled pair matches the closed Duan form") {
        const CovarianceMatrix v = apply_loss(entangled_pair(SqueezerSpec::pure(0.5)), {0.8, 0.8});
        CHECK(duan_product(v).product == doctest::Approx(0.6).epsilon(1e-13));
        const auto o = oracle::lossy(oracle::entangled(0.5, 2.0, 0.5, 2.0, half_pi), 0.8);
        CHECK(max_abs_diff(v, from_oracle(o)) < 1e-14);
    }

    TEST_CASE("efficiencies outside [0, 1] are rejected") {
        CHECK_THROWS_AS(apply_loss(CovarianceMatrix{}, {1.1, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(apply_loss(CovarianceMatrix{}, {0.5, -0.1}), std::invalid_argument);
    }

    TEST_CASE("property: composition multiplies efficiencies") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> eta(0.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            const CovarianceMatrix v = random_state(rng);
            const double a = eta(rng), b = eta(rng), c = eta(rng), d = eta(rng);
            const auto twice = apply_loss(apply_loss(v, {a, c}), {b, d});
            const auto once = apply_loss(v, {a * b, c * d});
            CHECK(max_abs_diff(twice, once) < 1e-12);
        }
    }
}

TEST_SUITE("photon_number") {
    TEST_CASE("values") {
        CHECK(photon_number(CovarianceMatrix{}, Beam::x) == 0.0);
        const CovarianceMatrix single =
            CovarianceMatrix::product(squeezed_state({0.5, 2.0}), ModeCovariance{});
        CHECK(photon_number(single, Beam::x) == doctest::Approx(0.125));
        CHECK(photon_number(single, Beam::y) == 0.0);
        const CovarianceMatrix pair = entangled_pair(SqueezerSpec::pure(0.5));
        CHECK(photon_number(pair, Beam::x) == doctest::Approx(0.125).epsilon(1e-14));
        CHECK(photon_number(pair, Beam::y) == doctest::Approx(0.125).epsilon(1e-14));
    }

    TEST_CASE("property: non-negative on physical states") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 200; ++i) {
            const CovarianceMatrix v = random_state(rng);
            CHECK(photon_number(v, Beam::x) >= -1e-12);
            CHECK(photon_number(v, Beam::y) >= -1e-12);
        }
    }
}

TEST_SUITE("physicality_check") {
    TEST_CASE("vacuum") {
        const auto r = physicality_check(CovarianceMatrix{});
        CHECK(r.nu_minus == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.nu_plus == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.physical);
    }

    TEST_CASE("pure two-mode squeezed states have eigenvalues (1, 1)") {
        for (double s = 0.02; s <= 1.0; s += 0.02) {
            const auto r = physicality_check(entangled_pair(SqueezerSpec::pure(s)));
            CHECK(std::abs(r.nu_minus - 1.0) < 1e-9);
            CHECK(std::abs(r.nu_plus - 1.0) < 1e-9);
            CHECK(r.physical);
        }
    }

    TEST_CASE("uncertainty violation fails") {
        const std::array<double, 16> flat{0.5, 0, 0, 0, 0, 0.5, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
        const auto r = physicality_check(flat);
        CHECK(r.nu_minus == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r.nu_plus == doctest::Approx(1.0).epsilon(1e-14));
        CHECK_FALSE(r.physical);
    }

    TEST_CASE("non-symmetric input is rejected") {
        const std::array<double, 16> flat{1, 0.2, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
        CHECK_THROWS_AS(physicality_check(flat), std::invalid_argument);
    }

    TEST_CASE("matches the invariant formula away from degeneracy") {
        std::mt19937_64 rng(5);
        int compared = 0;
        for (int i = 0; i < 200; ++i) {
            const CovarianceMatrix v = random_state(rng);
            const auto [det_v, delta] = symplectic_invariants(v);
            const double disc = delta * delta - 4.0 * det_v;
            if (disc < 1e-3) continue;
            ++compared;
            const double nu_p = std::sqrt((delta + std::sqrt(disc)) / 2);
            const double nu_m = std::sqrt((delta - std::sqrt(disc)) / 2);
            const auto r = physicality_check(v);
            CHECK(r.nu_plus == doctest::Approx(nu_p).epsilon(1e-9));
            CHECK(r.nu_minus == doctest::Approx(nu_m).epsilon(1e-9));
        }
        CHECK(compared > 50);
    }

    TEST_CASE("property: passive maps and loss preserve physicality") {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 300; ++i) {
            CHECK(physicality_check(random_state(rng)).physical);
        }
    }

    TEST_CASE("property: every element maps vacuum to vacuum") {
        const CovarianceMatrix vac;
        CHECK(max_abs_diff(apply_loss(vac, {0.3, 0.9}), vac) < 1e-15);
        CHECK(max_abs_diff(entangle(vac.mode(Beam::x), vac.mode(Beam::y), 1.234), vac) < 1e-15);
        CHECK(ModeCovariance{}.rotated(0.77).matrix().isApprox(Eigen::Matrix2d::Identity(), 1e-15));
        CHECK(squeezed_state({1.0, 1.0}).matrix() == Eigen::Matrix2d::Identity());
    }
}

TEST_CASE("CovarianceMatrix rejects a non-positive diagonal") {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(2, 2) = 0.0;
    CHECK_THROWS_AS(CovarianceMatrix{m}, std::invalid_argument);
}
