#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "isotk/barriers.hpp"
#include "isotk/comparison.hpp"

using namespace isotk::barriers;
namespace cmp = isotk::comparison;

TEST_CASE("barrier bounds on the unit disc") {
    const auto cert = barrier_bounds(2.0, 2.0 * M_PI, M_PI, 1.0);
    CHECK(cert.c_hi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cert.c_lo == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cert.rigid);
    CHECK(cert.inscribed_radius_bound == doctest::Approx(1.0));
}

TEST_CASE("barrier bounds on cone tip balls saturate both sides") {
    // tip ball of radius R in Cone{theta, N}: vol = theta omega_N R^N,
    // per = theta N omega_N R^{N-1}; both bounds give (N-1)/R
    for (double theta : {0.1, 0.5, 1.0}) {
        for (double R : {0.5, 1.0, 2.0}) {
            for (double N : {2.0, 3.0, 4.0}) {
                const double wN = cmp::unit_ball_volume(N);
                const double per = theta * N * wN * std::pow(R, N - 1.0);
                const double vol = theta * wN * std::pow(R, N);
                const auto cert = barrier_bounds(N, per, vol, theta);
                CHECK(cert.c_hi == doctest::Approx((N - 1.0) / R).epsilon(1e-12));
                CHECK(cert.c_lo == doctest::Approx((N - 1.0) / R).epsilon(1e-12));
                CHECK(cert.rigid);
            }
        }
    }
}

TEST_CASE("barrier bounds without avr") {
    const auto cert = barrier_bounds(2.0, 10.0, M_PI, std::nullopt);
    CHECK(cert.c_lo == 0.0);
    CHECK(cert.c_hi == doctest::Approx(0.5 * 10.0 / M_PI).epsilon(1e-14));
    CHECK_FALSE(cert.rigid);
    CHECK_THROWS(barrier_bounds(2.0, -1.0, 1.0));
}

TEST_CASE("inscribed radius bound") {
    CHECK(inscribed_radius_bound(2.0, 1.0) == doctest::Approx(1.0));
    CHECK(inscribed_radius_bound(5.0, 0.5) == doctest::Approx(8.0));
    CHECK(inscribed_radius_bound(3.0, 2.0) ==
          doctest::Approx(inscribed_radius_bound(3.0, 1.0) / 2.0));
    CHECK_THROWS_AS(inscribed_radius_bound(2.0, 0.0), std::domain_error);
}

TEST_CASE("equidistant perimeter bound") {
    CHECK(equidistant_perimeter_bound(2.0 * M_PI, 1.0, 0.0, 2.0, 1.0, Side::outward) ==
          doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(equidistant_perimeter_bound(5.0, 2.0, -1.0, 3.0, 0.0, Side::inward) ==
          doctest::Approx(5.0));
    // inner equidistant of the unit disc collapses at the center
    CHECK(equidistant_perimeter_bound(2.0 * M_PI, 1.0, 0.0, 2.0, 1.0, Side::inward) ==
          doctest::Approx(0.0));
}

TEST_CASE("equidistant volume bound") {
    // Euclidean annulus 1 <= |x| <= 2: bound is exact, 3 pi
    CHECK(equidistant_volume_bound(2.0 * M_PI, 1.0, 0.0, 2.0, 1.0, Side::outward) ==
          doctest::Approx(3.0 * M_PI).epsilon(1e-12));
    CHECK(equidistant_volume_bound(7.0, 1.0, -1.0, 3.0, 0.0, Side::outward) == 0.0);
    // full inner volume of the model ball: P (N-1)/(N c)
    const double N = 3.0, c = 2.0, P = 5.0;
    CHECK(equidistant_volume_bound(P, c, 0.0, N, (N - 1.0) / c, Side::inward) ==
          doctest::Approx(P * (N - 1.0) / (N * c)).epsilon(1e-10));
}

TEST_CASE("volume bound is the t-integral of the perimeter bound") {
    const double h = 1e-5;
    for (double K : {-1.0, 0.0, 1.0}) {
        for (double t : {0.4, 1.1}) {
            const double d = (equidistant_volume_bound(3.0, 1.5, K, 3.0, t + h, Side::outward) -
                              equidistant_volume_bound(3.0, 1.5, K, 3.0, t - h, Side::outward)) /
                             (2.0 * h);
            CHECK(d == doctest::Approx(equidistant_perimeter_bound(3.0, 1.5, K, 3.0, t,
                                                                   Side::outward))
                           .epsilon(1e-6));
        }
    }
}

TEST_CASE("outward volume bound asymptotics") {
    // grows like P c^{N-1} / (N (N-1)^{N-1}) t^N as t -> infinity
    const double P = 2.0, c = 1.3, N = 3.0;
    const double lead = P * std::pow(c, N - 1.0) / (N * std::pow(N - 1.0, N - 1.0));
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double t : {1e2, 1e3, 1e4, 1e5}) {
        const double ratio =
            equidistant_volume_bound(P, c, 0.0, N, t, Side::outward) / (lead * std::pow(t, N));
        const double gap = std::abs(ratio - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);
}

TEST_CASE("inward bound vanishes past the focal distance") {
    const double N = 4.0, c = 2.0;
    for (double t : {1.5, 2.0, 10.0})  // (N-1)/c = 1.5
        CHECK(equidistant_perimeter_bound(1.0, c, 0.0, N, t, Side::inward) == 0.0);
}

TEST_CASE("barrier rigidity check") {
    auto disc = barrier_bounds(2.0, 2.0 * M_PI, M_PI, 1.0);
    CHECK(barrier_rigidity_check(disc, 1e-8));

    auto loose = barrier_bounds(2.0, 10.0, M_PI, 0.1);
    loose.c = 0.5 * (loose.c_lo + loose.c_hi);
    CHECK_FALSE(barrier_rigidity_check(loose, 1e-8));

    auto contradiction = loose;
    contradiction.c = 0.0;
    contradiction.avr = 0.5;
    CHECK_THROWS_AS(barrier_rigidity_check(contradiction, 1e-8), std::invalid_argument);

    auto outside = loose;
    outside.c = 2.0 * outside.c_hi + 1.0;
    CHECK_THROWS_AS(barrier_rigidity_check(outside, 1e-8), std::invalid_argument);
}

TEST_CASE("geometric-mean step of the sharp inequality") {
    // per >= (N vol c/(N-1))^{(N-1)/N} (avr omega_N N (N-1)^{N-1}/c^{N-1})^{1/N}
    for (double theta : {0.3, 0.9}) {
        const double N = 3.0, R = 1.4;
        const double wN = cmp::unit_ball_volume(N);
        const double per = theta * N * wN * std::pow(R, N - 1.0);
        const double vol = theta * wN * std::pow(R, N);
        const auto cert = barrier_bounds(N, per, vol, theta);
        for (double c : {cert.c_lo, cert.c, cert.c_hi}) {
            const double rhs = std::pow(N * vol * c / (N - 1.0), (N - 1.0) / N) *
                               std::pow(theta * wN * N * std::pow(N - 1.0, N - 1.0) /
                                            std::pow(c, N - 1.0),
                                        1.0 / N);
            CHECK(per >= rhs - 1e-10 * per);
        }
    }
}

TEST_CASE("certificate JSON round trip") {
    const auto cert = barrier_bounds(3.0, 8.0, 2.0, 0.4);
    const auto back = BarrierCertificate::from_json(cert.to_json());
    CHECK(back.c == doctest::Approx(cert.c));
    CHECK(back.c_lo == doctest::Approx(cert.c_lo));
    CHECK(back.c_hi == doctest::Approx(cert.c_hi));
    REQUIRE(back.avr.has_value());
    CHECK(*back.avr == doctest::Approx(0.4));
    CHECK(back.rigid == cert.rigid);
}
