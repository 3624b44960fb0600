#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "isotk/comparison.hpp"

using namespace isotk::comparison;

namespace {

// series oracle for sinh, independent of std::sinh
double sinh_series(double x) {
    double term = x, sum = x;
    for (int n = 1; n < 40; ++n) {
        term *= x * x / ((2.0 * n) * (2.0 * n + 1.0));
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("sn branches") {
    CHECK(sn(0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sn(1.0, M_PI / 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sn(-1.0, 1.0) == doctest::Approx(sinh_series(1.0)).epsilon(1e-14));
    CHECK_THROWS(sn(0.0, -1.0));
}

TEST_CASE("sn continuity across K = 0") {
    for (double r : {0.1, 1.0, 5.0, 10.0}) {
        // |sn_K(r) - r| <= |K| r^3 / 6 + O(K^2)
        const double slack = 1e-8 * r * r * r / 6.0 + 1e-12;
        CHECK(std::abs(sn(1e-8, r) - r) <= 1.01 * slack);
        CHECK(std::abs(sn(-1e-8, r) - r) <= 1.01 * slack);
    }
}

TEST_CASE("cos_sin_k closed forms") {
    auto z = cos_sin_k(0.0, 3.7);
    CHECK(z.cos_k == doctest::Approx(1.0));
    CHECK(z.sin_k == doctest::Approx(3.7));

    auto s = cos_sin_k(1.0, M_PI);
    CHECK(s.cos_k == doctest::Approx(-1.0));
    CHECK(s.sin_k == doctest::Approx(0.0).epsilon(1e-12));

    auto h = cos_sin_k(-4.0, 0.5);
    CHECK(h.cos_k == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(h.sin_k == doctest::Approx(std::sinh(1.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("Wronskian identity over a (k, r) grid") {
    for (double k : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
        for (double r = 0.0; r <= 3.0; r += 0.1) {
            auto cs = cos_sin_k(k, r);
            const double w = cs.cos_k * cs.sin_k_prime - cs.cos_k_prime * cs.sin_k;
            CHECK(std::abs(w - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("s_lambda values and ODE initial data") {
    CHECK(s_lambda(0.0, 0.7, 2.0).value == doctest::Approx(1.0 - 0.7 * 2.0));
    auto at0 = s_lambda(2.5, 1.3, 0.0);
    CHECK(at0.value == doctest::Approx(1.0));
    CHECK(at0.derivative == doctest::Approx(-1.3));
    CHECK(s_lambda(1.0, 1.0, M_PI / 4.0).value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("s_lambda(k,-d,.) solves v'' + k v = 0 with v(0)=1, v'(0)=d") {
    const double h = 1e-4;
    for (double k : {-2.0, 0.0, 3.0}) {
        for (double d : {-1.0, 0.5, 2.0}) {
            for (double r : {0.2, 0.9, 1.7}) {
                const double vm = s_lambda(k, -d, r - h).value;
                const double v0 = s_lambda(k, -d, r).value;
                const double vp = s_lambda(k, -d, r + h).value;
                const double second = (vp - 2.0 * v0 + vm) / (h * h);
                CHECK(std::abs(second + k * v0) <= 1e-5);
            }
        }
    }
}

TEST_CASE("jacobian") {
    CHECK(jacobian(1.7, -0.4, 3.5, 0.0) == doctest::Approx(1.0));
    CHECK(jacobian(2.0, 0.0, 3.0, 1.0) == doctest::Approx(4.0));
    // bracket vanishes at r = (N-1)/c for H = -c, K = 0
    CHECK(jacobian(-2.0, 0.0, 4.0, 1.5) == doctest::Approx(0.0));
    CHECK(jacobian(-2.0, 0.0, 4.0, 5.0) == 0.0);  // clamp stays at zero past the root
    for (double r = 0.0; r < 3.0; r += 0.13)
        CHECK(jacobian(-3.0, 1.0, 2.5, r) >= 0.0);
}

TEST_CASE("unit_ball_volume") {
    CHECK(unit_ball_volume(2.0) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(unit_ball_volume(3.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK(unit_ball_volume(4.0) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
}

TEST_CASE("model_ball_volume") {
    CHECK(model_ball_volume(2.0, 0.0, 1.0) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(model_ball_volume(3.0, -2.0, 0.0) == 0.0);

    // independent oracle: fine Simpson quadrature of 3 omega_3 sinh^2(sqrt(2) s)/2
    const int n = 4000;
    const double h = 1.0 / n;
    double acc = 0.0;
    auto f = [](double s) {
        const double x = std::sinh(std::sqrt(2.0) * s) / std::sqrt(2.0);
        return 3.0 * (4.0 * M_PI / 3.0) * x * x;
    };
    for (int i = 0; i < n; ++i)
        acc += h / 6.0 * (f(i * h) + 4.0 * f((i + 0.5) * h) + f((i + 1) * h));
    CHECK(model_ball_volume(3.0, -2.0, 1.0) == doctest::Approx(acc).epsilon(1e-10));

    CHECK_THROWS_AS(model_ball_volume(3.0, 4.0, M_PI), std::domain_error);
}

TEST_CASE("model_sphere_area and coarea consistency") {
    CHECK(model_sphere_area(3.0, 0.0, 2.0) == doctest::Approx(16.0 * M_PI).epsilon(1e-14));
    CHECK(model_sphere_area(2.0, 0.0, 1.7) == doctest::Approx(2.0 * M_PI * 1.7).epsilon(1e-14));
    CHECK(model_sphere_area(3.0, 1.0, 0.0) == 0.0);

    // d/dr v(N,K,r) = s(N,K,r) by centered differences
    const double h = 1e-5;
    for (double K : {-1.0, 0.0, 0.7}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const double d =
                (model_ball_volume(2.5, K, r + h) - model_ball_volume(2.5, K, r - h)) / (2.0 * h);
            CHECK(d == doctest::Approx(model_sphere_area(2.5, K, r)).epsilon(1e-6));
        }
    }
}

TEST_CASE("bishop_gromov_report") {
    // cone theta = 0.5, N = 2: vol(r) = 0.5 pi r^2, constant ratio 0.5
    std::vector<RadialSample> cone;
    for (double r = 0.5; r <= 4.0; r += 0.5) cone.emplace_back(r, 0.5 * M_PI * r * r);
    auto rep = bishop_gromov_report(cone, 2.0, 0.0);
    CHECK(rep.pass);

    std::vector<RadialSample> euclid, tampered;
    for (double r = 0.5; r <= 4.0; r += 0.5) {
        const double v = M_PI * r * r;
        euclid.emplace_back(r, v);
        tampered.emplace_back(r, r == 2.0 ? 1.1 * v : v);
    }
    CHECK(bishop_gromov_report(euclid, 2.0, 0.0).pass);

    auto bad = bishop_gromov_report(tampered, 2.0, 0.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.at == doctest::Approx(2.0));

    // perimeter domination holds with equality for Euclidean balls
    std::vector<RadialSample> per;
    for (double r = 0.5; r <= 4.0; r += 0.5) per.emplace_back(r, 2.0 * M_PI * r);
    CHECK(bishop_gromov_report(euclid, 2.0, 0.0, per).pass);

    std::vector<RadialSample> nonmono = {{1.0, 1.0}, {0.5, 2.0}};
    CHECK_THROWS_AS(bishop_gromov_report(nonmono, 2.0, 0.0), std::invalid_argument);
}
