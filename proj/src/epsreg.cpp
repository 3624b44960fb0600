#include "isotk/epsreg.hpp"

#include <cmath>
#include <stdexcept>

#include "isotk/comparison.hpp"

namespace isotk::epsreg {

namespace cmp = isotk::comparison;

double gronwall_integrate(double c, double exponent, double r, int steps) {
    if (!(c > 0.0)) throw std::invalid_argument("gronwall_integrate: c must be positive");
    if (!(exponent > 0.0 && exponent < 1.0))
        throw std::invalid_argument("gronwall_integrate: exponent must lie in (0,1)");
    if (r < 0.0) throw std::invalid_argument("gronwall_integrate: r must be nonnegative");
    if (r == 0.0) return 0.0;

    // The ODE is non-Lipschitz at F = 0; start RK4 from a small seed radius
    // with the exact value there, then verify against the closed form.
    auto closed = [&](double x) {
        return std::pow((1.0 - exponent) * c * x, 1.0 / (1.0 - exponent));
    };
    const double r0 = r * 1e-6;
    double F = closed(r0);
    // geometric mesh: the solution is a power law, so a fixed relative step
    // keeps the local error uniform all the way down to the seed
    const double q = std::pow(r / r0, 1.0 / steps);
    auto rhs = [&](double f) { return c * std::pow(std::max(f, 0.0), exponent); };
    double x = r0;
    for (int i = 0; i < steps; ++i) {
        const double x1 = (i + 1 == steps) ? r : x * q;
        const double h = x1 - x;
        const double k1 = rhs(F);
        const double k2 = rhs(F + 0.5 * h * k1);
        const double k3 = rhs(F + 0.5 * h * k2);
        const double k4 = rhs(F + h * k3);
        F += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x = x1;
    }
    return F;
}

EpsRegResult volume_lower_bound_from_profile(double delta, double N, double v, double r) {
    if (delta < 0.0) throw std::invalid_argument("volume_lower_bound: delta must be >= 0");
    if (N < 2.0) throw std::invalid_argument("volume_lower_bound: N must be >= 2");
    if (!(v > 0.0) || !(r > 0.0))
        throw std::invalid_argument("volume_lower_bound: v and r must be positive");
    const double wN = cmp::unit_ball_volume(N);
    const double sharp = N * std::pow(wN, 1.0 / N);
    if (delta >= sharp)
        throw std::domain_error("volume_lower_bound: delta must be below N omega_N^{1/N}");

    EpsRegResult out;
    out.delta = delta;
    out.N = N;
    out.radius_cap = 0.5 * std::pow(wN, 1.0 / N) * std::pow(v, 1.0 / N);
    if (r > out.radius_cap)
        throw std::domain_error("volume_lower_bound: radius exceeds the admissible cap");
    out.ratio_bound = std::pow(1.0 - delta / sharp, N);
    return out;
}

double delta_for_epsilon(double epsilon, double N) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("delta_for_epsilon: epsilon must lie in [0,1)");
    const double sharp = N * std::pow(cmp::unit_ball_volume(N), 1.0 / N);
    return sharp * (1.0 - std::pow(1.0 - epsilon, 1.0 / N));
}

VerificationReport cone_consistency_check(double theta, double N) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("cone_consistency_check: theta must lie in (0,1]");
    VerificationReport rep;
    rep.check = "cone_consistency";
    rep.tol = 1e-12;
    const double wN = cmp::unit_ball_volume(N);
    const double profile_constant = N * std::pow(wN * theta, 1.0 / N);
    const double mapped_floor = N * std::pow(wN, 1.0 / N) * std::pow(theta, 1.0 / N);
    rep.worst_violation = std::abs(profile_constant - mapped_floor) /
                          std::max(1.0, mapped_floor);
    rep.at = theta;
    rep.pass = rep.worst_violation <= rep.tol && profile_constant >= mapped_floor - rep.tol;
    return rep;
}

}  // namespace isotk::epsreg
