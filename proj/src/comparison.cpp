#include "isotk/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace isotk::comparison {

namespace {

// Seam threshold: below |k| r^2 < kEps the closed-form branches lose digits
// to cancellation, so we use truncated Taylor series instead.
constexpr double kSeamThreshold = 1e-6;

}  // namespace

double sn(double K, double r) {
    if (r < 0.0) throw std::domain_error("sn: r must be nonnegative");
    const double x2 = K * r * r;
    if (std::abs(x2) < kSeamThreshold) {
        // sn_K(r) = r (1 - K r^2/6 + K^2 r^4/120 - ...)
        return r * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    }
    if (K > 0.0) {
        const double s = std::sqrt(K);
        return std::sin(s * r) / s;
    }
    const double s = std::sqrt(-K);
    return std::sinh(s * r) / s;
}

CosSin cos_sin_k(double k, double r) {
    CosSin out{};
    const double x2 = k * r * r;
    if (std::abs(x2) < kSeamThreshold) {
        out.cos_k = 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
        out.sin_k = r * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    } else if (k > 0.0) {
        const double s = std::sqrt(k);
        out.cos_k = std::cos(s * r);
        out.sin_k = std::sin(s * r) / s;
    } else {
        const double s = std::sqrt(-k);
        out.cos_k = std::cosh(s * r);
        out.sin_k = std::sinh(s * r) / s;
    }
    out.cos_k_prime = -k * out.sin_k;
    out.sin_k_prime = out.cos_k;
    return out;
}

ComparisonValue s_lambda(double k, double lambda, double r) {
    const CosSin cs = cos_sin_k(k, r);
    return {cs.cos_k - lambda * cs.sin_k, cs.cos_k_prime - lambda * cs.sin_k_prime};
}

double jacobian(double H, double K, double N, double r) {
    if (N <= 1.0) throw std::domain_error("jacobian: N must be > 1");
    const CosSin cs = cos_sin_k(K / (N - 1.0), r);
    const double bracket = cs.cos_k + H / (N - 1.0) * cs.sin_k;
    if (bracket <= 0.0) return 0.0;
    return std::pow(bracket, N - 1.0);
}

double unit_ball_volume(double N) {
    if (N < 1.0) throw std::domain_error("unit_ball_volume: N must be >= 1");
    return std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0 + 1.0);
}

namespace {

void check_model_radius(double K, double r) {
    if (r < 0.0) throw std::domain_error("model radius must be nonnegative");
    if (K > 0.0 && r > M_PI / std::sqrt(K) * (1.0 + 1e-12)) {
        throw std::domain_error("radius exceeds the diameter pi/sqrt(K) of the model");
    }
}

}  // namespace

double model_ball_volume(double N, double K, double r) {
    check_model_radius(K, r);
    const double wN = unit_ball_volume(N);
    if (r == 0.0) return 0.0;
    if (K == 0.0) return wN * std::pow(r, N);
    auto integrand = [N, K, wN](double s) { return N * wN * std::pow(sn(K, s), N - 1.0); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, r, 12, 1e-12);
}

double model_sphere_area(double N, double K, double r) {
    check_model_radius(K, r);
    return N * unit_ball_volume(N) * std::pow(sn(K, r), N - 1.0);
}

VerificationReport bishop_gromov_report(const std::vector<RadialSample>& volume_samples,
                                        double N, double K,
                                        const std::vector<RadialSample>& perimeter_samples) {
    VerificationReport rep;
    rep.check = "bishop_gromov";
    if (volume_samples.size() < 2) throw std::invalid_argument("bishop_gromov: need at least two samples");
    for (std::size_t i = 1; i < volume_samples.size(); ++i) {
        if (!(volume_samples[i].first > volume_samples[i - 1].first))
            throw std::invalid_argument("bishop_gromov: radii must be strictly increasing");
        if (volume_samples[i].second < volume_samples[i - 1].second)
            throw std::invalid_argument("bishop_gromov: volumes must be nondecreasing");
    }

    double prev_ratio = 0.0;
    bool have_prev = false;
    for (const auto& [r, vol] : volume_samples) {
        if (r <= 0.0) continue;
        const double ratio = vol / model_ball_volume(N, K, r);
        // Sampled inputs carry discretization noise; scale the slack with the
        // local ratio value.
        const double slack = std::max(1e-9, 1e-6 * std::abs(ratio));
        if (have_prev && ratio > prev_ratio + slack) {
            const double viol = ratio - prev_ratio;
            if (viol > rep.worst_violation) {
                rep.worst_violation = viol;
                rep.at = r;
            }
            rep.pass = false;
        }
        rep.tol = slack;
        prev_ratio = ratio;
        have_prev = true;
    }

    // Per(B_r)/s(N,K,r) <= m(B_r)/v(N,K,r) at radii shared with the volume data.
    for (const auto& [r, per] : perimeter_samples) {
        if (r <= 0.0) continue;
        auto it = std::find_if(volume_samples.begin(), volume_samples.end(),
                               [r = r](const RadialSample& s) { return s.first == r; });
        if (it == volume_samples.end()) continue;
        const double lhs = per / model_sphere_area(N, K, r);
        const double rhs = it->second / model_ball_volume(N, K, r);
        const double slack = std::max(1e-9, 1e-6 * std::abs(rhs));
        if (lhs > rhs + slack) {
            rep.pass = false;
            if (lhs - rhs > rep.worst_violation) {
                rep.worst_violation = lhs - rhs;
                rep.at = r;
                rep.note = "perimeter ratio domination failed";
            }
        }
    }
    return rep;
}

}  // namespace isotk::comparison
