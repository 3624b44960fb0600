#include "isotk/barriers.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <nlohmann/json.hpp>

#include "isotk/comparison.hpp"

namespace isotk::barriers {

namespace cmp = isotk::comparison;
using nlohmann::json;

BarrierCertificate barrier_bounds(double N, double perimeter, double volume,
                                  std::optional<double> avr, double tol) {
    if (N < 2.0) throw std::invalid_argument("barrier_bounds: N must be >= 2");
    if (!(perimeter > 0.0) || !(volume > 0.0))
        throw std::invalid_argument("barrier_bounds: perimeter and volume must be positive");

    BarrierCertificate cert;
    cert.N = N;
    cert.K = 0.0;
    cert.perimeter = perimeter;
    cert.volume = volume;
    cert.avr = avr;
    cert.c_hi = (N - 1.0) / N * perimeter / volume;
    cert.c_lo = avr ? (N - 1.0) * std::pow(N * cmp::unit_ball_volume(N) * *avr / perimeter,
                                           1.0 / (N - 1.0))
                    : 0.0;
    cert.c = cert.c_hi;
    cert.inscribed_radius_bound =
        cert.c > 0.0 ? (N - 1.0) / cert.c : std::numeric_limits<double>::infinity();
    cert.rigid = avr.has_value() &&
                 std::abs(cert.c_hi - cert.c_lo) <= tol * std::max(1.0, cert.c_hi);
    return cert;
}

double inscribed_radius_bound(double N, double c) {
    if (!(c > 0.0)) throw std::domain_error("inscribed_radius_bound: c must be positive");
    return (N - 1.0) / c;
}

double equidistant_perimeter_bound(double perE, double c, double K, double N, double t,
                                   Side side) {
    if (t < 0.0) throw std::domain_error("equidistant bounds: t must be nonnegative");
    const double H = side == Side::outward ? c : -c;
    return cmp::jacobian(H, K, N, t) * perE;
}

double equidistant_volume_bound(double perE, double c, double K, double N, double t,
                                Side side) {
    if (t < 0.0) throw std::domain_error("equidistant bounds: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const double H = side == Side::outward ? c : -c;
    if (K == 0.0 && side == Side::outward && c > 0.0) {
        // Per(E) (N-1)/(Nc) ((1 + ct/(N-1))^N - 1)
        return perE * (N - 1.0) / (N * c) *
               (std::pow(1.0 + c * t / (N - 1.0), N) - 1.0);
    }
    auto integrand = [&](double r) { return cmp::jacobian(H, K, N, r); };
    return perE * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                      integrand, 0.0, t, 12, 1e-12);
}

bool barrier_rigidity_check(const BarrierCertificate& cert, double tol) {
    if (cert.c < 0.0) throw std::invalid_argument("inconsistent certificate: c < 0");
    if (cert.avr && *cert.avr > 0.0 && cert.c == 0.0)
        throw std::invalid_argument("inconsistent certificate: positive AVR forces c > 0");
    const double scale = std::max(1.0, cert.c_hi);
    if (cert.c > cert.c_hi + tol * scale || (cert.avr && cert.c < cert.c_lo - tol * scale))
        throw std::invalid_argument("inconsistent certificate: c outside the admissible interval");
    return std::abs(cert.c - cert.c_hi) <= tol * scale;
}

std::string BarrierCertificate::to_json() const {
    json j = {{"c", c},
              {"N", N},
              {"K", K},
              {"perimeter", perimeter},
              {"volume", volume},
              {"c_lo", c_lo},
              {"c_hi", c_hi},
              {"inscribed_radius_bound", inscribed_radius_bound},
              {"rigid", rigid}};
    if (avr) j["avr"] = *avr;
    return j.dump();
}

BarrierCertificate BarrierCertificate::from_json(const std::string& text) {
    const json j = json::parse(text);
    BarrierCertificate cert;
    cert.c = j.at("c").get<double>();
    cert.N = j.at("N").get<double>();
    cert.K = j.value("K", 0.0);
    cert.perimeter = j.at("perimeter").get<double>();
    cert.volume = j.at("volume").get<double>();
    if (j.contains("avr")) cert.avr = j.at("avr").get<double>();
    cert.c_lo = j.value("c_lo", 0.0);
    cert.c_hi = j.value("c_hi", 0.0);
    cert.inscribed_radius_bound =
        j.value("inscribed_radius_bound", std::numeric_limits<double>::infinity());
    cert.rigid = j.value("rigid", false);
    return cert;
}

}  // namespace isotk::barriers
