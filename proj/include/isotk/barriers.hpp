#pragma once

#include <limits>
#include <optional>
#include <string>

namespace isotk::barriers {

enum class Side { outward, inward };

/// Mean-curvature barrier data for an isoperimetric set, with the two-sided
/// admissible interval, inscribed-radius bound, and rigidity flag.
struct BarrierCertificate {
    double c = 0.0;
    double N = 2.0;
    double K = 0.0;
    double perimeter = 0.0;
    double volume = 0.0;
    std::optional<double> avr;
    double c_lo = 0.0;
    double c_hi = 0.0;
    double inscribed_radius_bound = std::numeric_limits<double>::infinity();
    bool rigid = false;

    std::string to_json() const;
    static BarrierCertificate from_json(const std::string& text);
};

/// Two-sided barrier bounds for K = 0:
///   c_hi = (N-1)/N * perimeter/volume,
///   c_lo = (N-1) (N omega_N avr / perimeter)^{1/(N-1)}  (0 without avr).
/// The certificate carries c = c_hi and is marked rigid when the interval
/// degenerates.
BarrierCertificate barrier_bounds(double N, double perimeter, double volume,
                                  std::optional<double> avr = std::nullopt,
                                  double tol = 1e-8);

/// Inscribed-radius bound (N-1)/c for a barrier c > 0.
double inscribed_radius_bound(double N, double c);

/// Heintze-Karcher perimeter bound for the equidistant at distance t:
/// J_{+/-c,K,N}(t) * Per(E), sign chosen by side.
double equidistant_perimeter_bound(double perE, double c, double K, double N, double t,
                                   Side side);

/// Volume bound Per(E) * int_0^t J_{+/-c,K,N}; closed form for K = 0
/// outward, adaptive quadrature otherwise.
double equidistant_volume_bound(double perE, double c, double K, double N, double t,
                                Side side);

/// True iff the certificate saturates the upper bound (rigid ball case).
/// Throws if c < 0 or c falls outside [c_lo - tol, c_hi + tol].
bool barrier_rigidity_check(const BarrierCertificate& cert, double tol);

}  // namespace isotk::barriers
