#pragma once

#include <utility>
#include <vector>

#include "isotk/report.hpp"

namespace isotk::comparison {

/// Value of a one-dimensional comparison function together with its
/// derivative in the radial variable.
struct ComparisonValue {
    double value = 0.0;
    double derivative = 0.0;
};

/// Generalized sine:
///   sn_K(r) = (-K)^{-1/2} sinh(sqrt(-K) r)  for K < 0,
///             r                             for K = 0,
///             K^{-1/2} sin(sqrt(K) r)       for K > 0.
/// Continuous in K across K = 0; near the seam a truncated series is used.
double sn(double K, double r);

/// Solutions of v'' + k v = 0 with (cos_k, sin_k) initial data
/// (1, 0) and (0, 1).  Wronskian cos_k sin_k' - cos_k' sin_k == 1.
struct CosSin {
    double cos_k;
    double sin_k;
    double cos_k_prime;  // = -k sin_k
    double sin_k_prime;  // = cos_k
};
CosSin cos_sin_k(double k, double r);

/// s_{k,lambda}(r) = cos_k(r) - lambda sin_k(r), with derivative.
/// At r = 0: value 1, derivative -lambda.  For k = 0 exactly 1 - lambda r.
ComparisonValue s_lambda(double k, double lambda, double r);

/// Jacobian of equidistant perimeter comparison:
///   J_{H,K,N}(r) = (cos_{K/(N-1)}(r) + H/(N-1) sin_{K/(N-1)}(r))_+^{N-1}.
/// Reduces to (1 + H r/(N-1))_+^{N-1} when K = 0.  Requires N > 1.
double jacobian(double H, double K, double N, double r);

/// Volume of the Euclidean unit ball in dimension N (real N >= 1),
/// omega_N = pi^{N/2} / Gamma(N/2 + 1).
double unit_ball_volume(double N);

/// Volume of the ball of radius r in the simply connected model of constant
/// sectional curvature K:  v(N,K,r) = int_0^r N omega_N sn_K^{N-1}(s) ds.
/// Closed form omega_N r^N when K = 0, adaptive quadrature otherwise.
/// Throws std::domain_error if K > 0 and r > pi/sqrt(K).
double model_ball_volume(double N, double K, double r);

/// Boundary area of the same model ball: s(N,K,r) = N omega_N sn_K^{N-1}(r).
double model_sphere_area(double N, double K, double r);

/// One (radius, value) sample of ball data.
using RadialSample = std::pair<double, double>;

/// Checks Bishop-Gromov monotonicity of r -> vol(r)/v(N,K,r) on the given
/// samples.  When perimeter samples are supplied, additionally checks
/// Per(B_r)/s(N,K,r) <= vol(B_r)/v(N,K,r) at shared radii.
/// Radii must be strictly increasing and volumes nondecreasing.
VerificationReport bishop_gromov_report(const std::vector<RadialSample>& volume_samples,
                                        double N, double K,
                                        const std::vector<RadialSample>& perimeter_samples = {});

}  // namespace isotk::comparison
