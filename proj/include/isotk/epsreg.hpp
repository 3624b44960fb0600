#pragma once

#include "isotk/report.hpp"

namespace isotk::epsreg {

/// Output of the profile-deficit to volume-ratio conversion.
struct EpsRegResult {
    double delta = 0.0;
    double N = 2.0;
    double radius_cap = 0.0;   // (1/2) omega_N^{1/N} v^{1/N}
    double ratio_bound = 1.0;  // lower bound on vol(B_r)/(omega_N r^N)
};

/// Minimal solution of F' = c F^{exponent}, F(0) = 0 (positive branch),
/// closed form F(r) = ((1-exponent) c r)^{1/(1-exponent)}, cross-checked by
/// numerical integration.
double gronwall_integrate(double c, double exponent, double r, int steps = 8192);

/// Converts a profile deficit delta (I(v)/v^{(N-1)/N} >= N omega_N^{1/N} - delta)
/// into the volume-ratio lower bound (1 - delta/(N omega_N^{1/N}))^N, valid for
/// radii below the cap (1/2) omega_N^{1/N} v^{1/N}.  K = 0 only.
EpsRegResult volume_lower_bound_from_profile(double delta, double N, double v, double r);

/// The explicit K = 0 calibration delta = N omega_N^{1/N} (1 - (1-eps)^{1/N}).
double delta_for_epsilon(double epsilon, double N);

/// On a cone of opening theta the profile constant N (omega_N theta)^{1/N}
/// and the tip volume-ratio floor theta match through the N-th-root map.
VerificationReport cone_consistency_check(double theta, double N);

}  // namespace isotk::epsreg
