#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "isotk/report.hpp"

namespace isotk::profile {

/// Isoperimetric profile curve I(v), either the closed form of a cone or a
/// sampled curve on a strictly increasing volume grid.
class ProfileCurve {
public:
    /// Closed-form cone profile I(v) = N (omega_N theta)^{1/N} v^{(N-1)/N}.
    static ProfileCurve cone(double theta, double N);

    /// Sampled curve; grid strictly increasing, values nonnegative.
    static ProfileCurve sampled(std::vector<double> grid, std::vector<double> values,
                                double N, double K,
                                double total_mass = std::numeric_limits<double>::infinity(),
                                double v0 = 1.0);

    double operator()(double v) const;  // closed form or linear interpolation

    double N() const { return N_; }
    double K() const { return K_; }
    double v0() const { return v0_; }
    double total_mass() const { return total_mass_; }
    bool closed_form() const { return theta_.has_value(); }
    std::optional<double> theta() const { return theta_; }

    /// The grid this curve is checked on: the sample grid, or for closed
    /// forms a geometric grid on [vmin, vmax].
    std::vector<double> grid(double vmin = 0.1, double vmax = 10.0, int samples = 64) const;

    /// psi = I^{N/(N-1)} at a volume.
    double psi(double v) const;

    /// Rescale total mass to 1 keeping the shape (normalized profile
    /// Ibar(v) = I(mass * v)); requires finite mass.
    double normalized(double v) const;

    std::string to_json() const;
    static ProfileCurve from_json(const std::string& text);
    std::string to_csv() const;  // header "v,I"
    static ProfileCurve from_csv(const std::string& text, double N, double K,
                                 double total_mass = std::numeric_limits<double>::infinity());

private:
    ProfileCurve() = default;
    double N_ = 2.0;
    double K_ = 0.0;
    double v0_ = 1.0;
    double total_mass_ = std::numeric_limits<double>::infinity();
    std::optional<double> theta_;  // set for closed-form cones
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// Builds the sampled profile of the space form of curvature K > 0 via
/// spherical caps: v = v(N,K,t), I = s(N,K,t) over geodesic radii t.
ProfileCurve space_form_profile(double K, double N, int samples = 256);

/// Result of the split minimization defining the profile of a disjoint union.
struct SplitResult {
    double value = 0.0;
    std::vector<std::pair<std::size_t, double>> allocation;  // (part, volume)
};

ProfileCurve cone_profile(double theta, double N);

/// Sharp lower bound N omega_N^{1/N} avr^{1/N} v^{(N-1)/N}.
double sharp_lower_bound(double N, double avr, double v);

/// I(v) >= sharp_lower_bound on the grid; equality points (within tol) are
/// recorded as rigidity locations.  Requires K = 0.
VerificationReport check_sharp_inequality(const ProfileCurve& curve, double avr, double tol);

/// Second-order viscosity inequalities by centered differences:
///   -I'' I >= K + (I')^2/(N-1)   and   -psi'' >= K N/(N-1) psi^{(2-N)/N}.
VerificationReport check_viscosity_inequality(const ProfileCurve& curve, double tol);

/// Discrete concavity of psi = I^{N/(N-1)}, nonincreasing I(v)/v^{(N-1)/N},
/// and (for infinite mass) nondecreasing I.  Requires K = 0.
VerificationReport check_concavity_and_monotonicity(const ProfileCurve& curve);

struct Asymptotics {
    double small_limit = 0.0;
    std::optional<double> large_limit;
    std::optional<double> derivative_limit;
};

/// Extrapolated limits of I/v^{(N-1)/N} at both ends and of v^{1/N} I'(v)
/// at the large end.  Large-volume entries absent for finite total mass.
Asymptotics asymptotics(const ProfileCurve& curve);

/// Profile of a disjoint union at volume v: minimize sum I_j(v_j) subject to
/// sum v_j = v.  Exhaustive over split_grid points for <= 3 parts, with a
/// coordinate-descent refinement; pairwise merging beyond.
SplitResult generalized_profile(const std::vector<ProfileCurve>& parts, double v,
                                int split_grid = 100);

/// Grid volumes where the curve meets the sharp cone value within tol.
std::vector<double> rigidity_scan(const ProfileCurve& curve, double avr, double tol);

/// sup over a shared normalized-volume grid of |Ibar_a/Ibar_b - 1|.
/// Both curves must have finite total mass.
double normalized_profile_ratio(const ProfileCurve& curve_a, const ProfileCurve& curve_b,
                                double endpoint_margin = 0.01, int samples = 512);

std::string report_to_json(const VerificationReport& rep);

}  // namespace isotk::profile
