#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace isotk::spaces {

/// Simply connected model of constant sectional curvature K, dimension N,
/// balls centered at a pole.
struct SpaceForm {
    double K = 0.0;
    double N = 2.0;
};

/// Euclidean metric measure cone known through its opening theta (tip
/// density) and dimension; the cross-section is never materialized.
struct Cone {
    double theta = 1.0;  // in (0, 1]
    double N = 2.0;      // >= 2
};

/// Weighted half-line ([0, r_max), N omega_N r^{N-1} dr), the monotone
/// rearrangement target.
struct WeightedHalfLine {
    double N = 1.0;
    double r_max = std::numeric_limits<double>::infinity();
};

/// Warped product metric dt^2 + dr^2 + sigma(t,r)^2 dtheta^2 with a sampled
/// warping factor.  Optional analytic second derivatives take precedence
/// over finite differences.
struct WarpedExample {
    std::function<double(double, double)> sigma;
    // analytic (d2t, d2r, dtdr) if available
    std::function<double(double, double)> sigma_tt;
    std::function<double(double, double)> sigma_rr;
    std::function<double(double, double)> sigma_tr;
    std::string preset;  // name used for serialization, empty for ad-hoc fields
};

struct ModelSpace;

struct DisjointUnion {
    std::vector<std::shared_ptr<const ModelSpace>> parts;
};

/// Parametric descriptor of a comparison space.
struct ModelSpace {
    using Variant = std::variant<SpaceForm, Cone, WeightedHalfLine, WarpedExample, DisjointUnion>;
    Variant v;

    ModelSpace(SpaceForm s) : v(std::move(s)) {}
    ModelSpace(Cone s) : v(std::move(s)) {}
    ModelSpace(WeightedHalfLine s) : v(std::move(s)) {}
    ModelSpace(WarpedExample s) : v(std::move(s)) {}
    ModelSpace(DisjointUnion s) : v(std::move(s)) {}
};

/// Orthonormal-frame Ricci components of the warped metric of WarpedExample.
struct RicciComponents {
    double tt = 0.0;
    double rr = 0.0;
    double thth = 0.0;
    double tr = 0.0;
};

/// Dimension parameter N of the space (shared by all parts of a union).
double dimension(const ModelSpace& space);

/// Volume of the ball of radius r centered at the distinguished point (tip,
/// pole, or 0).  Cone: theta omega_N r^N.  SpaceForm: v(N,K,r).
double ball_volume(const ModelSpace& space, double r);

/// Perimeter of the same ball; the r-derivative of ball_volume.
double ball_perimeter(const ModelSpace& space, double r);

/// Asymptotic volume ratio lim vol(B_r)/(omega_N r^N).  Cone: theta,
/// flat space form: 1, K>0: 0 (compact), K<0: +infinity.
/// Throws for disjoint unions (no common base point at infinity).
double avr(const ModelSpace& space);

/// Volume density at the tip (theta for cones) or at a regular point (1).
double density(const ModelSpace& space, bool at_tip);

/// Minimum over all densities realized on the space (tips and regular
/// points; over all parts for unions).
double min_density_at_infinity(const ModelSpace& space);

/// Ricci components of g = dt^2 + dr^2 + sigma^2 dtheta^2 at (t, r):
///   Ric_tt = -sigma_tt/sigma, Ric_rr = -sigma_rr/sigma,
///   Ric_thth = -(sigma_tt + sigma_rr)/sigma, Ric_tr = -sigma_tr/sigma.
/// Second derivatives by Richardson-extrapolated centered differences of
/// step h unless the field supplies them analytically.
RicciComponents ricci_warped(const WarpedExample& field, double t, double r, double h = 1e-3);

ModelSpace make_union(std::vector<ModelSpace> parts);

/// JSON wire format: {"type":"cone"|"space_form"|"half_line"|"warped"|"union", ...}.
std::string to_json(const ModelSpace& space);
ModelSpace space_from_json(const std::string& text);

/// Warping factors available by name in the JSON format.
WarpedExample warped_preset(const std::string& name);

}  // namespace isotk::spaces
