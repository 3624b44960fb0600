#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isotk/profile.hpp"
#include "isotk/report.hpp"

namespace isotk::rearrangement {

/// Nonnegative function on a discretized weighted radial domain: cell nodes,
/// values, and positive cell measures.  N fixes the rearrangement target
/// measure m_N = N omega_N r^{N-1} dr.
struct SampledFunction {
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> weights;
    double N = 2.0;

    double mass() const;
    void validate() const;

    std::string to_csv() const;  // header "node,value,weight"
    static SampledFunction from_csv(const std::string& text, double N);
};

/// Distribution function samples (t, mu(t)) with mu nonincreasing.
using DistributionFunction = std::vector<std::pair<double, double>>;

/// mu(t) = sum of weights over cells with value > t, at the given sorted levels.
DistributionFunction distribution_function(const SampledFunction& u,
                                           const std::vector<double>& levels);

/// Generalized inverse u#(s) = inf{ t : mu(t) <= s } of a nonincreasing
/// step distribution function.
class GeneralizedInverse {
public:
    explicit GeneralizedInverse(DistributionFunction mu);
    double operator()(double s) const;

private:
    DistributionFunction mu_;  // sorted by level t ascending
};

/// Monotone rearrangement u* on [0, r_max] with omega_N r_max^N = mass(u).
/// Stored as the exact equimeasurable step function: u* = value_k on
/// (x_{k-1}, x_k], breakpoints from cumulative sorted masses.
struct RearrangedFunction {
    double N = 2.0;
    double r_max = 0.0;
    std::vector<double> breakpoints;  // x_0 = 0 < ... < x_m = r_max
    std::vector<double> cell_values;  // nonincreasing, size m

    double operator()(double x) const;

    /// (node, value) samples suitable for dirichlet_energy_p: node x_k
    /// carries the value of the cell ending there.
    std::vector<double> nodes() const;
    std::vector<double> values() const;

    std::string to_csv() const;  // header "x,u_star"
};

RearrangedFunction monotone_rearrangement(const SampledFunction& u);

/// Discrete p-Dirichlet energy of samples f on [0, r_max] under m_N:
/// sum over cells of |df/dx|^p * m_N(cell).
double dirichlet_energy_p(const std::vector<double>& nodes, const std::vector<double>& values,
                          double N, double p);

/// f_u(t): |grad u*|^{p-1} integrated against Per({u* > t}) on the half-line,
/// evaluated from sampled (nodes, values) by inverting the level t.
double coarea_density(const std::vector<double>& nodes, const std::vector<double>& values,
                      double N, double p, double t);

/// Polya-Szego comparison: ambient_energy >= (I(vol)/I_N(vol))^p E_p(u*) - tol.
/// When avr is given the weaker avr^{p/N} form is evaluated too and both
/// margins reported.  Profile must have K = 0.
VerificationReport polya_szego_check(const SampledFunction& u, double ambient_energy,
                                     const profile::ProfileCurve& curve, double p,
                                     double tol, std::optional<double> avr = std::nullopt);

struct SolverOptions {
    int grid_points = 2000;
    int max_iters = 400;
    double tol = 1e-12;

    std::string to_json() const;
    static SolverOptions from_json(const std::string& text);
};

/// First Dirichlet p-Laplacian eigenvalue of the ball of volume v in R^N,
/// by minimizing the radial Rayleigh quotient with f(r_ball) = 0.
double p_eigenvalue_model(double N, double p, double v, const SolverOptions& opts = {});

/// Cached C_{p,N} = p_eigenvalue_model(N, p, 1), so I_{p,N}(v) = C v^{-p/N}.
double model_eigenvalue_constant(double N, double p);

/// Checks lambda >= (I(v)/I_N(v))^p I_{p,N}(v) (when a profile is given) and
/// lambda >= avr^{p/N} I_{p,N}(v); flags spectral rigidity at equality.
VerificationReport p_spectral_comparison(double lambda, double N, double avr, double v,
                                         double p,
                                         const profile::ProfileCurve* curve = nullptr,
                                         double tol = 1e-6);

}  // namespace isotk::rearrangement
