#include "isotk/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "isotk/comparison.hpp"

namespace isotk::rearrangement {

namespace cmp = isotk::comparison;
using nlohmann::json;

// ------------------------------------------------------------ SampledFunction

double SampledFunction::mass() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void SampledFunction::validate() const {
    if (nodes.size() != values.size() || nodes.size() != weights.size() || nodes.empty())
        throw std::invalid_argument("SampledFunction: size mismatch");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("SampledFunction: nodes must be strictly increasing");
        if (values[i] < 0.0) throw std::invalid_argument("SampledFunction: values must be >= 0");
        if (!(weights[i] > 0.0)) throw std::invalid_argument("SampledFunction: weights must be > 0");
    }
}

std::string SampledFunction::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "node,value,weight\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        os << nodes[i] << "," << values[i] << "," << weights[i] << "\n";
    return os.str();
}

SampledFunction SampledFunction::from_csv(const std::string& text, double N) {
    SampledFunction u;
    u.N = N;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("node,", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream row(line);
        std::string cell;
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(row, cell, ','))
                throw std::invalid_argument("SampledFunction CSV: expected node,value,weight rows");
            vals[c] = std::stod(cell);
        }
        u.nodes.push_back(vals[0]);
        u.values.push_back(vals[1]);
        u.weights.push_back(vals[2]);
    }
    u.validate();
    return u;
}

// ------------------------------------------------------- distribution / inverse

DistributionFunction distribution_function(const SampledFunction& u,
                                           const std::vector<double>& levels) {
    u.validate();
    std::vector<std::pair<double, double>> vw(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) vw[i] = {u.values[i], u.weights[i]};
    std::sort(vw.begin(), vw.end());
    // suffix[i] = mass of cells with value strictly above vw[i].first
    std::vector<double> suffix(vw.size() + 1, 0.0);
    for (std::size_t i = vw.size(); i-- > 0;) suffix[i] = suffix[i + 1] + vw[i].second;

    DistributionFunction out;
    out.reserve(levels.size());
    for (double t : levels) {
        auto it = std::upper_bound(vw.begin(), vw.end(), t,
                                   [](double lv, const auto& p) { return lv < p.first; });
        out.emplace_back(t, suffix[std::size_t(it - vw.begin())]);
    }
    return out;
}

GeneralizedInverse::GeneralizedInverse(DistributionFunction mu) : mu_(std::move(mu)) {
    std::sort(mu_.begin(), mu_.end());
    for (std::size_t i = 1; i < mu_.size(); ++i)
        if (mu_[i].second > mu_[i - 1].second + 1e-15)
            throw std::invalid_argument("GeneralizedInverse: mu must be nonincreasing");
    if (mu_.empty()) throw std::invalid_argument("GeneralizedInverse: empty distribution");
}

double GeneralizedInverse::operator()(double s) const {
    // smallest level t with mu(t) <= s; mu is nonincreasing in t
    auto it = std::partition_point(mu_.begin(), mu_.end(),
                                   [s](const auto& p) { return p.second > s; });
    if (it == mu_.end()) return mu_.back().first;
    return it->first;
}

// ------------------------------------------------------ monotone rearrangement

double RearrangedFunction::operator()(double x) const {
    if (x < 0.0) throw std::domain_error("RearrangedFunction: x must be nonnegative");
    if (x > r_max) return 0.0;
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
    std::size_t k = std::size_t(it - breakpoints.begin());
    if (k == 0) return cell_values.empty() ? 0.0 : cell_values.front();
    return cell_values[k - 1];
}

std::vector<double> RearrangedFunction::nodes() const { return breakpoints; }

std::vector<double> RearrangedFunction::values() const {
    std::vector<double> v;
    v.reserve(breakpoints.size());
    if (cell_values.empty()) return v;
    v.push_back(cell_values.front());
    for (double cv : cell_values) v.push_back(cv);
    return v;
}

std::string RearrangedFunction::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "x,u_star\n";
    const auto xs = nodes();
    const auto vs = values();
    for (std::size_t i = 0; i < xs.size(); ++i) os << xs[i] << "," << vs[i] << "\n";
    return os.str();
}

RearrangedFunction monotone_rearrangement(const SampledFunction& u) {
    u.validate();
    const double wN = cmp::unit_ball_volume(u.N);
    std::vector<std::pair<double, double>> vw(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) vw[i] = {u.values[i], u.weights[i]};
    std::sort(vw.begin(), vw.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    RearrangedFunction out;
    out.N = u.N;
    out.breakpoints.push_back(0.0);
    double cum = 0.0;
    for (std::size_t i = 0; i < vw.size();) {
        // merge equal-value cells into one plateau
        double w = 0.0;
        const double val = vw[i].first;
        while (i < vw.size() && vw[i].first == val) w += vw[i++].second;
        cum += w;
        out.breakpoints.push_back(std::pow(cum / wN, 1.0 / u.N));
        out.cell_values.push_back(val);
    }
    out.r_max = out.breakpoints.back();
    return out;
}

// --------------------------------------------------------------- energies

double dirichlet_energy_p(const std::vector<double>& nodes, const std::vector<double>& values,
                          double N, double p) {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw std::invalid_argument("dirichlet_energy_p: need matching samples");
    if (!(p > 1.0)) throw std::invalid_argument("dirichlet_energy_p: p must be > 1");
    const double wN = cmp::unit_ball_volume(N);
    double E = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double dx = nodes[i + 1] - nodes[i];
        if (dx <= 0.0) continue;
        const double slope = (values[i + 1] - values[i]) / dx;
        const double cell_mass = wN * (std::pow(nodes[i + 1], N) - std::pow(nodes[i], N));
        E += std::pow(std::abs(slope), p) * cell_mass;
    }
    return E;
}

double coarea_density(const std::vector<double>& nodes, const std::vector<double>& values,
                      double N, double p, double t) {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw std::invalid_argument("coarea_density: need matching samples");
    if (t >= values.front() || t < values.back()) return 0.0;
    // values are nonincreasing: locate the crossing cell
    std::size_t i = 0;
    while (i + 1 < values.size() && values[i + 1] > t) ++i;
    const double dx = nodes[i + 1] - nodes[i];
    const double dv = values[i] - values[i + 1];
    if (dv <= 0.0 || dx <= 0.0) return 0.0;
    const double x = nodes[i] + (values[i] - t) / dv * dx;
    const double slope = dv / dx;
    return std::pow(slope, p - 1.0) * N * cmp::unit_ball_volume(N) * std::pow(x, N - 1.0);
}

VerificationReport polya_szego_check(const SampledFunction& u, double ambient_energy,
                                     const profile::ProfileCurve& curve, double p,
                                     double tol, std::optional<double> avr) {
    if (curve.K() != 0.0)
        throw std::domain_error("polya_szego_check: stated for profiles with K = 0");
    VerificationReport rep;
    rep.check = "polya_szego";
    rep.tol = tol;

    const double vol = u.mass();
    const RearrangedFunction ustar = monotone_rearrangement(u);
    const double Estar = dirichlet_energy_p(ustar.nodes(), ustar.values(), u.N, p);
    const double IN = profile::sharp_lower_bound(u.N, 1.0, vol);
    const double factor = std::pow(curve(vol) / IN, p);

    const double scale = std::max(1.0, ambient_energy);
    const double margin_profile = (ambient_energy - factor * Estar) / scale;
    rep.worst_violation = -margin_profile;
    rep.at = vol;
    rep.pass = margin_profile >= -tol;

    std::ostringstream note;
    note.precision(6);
    note << "profile-form margin " << margin_profile;
    if (avr) {
        const double margin_avr = (ambient_energy - std::pow(*avr, p / u.N) * Estar) / scale;
        note << "; avr-form margin " << margin_avr;
        if (margin_avr < -tol) rep.pass = false;
        rep.worst_violation = std::max(rep.worst_violation, -margin_avr);
    }
    rep.note = note.str();
    return rep;
}

// ----------------------------------------------------------- eigenvalue solver

namespace {

// Tridiagonal solve (Thomas), diagonals (lower, diag, upper), overwrites rhs.
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

}  // namespace

double p_eigenvalue_model(double N, double p, double v, const SolverOptions& opts) {
    if (N < 1.0 || !(p > 1.0) || !(v > 0.0))
        throw std::invalid_argument("p_eigenvalue_model: need N >= 1, p > 1, v > 0");
    const double wN = cmp::unit_ball_volume(N);
    const double R = std::pow(v / wN, 1.0 / N);
    const int M = opts.grid_points;
    const double h = R / M;

    std::vector<double> cell_mass(M);
    for (int j = 0; j < M; ++j)
        cell_mass[j] = wN * (std::pow((j + 1) * h, N) - std::pow(j * h, N));

    // unknowns f_0..f_{M-1}; f_M = 0 (Dirichlet at the outer node)
    std::vector<double> f(M);
    for (int j = 0; j < M; ++j) {
        const double x = j * h;
        f[j] = 1.0 - (x / R) * (x / R);
    }

    auto quotient = [&](const std::vector<double>& g) {
        double E = 0.0, Ms = 0.0;
        for (int j = 0; j < M; ++j) {
            const double gp = (j + 1 < M ? g[j + 1] : 0.0);
            const double d = (gp - g[j]) / h;
            const double mid = 0.5 * (g[j] + gp);
            E += std::pow(std::abs(d), p) * cell_mass[j];
            Ms += std::pow(std::abs(mid), p) * cell_mass[j];
        }
        return E / Ms;
    };

    double lambda = quotient(f);
    const double slope_floor = 1e-10 / R;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        // linearized stiffness and mass weights at the current iterate
        std::vector<double> a(M), b(M);
        for (int j = 0; j < M; ++j) {
            const double fp = (j + 1 < M ? f[j + 1] : 0.0);
            const double d = std::max(std::abs((fp - f[j]) / h), slope_floor);
            const double mid = std::max(std::abs(0.5 * (f[j] + fp)), 1e-300);
            a[j] = std::pow(d, p - 2.0) * cell_mass[j] / (h * h);
            b[j] = std::pow(mid, p - 2.0) * cell_mass[j];
        }
        std::vector<double> lower(M, 0.0), diag(M, 0.0), upper(M, 0.0), rhs(M, 0.0);
        for (int i = 0; i < M; ++i) {
            diag[i] = a[i] + (i > 0 ? a[i - 1] : 0.0);
            if (i + 1 < M) upper[i] = -a[i];
            if (i > 0) lower[i] = -a[i - 1];
        }
        // rhs = B f with the midpoint-coupled mass matrix
        for (int i = 0; i < M; ++i) {
            const double fm = (i > 0 ? f[i - 1] : f[i]);  // natural at 0: mirror
            const double fp = (i + 1 < M ? f[i + 1] : 0.0);
            double r = b[i] / 4.0 * (f[i] + fp);
            if (i > 0) r += b[i - 1] / 4.0 * (fm + f[i]);
            rhs[i] = r;
        }
        std::vector<double> fnew = solve_tridiagonal(lower, diag, upper, std::move(rhs));
        double fmax = 0.0;
        for (double& x : fnew) {
            if (x < 0.0) x = 0.0;  // projection onto the nonnegative cone
            fmax = std::max(fmax, x);
        }
        if (fmax <= 0.0) throw std::runtime_error("p_eigenvalue_model: iterate collapsed");
        for (double& x : fnew) x /= fmax;
        // under-relaxation keeps the Picard map from oscillating for p != 2
        if (p != 2.0) {
            double mmax = 0.0;
            for (int j = 0; j < M; ++j) {
                fnew[j] = 0.5 * (fnew[j] + f[j]);
                mmax = std::max(mmax, fnew[j]);
            }
            for (double& x : fnew) x /= mmax;
        }

        const double next = quotient(fnew);
        f = std::move(fnew);
        if (std::abs(next - lambda) <= opts.tol * std::max(1.0, std::abs(lambda))) {
            return next;
        }
        lambda = next;
    }
    throw std::runtime_error("p_eigenvalue_model: no convergence within max_iters");
}

double model_eigenvalue_constant(double N, double p) {
    static std::map<std::pair<double, double>, double> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({N, p});
    if (it != cache.end()) return it->second;
    const double c = p_eigenvalue_model(N, p, 1.0);
    cache[{N, p}] = c;
    return c;
}

VerificationReport p_spectral_comparison(double lambda, double N, double avr, double v,
                                         double p, const profile::ProfileCurve* curve,
                                         double tol) {
    if (!(lambda > 0.0) || !(v > 0.0) || !(avr >= 0.0))
        throw std::invalid_argument("p_spectral_comparison: inputs must be positive");
    VerificationReport rep;
    rep.check = "p_spectral_comparison";
    rep.tol = tol;
    rep.at = v;

    const double IpN = model_eigenvalue_constant(N, p) * std::pow(v, -p / N);
    const double avr_bound = std::pow(avr, p / N) * IpN;
    const double scale = std::max(1.0, lambda);

    double worst = (avr_bound - lambda) / scale;
    if (curve) {
        const double IN = profile::sharp_lower_bound(N, 1.0, v);
        const double profile_bound = std::pow((*curve)(v) / IN, p) * IpN;
        worst = std::max(worst, (profile_bound - lambda) / scale);
    }
    rep.worst_violation = worst;
    rep.pass = worst <= tol;
    if (rep.pass && std::abs(lambda - avr_bound) / scale <= tol) {
        rep.rigidity_locations.push_back(v);
        rep.note = "spectral equality: space consistent with a metric measure cone";
    }
    return rep;
}

std::string SolverOptions::to_json() const {
    return json{{"grid_points", grid_points}, {"max_iters", max_iters}, {"tol", tol}}.dump();
}

SolverOptions SolverOptions::from_json(const std::string& text) {
    const json j = json::parse(text);
    SolverOptions o;
    o.grid_points = j.value("grid_points", o.grid_points);
    o.max_iters = j.value("max_iters", o.max_iters);
    o.tol = j.value("tol", o.tol);
    return o;
}

}  // namespace isotk::rearrangement
