#include "isotk/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "isotk/comparison.hpp"

namespace isotk::profile {

namespace cmp = isotk::comparison;
using nlohmann::json;

// ---------------------------------------------------------------- ProfileCurve

ProfileCurve ProfileCurve::cone(double theta, double N) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("cone profile: theta must lie in (0, 1]");
    if (N < 2.0) throw std::invalid_argument("cone profile: N must be >= 2");
    ProfileCurve c;
    c.N_ = N;
    c.K_ = 0.0;
    c.theta_ = theta;
    return c;
}

ProfileCurve ProfileCurve::sampled(std::vector<double> grid, std::vector<double> values,
                                   double N, double K, double total_mass, double v0) {
    if (grid.size() != values.size() || grid.size() < 2)
        throw std::invalid_argument("sampled profile: grid/value size mismatch or too short");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("sampled profile: grid must be strictly increasing");
        if (values[i] < 0.0)
            throw std::invalid_argument("sampled profile: values must be nonnegative");
    }
    ProfileCurve c;
    c.N_ = N;
    c.K_ = K;
    c.v0_ = v0;
    c.total_mass_ = total_mass;
    c.grid_ = std::move(grid);
    c.values_ = std::move(values);
    return c;
}

double ProfileCurve::operator()(double v) const {
    if (v <= 0.0) return 0.0;  // continuous extension I(0) = 0
    if (theta_) {
        return N_ * std::pow(cmp::unit_ball_volume(N_) * *theta_, 1.0 / N_) *
               std::pow(v, (N_ - 1.0) / N_);
    }
    // piecewise linear, end segments extended linearly
    auto it = std::lower_bound(grid_.begin(), grid_.end(), v);
    std::size_t hi = it == grid_.end() ? grid_.size() - 1 : std::size_t(it - grid_.begin());
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double t = (v - grid_[lo]) / (grid_[hi] - grid_[lo]);
    return values_[lo] + t * (values_[hi] - values_[lo]);
}

std::vector<double> ProfileCurve::grid(double vmin, double vmax, int samples) const {
    if (!theta_) return grid_;
    std::vector<double> g(samples);
    for (int i = 0; i < samples; ++i)
        g[i] = vmin * std::pow(vmax / vmin, double(i) / (samples - 1));
    return g;
}

double ProfileCurve::psi(double v) const { return std::pow((*this)(v), N_ / (N_ - 1.0)); }

double ProfileCurve::normalized(double v) const {
    if (std::isinf(total_mass_))
        throw std::domain_error("normalized profile requires finite total mass");
    return (*this)(total_mass_ * v);
}

std::string ProfileCurve::to_json() const {
    json j = {{"N", N_}, {"K", K_}, {"v0", v0_}};
    std::vector<double> g = grid_, vals = values_;
    if (theta_) {
        g = grid();
        vals.clear();
        for (double v : g) vals.push_back((*this)(v));
    }
    j["grid"] = g;
    j["values"] = vals;
    return j.dump();
}

ProfileCurve ProfileCurve::from_json(const std::string& text) {
    const json j = json::parse(text);
    return sampled(j.at("grid").get<std::vector<double>>(),
                   j.at("values").get<std::vector<double>>(),
                   j.at("N").get<double>(), j.at("K").get<double>(),
                   std::numeric_limits<double>::infinity(),
                   j.value("v0", 1.0));
}

std::string ProfileCurve::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "v,I\n";
    for (double v : grid()) os << v << "," << (*this)(v) << "\n";
    return os.str();
}

ProfileCurve ProfileCurve::from_csv(const std::string& text, double N, double K,
                                    double total_mass) {
    std::istringstream is(text);
    std::string line;
    std::vector<double> g, vals;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("v,", 0) == 0) { first = false; continue; }
        first = false;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("profile CSV: expected 'v,I' rows");
        g.push_back(std::stod(line.substr(0, comma)));
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    return sampled(std::move(g), std::move(vals), N, K, total_mass);
}

ProfileCurve cone_profile(double theta, double N) { return ProfileCurve::cone(theta, N); }

ProfileCurve space_form_profile(double K, double N, int samples) {
    if (K <= 0.0) throw std::invalid_argument("space_form_profile: needs K > 0 (compact model)");
    const double tmax = M_PI / std::sqrt(K);
    std::vector<double> g, vals;
    for (int i = 1; i <= samples; ++i) {
        const double t = tmax * double(i) / (samples + 1);
        g.push_back(cmp::model_ball_volume(N, K, t));
        vals.push_back(cmp::model_sphere_area(N, K, t));
    }
    // Ricci lower bound of the sectional-K model is (N-1)K.
    return ProfileCurve::sampled(std::move(g), std::move(vals), N, (N - 1.0) * K,
                                 cmp::model_ball_volume(N, K, tmax));
}

// ------------------------------------------------------------------- checks

double sharp_lower_bound(double N, double avr, double v) {
    if (avr < 0.0 || avr > 1.0) throw std::invalid_argument("sharp_lower_bound: avr in [0,1]");
    if (v < 0.0) throw std::invalid_argument("sharp_lower_bound: v >= 0");
    if (avr == 0.0 || v == 0.0) return 0.0;
    return N * std::pow(cmp::unit_ball_volume(N), 1.0 / N) * std::pow(avr, 1.0 / N) *
           std::pow(v, (N - 1.0) / N);
}

namespace {

void require_flat(const ProfileCurve& curve, const char* what) {
    if (curve.K() != 0.0)
        throw std::domain_error(std::string(what) + ": stated for curves with K = 0");
}

}  // namespace

VerificationReport check_sharp_inequality(const ProfileCurve& curve, double avr, double tol) {
    require_flat(curve, "check_sharp_inequality");
    VerificationReport rep;
    rep.check = "sharp_inequality";
    rep.tol = tol;
    for (double v : curve.grid()) {
        const double bound = sharp_lower_bound(curve.N(), avr, v);
        const double I = curve(v);
        const double scale = std::max(1.0, bound);
        const double deficit = (bound - I) / scale;
        if (deficit > tol) {
            rep.pass = false;
            if (deficit > rep.worst_violation) {
                rep.worst_violation = deficit;
                rep.at = v;
            }
        } else if (std::abs(I - bound) / scale <= tol) {
            rep.rigidity_locations.push_back(v);
        }
    }
    if (rep.rigid()) rep.note = "equality: space is a Euclidean metric measure cone at flagged volumes";
    return rep;
}

VerificationReport check_viscosity_inequality(const ProfileCurve& curve, double tol) {
    VerificationReport rep;
    rep.check = "viscosity_inequality";
    rep.tol = tol;
    const std::vector<double> g = curve.grid();
    if (g.size() < 5) throw std::invalid_argument("check_viscosity_inequality: need >= 5 grid points");

    const double N = curve.N(), K = curve.K();
    double worst = -std::numeric_limits<double>::infinity();
    double prev_d2 = 0.0;
    bool oscillating = false;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double h1 = g[i] - g[i - 1], h2 = g[i + 1] - g[i];
        auto d1 = [&](double fm, double f0, double fp) {
            return (h1 * h1 * fp + (h2 * h2 - h1 * h1) * f0 - h2 * h2 * fm) /
                   (h1 * h2 * (h1 + h2));
        };
        auto d2 = [&](double fm, double f0, double fp) {
            return 2.0 * (h1 * fp - (h1 + h2) * f0 + h2 * fm) / (h1 * h2 * (h1 + h2));
        };

        const double Im = curve(g[i - 1]), I0 = curve(g[i]), Ip = curve(g[i + 1]);
        const double DI = d1(Im, I0, Ip), D2I = d2(Im, I0, Ip);
        // margins relative to the magnitude of the left-hand side, so the
        // verdict is scale-free where the ODE terms blow up near v -> 0
        const double margin_I =
            ((K + DI * DI / (N - 1.0)) - (-D2I * I0)) / std::max(1.0, std::abs(D2I * I0));

        const double pm = curve.psi(g[i - 1]), p0 = curve.psi(g[i]), pp = curve.psi(g[i + 1]);
        const double D2psi = d2(pm, p0, pp);
        const double margin_psi =
            (K * N / (N - 1.0) * std::pow(p0, (2.0 - N) / N) - (-D2psi)) /
            std::max(1.0, std::abs(D2psi));

        const double m = std::max(margin_I, margin_psi);
        if (m > worst) {
            worst = m;
            rep.at = g[i];
        }
        if (i > 1 && D2I * prev_d2 < 0.0 && std::abs(D2I - prev_d2) > 10.0 * tol)
            oscillating = true;
        prev_d2 = D2I;
    }
    rep.worst_violation = worst;
    rep.pass = worst <= tol;
    if (oscillating)
        rep.note = "second differences oscillate beyond 10x tolerance; finite-difference check unreliable";
    return rep;
}

VerificationReport check_concavity_and_monotonicity(const ProfileCurve& curve) {
    require_flat(curve, "check_concavity_and_monotonicity");
    VerificationReport rep;
    rep.check = "concavity_and_monotonicity";
    const std::vector<double> g = curve.grid();
    const double N = curve.N();
    double worst = 0.0;

    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        // midpoint concavity of psi on the (possibly nonuniform) grid
        const double h1 = g[i] - g[i - 1], h2 = g[i + 1] - g[i];
        const double chord = (h2 * curve.psi(g[i - 1]) + h1 * curve.psi(g[i + 1])) / (h1 + h2);
        const double slack = std::max(1e-9, 1e-9 * std::abs(curve.psi(g[i])));
        const double viol = chord - curve.psi(g[i]);
        if (viol > slack && viol > worst) {
            worst = viol;
            rep.at = g[i];
            rep.pass = false;
            rep.note = "psi concavity violated";
        }
        rep.tol = slack;
    }

    double prev_ratio = std::numeric_limits<double>::infinity();
    double prev_I = 0.0;
    for (double v : g) {
        const double I = curve(v);
        const double ratio = I / std::pow(v, (N - 1.0) / N);
        const double slack = std::max(1e-9, 1e-9 * ratio);
        if (ratio > prev_ratio + slack) {
            rep.pass = false;
            if (ratio - prev_ratio > worst) {
                worst = ratio - prev_ratio;
                rep.at = v;
                rep.note = "scale-invariant ratio increased";
            }
        }
        if (std::isinf(curve.total_mass()) && I + slack < prev_I) {
            rep.pass = false;
            if (prev_I - I > worst) {
                worst = prev_I - I;
                rep.at = v;
                rep.note = "I decreased on an infinite-mass space";
            }
        }
        prev_ratio = ratio;
        prev_I = I;
    }
    rep.worst_violation = worst;
    return rep;
}

namespace {

// One Aitken delta-squared pass toward the limit of a slowly converging
// sequence; returns the last accelerated value.
double aitken_limit(const std::vector<double>& seq) {
    if (seq.size() < 3) return seq.back();
    std::vector<double> acc;
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
        const double d1 = seq[i + 1] - seq[i], d2 = seq[i + 2] - 2.0 * seq[i + 1] + seq[i];
        if (std::abs(d2) < 1e-14 * std::max(1.0, std::abs(seq[i]))) acc.push_back(seq[i + 2]);
        else acc.push_back(seq[i] - d1 * d1 / d2);
    }
    return acc.back();
}

}  // namespace

Asymptotics asymptotics(const ProfileCurve& curve) {
    const std::vector<double> g0 = curve.grid(1e-3, 1e3, 121);
    const double N = curve.N();
    const double span = g0.back() / g0.front();
    if (span < 1e2) throw std::invalid_argument("asymptotics: grid must span at least two decades");

    auto ratio = [&](double v) { return curve(v) / std::pow(v, (N - 1.0) / N); };

    Asymptotics out;
    // toward v -> 0: walk the smallest decade of the grid downward
    {
        std::vector<double> seq;
        for (std::size_t i = std::min<std::size_t>(12, g0.size()); i-- > 0;)
            seq.push_back(ratio(g0[i]));
        out.small_limit = aitken_limit(seq);
    }
    if (std::isinf(curve.total_mass())) {
        std::vector<double> seq;
        for (std::size_t i = g0.size() >= 12 ? g0.size() - 12 : 0; i < g0.size(); ++i)
            seq.push_back(ratio(g0[i]));
        out.large_limit = aitken_limit(seq);

        // v^{1/N} I'(v) by Richardson-extrapolated forward differences
        std::vector<double> dseq;
        for (std::size_t i = g0.size() >= 8 ? g0.size() - 8 : 0; i < g0.size(); ++i) {
            const double v = g0[i];
            auto fwd = [&](double h) { return (curve(v + h * v) - curve(v)) / (h * v); };
            const double d = 2.0 * fwd(5e-4) - fwd(1e-3);
            dseq.push_back(std::pow(v, 1.0 / N) * d);
        }
        out.derivative_limit = aitken_limit(dseq);
    }
    return out;
}

namespace {

// Minimize I_a(s) + rest(v - s) for s in [0, v]: coarse grid sweep then
// shrinking pattern search around the incumbent.
std::pair<double, double> min_pair_split(const std::function<double(double)>& a,
                                         const std::function<double(double)>& b,
                                         double v, int grid) {
    double best_s = 0.0, best = a(0.0) + b(v);
    for (int i = 0; i <= grid; ++i) {
        const double s = v * double(i) / grid;
        const double val = a(s) + b(v - s);
        if (val < best) { best = val; best_s = s; }
    }
    double step = v / grid;
    for (int iter = 0; iter < 60; ++iter) {
        bool moved = false;
        for (double cand : {best_s - step, best_s + step}) {
            if (cand < 0.0 || cand > v) continue;
            const double val = a(cand) + b(v - cand);
            if (val < best) { best = val; best_s = cand; moved = true; }
        }
        if (!moved) step *= 0.5;
        if (step < 1e-14 * std::max(v, 1.0)) break;
    }
    return {best, best_s};
}

}  // namespace

SplitResult generalized_profile(const std::vector<ProfileCurve>& parts, double v,
                                int split_grid) {
    if (parts.empty()) throw std::invalid_argument("generalized_profile: no parts");
    if (!(v > 0.0)) throw std::invalid_argument("generalized_profile: v must be positive");
    const double N = parts.front().N();
    for (const auto& p : parts)
        if (p.N() != N) throw std::invalid_argument("generalized_profile: dimension mismatch");

    SplitResult out;
    if (parts.size() == 1) {
        out.value = parts[0](v);
        out.allocation = {{0, v}};
        return out;
    }
    if (parts.size() == 2) {
        auto [val, s] = min_pair_split([&](double x) { return parts[0](x); },
                                       [&](double x) { return parts[1](x); }, v, split_grid);
        out.value = val;
        out.allocation = {{0, s}, {1, v - s}};
        return out;
    }
    if (parts.size() == 3) {
        double best = std::numeric_limits<double>::infinity();
        double b0 = 0.0, b1 = 0.0;
        for (int i = 0; i <= split_grid; ++i) {
            const double s0 = v * double(i) / split_grid;
            for (int j = 0; i + j <= split_grid; ++j) {
                const double s1 = v * double(j) / split_grid;
                const double val = parts[0](s0) + parts[1](s1) + parts[2](v - s0 - s1);
                if (val < best) { best = val; b0 = s0; b1 = s1; }
            }
        }
        // coordinate-descent refinement on the two free coordinates
        double step = v / split_grid;
        for (int iter = 0; iter < 80; ++iter) {
            bool moved = false;
            const double cands[4][2] = {{b0 - step, b1}, {b0 + step, b1},
                                        {b0, b1 - step}, {b0, b1 + step}};
            for (const auto& c : cands) {
                if (c[0] < 0.0 || c[1] < 0.0 || c[0] + c[1] > v) continue;
                const double val = parts[0](c[0]) + parts[1](c[1]) + parts[2](v - c[0] - c[1]);
                if (val < best) { best = val; b0 = c[0]; b1 = c[1]; moved = true; }
            }
            if (!moved) step *= 0.5;
            if (step < 1e-14 * std::max(v, 1.0)) break;
        }
        out.value = best;
        out.allocation = {{0, b0}, {1, b1}, {2, v - b0 - b1}};
        return out;
    }

    // > 3 parts: fold pairwise; the infimal convolution is associative.
    std::vector<ProfileCurve> head(parts.begin(), parts.end() - 1);
    const ProfileCurve& last = parts.back();
    auto head_value = [&](double x) -> double {
        if (x <= 0.0) return 0.0;
        return generalized_profile(head, x, split_grid).value;
    };
    auto [val, s] = min_pair_split(head_value, [&](double x) { return last(x); }, v, split_grid);
    out.value = val;
    if (s > 0.0) out.allocation = generalized_profile(head, s, split_grid).allocation;
    out.allocation.emplace_back(parts.size() - 1, v - s);
    return out;
}

std::vector<double> rigidity_scan(const ProfileCurve& curve, double avr, double tol) {
    require_flat(curve, "rigidity_scan");
    std::vector<double> hits;
    for (double v : curve.grid()) {
        const double bound = sharp_lower_bound(curve.N(), avr, v);
        if (std::abs(curve(v) - bound) <= tol * std::max(1.0, bound)) hits.push_back(v);
    }
    return hits;
}

double normalized_profile_ratio(const ProfileCurve& curve_a, const ProfileCurve& curve_b,
                                double endpoint_margin, int samples) {
    if (std::isinf(curve_a.total_mass()) || std::isinf(curve_b.total_mass()))
        throw std::domain_error("normalized_profile_ratio: both curves need finite total mass");
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double v = endpoint_margin +
                         (1.0 - 2.0 * endpoint_margin) * double(i) / (samples - 1);
        const double b = curve_b.normalized(v);
        if (b <= 0.0) continue;
        sup = std::max(sup, std::abs(curve_a.normalized(v) / b - 1.0));
    }
    return sup;
}

std::string report_to_json(const VerificationReport& rep) {
    json j = {{"check", rep.check},
              {"pass", rep.pass},
              {"worst_violation", rep.worst_violation},
              {"at", rep.at},
              {"tol", rep.tol}};
    if (!rep.rigidity_locations.empty()) j["rigidity_at"] = rep.rigidity_locations;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j.dump();
}

}  // namespace isotk::profile
