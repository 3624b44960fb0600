#include "isotk/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "isotk/comparison.hpp"

namespace isotk::spaces {

namespace cmp = isotk::comparison;
using nlohmann::json;

namespace {

void validate_cone(const Cone& c) {
    if (!(c.theta > 0.0 && c.theta <= 1.0))
        throw std::invalid_argument("Cone: theta must lie in (0, 1]");
    if (c.N < 2.0) throw std::invalid_argument("Cone: N must be >= 2");
}

}  // namespace

double dimension(const ModelSpace& space) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpaceForm>) return s.N;
            else if constexpr (std::is_same_v<T, Cone>) return s.N;
            else if constexpr (std::is_same_v<T, WeightedHalfLine>) return s.N;
            else if constexpr (std::is_same_v<T, WarpedExample>) return 3.0;
            else {
                if (s.parts.empty()) throw std::invalid_argument("union: no parts");
                return dimension(*s.parts.front());
            }
        },
        space.v);
}

double ball_volume(const ModelSpace& space, double r) {
    if (r < 0.0) throw std::domain_error("ball_volume: r must be nonnegative");
    return std::visit(
        [r](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpaceForm>) {
                return cmp::model_ball_volume(s.N, s.K, r);
            } else if constexpr (std::is_same_v<T, Cone>) {
                validate_cone(s);
                return s.theta * cmp::unit_ball_volume(s.N) * std::pow(r, s.N);
            } else if constexpr (std::is_same_v<T, WeightedHalfLine>) {
                const double rr = std::min(r, s.r_max);
                return cmp::unit_ball_volume(s.N) * std::pow(rr, s.N);
            } else {
                throw std::invalid_argument("ball_volume: unsupported space variant");
            }
        },
        space.v);
}

double ball_perimeter(const ModelSpace& space, double r) {
    if (r < 0.0) throw std::domain_error("ball_perimeter: r must be nonnegative");
    return std::visit(
        [r](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpaceForm>) {
                return cmp::model_sphere_area(s.N, s.K, r);
            } else if constexpr (std::is_same_v<T, Cone>) {
                validate_cone(s);
                return s.theta * s.N * cmp::unit_ball_volume(s.N) * std::pow(r, s.N - 1.0);
            } else if constexpr (std::is_same_v<T, WeightedHalfLine>) {
                if (r >= s.r_max) return 0.0;
                return s.N * cmp::unit_ball_volume(s.N) * std::pow(r, s.N - 1.0);
            } else {
                throw std::invalid_argument("ball_perimeter: unsupported space variant");
            }
        },
        space.v);
}

double avr(const ModelSpace& space) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpaceForm>) {
                if (s.K > 0.0) return 0.0;  // compact
                if (s.K == 0.0) return 1.0;
                return std::numeric_limits<double>::infinity();  // exponential growth
            } else if constexpr (std::is_same_v<T, Cone>) {
                validate_cone(s);
                return s.theta;
            } else if constexpr (std::is_same_v<T, WeightedHalfLine>) {
                return std::isinf(s.r_max) ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, DisjointUnion>) {
                throw std::invalid_argument("avr: not defined for disjoint unions");
            } else {
                throw std::invalid_argument("avr: unsupported space variant");
            }
        },
        space.v);
}

double density(const ModelSpace& space, bool at_tip) {
    return std::visit(
        [at_tip](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Cone>) {
                validate_cone(s);
                return at_tip ? s.theta : 1.0;
            } else {
                (void)s;
                return 1.0;
            }
        },
        space.v);
}

double min_density_at_infinity(const ModelSpace& space) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Cone>) {
                validate_cone(s);
                return s.theta;
            } else if constexpr (std::is_same_v<T, DisjointUnion>) {
                double m = std::numeric_limits<double>::infinity();
                for (const auto& p : s.parts) m = std::min(m, min_density_at_infinity(*p));
                return m;
            } else {
                (void)s;
                return 1.0;
            }
        },
        space.v);
}

namespace {

double second_derivative(const std::function<double(double, double)>& f,
                         double t, double r, double h, bool in_t) {
    auto d2 = [&](double step) {
        if (in_t) return (f(t + step, r) - 2.0 * f(t, r) + f(t - step, r)) / (step * step);
        return (f(t, r + step) - 2.0 * f(t, r) + f(t, r - step)) / (step * step);
    };
    // Richardson: error O(h^2) cancels between steps h and h/2.
    const double c1 = d2(h), c2 = d2(h / 2.0);
    return (4.0 * c2 - c1) / 3.0;
}

double mixed_derivative(const std::function<double(double, double)>& f,
                        double t, double r, double h) {
    auto dm = [&](double s) {
        return (f(t + s, r + s) - f(t + s, r - s) - f(t - s, r + s) + f(t - s, r - s)) /
               (4.0 * s * s);
    };
    const double c1 = dm(h), c2 = dm(h / 2.0);
    return (4.0 * c2 - c1) / 3.0;
}

}  // namespace

RicciComponents ricci_warped(const WarpedExample& field, double t, double r, double h) {
    if (!field.sigma) throw std::invalid_argument("ricci_warped: missing sigma field");
    const double sig = field.sigma(t, r);
    if (sig <= 0.0) throw std::domain_error("ricci_warped: sigma must be positive at the point");

    const double stt = field.sigma_tt ? field.sigma_tt(t, r)
                                      : second_derivative(field.sigma, t, r, h, true);
    const double srr = field.sigma_rr ? field.sigma_rr(t, r)
                                      : second_derivative(field.sigma, t, r, h, false);
    const double str = field.sigma_tr ? field.sigma_tr(t, r)
                                      : mixed_derivative(field.sigma, t, r, h);

    RicciComponents ric;
    ric.tt = -stt / sig;
    ric.rr = -srr / sig;
    ric.thth = -(stt + srr) / sig;
    ric.tr = -str / sig;
    return ric;
}

ModelSpace make_union(std::vector<ModelSpace> parts) {
    DisjointUnion u;
    double N = -1.0;
    for (auto& p : parts) {
        const double n = dimension(p);
        if (N < 0.0) N = n;
        else if (n != N) throw std::invalid_argument("union: all parts must share N");
        u.parts.push_back(std::make_shared<const ModelSpace>(std::move(p)));
    }
    if (u.parts.empty()) throw std::invalid_argument("union: no parts");
    return u;
}

WarpedExample warped_preset(const std::string& name) {
    WarpedExample w;
    w.preset = name;
    if (name == "flat_cone") {
        w.sigma = [](double, double r) { return r; };
    } else if (name == "round") {
        w.sigma = [](double, double r) { return std::sin(r); };
    } else if (name == "half_opening") {
        // concave smoothing with asymptotic slope 1/2: sigma' = (1+e^{-r})/2
        w.sigma = [](double, double r) { return 0.5 * (r + 1.0 - std::exp(-r)); };
    } else {
        throw std::invalid_argument("unknown warped preset: " + name);
    }
    return w;
}

namespace {

json space_to_json_obj(const ModelSpace& space) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SpaceForm>) {
                return {{"type", "space_form"}, {"K", s.K}, {"N", s.N}};
            } else if constexpr (std::is_same_v<T, Cone>) {
                return {{"type", "cone"}, {"theta", s.theta}, {"dim", s.N}};
            } else if constexpr (std::is_same_v<T, WeightedHalfLine>) {
                json j = {{"type", "half_line"}, {"N", s.N}};
                if (!std::isinf(s.r_max)) j["r_max"] = s.r_max;
                return j;
            } else if constexpr (std::is_same_v<T, WarpedExample>) {
                if (s.preset.empty())
                    throw std::invalid_argument("warped space with ad-hoc sigma is not serializable");
                return {{"type", "warped"}, {"sigma", s.preset}};
            } else {
                json parts = json::array();
                for (const auto& p : s.parts) parts.push_back(space_to_json_obj(*p));
                return {{"type", "union"}, {"parts", parts}};
            }
        },
        space.v);
}

ModelSpace space_from_json_obj(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "space_form") {
        return SpaceForm{j.at("K").get<double>(), j.at("N").get<double>()};
    }
    if (type == "cone") {
        Cone c{j.at("theta").get<double>(), j.at("dim").get<double>()};
        validate_cone(c);
        return c;
    }
    if (type == "half_line") {
        WeightedHalfLine h;
        h.N = j.at("N").get<double>();
        if (j.contains("r_max")) h.r_max = j.at("r_max").get<double>();
        return h;
    }
    if (type == "warped") {
        return warped_preset(j.at("sigma").get<std::string>());
    }
    if (type == "union") {
        std::vector<ModelSpace> parts;
        for (const auto& pj : j.at("parts")) parts.push_back(space_from_json_obj(pj));
        return make_union(std::move(parts));
    }
    throw std::invalid_argument("unknown space type: " + type);
}

}  // namespace

std::string to_json(const ModelSpace& space) { return space_to_json_obj(space).dump(); }

ModelSpace space_from_json(const std::string& text) {
    return space_from_json_obj(json::parse(text));
}

}  // namespace isotk::spaces
