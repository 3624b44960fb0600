#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "isotk/barriers.hpp"
#include "isotk/comparison.hpp"
#include "isotk/epsreg.hpp"
#include "isotk/profile.hpp"
#include "isotk/rearrangement.hpp"
#include "isotk/spaces.hpp"

namespace {

using nlohmann::json;
namespace cmp = isotk::comparison;
namespace prof = isotk::profile;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json report_json(const isotk::VerificationReport& r) {
    json j;
    j["check"] = r.check;
    j["pass"] = r.pass;
    j["worst_violation"] = r.worst_violation;
    j["at"] = r.at;
    j["tolerance"] = r.tol;
    j["rigidity_locations"] = r.rigidity_locations;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::vector<double> geometric_grid(double vmin, double vmax, int samples) {
    if (!(vmin > 0.0) || !(vmax > vmin) || samples < 2)
        throw CLI::ValidationError("--vmin/--vmax/--samples", "need 0 < vmin < vmax, samples >= 2");
    std::vector<double> g(samples);
    const double q = std::pow(vmax / vmin, 1.0 / (samples - 1));
    for (int i = 0; i < samples; ++i) g[i] = vmin * std::pow(q, i);
    g.back() = vmax;
    return g;
}

// profile curve of a space over a volume grid; cones in closed form,
// space forms by cap quadrature, unions of cones via split minimization
std::string profile_csv(const isotk::spaces::ModelSpace& space, const std::vector<double>& grid) {
    std::string out = "v,I\n";
    if (const auto* cone = std::get_if<isotk::spaces::Cone>(&space.v)) {
        const prof::ProfileCurve c = prof::cone_profile(cone->theta, cone->N);
        for (double v : grid) out += fmt(v) + "," + fmt(c(v)) + "\n";
        return out;
    }
    if (const auto* sf = std::get_if<isotk::spaces::SpaceForm>(&space.v)) {
        if (sf->K == 0.0) {
            const prof::ProfileCurve c = prof::cone_profile(1.0, sf->N);
            for (double v : grid) out += fmt(v) + "," + fmt(c(v)) + "\n";
            return out;
        }
        if (sf->K > 0.0) {
            const prof::ProfileCurve c = prof::space_form_profile(sf->K, sf->N, 2048);
            for (double v : grid) out += fmt(v) + "," + fmt(c(v)) + "\n";
            return out;
        }
        throw CLI::ValidationError("--space", "profiles for K < 0 space forms are not provided");
    }
    if (const auto* un = std::get_if<isotk::spaces::DisjointUnion>(&space.v)) {
        std::vector<prof::ProfileCurve> parts;
        for (const auto& p : un->parts) {
            const auto* cone = std::get_if<isotk::spaces::Cone>(&p->v);
            if (!cone)
                throw CLI::ValidationError("--space", "union profiles require cone parts");
            parts.push_back(prof::cone_profile(cone->theta, cone->N));
        }
        for (double v : grid)
            out += fmt(v) + "," + fmt(prof::generalized_profile(parts, v).value) + "\n";
        return out;
    }
    throw CLI::ValidationError("--space", "no profile for this space type");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"comparison-geometry toolkit"};
    app.require_subcommand(1);

    std::string out_path, format = "csv";

    // eval
    auto* eval = app.add_subcommand("eval", "comparison functions pointwise");
    double e_K = 0.0, e_N = 2.0, e_r = 1.0;
    std::optional<double> e_H;
    eval->add_option("--K", e_K);
    eval->add_option("--N", e_N);
    eval->add_option("--r", e_r)->required();
    eval->add_option("--H", e_H, "mean-curvature parameter for the Jacobian");

    // profile
    auto* profile = app.add_subcommand("profile", "emit a profile curve as CSV");
    std::string p_space;
    double p_vmin = 0.1, p_vmax = 10.0;
    int p_samples = 64;
    profile->add_option("--space", p_space, "space descriptor (JSON)")->required();
    profile->add_option("--vmin", p_vmin);
    profile->add_option("--vmax", p_vmax);
    profile->add_option("--samples", p_samples);

    // verify
    auto* verify = app.add_subcommand("verify", "run profile checks on a curve CSV");
    std::string v_curve;
    double v_N = 2.0, v_K = 0.0, v_tol = 1e-8;
    std::optional<double> v_avr;
    verify->add_option("--curve", v_curve, "curve CSV path")->required();
    verify->add_option("--N", v_N)->required();
    verify->add_option("--K", v_K);
    verify->add_option("--avr", v_avr);
    verify->add_option("--tol", v_tol);

    // barriers
    auto* barriers = app.add_subcommand("barriers", "barrier certificate consistency");
    std::string b_cert;
    double b_N = 2.0, b_per = 0.0, b_vol = 0.0, b_tol = 1e-8;
    std::optional<double> b_avr;
    barriers->add_option("--cert", b_cert, "existing certificate JSON path");
    barriers->add_option("--N", b_N);
    barriers->add_option("--perimeter", b_per);
    barriers->add_option("--volume", b_vol);
    barriers->add_option("--avr", b_avr);
    barriers->add_option("--tol", b_tol);

    // rearrange
    auto* rearrange = app.add_subcommand("rearrange", "monotone rearrangement u -> u*");
    std::string r_in;
    double r_N = 2.0;
    rearrange->add_option("--u", r_in, "sampled function CSV path")->required();
    rearrange->add_option("--N", r_N)->required();

    // spectral
    auto* spectral = app.add_subcommand("spectral", "model eigenvalue and comparison");
    double s_N = 2.0, s_p = 2.0, s_vol = 1.0, s_avr = 1.0, s_tol = 1e-6;
    std::optional<double> s_lambda;
    std::string s_curve;
    spectral->add_option("--N", s_N)->required();
    spectral->add_option("--p", s_p);
    spectral->add_option("--volume", s_vol);
    spectral->add_option("--avr", s_avr);
    spectral->add_option("--lambda", s_lambda, "eigenvalue to compare (default: model value)");
    spectral->add_option("--curve", s_curve, "profile curve CSV for the sharper bound");
    spectral->add_option("--tol", s_tol);

    // epsreg
    auto* epsreg = app.add_subcommand("epsreg", "delta <-> epsilon calibration");
    double g_N = 2.0;
    std::optional<double> g_eps, g_delta;
    epsreg->add_option("--N", g_N)->required();
    epsreg->add_option("--epsilon", g_eps);
    epsreg->add_option("--delta", g_delta);

    for (CLI::App* sub : {eval, profile, verify, barriers, rearrange, spectral, epsreg}) {
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*eval) {
            const auto cs = cmp::cos_sin_k(e_K, e_r);
            json j;
            j["K"] = e_K;
            j["N"] = e_N;
            j["r"] = e_r;
            j["sn"] = cmp::sn(e_K, e_r);
            j["cos_k"] = cs.cos_k;
            j["sin_k"] = cs.sin_k;
            j["model_ball_volume"] = cmp::model_ball_volume(e_N, e_K, e_r);
            j["model_sphere_area"] = cmp::model_sphere_area(e_N, e_K, e_r);
            if (e_H) j["jacobian"] = cmp::jacobian(*e_H, e_K, e_N, e_r);
            if (format == "json") {
                emit(j.dump(2) + "\n", out_path);
            } else {
                std::string csv = "quantity,value\n";
                for (auto& [k, v] : j.items())
                    if (v.is_number()) csv += k + "," + fmt(v.get<double>()) + "\n";
                emit(csv, out_path);
            }
            return 0;
        }

        if (*profile) {
            const auto space = isotk::spaces::space_from_json(p_space);
            emit(profile_csv(space, geometric_grid(p_vmin, p_vmax, p_samples)), out_path);
            return 0;
        }

        if (*verify) {
            const auto curve = prof::ProfileCurve::from_csv(slurp(v_curve), v_N, v_K);
            json reports = json::array();
            bool all_pass = true;
            if (v_K == 0.0 && v_avr) {
                const auto r = prof::check_sharp_inequality(curve, *v_avr, v_tol);
                all_pass = all_pass && r.pass;
                reports.push_back(report_json(r));
            }
            {
                const auto r = prof::check_viscosity_inequality(curve, std::max(v_tol, 1e-2));
                all_pass = all_pass && r.pass;
                reports.push_back(report_json(r));
            }
            if (v_K == 0.0) {
                const auto r = prof::check_concavity_and_monotonicity(curve);
                all_pass = all_pass && r.pass;
                reports.push_back(report_json(r));
            }
            const auto a = prof::asymptotics(curve);
            json ja;
            ja["small_limit"] = a.small_limit;
            if (a.large_limit) ja["large_limit"] = *a.large_limit;
            if (a.derivative_limit) ja["derivative_limit"] = *a.derivative_limit;
            json top;
            top["pass"] = all_pass;
            top["reports"] = reports;
            top["asymptotics"] = ja;
            emit(top.dump(2) + "\n", out_path);
            return all_pass ? 0 : 1;
        }

        if (*barriers) {
            isotk::barriers::BarrierCertificate cert;
            if (!b_cert.empty()) {
                cert = isotk::barriers::BarrierCertificate::from_json(slurp(b_cert));
            } else {
                cert = isotk::barriers::barrier_bounds(b_N, b_per, b_vol, b_avr, b_tol);
            }
            const bool rigid = isotk::barriers::barrier_rigidity_check(cert, b_tol);
            json j = json::parse(cert.to_json());
            j["rigidity_check"] = rigid;
            j["tolerance"] = b_tol;
            emit(j.dump(2) + "\n", out_path);
            return 0;
        }

        if (*rearrange) {
            const auto u = isotk::rearrangement::SampledFunction::from_csv(slurp(r_in), r_N);
            emit(isotk::rearrangement::monotone_rearrangement(u).to_csv(), out_path);
            return 0;
        }

        if (*spectral) {
            isotk::rearrangement::SolverOptions opts;
            const double model =
                isotk::rearrangement::p_eigenvalue_model(s_N, s_p, s_vol, opts);
            const double lambda = s_lambda.value_or(model);
            std::optional<prof::ProfileCurve> curve;
            if (!s_curve.empty())
                curve = prof::ProfileCurve::from_csv(slurp(s_curve), s_N, 0.0);
            const auto rep = isotk::rearrangement::p_spectral_comparison(
                lambda, s_N, s_avr, s_vol, s_p, curve ? &*curve : nullptr, s_tol);
            json j = report_json(rep);
            j["lambda"] = lambda;
            j["model_eigenvalue"] = model;
            emit(j.dump(2) + "\n", out_path);
            return rep.pass ? 0 : 1;
        }

        if (*epsreg) {
            if (!g_eps && !g_delta)
                throw CLI::ValidationError("--epsilon/--delta", "one of the two is required");
            std::string csv = "epsilon,delta,ratio_bound\n";
            json rows = json::array();
            auto add = [&](double eps, double delta) {
                const auto res =
                    isotk::epsreg::volume_lower_bound_from_profile(delta, g_N, 1.0, 1e-6);
                csv += fmt(eps) + "," + fmt(delta) + "," + fmt(res.ratio_bound) + "\n";
                rows.push_back({{"epsilon", eps}, {"delta", delta},
                                {"ratio_bound", res.ratio_bound},
                                {"radius_cap", res.radius_cap}});
            };
            if (g_eps) add(*g_eps, isotk::epsreg::delta_for_epsilon(*g_eps, g_N));
            if (g_delta) {
                const double wN = cmp::unit_ball_volume(g_N);
                const double eps =
                    1.0 - std::pow(1.0 - *g_delta / (g_N * std::pow(wN, 1.0 / g_N)), g_N);
                add(eps, *g_delta);
            }
            emit(format == "json" ? rows.dump(2) + "\n" : csv, out_path);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
