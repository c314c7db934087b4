// Command-line driver: verification suites, full/reduced simulations,
// reduction-gap comparison, and invariant-surface data emission.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kummer/integrate.hpp"
#include "kummer/momentum.hpp"
#include "kummer/reduction.hpp"
#include "kummer/surface.hpp"
#include "kummer/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace kummer;

/// 17 significant digits: doubles round-trip exactly through the text form.
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<int> parse_signature(const std::string& text) {
    std::vector<int> n;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad frequency '" + tok + "'");
        n.push_back(v);
    }
    if (n.empty()) throw std::invalid_argument("empty signature");
    return n;
}

/// Complex initial conditions are re,im pairs joined by ':' per coordinate.
PhasePoint parse_initial_condition(const std::string& text) {
    std::vector<Complex> coords;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        const auto comma = tok.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("coordinate '" + tok + "' is not re,im");
        coords.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
    if (coords.empty()) throw std::invalid_argument("empty initial condition");
    VectorXcd a(static_cast<int>(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j) a[static_cast<int>(j)] = coords[j];
    return PhasePoint::from_complex(a);
}

void parse_span(const std::string& text, double& t0, double& t1) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("time span must be t0:t1");
    t0 = std::stod(text.substr(0, colon));
    t1 = std::stod(text.substr(colon + 1));
    if (!(t1 > t0)) throw std::invalid_argument("time span must be increasing");
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("RESONANCE_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return static_cast<std::uint64_t>(v);
        throw std::invalid_argument("RESONANCE_SEED is not an integer");
    }
    return flag_seed;
}

json suite_to_json(const SuiteResult& suite) {
    json checks = json::array();
    for (const CheckReport& c : suite.checks)
        checks.push_back({{"name", c.name},
                          {"n_points", c.n_points},
                          {"max_residual", c.max_residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    return {{"seed", suite.seed},
            {"signature", suite.signature},
            {"preimage_multiplicity", suite.preimage_multiplicity},
            {"checks", checks}};
}

void write_text(const std::string& path, const std::string& body) {
    if (path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << body;
}

struct SimulationSetup {
    ResonanceSignature signature{{1}};
    ScalarField full_h;
    std::optional<ReducedHamiltonian> reduced_h;
};

SimulationSetup setup_for_preset(const std::string& preset, const std::string& sig_text) {
    if (preset == "res12")
        return {ResonanceSignature({1, 2}), full_hamiltonian_res12(), reduced_hamiltonian_res12()};
    if (preset == "res112")
        return {ResonanceSignature({1, 1, 2}), full_hamiltonian_res112(),
                reduced_hamiltonian_res112()};
    if (preset == "harmonic") {
        if (sig_text.empty())
            throw std::invalid_argument("--preset harmonic requires --sig");
        ResonanceSignature sig(parse_signature(sig_text));
        std::optional<ReducedHamiltonian> reduced;
        if (sig.all_positive()) reduced = reduced_hamiltonian_harmonic(sig);
        return {sig, harmonic_hamiltonian(sig), reduced};
    }
    throw std::invalid_argument("unknown preset '" + preset + "'");
}

int cmd_verify(const std::string& sig_text, bool all, std::uint64_t seed, int points,
               const std::string& out_path) {
    std::vector<std::vector<int>> sigs;
    if (all) {
        sigs = preset_signatures();
    } else {
        if (sig_text.empty()) throw std::invalid_argument("pass --sig or --all");
        sigs.push_back(parse_signature(sig_text));
    }

    json reports = json::array();
    bool ok = true;
    for (const auto& n : sigs) {
        const SuiteResult suite = run_verification_suite(ResonanceSignature(n), seed, points);
        ok = ok && suite.all_pass();
        reports.push_back(suite_to_json(suite));
        for (const CheckReport& c : suite.checks)
            std::cerr << (c.pass ? "pass " : "FAIL ") << suite.signature << " " << c.name
                      << "  residual=" << c.max_residual << " tol=" << c.tolerance << "\n";
    }
    write_text(out_path, (sigs.size() == 1 ? reports[0] : reports).dump(2) + "\n");
    return ok ? 0 : 1;
}

int cmd_simulate(const std::string& preset, const std::string& sig_text,
                 const std::string& space, const std::string& y0_text,
                 const std::string& span_text, const IntegratorConfig& base_cfg,
                 const std::string& format, const std::string& out_path) {
    SimulationSetup setup = setup_for_preset(preset, sig_text);
    const PhasePoint y0 = parse_initial_condition(y0_text);
    if (y0.dim() != setup.signature.dim())
        throw std::invalid_argument("initial condition has " + std::to_string(y0.dim()) +
                                    " coordinates, preset needs " +
                                    std::to_string(setup.signature.dim()));
    IntegratorConfig cfg = base_cfg;
    parse_span(span_text, cfg.t0, cfg.t1);
    const auto spec = MomentumMapSpec::for_signature(setup.signature);

    Trajectory traj;
    std::vector<std::string> state_cols;
    NamedFunctions monitors;
    if (space == "full") {
        traj = integrate(full_dynamics_field(setup.full_h, setup.signature.weights()),
                         y0.reals(), cfg);
        for (int j = 0; j < setup.signature.dim(); ++j) {
            state_cols.push_back("a" + std::to_string(j + 1) + "_re");
            state_cols.push_back("a" + std::to_string(j + 1) + "_im");
        }
        monitors["R"] = [sig = setup.signature](const VectorXd& y) {
            return r_invariant(sig, PhasePoint(VectorXd(y)));
        };
        monitors["H"] = [h = setup.full_h](const VectorXd& y) {
            return h.value(PhasePoint(VectorXd(y)));
        };
    } else if (space == "reduced") {
        if (!setup.reduced_h)
            throw std::invalid_argument("preset '" + preset + "' has no reduced form");
        const CoadjointVector mu0 = j_resonant(spec, y0);
        traj = integrate(reduced_dynamics_field(spec.algebra, *setup.reduced_h), mu0.mu, cfg);
        for (int j = 0; j < spec.algebra->dim(); ++j)
            state_cols.push_back("mu_" + std::to_string(j + 1));
        monitors["h"] = [h = *setup.reduced_h](const VectorXd& mu) { return h.value(mu); };
        if (spec.algebra->dim() == 3) {
            monitors["norm_mu"] = [](const VectorXd& mu) { return mu.norm(); };
        } else if (spec.algebra->has_symmetric_constants()) {
            monitors["C2"] = [alg = spec.algebra](const VectorXd& mu) {
                return casimir_c2(CoadjointVector(mu, alg));
            };
            monitors["C3"] = [alg = spec.algebra](const VectorXd& mu) {
                return casimir_c3(CoadjointVector(mu, alg));
            };
        }
    } else {
        throw std::invalid_argument("--space must be full or reduced");
    }
    attach_monitors(traj, monitors);

    std::ostringstream body;
    if (format == "csv") {
        body << "t";
        for (const auto& c : state_cols) body << "," << c;
        for (const auto& [name, series] : traj.monitors) body << "," << name;
        body << "\n";
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            body << fmt(traj.times[i]);
            for (int j = 0; j < traj.states[i].size(); ++j)
                body << "," << fmt(traj.states[i][j]);
            for (const auto& [name, series] : traj.monitors) body << "," << fmt(series[i]);
            body << "\n";
        }
        if (!traj.completed()) body << "# status: " << traj.diagnostic << "\n";
    } else if (format == "json") {
        json doc;
        doc["preset"] = preset;
        doc["space"] = space;
        doc["status"] = to_string(traj.status);
        if (!traj.completed()) doc["diagnostic"] = traj.diagnostic;
        doc["columns"] = state_cols;
        doc["times"] = traj.times;
        json states = json::array();
        for (const VectorXd& s : traj.states)
            states.push_back(std::vector<double>(s.data(), s.data() + s.size()));
        doc["states"] = states;
        doc["monitors"] = traj.monitors;
        body << doc.dump(2) << "\n";
    } else {
        throw std::invalid_argument("--format must be csv or json");
    }
    write_text(out_path, body.str());
    return traj.completed() ? 0 : 1;
}

int cmd_compare(const std::string& preset, std::string y0_text, std::string span_text,
                double tol, const IntegratorConfig& base_cfg, int samples,
                const std::string& out_path) {
    SimulationSetup setup = setup_for_preset(preset, "");
    if (!setup.reduced_h)
        throw std::invalid_argument("preset '" + preset + "' has no reduced form");
    if (y0_text.empty()) y0_text = preset == "res112" ? "1,0:0.8,0:0.6,0" : "1,0:0.5,0";
    if (span_text.empty()) span_text = preset == "res112" ? "0:0.5" : "0:2";
    if (tol <= 0.0) tol = preset == "res112" ? 1e-5 : 1e-6;

    const PhasePoint y0 = parse_initial_condition(y0_text);
    if (y0.dim() != setup.signature.dim())
        throw std::invalid_argument("initial condition dimension mismatch");
    double t0 = 0.0, t1 = 1.0;
    parse_span(span_text, t0, t1);

    const CommuteReport rep = check_reduction_commutes(setup.signature, setup.full_h,
                                                       *setup.reduced_h, y0, t0, t1, base_cfg,
                                                       samples);
    if (!rep.completed()) {
        std::cerr << "integration aborted: " << rep.diagnostic << "\n";
        return 1;
    }
    std::cout << "sup-norm gap = " << fmt(rep.gap) << "  (tolerance " << fmt(tol) << ")\n";
    if (!out_path.empty()) {
        std::ostringstream body;
        body << "t,gap\n";
        for (std::size_t i = 0; i < rep.times.size(); ++i)
            body << fmt(rep.times[i]) << "," << fmt(rep.gaps[i]) << "\n";
        write_text(out_path, body.str());
    }
    return rep.gap <= tol ? 0 : 1;
}

int cmd_surface(double r, double h0, int n_lat, int n_lon, const std::string& prefix) {
    const ReducedHamiltonian h = reduced_hamiltonian_res12();
    const SphereMesh mesh = make_sphere_mesh(r, n_lat, n_lon);
    {
        std::ostringstream body;
        for (const auto& v : mesh.vertices)
            body << "v " << fmt(v[0]) << " " << fmt(v[1]) << " " << fmt(v[2]) << "\n";
        for (const auto& f : mesh.faces)
            body << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
        write_text(prefix + "_sphere.obj", body.str());
    }
    const IntersectionCurve curve = trace_level_intersection(h, r, h0, n_lat * 2, n_lon * 2);
    if (curve.empty()) {
        std::cerr << "empty intersection: level " << fmt(h0)
                  << " is not attained on the sphere of radius " << fmt(r) << "\n";
        return 3;
    }
    double worst_sphere = 0.0, worst_level = 0.0;
    std::ostringstream body;
    body << "mu_1,mu_2,mu_3,sphere_residual,level_residual\n";
    for (const CurvePoint& cp : curve.points) {
        body << fmt(cp.mu[0]) << "," << fmt(cp.mu[1]) << "," << fmt(cp.mu[2]) << ","
             << fmt(cp.sphere_residual) << "," << fmt(cp.level_residual) << "\n";
        worst_sphere = std::max(worst_sphere, cp.sphere_residual);
        worst_level = std::max(worst_level, cp.level_residual);
    }
    write_text(prefix + "_curve.csv", body.str());
    std::cout << "sphere mesh: " << mesh.vertices.size() << " vertices -> " << prefix
              << "_sphere.obj\n";
    std::cout << "intersection curve: " << curve.points.size() << " points -> " << prefix
              << "_curve.csv\n";
    std::cout << "max sphere residual = " << fmt(worst_sphere)
              << ", max level residual = " << fmt(worst_level) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonant-oscillator dual pairs: simulate, reduce, and certify"};
    app.require_subcommand(1);

    std::string sig_text, preset = "res12", space = "full";
    std::string verify_out = "-", sim_out = "-", compare_out;
    std::string y0_text, span_text, format = "csv", prefix = "kummer";
    bool all = false;
    std::uint64_t seed = 20260809;
    int points = 100, samples = 200, n_lat = 64, n_lon = 128;
    double tol = 0.0, radius = 1.0, level = 1.0;
    IntegratorConfig cfg;

    auto* verify = app.add_subcommand("verify", "run the numerical certification suite");
    verify->add_option("--sig", sig_text, "signature, e.g. 1,2 or 1,-1");
    verify->add_flag("--all", all, "run every preset signature");
    verify->add_option("--seed", seed, "RNG seed (env RESONANCE_SEED overrides)");
    verify->add_option("--points", points, "sample points per check");
    verify->add_option("--out", verify_out, "JSON report path ('-' for stdout)");

    auto add_integrator_flags = [&cfg](CLI::App* cmd) {
        cmd->add_option("--method", [&cfg](const std::vector<std::string>& v) {
            if (v[0] == "rk4") cfg.method = StepMethod::rk4_fixed;
            else if (v[0] == "rk45") cfg.method = StepMethod::rk45_adaptive;
            else return false;
            return true;
        }, "rk45 (adaptive, default) or rk4 (fixed step)");
        cmd->add_option("--dt", cfg.dt, "fixed step size for rk4");
        cmd->add_option("--atol", cfg.atol, "absolute tolerance for rk45");
        cmd->add_option("--rtol", cfg.rtol, "relative tolerance for rk45");
    };

    auto* simulate = app.add_subcommand("simulate", "integrate a preset Hamiltonian system");
    simulate->add_option("--preset", preset, "res12, res112, or harmonic")->required();
    simulate->add_option("--sig", sig_text, "signature for --preset harmonic");
    simulate->add_option("--space", space, "full or reduced")->required();
    simulate->add_option("--y0", y0_text, "initial condition re,im:re,im:...")->required();
    simulate->add_option("--t", span_text, "time span t0:t1")->required();
    simulate->add_option("--samples", cfg.sample_count, "output rows (0 = every step)");
    simulate->add_option("--format", format, "csv (default) or json");
    simulate->add_option("--out", sim_out, "output path ('-' for stdout)");
    add_integrator_flags(simulate);

    auto* compare = app.add_subcommand("compare",
                                       "integrate full and reduced flows, report the gap");
    compare->add_option("--preset", preset, "res12 or res112")->required();
    compare->add_option("--y0", y0_text, "full-space initial condition");
    compare->add_option("--t", span_text, "time span t0:t1");
    compare->add_option("--tol", tol, "pass threshold for the gap");
    compare->add_option("--samples", samples, "comparison grid size");
    compare->add_option("--out", compare_out, "optional CSV of the per-time gap");
    add_integrator_flags(compare);

    auto* surface = app.add_subcommand("surface",
                                       "emit the invariant sphere and a Hamiltonian level curve");
    surface->add_option("--r", radius, "sphere radius");
    surface->add_option("--h0", level, "Hamiltonian level");
    surface->add_option("--n-lat", n_lat, "latitude bands");
    surface->add_option("--n-lon", n_lon, "longitude divisions");
    surface->add_option("--out-prefix", prefix, "output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed())
            return cmd_verify(sig_text, all, effective_seed(seed), points, verify_out);
        if (simulate->parsed())
            return cmd_simulate(preset, sig_text, space, y0_text, span_text, cfg, format,
                                sim_out);
        if (compare->parsed())
            return cmd_compare(preset, y0_text, span_text, tol, cfg, samples, compare_out);
        if (surface->parsed()) return cmd_surface(radius, level, n_lat, n_lon, prefix);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
