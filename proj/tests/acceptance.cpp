// Acceptance suite: runs every certification criterion at its pinned
// tolerance and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kummer/integrate.hpp"
#include "kummer/momentum.hpp"
#include "kummer/reduction.hpp"
#include "kummer/surface.hpp"
#include "kummer/verify.hpp"

using namespace kummer;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, bool pass, const std::string& detail) {
    std::printf("%s  [%2d] %s  (%s)\n", pass ? "PASS" : "FAIL", number, what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PhasePoint point2(Complex a, Complex b) {
    VectorXcd v(2);
    v << a, b;
    return PhasePoint::from_complex(v);
}

PhasePoint point3(Complex a, Complex b, Complex c) {
    VectorXcd v(3);
    v << a, b, c;
    return PhasePoint::from_complex(v);
}

const std::vector<std::vector<int>> kPositive2 = {{1, 1}, {1, 2}, {2, 3}, {3, 5}, {2, 2}};
const std::vector<std::vector<int>> kSigned2 = {{1, -1}, {2, -3}};

void sphere_identity() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (const auto& freq : kPositive2) {
        const ResonanceSignature sig(freq);
        const auto spec = MomentumMapSpec::for_signature(sig);
        for (const PhasePoint& p : sample_points(2, 1000, rng)) {
            const double r = r_invariant(sig, p);
            const double defect =
                std::abs(j_resonant(spec, p).mu.norm() - r) / std::max(1.0, r);
            worst = std::max(worst, defect);
        }
    }
    const double elapsed = seconds_since(start);
    criterion(1, "sphere identity |J| = R over five positive signatures",
              worst <= 1e-12 && elapsed < 1.0,
              "max scaled defect " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void hyperbolic_identity() {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    bool upper_sheet = true;
    for (const auto& freq : kSigned2) {
        const ResonanceSignature sig(freq);
        const auto spec = MomentumMapSpec::for_signature(sig);
        for (const PhasePoint& p : sample_points(2, 1000, rng)) {
            const double r = r_invariant(sig, p);
            const VectorXd mu = j_resonant(spec, p).mu;
            const double defect =
                std::abs(mu[2] * mu[2] - mu[0] * mu[0] - mu[1] * mu[1] - r * r) /
                std::max(1.0, r * r);
            worst = std::max(worst, defect);
            upper_sheet = upper_sheet && mu[2] > 0.0;
        }
    }
    criterion(2, "hyperbolic identity with positive third component",
              worst <= 1e-12 && upper_sheet, "max scaled defect " + fmt(worst));
}

std::vector<std::vector<int>> all_certification_signatures() {
    std::vector<std::vector<int>> sigs = kPositive2;
    sigs.insert(sigs.end(), kSigned2.begin(), kSigned2.end());
    sigs.push_back({1, 1, 2});
    return sigs;
}

void regularizing_map_certification() {
    std::mt19937_64 rng(103);
    double worst_bracket = 0.0, worst_sympl = 0.0;
    for (const auto& freq : all_certification_signatures()) {
        const ResonanceSignature sig(freq);
        const auto pts = sample_points(sig.dim(), 100, rng);
        std::vector<ReducedHamiltonian> fields;
        for (int i = 0; i < 4; ++i) fields.push_back(make_random_quadratic(2 * sig.dim(), rng));
        const auto rep = check_poisson_map(
            [&](const PhasePoint& p) { return f_map(sig, p).reals(); }, sig.weights(),
            canonical_target_bracket(sig.weights()), pts, fields);
        worst_bracket = std::max(worst_bracket, rep.max_residual);
        for (const PhasePoint& p : pts)
            worst_sympl = std::max(worst_sympl, check_local_symplectomorphism(sig, p));
    }
    criterion(3, "regularizing map is Poisson and locally symplectic",
              worst_bracket <= 1e-6 && worst_sympl <= 1e-10,
              "bracket " + fmt(worst_bracket) + ", symplectic " + fmt(worst_sympl));
}

void dual_pair_kernels() {
    std::mt19937_64 rng(104);
    bool dims_ok = true;
    double worst_pairing = 0.0, worst_angle = 0.0;
    for (const auto& freq : all_certification_signatures()) {
        const ResonanceSignature sig(freq);
        for (const PhasePoint& p : sample_points(sig.dim(), 100, rng)) {
            const DualPairReport rep = check_dual_pair(sig, p);
            dims_ok = dims_ok && rep.dims_ok(sig.dim());
            worst_pairing = std::max(worst_pairing, rep.pairing_residual);
            if (sig.dim() >= 3) worst_angle = std::max(worst_angle, rep.generator_angle);
        }
    }
    criterion(4, "dual-pair kernel dimensions and symplectic orthogonality",
              dims_ok && worst_pairing <= 1e-8 && worst_angle <= 1e-6,
              "pairing " + fmt(worst_pairing) + ", generator angle " + fmt(worst_angle));
}

void equivariance() {
    std::mt19937_64 rng(105);
    double worst = 0.0;
    for (const auto& alg : {LieAlgebraSpec::su(2), LieAlgebraSpec::su(3)}) {
        const int d = alg->matrix_dim();
        int done = 0;
        while (done < 100) {
            const PhasePoint b = sample_points(d, 1, rng)[0];
            const MatrixXcd u = random_group_element(alg, rng);
            const VectorXcd moved = u * b.to_complex();
            bool degenerate = false;
            for (int j = 0; j < d; ++j)
                if (std::abs(moved[j]) < 1e-3) degenerate = true;
            if (degenerate) continue;
            worst = std::max(worst, check_equivariance_sample(alg, b, u));
            ++done;
        }
    }
    criterion(5, "equivariance of the unit momentum map on su(2) and su(3)", worst <= 1e-12,
              "max residual " + fmt(worst));
}

void reduced_equation_identity() {
    const auto su2 = LieAlgebraSpec::su(2);
    const ReducedHamiltonian h = reduced_hamiltonian_res12();
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        Eigen::Vector3d dir(unit(rng), unit(rng), unit(rng));
        if (dir.norm() < 1e-2) continue;
        const double r = radius(rng);
        const Eigen::Vector3d mu = r * dir.normalized();
        const double s = r + mu[2];
        if (s < 1e-2) continue;
        const VectorXd got = lie_poisson_field(su2, h, VectorXd(mu));
        VectorXd displayed(3);
        displayed[0] = -2.0 * mu[0] * mu[1] / std::sqrt(s);
        displayed[1] = (2.0 * mu[0] * mu[0] - 4.0 * mu[2] * s) / std::sqrt(s);
        displayed[2] = 4.0 * mu[1] * std::sqrt(s);
        worst = std::max(worst, (got - displayed).cwiseAbs().maxCoeff());
        ++done;
    }

    VectorXd spot_mu(3);
    spot_mu << 0.0, -3.0 * std::sqrt(2.0), -3.5;
    VectorXd spot_expect(3);
    spot_expect << 0.0, 14.0 * std::sqrt(2.0), -24.0;
    const double spot_defect =
        (lie_poisson_field(su2, h, spot_mu) - spot_expect).cwiseAbs().maxCoeff();
    criterion(6, "reduced equations match the displayed components on the sphere",
              worst <= 1e-10 && spot_defect <= 1e-12,
              "random " + fmt(worst) + ", spot " + fmt(spot_defect));
}

void reduction_commutes_res12() {
    const auto start = std::chrono::steady_clock::now();
    IntegratorConfig cfg;
    cfg.atol = cfg.rtol = 1e-10;
    const CommuteReport rep = check_reduction_commutes(
        ResonanceSignature({1, 2}), preset_full_hamiltonian("res12"),
        reduced_hamiltonian_res12(), point2(Complex(1, 0), Complex(0.5, 0)), 0.0, 2.0, cfg);
    const double elapsed = seconds_since(start);
    criterion(7, "full and reduced res12 flows agree through the momentum map",
              rep.completed() && rep.gap <= 1e-6 && elapsed < 2.0,
              "gap " + fmt(rep.gap) + ", " + fmt(elapsed) + " s");
}

void reduction_commutes_res112() {
    IntegratorConfig cfg;
    cfg.atol = cfg.rtol = 1e-10;
    const ResonanceSignature sig({1, 1, 2});
    const PhasePoint y0 = point3(Complex(1, 0), Complex(0.8, 0), Complex(0.6, 0));
    const CommuteReport rep =
        check_reduction_commutes(sig, preset_full_hamiltonian("res112"),
                                 reduced_hamiltonian_res112(), y0, 0.0, 0.5, cfg);

    // Certify the trajectory keeps clear of the excluded set.
    const auto spec = MomentumMapSpec::for_signature(sig);
    const CoadjointVector mu0 = j_resonant(spec, y0);
    const Trajectory reduced = integrate(
        reduced_dynamics_field(spec.algebra, reduced_hamiltonian_res112()), mu0.mu, [&] {
            IntegratorConfig c = cfg;
            c.t1 = 0.5;
            c.sample_count = 200;
            return c;
        }());
    double min_margin = std::numeric_limits<double>::infinity();
    for (const VectorXd& mu : reduced.states) {
        min_margin = std::min(min_margin, std::hypot(mu[0], mu[1]));
        min_margin = std::min(min_margin, std::hypot(mu[3], mu[4]));
        min_margin = std::min(min_margin, std::hypot(mu[5], mu[6]));
    }
    criterion(8, "full and reduced res112 flows agree away from the excluded set",
              rep.completed() && rep.gap <= 1e-5 && reduced.completed() &&
                  min_margin > pole_eps,
              "gap " + fmt(rep.gap) + ", min pair margin " + fmt(min_margin));
}

void casimirs() {
    const auto su3 = LieAlgebraSpec::su(3);
    const double third = 1.0 / std::sqrt(3.0);
    const std::map<std::array<int, 3>, double> published = {
        {{0, 0, 7}, third},        {{1, 1, 7}, third},        {{2, 2, 7}, third},
        {{7, 7, 7}, -third},       {{0, 3, 5}, 0.5},          {{0, 4, 6}, 0.5},
        {{1, 3, 6}, -0.5},         {{1, 4, 5}, 0.5},          {{2, 3, 3}, 0.5},
        {{2, 4, 4}, 0.5},          {{2, 5, 5}, -0.5},         {{2, 6, 6}, -0.5},
        {{3, 3, 7}, -0.5 * third}, {{4, 4, 7}, -0.5 * third}, {{5, 5, 7}, -0.5 * third},
        {{6, 6, 7}, -0.5 * third},
    };
    double worst_table = 0.0;
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k)
            for (int l = 0; l < 8; ++l) {
                std::array<int, 3> key{j, k, l};
                std::sort(key.begin(), key.end());
                const auto it = published.find(key);
                const double expected = it == published.end() ? 0.0 : it->second;
                worst_table = std::max(worst_table, std::abs(su3->d_sym(j, k, l) - expected));
            }

    const auto spec = MomentumMapSpec::for_signature(ResonanceSignature({1, 1, 2}));
    const VectorXd mu0 =
        j_resonant(spec, point3(Complex(1, 0), Complex(0.8, 0), Complex(0.6, 0))).mu;
    IntegratorConfig cfg;
    cfg.atol = cfg.rtol = 1e-10;
    cfg.t1 = 1.0;
    cfg.sample_count = 200;
    Trajectory traj =
        integrate(reduced_dynamics_field(su3, reduced_hamiltonian_res112()), mu0, cfg);
    const MonitorReport rep =
        monitor(traj, {{"C2", [&](const VectorXd& mu) { return casimir_c2({mu, su3}); }},
                       {"C3", [&](const VectorXd& mu) { return casimir_c3({mu, su3}); }}});
    const double drift =
        std::max(rep.entries.at("C2").drift, rep.entries.at("C3").drift);
    criterion(9, "published cubic coefficients and Casimir drift along the reduced flow",
              worst_table <= 1e-12 && traj.completed() && drift <= 1e-8,
              "table defect " + fmt(worst_table) + ", drift " + fmt(drift));
}

void bracket_golden_values() {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const auto su2 = LieAlgebraSpec::su(2);
    auto linear = [](int slot) {
        ReducedHamiltonian f;
        f.value = [slot](const VectorXd& mu) { return mu[slot]; };
        f.gradient = [slot](const VectorXd& mu) {
            VectorXd g = VectorXd::Zero(mu.size());
            g[slot] = 1.0;
            return g;
        };
        return f;
    };
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        VectorXd mu(3);
        for (int j = 0; j < 3; ++j) mu[j] = coef(rng);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            const double got = lie_poisson_bracket(su2, linear(i), linear(j), mu);
            worst = std::max(worst, std::abs(got - 2.0 * mu[k]));
        }
    }

    double worst_jacobi = 0.0;
    for (int d = 2; d <= 4; ++d) {
        const auto alg = LieAlgebraSpec::su(d);
        const int n = alg->dim();
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m) {
                        double s = 0.0;
                        for (int q = 0; q < n; ++q)
                            s += alg->c(j, k, q) * alg->c(q, l, m) +
                                 alg->c(k, l, q) * alg->c(q, j, m) +
                                 alg->c(l, j, q) * alg->c(q, k, m);
                        worst_jacobi = std::max(worst_jacobi, std::abs(s));
                    }
    }
    criterion(10, "coordinate bracket golden values and structure-constant Jacobi identity",
              worst <= 1e-12 && worst_jacobi <= 1e-12,
              "bracket " + fmt(worst) + ", jacobi " + fmt(worst_jacobi));
}

void surface_data() {
    const double r = 1.0, h0 = 1.0;
    const SphereMesh mesh = make_sphere_mesh(r, 48, 96);
    double worst_radius = 0.0;
    for (const auto& v : mesh.vertices)
        worst_radius = std::max(worst_radius, std::abs(v.norm() - r));

    const IntersectionCurve curve =
        trace_level_intersection(reduced_hamiltonian_res12(), r, h0, 256, 512);
    double worst_sphere = 0.0, worst_level = 0.0;
    for (const CurvePoint& cp : curve.points) {
        worst_sphere = std::max(worst_sphere, cp.sphere_residual);
        worst_level = std::max(worst_level, cp.level_residual);
    }
    criterion(11, "emitted sphere mesh and intersection curve satisfy their equations",
              worst_radius <= 1e-12 && !curve.empty() && worst_sphere <= 1e-9 &&
                  worst_level <= 1e-9,
              "radius " + fmt(worst_radius) + ", curve " +
                  std::to_string(curve.points.size()) + " pts, level " + fmt(worst_level));
}

void integrator_order() {
    const ResonanceSignature sig({1, 2});
    VectorXcd a(2);
    a << Complex(1, 0), Complex(1, 0);
    const PhasePoint y0 = PhasePoint::from_complex(a);
    const VectorField field = full_dynamics_field(harmonic_hamiltonian(sig), sig.weights());
    auto error_at = [&](double dt) {
        IntegratorConfig cfg;
        cfg.method = StepMethod::rk4_fixed;
        cfg.dt = dt;
        cfg.t1 = 1.0;
        const Trajectory traj = integrate(field, y0.reals(), cfg);
        return (traj.states.back() - circle_action(sig, 1.0, y0).reals()).norm();
    };
    const double ratio = error_at(0.02) / error_at(0.01);
    criterion(12, "fixed-step integrator shows fourth-order convergence",
              ratio >= 12.0 && ratio <= 20.0, "halving ratio " + fmt(ratio));
}

}  // namespace

int main() {
    sphere_identity();
    hyperbolic_identity();
    regularizing_map_certification();
    dual_pair_kernels();
    equivariance();
    reduced_equation_identity();
    reduction_commutes_res12();
    reduction_commutes_res112();
    casimirs();
    bracket_golden_values();
    surface_data();
    integrator_order();

    if (failures == 0) {
        std::printf("all 12 criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
