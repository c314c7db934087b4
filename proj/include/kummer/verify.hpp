#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "kummer/integrate.hpp"
#include "kummer/momentum.hpp"
#include "kummer/reduction.hpp"

namespace kummer {

/// Seeded sample points with moduli in [0.3, 2] and uniform phases, away
/// from the excluded set and from ill-conditioned scales.
inline std::vector<PhasePoint> sample_points(int d, int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> modulus(0.3, 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::vector<PhasePoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        VectorXcd a(d);
        for (int j = 0; j < d; ++j) a[j] = std::polar(modulus(rng), phase(rng));
        pts.push_back(PhasePoint::from_complex(a));
    }
    return pts;
}

/// Random real quadratic on n coordinates with its exact gradient.
inline ReducedHamiltonian make_random_quadratic(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    MatrixXd q(n, n);
    VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        b[i] = coef(rng);
        for (int j = 0; j < n; ++j) q(i, j) = coef(rng);
    }
    const MatrixXd sym = 0.5 * (q + q.transpose());
    ReducedHamiltonian f;
    f.value = [sym, b](const VectorXd& x) { return x.dot(sym * x) + b.dot(x); };
    f.gradient = [sym, b](const VectorXd& x) { return VectorXd(2.0 * sym * x + b); };
    return f;
}

/// The same quadratic viewed as a field on phase space (interleaved reals),
/// with the exact Wirtinger gradient.
inline ScalarField make_random_quadratic_field(int d, std::mt19937_64& rng) {
    const ReducedHamiltonian q = make_random_quadratic(2 * d, rng);
    ScalarField f;
    f.value = [q](const PhasePoint& p) { return q.value(p.reals()); };
    f.gradient = [q, d](const PhasePoint& p) {
        const VectorXd g = q.gradient(p.reals());
        WirtingerGrad wg{VectorXcd(d), VectorXcd(d)};
        for (int j = 0; j < d; ++j) {
            wg.d_a[j] = 0.5 * Complex(g[2 * j], -g[2 * j + 1]);
            wg.d_abar[j] = 0.5 * Complex(g[2 * j], g[2 * j + 1]);
        }
        return wg;
    };
    return f;
}

/// Real 2d x 2d matrix of the (signed) symplectic form in interleaved
/// coordinates: block diag of [[0, -k_j], [k_j, 0]].
inline MatrixXd symplectic_matrix(const FormWeights& w) {
    const int d = w.dim();
    MatrixXd omega = MatrixXd::Zero(2 * d, 2 * d);
    for (int j = 0; j < d; ++j) {
        omega(2 * j, 2 * j + 1) = -static_cast<double>(w.k(j));
        omega(2 * j + 1, 2 * j) = static_cast<double>(w.k(j));
    }
    return omega;
}

/// Real 2d x 2d Jacobian of f_map assembled from the per-slot Wirtinger pairs.
inline MatrixXd f_map_real_jacobian(const ResonanceSignature& sig, const PhasePoint& p) {
    const auto slots = f_jacobian(sig, p);
    const int d = sig.dim();
    MatrixXd jac = MatrixXd::Zero(2 * d, 2 * d);
    for (int j = 0; j < d; ++j) {
        const Complex dp = slots[j].db_da, dq = slots[j].db_dabar;
        const Complex dx = dp + dq;                // db/dx_j
        const Complex dy = imag_unit * (dp - dq);  // db/dy_j
        jac(2 * j, 2 * j) = dx.real();
        jac(2 * j + 1, 2 * j) = dx.imag();
        jac(2 * j, 2 * j + 1) = dy.real();
        jac(2 * j + 1, 2 * j + 1) = dy.imag();
    }
    return jac;
}

using TargetMap = std::function<VectorXd(const PhasePoint&)>;
using TargetBracket =
    std::function<double(const ReducedHamiltonian&, const ReducedHamiltonian&, const VectorXd&)>;

/// Canonical bracket on an image phase space in interleaved real
/// coordinates: {F,G} = -sum_j k_j (F_x G_y - F_y G_x).
inline TargetBracket canonical_target_bracket(const FormWeights& w) {
    return [w](const ReducedHamiltonian& f, const ReducedHamiltonian& g, const VectorXd& x) {
        const VectorXd gf = f.grad(x);
        const VectorXd gg = g.grad(x);
        double s = 0.0;
        for (int j = 0; j < w.dim(); ++j)
            s -= w.k(j) * (gf[2 * j] * gg[2 * j + 1] - gf[2 * j + 1] * gg[2 * j]);
        return s;
    };
}

inline TargetBracket lie_poisson_target_bracket(const AlgebraPtr& alg) {
    return [alg](const ReducedHamiltonian& f, const ReducedHamiltonian& g, const VectorXd& mu) {
        return lie_poisson_bracket(alg, f, g, mu);
    };
}

struct PoissonMapReport {
    int n_points = 0;
    double max_residual = 0.0;
    std::vector<double> per_point;
};

/// Compares the source bracket of pulled-back trial fields with the target
/// bracket pushed through the map:
///   max over points and field pairs of
///   | {F o phi, G o phi}_source - {F, G}_target o phi |.
/// Source-side gradients are finite differences; trial fields carry exact
/// gradients on the target.
inline PoissonMapReport check_poisson_map(const TargetMap& phi, const FormWeights& src_weights,
                                          const TargetBracket& target_bracket,
                                          std::span<const PhasePoint> points,
                                          std::span<const ReducedHamiltonian> fields) {
    require(points.size() >= 1, "check_poisson_map: needs at least one point");
    require(fields.size() >= 2, "check_poisson_map: needs at least two trial fields");
    PoissonMapReport report;
    report.n_points = static_cast<int>(points.size());
    for (const PhasePoint& p : points) {
        // One finite-difference gradient per composed field, shared by pairs.
        std::vector<WirtingerGrad> grads;
        grads.reserve(fields.size());
        for (const ReducedHamiltonian& f : fields)
            grads.push_back(fd_wirtinger(
                [&](const PhasePoint& q) { return f.value(phi(q)); }, p));
        const VectorXd image = phi(p);
        double worst = 0.0;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            for (std::size_t j = i + 1; j < fields.size(); ++j) {
                Complex s = 0.0;
                for (int slot = 0; slot < src_weights.dim(); ++slot)
                    s += static_cast<double>(src_weights.k(slot)) *
                         (grads[i].d_a[slot] * grads[j].d_abar[slot] -
                          grads[j].d_a[slot] * grads[i].d_abar[slot]);
                const double source = (2.0 * imag_unit * s).real();
                const double target = target_bracket(fields[i], fields[j], image);
                worst = std::max(worst, std::abs(source - target));
            }
        }
        report.per_point.push_back(worst);
        report.max_residual = std::max(report.max_residual, worst);
    }
    return report;
}

/// || J^T Omega J - Omega ||_max for the real Jacobian of f_map, with the
/// form weights of the signature.
inline double check_local_symplectomorphism(const ResonanceSignature& sig, const PhasePoint& p) {
    const MatrixXd jac = f_map_real_jacobian(sig, p);
    const MatrixXd omega = symplectic_matrix(sig.weights());
    return (jac.transpose() * omega * jac - omega).cwiseAbs().maxCoeff();
}

namespace detail {

/// Real Jacobian of the resonant momentum map, assembled by the chain rule
/// through the slot-diagonal Jacobian of f_map and the quadratic unit map.
inline MatrixXd momentum_real_jacobian(const MomentumMapSpec& spec, const PhasePoint& p) {
    const int d = spec.signature.dim();
    const AlgebraPtr& alg = spec.algebra;
    const PhasePoint b = f_map(spec.signature, p);
    const VectorXcd bv = b.to_complex();
    const auto slots = f_jacobian(spec.signature, p);
    const MatrixXcd& metric = alg->metric();
    const int dm = alg->matrix_dim();
    MatrixXd jac(alg->dim(), 2 * d);
    for (int j = 0; j < d; ++j) {
        const Complex dp = slots[j].db_da, dq = slots[j].db_dabar;
        const Complex per_real[2] = {dp + dq, imag_unit * (dp - dq)};
        for (int comp = 0; comp < 2; ++comp) {
            VectorXcd db = VectorXcd::Zero(d);
            db[j] = per_real[comp];
            const MatrixXcd dpmat = db * bv.adjoint() + bv * db.adjoint();
            const MatrixXcd kdp = metric * dpmat;
            const MatrixXcd dM =
                imag_unit * (kdp - (kdp.trace() / static_cast<double>(dm)) *
                                       MatrixXcd::Identity(dm, dm));
            jac.col(2 * j + comp) = alg->to_vector(dM);
        }
    }
    return jac;
}

/// Orthonormal kernel basis via SVD with threshold 1e-9 * sigma_max.
inline MatrixXd kernel_basis(const MatrixXd& m) {
    Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    const double thresh = 1e-9 * std::max(smax, 1e-300);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] >= thresh) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace detail

struct DualPairReport {
    int dim_ker_r = 0;
    int dim_ker_j = 0;
    double pairing_residual = 0.0;  // max |Omega(u,v)| / (|u||v|) over kernel pairs
    double generator_angle = 0.0;   // angle between ker TJ and the circle generator
    bool dims_ok(int d) const { return dim_ker_r == 2 * d - 1 && dim_ker_j == 1; }
};

/// Certifies at one point that ker TR and ker TJ are symplectic orthogonal
/// complements: kernel dimensions (2d-1, 1) and vanishing pairing between
/// kernel bases. Rank degeneracy shows up in the reported dimensions rather
/// than being silently passed.
inline DualPairReport check_dual_pair(const ResonanceSignature& sig, const PhasePoint& p) {
    const int d = sig.dim();
    p.require_valid();
    const auto spec = MomentumMapSpec::for_signature(sig);

    MatrixXd tr(1, 2 * d);
    for (int j = 0; j < d; ++j) {
        const double scale = static_cast<double>(sig.weights().k(j)) /
                             static_cast<double>(sig.nu(j));
        tr(0, 2 * j) = scale * p.reals()[2 * j];
        tr(0, 2 * j + 1) = scale * p.reals()[2 * j + 1];
    }
    const MatrixXd tj = detail::momentum_real_jacobian(spec, p);

    const MatrixXd ker_r = detail::kernel_basis(tr);
    const MatrixXd ker_j = detail::kernel_basis(tj);

    DualPairReport report;
    report.dim_ker_r = static_cast<int>(ker_r.cols());
    report.dim_ker_j = static_cast<int>(ker_j.cols());

    const MatrixXd omega = symplectic_matrix(sig.weights());
    const MatrixXd pairing = ker_r.transpose() * omega * ker_j;
    report.pairing_residual = pairing.size() > 0 ? pairing.cwiseAbs().maxCoeff() : 0.0;

    const VectorXd gen = circle_generator(sig, p, 1.0).reals();
    if (ker_j.cols() == 1 && gen.norm() > 0.0) {
        const double cosang =
            std::min(1.0, std::abs(gen.dot(ker_j.col(0))) / (gen.norm() * ker_j.col(0).norm()));
        report.generator_angle = std::acos(cosang);
    } else {
        report.generator_angle = M_PI / 2.0;
    }
    return report;
}

struct CommuteReport {
    double gap = std::numeric_limits<double>::infinity();
    TrajStatus full_status = TrajStatus::complete;
    TrajStatus reduced_status = TrajStatus::complete;
    std::string diagnostic;
    std::vector<double> times;
    std::vector<double> gaps;

    bool completed() const {
        return full_status == TrajStatus::complete && reduced_status == TrajStatus::complete;
    }
};

/// Integrates the full flow a(t) and the reduced flow mu(t) from
/// mu0 = J(y0) and reports sup_t || J(a(t)) - mu(t) || on a shared grid.
inline CommuteReport check_reduction_commutes(const ResonanceSignature& sig,
                                              const ScalarField& full_h,
                                              const ReducedHamiltonian& reduced_h,
                                              const PhasePoint& y0, double t0, double t1,
                                              const IntegratorConfig& base_cfg = {},
                                              int samples = 200) {
    const auto spec = MomentumMapSpec::for_signature(sig);
    const CoadjointVector mu0 = j_resonant(spec, y0);
    require(reduced_h.in_domain(mu0.mu), "check_reduction_commutes: mu0 outside domain");

    IntegratorConfig cfg = base_cfg;
    cfg.t0 = t0;
    cfg.t1 = t1;
    cfg.sample_count = samples;

    const Trajectory full =
        integrate(full_dynamics_field(full_h, sig.weights()), y0.reals(), cfg);
    const Trajectory reduced =
        integrate(reduced_dynamics_field(spec.algebra, reduced_h), mu0.mu, cfg);

    CommuteReport report;
    report.full_status = full.status;
    report.reduced_status = reduced.status;
    if (!report.completed()) {
        report.diagnostic = full.completed() ? reduced.diagnostic : full.diagnostic;
        return report;
    }

    double gap = 0.0;
    const std::size_t count = std::min(full.states.size(), reduced.states.size());
    report.times.reserve(count);
    report.gaps.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const CoadjointVector projected = j_resonant(spec, PhasePoint(full.states[i]));
        const double g = (projected.mu - reduced.states[i]).norm();
        report.times.push_back(full.times[i]);
        report.gaps.push_back(g);
        gap = std::max(gap, g);
    }
    report.gap = gap;
    return report;
}

/// Largest invariant-surface defect over a batch of points, normalized by
/// max(1, r^2) so the pass threshold is scale-free.
inline double check_kummer(const ResonanceSignature& sig, std::span<const PhasePoint> points) {
    const auto spec = MomentumMapSpec::for_signature(sig);
    double worst = 0.0;
    for (const PhasePoint& p : points) {
        const double r = r_invariant(sig, p);
        const double res = kummer_residual(spec, j_resonant(spec, p), r);
        worst = std::max(worst, std::abs(res) / std::max(1.0, r * r));
    }
    return worst;
}

/// One named check inside a verification report.
struct CheckReport {
    std::string name;
    int n_points = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::uint64_t seed = 0;
    std::string signature;
    std::vector<std::int64_t> preimage_multiplicity;
    std::vector<CheckReport> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckReport& c) { return c.pass; });
    }
};

inline std::vector<std::vector<int>> preset_signatures() {
    return {{1, 1}, {1, 2}, {2, 3}, {3, 5}, {1, -1}, {2, -3}, {1, 1, 2}};
}

inline std::string signature_label(const ResonanceSignature& sig) {
    std::string s;
    for (int j = 0; j < sig.dim(); ++j) {
        if (j) s += ",";
        s += std::to_string(sig.n(j));
    }
    return s;
}

/// Runs every check applicable to one signature. Deterministic given the
/// seed recorded in the result.
inline SuiteResult run_verification_suite(const ResonanceSignature& sig, std::uint64_t seed,
                                          int n_points = 100) {
    SuiteResult result;
    result.seed = seed;
    result.signature = signature_label(sig);
    for (int j = 0; j < sig.dim(); ++j) result.preimage_multiplicity.push_back(sig.nu(j));

    std::mt19937_64 rng(seed);
    const int d = sig.dim();
    const auto spec = MomentumMapSpec::for_signature(sig);
    const std::vector<PhasePoint> pts = sample_points(d, n_points, rng);

    auto add = [&](std::string name, int count, double residual, double tol) {
        result.checks.push_back({std::move(name), count, residual, tol, residual <= tol});
    };

    {  // f_map is Poisson for the signature's (possibly signed) bracket
        std::vector<ReducedHamiltonian> fields;
        for (int i = 0; i < 4; ++i) fields.push_back(make_random_quadratic(2 * d, rng));
        const auto rep = check_poisson_map(
            [&](const PhasePoint& p) { return f_map(sig, p).reals(); }, sig.weights(),
            canonical_target_bracket(sig.weights()), pts, fields);
        add("poisson_map_f", rep.n_points, rep.max_residual, 1e-6);
    }
    {  // the momentum map is Poisson into the Lie-Poisson structure
        std::vector<ReducedHamiltonian> fields;
        for (int i = 0; i < 4; ++i) fields.push_back(make_random_quadratic(spec.algebra->dim(), rng));
        const auto rep = check_poisson_map(
            [&](const PhasePoint& p) { return j_resonant(spec, p).mu; }, sig.weights(),
            lie_poisson_target_bracket(spec.algebra), pts, fields);
        add("poisson_map_j", rep.n_points, rep.max_residual, 1e-6);
    }
    {  // local symplecticity of f_map
        double worst = 0.0;
        for (const PhasePoint& p : pts)
            worst = std::max(worst, check_local_symplectomorphism(sig, p));
        add("local_symplectomorphism", static_cast<int>(pts.size()), worst, 1e-10);
    }
    {  // dual-pair kernels and symplectic orthogonality
        double worst_pairing = 0.0;
        double worst_angle = 0.0;
        bool dims_ok = true;
        for (const PhasePoint& p : pts) {
            const DualPairReport rep = check_dual_pair(sig, p);
            dims_ok = dims_ok && rep.dims_ok(d);
            worst_pairing = std::max(worst_pairing, rep.pairing_residual);
            worst_angle = std::max(worst_angle, rep.generator_angle);
        }
        result.checks.push_back({"dual_pair_kernels", static_cast<int>(pts.size()),
                                 worst_pairing, 1e-8, dims_ok && worst_pairing <= 1e-8});
        if (d >= 3)
            add("dual_pair_generator_alignment", static_cast<int>(pts.size()), worst_angle, 1e-6);
    }
    if (d == 2)  // closed invariant-surface identity
        add("kummer_surface", static_cast<int>(pts.size()), check_kummer(sig, pts), 1e-12);
    {  // equivariance of the unit momentum map
        double worst = 0.0;
        int used = 0;
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        while (used < n_points) {
            const MatrixXcd u = random_group_element(spec.algebra, rng);
            const PhasePoint& b = pts[pick(rng)];
            const VectorXcd moved = u * b.to_complex();
            bool degenerate = false;
            for (int j = 0; j < d; ++j)
                if (std::abs(moved[j]) < 1e-3) degenerate = true;
            if (degenerate) continue;  // redraw: image too close to the excluded set
            worst = std::max(worst, check_equivariance_sample(spec.algebra, b, u));
            ++used;
        }
        add("equivariance_j_unit", used, worst, 1e-12);
    }
    {  // Jacobi identity of the computed structure constants
        const auto& alg = spec.algebra;
        const int n = alg->dim();
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m) {
                        double s = 0.0;
                        for (int q = 0; q < n; ++q)
                            s += alg->c(j, k, q) * alg->c(q, l, m) +
                                 alg->c(k, l, q) * alg->c(q, j, m) +
                                 alg->c(l, j, q) * alg->c(q, k, m);
                        worst = std::max(worst, std::abs(s));
                    }
        add("structure_constant_jacobi", n, worst, 1e-12);
    }
    if (sig.all_positive()) {  // full flow projects onto the reduced flow
        ScalarField full_h;
        ReducedHamiltonian red_h;
        PhasePoint y0 = PhasePoint::from_complex(VectorXcd::Zero(0));
        double t1 = 2.0, tol = 1e-8;
        if (d == 2 && sig.n(0) == 1 && sig.n(1) == 2) {
            full_h = full_hamiltonian_res12();
            red_h = reduced_hamiltonian_res12();
            VectorXcd a(2);
            a << Complex(1, 0), Complex(0.5, 0);
            y0 = PhasePoint::from_complex(a);
            t1 = 2.0;
            tol = 1e-6;
        } else if (d == 3 && sig.n(0) == 1 && sig.n(1) == 1 && sig.n(2) == 2) {
            full_h = full_hamiltonian_res112();
            red_h = reduced_hamiltonian_res112();
            VectorXcd a(3);
            a << Complex(1, 0), Complex(0.8, 0), Complex(0.6, 0);
            y0 = PhasePoint::from_complex(a);
            t1 = 0.5;
            tol = 1e-5;
        } else {
            full_h = harmonic_hamiltonian(sig);
            red_h = reduced_hamiltonian_harmonic(sig);
            y0 = pts.front();
            t1 = 2.0;
            tol = 1e-8;
        }
        const CommuteReport rep = check_reduction_commutes(sig, full_h, red_h, y0, 0.0, t1);
        add("reduction_commutes", static_cast<int>(rep.gaps.size()),
            rep.completed() ? rep.gap : std::numeric_limits<double>::infinity(), tol);
    }
    return result;
}

}  // namespace kummer
