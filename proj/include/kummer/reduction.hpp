#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "kummer/lie_algebra.hpp"
#include "kummer/phase_space.hpp"
#include "kummer/resonance.hpp"

namespace kummer {

/// Central finite differences of a function on dual coordinates.
inline VectorXd fd_gradient(const std::function<double(const VectorXd&)>& f, const VectorXd& mu,
                            double base_step = fd_base_step) {
    VectorXd g(mu.size());
    for (int j = 0; j < mu.size(); ++j) {
        const double h = base_step * std::max(1.0, std::abs(mu[j]));
        VectorXd q = mu;
        q[j] = mu[j] + h;
        const double fp = f(q);
        q[j] = mu[j] - h;
        const double fm = f(q);
        g[j] = (fp - fm) / (2.0 * h);
    }
    return g;
}

/// Real function on dual coordinates with optional analytic gradient and an
/// optional domain predicate (finite-difference fallback elsewhere).
struct ReducedHamiltonian {
    std::function<double(const VectorXd&)> value;
    std::function<VectorXd(const VectorXd&)> gradient;  // may be empty
    std::function<bool(const VectorXd&)> domain;        // may be empty
    double fd_step = fd_base_step;

    bool in_domain(const VectorXd& mu) const { return !domain || domain(mu); }

    void require_domain(const VectorXd& mu) const {
        if (!in_domain(mu)) throw DomainError("ReducedHamiltonian: outside domain");
    }

    VectorXd grad(const VectorXd& mu) const {
        require_domain(mu);
        if (gradient) return gradient(mu);
        return fd_gradient(value, mu, fd_step);
    }

    double operator()(const VectorXd& mu) const {
        require_domain(mu);
        return value(mu);
    }
};

/// Lie-Poisson bracket in dual coordinates,
///   {F,G}(mu) = sum_{jkl} c_{jkl} dF_j dG_k mu_l,
/// which for su(2) specializes to 2 mu . (grad F x grad G).
inline double lie_poisson_bracket(const AlgebraPtr& alg, const ReducedHamiltonian& f,
                                  const ReducedHamiltonian& g, const VectorXd& mu) {
    require(mu.size() == alg->dim(), "lie_poisson_bracket: coordinate length mismatch");
    const VectorXd gf = f.grad(mu);
    const VectorXd gg = g.grad(mu);
    const int n = alg->dim();
    // Pairing j < k with the antisymmetrized gradient combination keeps the
    // bracket exactly antisymmetric in floating point.
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double wedge = gf[j] * gg[k] - gf[k] * gg[j];
            if (wedge == 0.0) continue;
            for (int l = 0; l < n; ++l) s += alg->c(j, k, l) * wedge * mu[l];
        }
    }
    return s;
}

/// Time derivative of mu under the reduced dynamics, -ad*_{grad h} mu.
/// Every Casimir is constant along this field; for su(2) it equals
/// -2 mu x grad h.
inline VectorXd lie_poisson_field(const AlgebraPtr& alg, const ReducedHamiltonian& h,
                                  const VectorXd& mu) {
    require(mu.size() == alg->dim(), "lie_poisson_field: coordinate length mismatch");
    const VectorXd gh = h.grad(mu);
    return -ad_star(gh, CoadjointVector(mu, alg)).mu;
}

/// Full-space Hamiltonian Re(a1^2 conj(a2)); its flow is
/// da1/dt = 2i conj(a1) a2, da2/dt = i a1^2.
inline ScalarField full_hamiltonian_res12() {
    ScalarField f;
    f.value = [](const PhasePoint& p) {
        return std::real(p.coord(0) * p.coord(0) * std::conj(p.coord(1)));
    };
    f.gradient = [](const PhasePoint& p) {
        const Complex a1 = p.coord(0), a2 = p.coord(1);
        WirtingerGrad g{VectorXcd(2), VectorXcd(2)};
        g.d_a[0] = a1 * std::conj(a2);
        g.d_abar[0] = std::conj(a1) * a2;
        g.d_a[1] = 0.5 * std::conj(a1) * std::conj(a1);
        g.d_abar[1] = 0.5 * a1 * a1;
        return g;
    };
    return f;
}

/// Full-space Hamiltonian Re(a1^2 (conj(a2)^2 + conj(a3))).
inline ScalarField full_hamiltonian_res112() {
    ScalarField f;
    f.value = [](const PhasePoint& p) {
        const Complex a1 = p.coord(0), a2 = p.coord(1), a3 = p.coord(2);
        return std::real(a1 * a1 * (std::conj(a2) * std::conj(a2) + std::conj(a3)));
    };
    f.gradient = [](const PhasePoint& p) {
        const Complex a1 = p.coord(0), a2 = p.coord(1), a3 = p.coord(2);
        WirtingerGrad g{VectorXcd(3), VectorXcd(3)};
        const Complex w = a2 * a2 + a3;
        g.d_a[0] = a1 * std::conj(w);
        g.d_abar[0] = std::conj(a1) * w;
        g.d_a[1] = std::conj(a1) * std::conj(a1) * a2;
        g.d_abar[1] = a1 * a1 * std::conj(a2);
        g.d_a[2] = 0.5 * std::conj(a1) * std::conj(a1);
        g.d_abar[2] = 0.5 * a1 * a1;
        return g;
    };
    return f;
}

/// Harmonic-oscillator Hamiltonian (1/2) sum_j k_j N |a_j|^2 / nu_j, whose
/// flow rotates slot j at rate |n_j| under the matching signed form.
inline ScalarField harmonic_hamiltonian(const ResonanceSignature& sig) {
    ScalarField f;
    const int d = sig.dim();
    std::vector<double> rate(d);
    for (int j = 0; j < d; ++j)
        rate[j] = sig.weights().k(j) * static_cast<double>(sig.big_n()) /
                  static_cast<double>(sig.nu(j));
    f.value = [rate, d](const PhasePoint& p) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += 0.5 * rate[j] * std::norm(p.coord(j));
        return s;
    };
    f.gradient = [rate, d](const PhasePoint& p) {
        WirtingerGrad g{VectorXcd(d), VectorXcd(d)};
        for (int j = 0; j < d; ++j) {
            g.d_a[j] = 0.5 * rate[j] * std::conj(p.coord(j));
            g.d_abar[j] = 0.5 * rate[j] * p.coord(j);
        }
        return g;
    };
    return f;
}

inline ScalarField preset_full_hamiltonian(const std::string& name) {
    if (name == "res12") return full_hamiltonian_res12();
    if (name == "res112") return full_hamiltonian_res112();
    throw std::invalid_argument("preset_full_hamiltonian: unknown preset '" + name + "'");
}

/// Reduced Hamiltonian of the res12 preset, h(mu) = 2 mu1 sqrt(|mu| + mu3).
/// |mu| is kept symbolic rather than frozen to the orbit radius so the
/// gradient is defined off-shell.
inline ReducedHamiltonian reduced_hamiltonian_res12() {
    ReducedHamiltonian h;
    h.domain = [](const VectorXd& mu) {
        const double norm = mu.norm();
        return norm >= pole_eps && norm + mu[2] >= pole_eps;
    };
    h.value = [](const VectorXd& mu) { return 2.0 * mu[0] * std::sqrt(mu.norm() + mu[2]); };
    h.gradient = [](const VectorXd& mu) {
        const double norm = mu.norm();
        const double s = norm + mu[2];
        const double root = std::sqrt(s);
        VectorXd g(3);
        g[0] = 2.0 * root + mu[0] * mu[0] / (root * norm);
        g[1] = mu[0] * mu[1] / (root * norm);
        g[2] = mu[0] * root / norm;
        return g;
    };
    return h;
}

/// Reduced Hamiltonian of the res112 preset,
///   h(mu) = 4 mu1 sqrt(mu1^2 + mu2^2)
///         + 2 mu4 ((mu1^2+mu2^2)(mu4^2+mu5^2)/(mu6^2+mu7^2))^{1/4},
/// on the open set where (mu1,mu2), (mu4,mu5), (mu6,mu7) all stay away
/// from zero.
inline ReducedHamiltonian reduced_hamiltonian_res112() {
    ReducedHamiltonian h;
    h.domain = [](const VectorXd& mu) {
        const double r1 = std::hypot(mu[0], mu[1]);
        const double r4 = std::hypot(mu[3], mu[4]);
        const double r6 = std::hypot(mu[5], mu[6]);
        return r1 >= pole_eps && r4 >= pole_eps && r6 >= pole_eps;
    };
    h.value = [](const VectorXd& mu) {
        const double rho1 = mu[0] * mu[0] + mu[1] * mu[1];
        const double rho4 = mu[3] * mu[3] + mu[4] * mu[4];
        const double rho6 = mu[5] * mu[5] + mu[6] * mu[6];
        return 4.0 * mu[0] * std::sqrt(rho1) +
               2.0 * mu[3] * std::pow(rho1 * rho4 / rho6, 0.25);
    };
    h.gradient = [](const VectorXd& mu) {
        const double rho1 = mu[0] * mu[0] + mu[1] * mu[1];
        const double rho4 = mu[3] * mu[3] + mu[4] * mu[4];
        const double rho6 = mu[5] * mu[5] + mu[6] * mu[6];
        const double q = std::pow(rho1 * rho4 / rho6, 0.25);
        VectorXd g = VectorXd::Zero(8);
        g[0] = 4.0 * std::sqrt(rho1) + 4.0 * mu[0] * mu[0] / std::sqrt(rho1) +
               mu[0] * mu[3] * q / rho1;
        g[1] = 4.0 * mu[0] * mu[1] / std::sqrt(rho1) + mu[1] * mu[3] * q / rho1;
        g[3] = 2.0 * q + mu[3] * mu[3] * q / rho4;
        g[4] = mu[3] * mu[4] * q / rho4;
        g[5] = -mu[3] * mu[5] * q / rho6;
        g[6] = -mu[3] * mu[6] * q / rho6;
        return g;
    };
    return h;
}

/// Reduced counterpart of the harmonic Hamiltonian for a positive signature:
/// h(mu) = N |mu|, whose Lie-Poisson field vanishes identically on spheres.
inline ReducedHamiltonian reduced_hamiltonian_harmonic(const ResonanceSignature& sig) {
    require(sig.all_positive(),
            "reduced_hamiltonian_harmonic: requires all-positive frequencies");
    ReducedHamiltonian h;
    const double big_n = static_cast<double>(sig.big_n());
    h.domain = [](const VectorXd& mu) { return mu.norm() >= pole_eps; };
    h.value = [big_n](const VectorXd& mu) { return big_n * mu.norm(); };
    h.gradient = [big_n](const VectorXd& mu) { return VectorXd(big_n / mu.norm() * mu); };
    return h;
}

inline ReducedHamiltonian preset_reduced_hamiltonian(const std::string& name) {
    if (name == "res12") return reduced_hamiltonian_res12();
    if (name == "res112") return reduced_hamiltonian_res112();
    throw std::invalid_argument("preset_reduced_hamiltonian: unknown preset '" + name + "'");
}

}  // namespace kummer
