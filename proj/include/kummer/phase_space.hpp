#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "kummer/common.hpp"

namespace kummer {

/// Point of a product of punctured complex planes. Stored as interleaved
/// reals (x_1, y_1, ..., x_d, y_d) so that linear-algebra kernels can work
/// on real Jacobians; complex views are derived.
class PhasePoint {
public:
    explicit PhasePoint(VectorXd interleaved) : re_(std::move(interleaved)) {
        require(re_.size() % 2 == 0, "PhasePoint: interleaved vector must have even size");
    }

    static PhasePoint from_complex(const VectorXcd& a) {
        VectorXd w(2 * a.size());
        for (int j = 0; j < a.size(); ++j) {
            w[2 * j] = a[j].real();
            w[2 * j + 1] = a[j].imag();
        }
        return PhasePoint(std::move(w));
    }

    int dim() const { return static_cast<int>(re_.size() / 2); }

    Complex coord(int j) const { return {re_[2 * j], re_[2 * j + 1]}; }

    VectorXcd to_complex() const {
        VectorXcd a(dim());
        for (int j = 0; j < dim(); ++j) a[j] = coord(j);
        return a;
    }

    const VectorXd& reals() const { return re_; }

    double min_modulus() const {
        double m = std::numeric_limits<double>::infinity();
        for (int j = 0; j < dim(); ++j) m = std::min(m, std::abs(coord(j)));
        return m;
    }

    bool is_valid(double eps = domain_eps) const { return min_modulus() > eps; }

    void require_valid(double eps = domain_eps) const {
        if (!is_valid(eps))
            throw DomainError("PhasePoint: coordinate within excluded-origin guard");
    }

private:
    VectorXd re_;
};

/// Variation of the coordinates of a PhasePoint; same interleaved layout.
class Tangent {
public:
    explicit Tangent(VectorXd interleaved) : re_(std::move(interleaved)) {
        require(re_.size() % 2 == 0, "Tangent: interleaved vector must have even size");
    }

    static Tangent from_complex(const VectorXcd& v) {
        VectorXd w(2 * v.size());
        for (int j = 0; j < v.size(); ++j) {
            w[2 * j] = v[j].real();
            w[2 * j + 1] = v[j].imag();
        }
        return Tangent(std::move(w));
    }

    static Tangent zero(int d) { return Tangent(VectorXd::Zero(2 * d)); }

    int dim() const { return static_cast<int>(re_.size() / 2); }
    Complex delta(int j) const { return {re_[2 * j], re_[2 * j + 1]}; }
    VectorXcd to_complex() const {
        VectorXcd v(dim());
        for (int j = 0; j < dim(); ++j) v[j] = delta(j);
        return v;
    }
    const VectorXd& reals() const { return re_; }

private:
    VectorXd re_;
};

/// Signature of the symplectic form: k_j = +1 for the standard factor,
/// -1 for a sign-flipped factor.
class FormWeights {
public:
    explicit FormWeights(Eigen::VectorXi k) : k_(std::move(k)) {
        for (int j = 0; j < k_.size(); ++j)
            require(k_[j] == 1 || k_[j] == -1, "FormWeights: entries must be +1 or -1");
    }

    static FormWeights ones(int d) { return FormWeights(Eigen::VectorXi::Ones(d)); }

    int dim() const { return static_cast<int>(k_.size()); }
    int k(int j) const { return k_[j]; }
    bool all_positive() const { return (k_.array() == 1).all(); }

private:
    Eigen::VectorXi k_;
};

/// Complex partials of a real function with respect to each coordinate and
/// its conjugate, treated as independent variables.
struct WirtingerGrad {
    VectorXcd d_a;     // dF/da_j
    VectorXcd d_abar;  // dF/dabar_j
};

/// Central finite differences in the real and imaginary parts, step scaled
/// per coordinate by max(1,|a_j|).
inline WirtingerGrad fd_wirtinger(const std::function<double(const PhasePoint&)>& f,
                                  const PhasePoint& p, double base_step = fd_base_step) {
    const int d = p.dim();
    WirtingerGrad g{VectorXcd(d), VectorXcd(d)};
    VectorXd w = p.reals();
    for (int j = 0; j < d; ++j) {
        const double h = base_step * std::max(1.0, std::abs(p.coord(j)));
        VectorXd q = w;
        q[2 * j] = w[2 * j] + h;
        const double fxp = f(PhasePoint(q));
        q[2 * j] = w[2 * j] - h;
        const double fxm = f(PhasePoint(q));
        q[2 * j] = w[2 * j];
        q[2 * j + 1] = w[2 * j + 1] + h;
        const double fyp = f(PhasePoint(q));
        q[2 * j + 1] = w[2 * j + 1] - h;
        const double fym = f(PhasePoint(q));
        const double fx = (fxp - fxm) / (2.0 * h);
        const double fy = (fyp - fym) / (2.0 * h);
        g.d_a[j] = 0.5 * Complex(fx, -fy);
        g.d_abar[j] = 0.5 * Complex(fx, fy);
    }
    return g;
}

/// Real-valued function on phase space with optional analytic Wirtinger
/// gradient; falls back to central finite differences.
struct ScalarField {
    std::function<double(const PhasePoint&)> value;
    std::function<WirtingerGrad(const PhasePoint&)> gradient;  // may be empty
    double fd_step = fd_base_step;

    WirtingerGrad grad(const PhasePoint& p) const {
        if (gradient) return gradient(p);
        return fd_wirtinger(value, p, fd_step);
    }
};

inline void require_same_dim(int a, int b, const char* what) {
    require(a == b, std::string(what) + ": dimension mismatch");
}

/// Value of the (possibly signed) symplectic form on two tangent vectors.
/// In real coordinates it is -sum_j k_j dx_j ^ dy_j.
inline double symplectic_pairing(const Tangent& u, const Tangent& v, const FormWeights& w) {
    require_same_dim(u.dim(), v.dim(), "symplectic_pairing");
    require_same_dim(u.dim(), w.dim(), "symplectic_pairing");
    double s = 0.0;
    for (int j = 0; j < u.dim(); ++j)
        s -= w.k(j) * std::imag(std::conj(u.delta(j)) * v.delta(j));
    return s;
}

/// Canonical one-form: (1/2) sum_j k_j Im(conj(a_j) v_j).
inline double canonical_one_form(const PhasePoint& p, const Tangent& v, const FormWeights& w) {
    require_same_dim(p.dim(), v.dim(), "canonical_one_form");
    require_same_dim(p.dim(), w.dim(), "canonical_one_form");
    p.require_valid();
    double s = 0.0;
    for (int j = 0; j < p.dim(); ++j)
        s += 0.5 * w.k(j) * std::imag(std::conj(p.coord(j)) * v.delta(j));
    return s;
}

/// Bracket value before the reality check; exposed so tests can measure the
/// imaginary residue directly.
inline Complex poisson_bracket_complex(const ScalarField& F, const ScalarField& G,
                                       const PhasePoint& p, const FormWeights& w) {
    require_same_dim(p.dim(), w.dim(), "poisson_bracket");
    p.require_valid();
    const WirtingerGrad gf = F.grad(p);
    const WirtingerGrad gg = G.grad(p);
    Complex s = 0.0;
    for (int j = 0; j < p.dim(); ++j)
        s += static_cast<double>(w.k(j)) *
             (gf.d_a[j] * gg.d_abar[j] - gg.d_a[j] * gf.d_abar[j]);
    return 2.0 * imag_unit * s;
}

/// {F,G} = 2i sum_j k_j (dF/da_j dG/dabar_j - dG/da_j dF/dabar_j).
/// A non-real result beyond tolerance signals inconsistent gradients.
inline double poisson_bracket(const ScalarField& F, const ScalarField& G, const PhasePoint& p,
                              const FormWeights& w) {
    const Complex v = poisson_bracket_complex(F, G, p, w);
    if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real())))
        throw std::runtime_error("poisson_bracket: non-real value; gradient is inconsistent");
    return v.real();
}

/// Hamiltonian vector field: da_j/dt = 2i k_j dH/dabar_j.
inline Tangent hamiltonian_vector_field(const ScalarField& H, const PhasePoint& p,
                                        const FormWeights& w) {
    require_same_dim(p.dim(), w.dim(), "hamiltonian_vector_field");
    p.require_valid();
    const WirtingerGrad g = H.grad(p);
    VectorXcd v(p.dim());
    for (int j = 0; j < p.dim(); ++j)
        v[j] = 2.0 * imag_unit * static_cast<double>(w.k(j)) * g.d_abar[j];
    return Tangent::from_complex(v);
}

}  // namespace kummer
