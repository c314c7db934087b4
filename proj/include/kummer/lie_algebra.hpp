#pragma once

#include <memory>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "kummer/common.hpp"

namespace kummer {

enum class AlgebraKind { su_d, su_1_1 };

/// Orthonormal basis and derived constants for su(d) or su(1,1).
///
/// Basis matrices are orthonormal under <xi,eta> = (1/2) tr(xi^* eta); the
/// coordinate vector in that basis is the single source of truth and matrix
/// displays are views. Structure constants c_{jkl} = <gamma_l,
/// [gamma_j, gamma_k]> are computed from the basis, never transcribed.
class LieAlgebraSpec {
public:
    static std::shared_ptr<const LieAlgebraSpec> su(int d) {
        require(d >= 2, "LieAlgebraSpec::su: d must be at least 2");
        auto spec = std::shared_ptr<LieAlgebraSpec>(new LieAlgebraSpec());
        spec->kind_ = AlgebraKind::su_d;
        spec->mat_dim_ = d;
        spec->metric_ = MatrixXcd::Identity(d, d);
        spec->build_su_basis(d);
        spec->compute_structure_constants();
        if (d == 3) spec->compute_symmetric_constants();
        return spec;
    }

    static std::shared_ptr<const LieAlgebraSpec> su1_1() {
        auto spec = std::shared_ptr<LieAlgebraSpec>(new LieAlgebraSpec());
        spec->kind_ = AlgebraKind::su_1_1;
        spec->mat_dim_ = 2;
        MatrixXcd k = MatrixXcd::Zero(2, 2);
        k(0, 0) = 1.0;
        k(1, 1) = -1.0;
        spec->metric_ = k;
        spec->build_su11_basis();
        spec->compute_structure_constants();
        return spec;
    }

    AlgebraKind kind() const { return kind_; }
    int matrix_dim() const { return mat_dim_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const MatrixXcd& basis(int j) const { return basis_[j]; }
    /// Identity for su(d); diag(1,-1) for su(1,1).
    const MatrixXcd& metric() const { return metric_; }

    double c(int j, int k, int l) const { return c_[(j * dim() + k) * dim() + l]; }

    bool has_symmetric_constants() const { return !dsym_.empty(); }
    double d_sym(int j, int k, int l) const { return dsym_[(j * dim() + k) * dim() + l]; }

    MatrixXcd to_matrix(const VectorXd& xi) const {
        require(xi.size() == dim(), "LieAlgebraSpec::to_matrix: wrong coordinate length");
        MatrixXcd m = MatrixXcd::Zero(mat_dim_, mat_dim_);
        for (int j = 0; j < dim(); ++j) m += xi[j] * basis_[j];
        return m;
    }

    VectorXd to_vector(const MatrixXcd& m) const {
        VectorXd xi(dim());
        for (int j = 0; j < dim(); ++j) xi[j] = inner(basis_[j], m);
        return xi;
    }

    /// <xi,eta> = (1/2) tr(xi^* eta); real on real spans of the basis.
    static double inner(const MatrixXcd& a, const MatrixXcd& b) {
        return 0.5 * (a.adjoint() * b).trace().real();
    }

    bool is_group_element(const MatrixXcd& u, double tol = 1e-10) const {
        if (u.rows() != mat_dim_ || u.cols() != mat_dim_) return false;
        const double defect = (u.adjoint() * metric_ * u - metric_).cwiseAbs().maxCoeff();
        return defect <= tol && std::abs(u.determinant() - 1.0) <= tol;
    }

private:
    LieAlgebraSpec() = default;

    static MatrixXcd unit(int d, int r, int c) {
        MatrixXcd m = MatrixXcd::Zero(d, d);
        m(r, c) = 1.0;
        return m;
    }

    // Generalized Gell-Mann layout: pairs (p,q) with p < q contribute the
    // symmetric element i(E_pq + E_qp) and the antisymmetric element
    // E_qp - E_pq, and each q closes with the diagonal element
    // i sqrt(2/(q(q+1))) diag(1,..,1,-q,0,..) holding q leading ones.
    // For d = 2 and d = 3 this matches the standard displays entry by entry.
    void build_su_basis(int d) {
        for (int q = 1; q < d; ++q) {
            for (int p = 0; p < q; ++p) {
                basis_.push_back(imag_unit * (unit(d, p, q) + unit(d, q, p)));
                basis_.push_back(unit(d, q, p) - unit(d, p, q));
            }
            MatrixXcd diag = MatrixXcd::Zero(d, d);
            for (int r = 0; r < q; ++r) diag(r, r) = 1.0;
            diag(q, q) = -static_cast<double>(q);
            basis_.push_back(imag_unit * std::sqrt(2.0 / (q * (q + 1.0))) * diag);
        }
    }

    // K-anti-Hermitian trace-free basis ordered so that momentum-map
    // coordinates come out as (Re(b1 conj(b2)), -Im(b1 conj(b2)),
    // (|b1|^2+|b2|^2)/2).
    void build_su11_basis() {
        MatrixXcd e1 = MatrixXcd::Zero(2, 2), e2 = MatrixXcd::Zero(2, 2),
                  e3 = MatrixXcd::Zero(2, 2);
        e1(0, 1) = imag_unit;
        e1(1, 0) = -imag_unit;
        e2(0, 1) = 1.0;
        e2(1, 0) = 1.0;
        e3(0, 0) = imag_unit;
        e3(1, 1) = -imag_unit;
        basis_ = {e1, e2, e3};
    }

    void compute_structure_constants() {
        const int n = dim();
        c_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const MatrixXcd comm = basis_[j] * basis_[k] - basis_[k] * basis_[j];
                const VectorXd coords = to_vector(comm);
                for (int l = 0; l < n; ++l) {
                    c_[(static_cast<std::size_t>(j) * n + k) * n + l] = coords[l];
                    c_[(static_cast<std::size_t>(k) * n + j) * n + l] = -coords[l];
                }
            }
        }
    }

    // d_{jkl} from the anticommutator relation
    //   gamma_j gamma_k + gamma_k gamma_j = -(4/3) delta_jk I
    //                                       + 2i sum_l d_{jkl} gamma_l.
    void compute_symmetric_constants() {
        const int n = dim();
        dsym_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
        for (int j = 0; j < n; ++j) {
            for (int k = j; k < n; ++k) {
                MatrixXcd anti = basis_[j] * basis_[k] + basis_[k] * basis_[j];
                if (j == k) anti += (4.0 / 3.0) * MatrixXcd::Identity(mat_dim_, mat_dim_);
                const VectorXd coords = to_vector(anti / (2.0 * imag_unit));
                for (int l = 0; l < n; ++l) {
                    dsym_[(static_cast<std::size_t>(j) * n + k) * n + l] = coords[l];
                    dsym_[(static_cast<std::size_t>(k) * n + j) * n + l] = coords[l];
                }
            }
        }
    }

    AlgebraKind kind_ = AlgebraKind::su_d;
    int mat_dim_ = 0;
    std::vector<MatrixXcd> basis_;
    MatrixXcd metric_;
    std::vector<double> c_;
    std::vector<double> dsym_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebraSpec>;

/// Coordinate vector in the dual of a Lie algebra.
struct CoadjointVector {
    VectorXd mu;
    AlgebraPtr algebra;

    CoadjointVector(VectorXd m, AlgebraPtr alg) : mu(std::move(m)), algebra(std::move(alg)) {
        require(mu.size() == algebra->dim(), "CoadjointVector: length does not match algebra");
        require(mu.allFinite(), "CoadjointVector: entries must be finite");
    }
};

inline double casimir_c2(const CoadjointVector& mu) { return mu.mu.squaredNorm(); }

inline double casimir_c3(const CoadjointVector& mu) {
    require(mu.algebra->has_symmetric_constants(), "casimir_c3: needs the cubic coefficients");
    const int n = mu.algebra->dim();
    double s = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                s += mu.algebra->d_sym(j, k, l) * mu.mu[j] * mu.mu[k] * mu.mu[l];
    return s;
}

/// Gradient of the cubic Casimir, 3 sum_{kl} d_{mkl} mu_k mu_l.
inline VectorXd casimir_c3_gradient(const CoadjointVector& mu) {
    require(mu.algebra->has_symmetric_constants(),
            "casimir_c3_gradient: needs the cubic coefficients");
    const int n = mu.algebra->dim();
    VectorXd g = VectorXd::Zero(n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                g[m] += 3.0 * mu.algebra->d_sym(m, k, l) * mu.mu[k] * mu.mu[l];
    return g;
}

/// Coadjoint operator in coordinates, (ad*_xi mu)_l = sum_{jm} c_{jlm} xi_j mu_m,
/// which realizes <ad*_xi mu, eta> = <mu, [xi, eta]>.
inline CoadjointVector ad_star(const VectorXd& xi, const CoadjointVector& mu) {
    const int n = mu.algebra->dim();
    require(xi.size() == n, "ad_star: algebra mismatch");
    VectorXd out = VectorXd::Zero(n);
    for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            if (xi[j] == 0.0) continue;
            for (int m = 0; m < n; ++m) s += mu.algebra->c(j, l, m) * xi[j] * mu.mu[m];
        }
        out[l] = s;
    }
    return {out, mu.algebra};
}

/// Coadjoint action through the matrix view: mu -> (U^*)^{-1} mu U^*, which
/// for the unitary case is U mu U^*. The group membership of U is checked
/// against the algebra's metric. For su(2) the induced map on coordinates is
/// a rotation of R^3.
inline CoadjointVector coadjoint_action(const MatrixXcd& u, const CoadjointVector& mu) {
    require(mu.algebra->is_group_element(u), "coadjoint_action: U fails group membership");
    const MatrixXcd m = mu.algebra->to_matrix(mu.mu);
    // (U^*)^{-1} = metric * U * metric both for su(d) and su(1,1).
    const MatrixXcd u_star_inv = mu.algebra->metric() * u * mu.algebra->metric();
    const MatrixXcd moved = u_star_inv * m * u.adjoint();
    return {mu.algebra->to_vector(moved), mu.algebra};
}

/// Group element by exponentiating a random algebra element with coordinates
/// uniform in [-1, 1]; membership holds by construction.
inline MatrixXcd random_group_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    VectorXd xi(alg->dim());
    for (int j = 0; j < alg->dim(); ++j) xi[j] = coef(rng);
    return alg->to_matrix(xi).exp();
}

}  // namespace kummer
