#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "kummer/phase_space.hpp"

namespace kummer {

/// Integer frequency vector of a resonance, with the derived per-slot
/// exponents nu_j = prod_{i != j} |n_i|, the product N = prod_j |n_j|, and
/// the form weights k_j = sign(n_j).
///
/// Negative frequencies are only meaningful for d = 2 in the second slot
/// (the mixed n:-m case); every other sign pattern is rejected.
class ResonanceSignature {
public:
    explicit ResonanceSignature(std::vector<int> n) : n_(std::move(n)) {
        require(!n_.empty(), "ResonanceSignature: empty frequency vector");
        for (int f : n_) require(f != 0, "ResonanceSignature: frequency must be nonzero");
        for (std::size_t j = 0; j < n_.size(); ++j) {
            const bool neg_ok = (n_.size() == 2 && j == 1);
            require(n_[j] > 0 || neg_ok,
                    "ResonanceSignature: negative frequency only allowed in slot 2 of a "
                    "two-dimensional signature");
        }
        nu_.resize(n_.size());
        big_n_ = 1;
        for (int f : n_) big_n_ *= std::abs(static_cast<std::int64_t>(f));
        for (std::size_t j = 0; j < n_.size(); ++j)
            nu_[j] = big_n_ / std::abs(static_cast<std::int64_t>(n_[j]));
        Eigen::VectorXi k(static_cast<int>(n_.size()));
        for (std::size_t j = 0; j < n_.size(); ++j) k[static_cast<int>(j)] = n_[j] > 0 ? 1 : -1;
        weights_ = FormWeights(k);
    }

    int dim() const { return static_cast<int>(n_.size()); }
    int n(int j) const { return n_[j]; }
    std::int64_t nu(int j) const { return nu_[j]; }
    std::int64_t big_n() const { return big_n_; }
    const FormWeights& weights() const { return *weights_; }
    bool all_positive() const { return weights_->all_positive(); }
    const std::vector<int>& frequencies() const { return n_; }

private:
    std::vector<int> n_;
    std::vector<std::int64_t> nu_;
    std::int64_t big_n_ = 1;
    std::optional<FormWeights> weights_;
};

namespace detail {

/// Integer power of a unit-modulus complex number by repeated squaring.
/// The argument is renormalized to unit modulus first to keep roundoff from
/// being amplified by the exponent.
inline Complex unit_power(Complex a, std::int64_t e) {
    Complex u = a / std::abs(a);
    Complex acc = 1.0;
    while (e > 0) {
        if (e & 1) acc *= u;
        u *= u;
        e >>= 1;
    }
    return acc;
}

}  // namespace detail

/// Circle action rotating slot j by exp(i n_j theta).
inline PhasePoint circle_action(const ResonanceSignature& sig, double theta,
                                const PhasePoint& p) {
    require_same_dim(sig.dim(), p.dim(), "circle_action");
    p.require_valid();
    VectorXcd a = p.to_complex();
    for (int j = 0; j < sig.dim(); ++j)
        a[j] *= std::polar(1.0, sig.n(j) * theta);
    return PhasePoint::from_complex(a);
}

/// Infinitesimal generator of the circle action: (i omega n_j a_j)_j.
inline Tangent circle_generator(const ResonanceSignature& sig, const PhasePoint& p,
                                double omega) {
    require_same_dim(sig.dim(), p.dim(), "circle_generator");
    VectorXcd v(p.dim());
    for (int j = 0; j < p.dim(); ++j)
        v[j] = imag_unit * omega * static_cast<double>(sig.n(j)) * p.coord(j);
    return Tangent::from_complex(v);
}

/// Regularizing map b_j = a_j^{nu_j} / (sqrt(nu_j) |a_j|^{nu_j - 1}).
/// Each slot keeps |b_j| = |a_j| / sqrt(nu_j); the map is nu_j-to-one in
/// the phase of slot j and has no global inverse.
inline PhasePoint f_map(const ResonanceSignature& sig, const PhasePoint& p) {
    require_same_dim(sig.dim(), p.dim(), "f_map");
    p.require_valid();
    VectorXcd b(p.dim());
    for (int j = 0; j < p.dim(); ++j) {
        const Complex a = p.coord(j);
        const double nu = static_cast<double>(sig.nu(j));
        b[j] = (std::abs(a) / std::sqrt(nu)) * detail::unit_power(a, sig.nu(j));
    }
    return PhasePoint::from_complex(b);
}

/// Wirtinger pair (db_j/da_j, db_j/dabar_j) of one slot of f_map.
struct SlotJacobian {
    Complex db_da;
    Complex db_dabar;
};

/// Per-slot analytic Jacobian of f_map:
///   db/da    =  (nu+1)/(2 sqrt(nu)) (a/|a|)^{nu-1}
///   db/dabar = -(nu-1)/(2 sqrt(nu)) (a/|a|)^{nu+1}
/// Slotwise |db/da|^2 - |db/dabar|^2 = 1, which is the local-symplecticity
/// density of the map.
inline std::vector<SlotJacobian> f_jacobian(const ResonanceSignature& sig, const PhasePoint& p) {
    require_same_dim(sig.dim(), p.dim(), "f_jacobian");
    p.require_valid();
    std::vector<SlotJacobian> out(p.dim());
    for (int j = 0; j < p.dim(); ++j) {
        const Complex a = p.coord(j);
        const double nu = static_cast<double>(sig.nu(j));
        const double root = 2.0 * std::sqrt(nu);
        out[j].db_da = (nu + 1.0) / root * detail::unit_power(a, sig.nu(j) - 1);
        out[j].db_dabar = -(nu - 1.0) / root * detail::unit_power(a, sig.nu(j) + 1);
    }
    return out;
}

/// Conserved ratio invariant R = (1/2) sum_j sign(n_j) |a_j|^2 / nu_j.
/// Satisfies R(sig, p) = R(ones, f_map(sig, p)).
inline double r_invariant(const ResonanceSignature& sig, const PhasePoint& p) {
    require_same_dim(sig.dim(), p.dim(), "r_invariant");
    double s = 0.0;
    for (int j = 0; j < p.dim(); ++j)
        s += 0.5 * sig.weights().k(j) * std::norm(p.coord(j)) / static_cast<double>(sig.nu(j));
    return s;
}

/// Momentum of the circle action, (1/2) sum_j n_j |a_j|^2 = N * R.
/// Defined for all-positive signatures only.
inline double circle_momentum(const ResonanceSignature& sig, const PhasePoint& p) {
    require_same_dim(sig.dim(), p.dim(), "circle_momentum");
    require(sig.all_positive(), "circle_momentum: requires all-positive frequencies");
    double s = 0.0;
    for (int j = 0; j < p.dim(); ++j)
        s += 0.5 * sig.n(j) * std::norm(p.coord(j));
    return s;
}

/// Converts standard-form two-slot initial data into the signed-form picture
/// by conjugating the second coordinate.
inline PhasePoint conjugate_second(const PhasePoint& p) {
    require(p.dim() == 2, "conjugate_second: expects a two-slot point");
    VectorXcd a = p.to_complex();
    a[1] = std::conj(a[1]);
    return PhasePoint::from_complex(a);
}

}  // namespace kummer
