#pragma once

#include <cmath>

#include "kummer/lie_algebra.hpp"
#include "kummer/resonance.hpp"

namespace kummer {

/// Pairing of a resonance signature with the algebra its momentum map lands
/// in: su(2) for two positive frequencies, su(1,1) for the mixed two-slot
/// case, su(d) for d >= 3.
struct MomentumMapSpec {
    ResonanceSignature signature;
    AlgebraPtr algebra;

    static MomentumMapSpec for_signature(const ResonanceSignature& sig) {
        if (sig.dim() == 2 && !sig.all_positive())
            return {sig, LieAlgebraSpec::su1_1()};
        return {sig, LieAlgebraSpec::su(sig.dim())};
    }
};

/// Momentum map of the unit action: the matrix
///   i (K b b^* - tr(K b b^*)/d I)
/// converted to basis coordinates, where K is the algebra metric (identity
/// for su(d)). For su(2) this is (Re(b1 conj(b2)), Im(b1 conj(b2)),
/// (|b1|^2 - |b2|^2)/2); for su(1,1) it is (Re(b1 conj(b2)),
/// -Im(b1 conj(b2)), (|b1|^2 + |b2|^2)/2).
inline CoadjointVector j_unit(const AlgebraPtr& alg, const PhasePoint& b) {
    require_same_dim(alg->matrix_dim(), b.dim(), "j_unit");
    b.require_valid();
    const VectorXcd bv = b.to_complex();
    const MatrixXcd kp = alg->metric() * (bv * bv.adjoint());
    const Complex tr = kp.trace();
    const int d = alg->matrix_dim();
    const MatrixXcd m = imag_unit * (kp - (tr / static_cast<double>(d)) *
                                              MatrixXcd::Identity(d, d));
    return {alg->to_vector(m), alg};
}

/// Resonant momentum map: the unit map composed with the regularizing map.
inline CoadjointVector j_resonant(const MomentumMapSpec& spec, const PhasePoint& a) {
    return j_unit(spec.algebra, f_map(spec.signature, a));
}

/// Residual of the invariant-surface equation at level r: the sphere
/// |mu|^2 = r^2 for two positive frequencies, or mu3^2 - mu1^2 - mu2^2 = r^2
/// for the mixed case (one sheet of a two-sheeted hyperboloid, with
/// mu3 > 0 on the image).
inline double kummer_residual(const MomentumMapSpec& spec, const CoadjointVector& mu,
                              double r) {
    require(spec.signature.dim() == 2,
            "kummer_residual: closed surface equation only available for two slots");
    require(mu.algebra->dim() == 3, "kummer_residual: algebra mismatch");
    if (spec.signature.all_positive())
        return mu.mu.squaredNorm() - r * r;
    return mu.mu[2] * mu.mu[2] - mu.mu[0] * mu.mu[0] - mu.mu[1] * mu.mu[1] - r * r;
}

/// Equivariance defect of the unit momentum map under one group element:
/// || j_unit(U b) - coadjoint_action(U, j_unit(b)) ||.
inline double check_equivariance_sample(const AlgebraPtr& alg, const PhasePoint& b,
                                        const MatrixXcd& u) {
    const CoadjointVector lhs = j_unit(alg, PhasePoint::from_complex(u * b.to_complex()));
    const CoadjointVector rhs = coadjoint_action(u, j_unit(alg, b));
    return (lhs.mu - rhs.mu).norm();
}

}  // namespace kummer
