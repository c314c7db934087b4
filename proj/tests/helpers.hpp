#pragma once

#include <initializer_list>

#include "kummer/phase_space.hpp"

namespace kummer::test {

inline PhasePoint make_point(std::initializer_list<Complex> coords) {
    VectorXcd a(static_cast<int>(coords.size()));
    int j = 0;
    for (const Complex& c : coords) a[j++] = c;
    return PhasePoint::from_complex(a);
}

inline Tangent make_tangent(std::initializer_list<Complex> deltas) {
    VectorXcd v(static_cast<int>(deltas.size()));
    int j = 0;
    for (const Complex& c : deltas) v[j++] = c;
    return Tangent::from_complex(v);
}

inline VectorXd make_mu(std::initializer_list<double> entries) {
    VectorXd mu(static_cast<int>(entries.size()));
    int j = 0;
    for (double e : entries) mu[j++] = e;
    return mu;
}

}  // namespace kummer::test
