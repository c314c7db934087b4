#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace kummer {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr Complex imag_unit{0.0, 1.0};

/// Excluded-origin guard: coordinates closer than this to 0 are out of domain.
inline constexpr double domain_eps = 1e-12;

/// Singularity guard for reduced Hamiltonians (pole / excluded-set margin).
inline constexpr double pole_eps = 1e-10;

/// Base step for central finite differences (scaled by max(1,|a_j|)).
inline constexpr double fd_base_step = 1e-6;

/// Thrown when a point violates the excluded-set condition of its space.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace kummer
