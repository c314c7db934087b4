#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "kummer/reduction.hpp"

namespace kummer {

/// Lat-long triangulation of the sphere |mu| = r. Vertices are emitted at
/// exactly radius r (unit direction scaled by r).
struct SphereMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;  // zero-based indices
};

inline SphereMesh make_sphere_mesh(double r, int n_lat = 32, int n_lon = 64) {
    require(r > 0.0, "make_sphere_mesh: radius must be positive");
    require(n_lat >= 2 && n_lon >= 3, "make_sphere_mesh: grid too coarse");
    SphereMesh mesh;
    mesh.vertices.emplace_back(0.0, 0.0, r);  // north pole
    for (int i = 1; i < n_lat; ++i) {
        const double theta = M_PI * static_cast<double>(i) / n_lat;
        const double z = std::cos(theta), s = std::sin(theta);
        for (int j = 0; j < n_lon; ++j) {
            const double phi = 2.0 * M_PI * static_cast<double>(j) / n_lon;
            mesh.vertices.emplace_back(r * s * std::cos(phi), r * s * std::sin(phi), r * z);
        }
    }
    mesh.vertices.emplace_back(0.0, 0.0, -r);  // south pole
    const int south = static_cast<int>(mesh.vertices.size()) - 1;
    auto ring = [n_lon](int i, int j) { return 1 + (i - 1) * n_lon + (j % n_lon); };
    for (int j = 0; j < n_lon; ++j) mesh.faces.push_back({0, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i + 1 < n_lat; ++i) {
        for (int j = 0; j < n_lon; ++j) {
            mesh.faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
            mesh.faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
        }
    }
    for (int j = 0; j < n_lon; ++j)
        mesh.faces.push_back({south, ring(n_lat - 1, j + 1), ring(n_lat - 1, j)});
    return mesh;
}

struct CurvePoint {
    Eigen::Vector3d mu;
    double sphere_residual = 0.0;  // | |mu| - r |
    double level_residual = 0.0;   // | h(mu) - h0 |
};

struct IntersectionCurve {
    std::vector<CurvePoint> points;
    bool empty() const { return points.empty(); }
};

/// Traces {|mu| = r} intersected with {h(mu) = h0} by marching over
/// colatitude bands and root-finding the level function in longitude on each
/// band. Every emitted point sits on the sphere by construction and
/// satisfies the level equation to the bisection tolerance.
inline IntersectionCurve trace_level_intersection(const ReducedHamiltonian& h, double r,
                                                  double h0, int n_lat = 256, int n_lon = 512,
                                                  double tol = 1e-12) {
    require(r > 0.0, "trace_level_intersection: radius must be positive");
    IntersectionCurve curve;
    auto on_sphere = [r](double theta, double phi) {
        const double s = std::sin(theta);
        return Eigen::Vector3d(r * s * std::cos(phi), r * s * std::sin(phi),
                               r * std::cos(theta));
    };
    auto level = [&](double theta, double phi) {
        const Eigen::Vector3d mu = on_sphere(theta, phi);
        return h.value(VectorXd(mu)) - h0;
    };
    for (int i = 1; i < n_lat; ++i) {
        const double theta = M_PI * static_cast<double>(i) / n_lat;
        double prev_phi = 0.0;
        double prev_val = level(theta, prev_phi);
        for (int j = 1; j <= n_lon; ++j) {
            const double phi = 2.0 * M_PI * static_cast<double>(j) / n_lon;
            const double val = level(theta, phi);
            if ((prev_val <= 0.0 && val > 0.0) || (prev_val >= 0.0 && val < 0.0)) {
                double lo = prev_phi, hi = phi, flo = prev_val;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fmid = level(theta, mid);
                    if (std::abs(fmid) <= tol) {
                        lo = hi = mid;
                        break;
                    }
                    if ((flo <= 0.0) == (fmid <= 0.0)) {
                        lo = mid;
                        flo = fmid;
                    } else {
                        hi = mid;
                    }
                }
                const double root = 0.5 * (lo + hi);
                CurvePoint cp;
                cp.mu = on_sphere(theta, root);
                cp.sphere_residual = std::abs(cp.mu.norm() - r);
                cp.level_residual = std::abs(h.value(VectorXd(cp.mu)) - h0);
                curve.points.push_back(cp);
            }
            prev_phi = phi;
            prev_val = val;
        }
    }
    return curve;
}

}  // namespace kummer
