#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "kummer/common.hpp"
#include "kummer/lie_algebra.hpp"
#include "kummer/phase_space.hpp"
#include "kummer/reduction.hpp"

namespace kummer {

enum class StepMethod { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
    StepMethod method = StepMethod::rk45_adaptive;
    double dt = 1e-2;     // fixed-step size
    double atol = 1e-10;  // adaptive absolute tolerance
    double rtol = 1e-10;  // adaptive relative tolerance
    double t0 = 0.0;
    double t1 = 1.0;
    long max_steps = 2000000;
    // 0 records the natural step sequence; otherwise states are recorded at
    // sample_count + 1 uniformly spaced times hit exactly by step clipping.
    int sample_count = 0;

    void validate() const {
        require(dt > 0.0, "IntegratorConfig: dt must be positive");
        require(atol > 0.0 && rtol > 0.0, "IntegratorConfig: tolerances must be positive");
        require(t1 > t0, "IntegratorConfig: empty time span");
        require(max_steps > 0, "IntegratorConfig: max_steps must be positive");
        require(sample_count >= 0, "IntegratorConfig: sample_count must be nonnegative");
    }
};

enum class TrajStatus { complete, domain_exit, step_underflow, max_steps_exceeded };

inline const char* to_string(TrajStatus s) {
    switch (s) {
        case TrajStatus::complete: return "complete";
        case TrajStatus::domain_exit: return "domain_exit";
        case TrajStatus::step_underflow: return "step_underflow";
        case TrajStatus::max_steps_exceeded: return "max_steps_exceeded";
    }
    return "unknown";
}

/// Time grid, recorded states, and any attached invariant series. On an
/// abnormal status the trajectory holds every state accepted before failure
/// and `diagnostic` carries the failure time.
struct Trajectory {
    std::vector<double> times;
    std::vector<VectorXd> states;
    std::map<std::string, std::vector<double>> monitors;
    TrajStatus status = TrajStatus::complete;
    std::string diagnostic;

    bool completed() const { return status == TrajStatus::complete; }
};

using VectorField = std::function<VectorXd(const VectorXd&)>;

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
    static constexpr std::array<double, 7> c{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr std::array<std::array<double, 6>, 7> a{{
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    }};
    // 5th-order weights equal row 7 of a (FSAL); 4th-order weights below.
    static constexpr std::array<double, 7> b4{5179.0 / 57600, 0.0,          7571.0 / 16695,
                                              393.0 / 640,    -92097.0 / 339200,
                                              187.0 / 2100,   1.0 / 40};
};

inline double error_norm(const VectorXd& err, const VectorXd& y0, const VectorXd& y1,
                         double atol, double rtol) {
    double acc = 0.0;
    for (int i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = err[i] / sc;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

inline VectorXd rk4_step(const VectorField& f, const VectorXd& y, double h) {
    const VectorXd k1 = f(y);
    const VectorXd k2 = f(y + 0.5 * h * k1);
    const VectorXd k3 = f(y + 0.5 * h * k2);
    const VectorXd k4 = f(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Integrates dy/dt = field(y) over cfg's span. Deterministic given the
/// configuration and the initial state. A DomainError thrown by the field
/// aborts cleanly with the partial trajectory; so do step-size underflow
/// near singularities and the step budget.
inline Trajectory integrate(const VectorField& field, const VectorXd& y0,
                            const IntegratorConfig& cfg) {
    cfg.validate();
    Trajectory traj;
    const double span = cfg.t1 - cfg.t0;

    std::vector<double> targets;
    if (cfg.sample_count > 0) {
        targets.reserve(cfg.sample_count);
        for (int i = 1; i <= cfg.sample_count; ++i)
            targets.push_back(cfg.t0 + span * static_cast<double>(i) /
                                            static_cast<double>(cfg.sample_count));
        targets.back() = cfg.t1;
    } else {
        targets.push_back(cfg.t1);
    }

    double t = cfg.t0;
    VectorXd y = y0;
    traj.times.push_back(t);
    traj.states.push_back(y);

    auto fail = [&](TrajStatus status, double at) {
        traj.status = status;
        traj.diagnostic = std::string(to_string(status)) + " at t=" + std::to_string(at);
        return traj;
    };

    const bool record_steps = cfg.sample_count == 0;
    std::size_t next_target = 0;
    long steps = 0;

    try {
        if (cfg.method == StepMethod::rk4_fixed) {
            while (next_target < targets.size()) {
                const double goal = targets[next_target];
                while (t < goal - 1e-14 * std::max(1.0, std::abs(goal))) {
                    if (++steps > cfg.max_steps) return fail(TrajStatus::max_steps_exceeded, t);
                    const double h = std::min(cfg.dt, goal - t);
                    y = detail::rk4_step(field, y, h);
                    t += h;
                    if (record_steps) {
                        traj.times.push_back(t);
                        traj.states.push_back(y);
                    }
                }
                t = goal;
                if (!record_steps) {
                    traj.times.push_back(t);
                    traj.states.push_back(y);
                }
                ++next_target;
            }
            return traj;
        }

        // Dormand-Prince 5(4) with FSAL and a standard step controller.
        using T = detail::Dopri5;
        double h_prop = span / 100.0;
        VectorXd k1 = field(y);
        std::array<VectorXd, 7> k;
        while (next_target < targets.size()) {
            const double goal = targets[next_target];
            while (t < goal - 1e-14 * std::max(1.0, std::abs(goal))) {
                if (++steps > cfg.max_steps) return fail(TrajStatus::max_steps_exceeded, t);
                const double h = std::min(h_prop, goal - t);
                if (h < 1e-14 * std::max(1.0, std::abs(t)))
                    return fail(TrajStatus::step_underflow, t);

                k[0] = k1;
                for (int s = 1; s < 7; ++s) {
                    VectorXd arg = y;
                    for (int i = 0; i < s; ++i)
                        if (T::a[s][i] != 0.0) arg += h * T::a[s][i] * k[i];
                    k[s] = field(arg);
                }
                // Stage 7 argument is the 5th-order solution itself.
                VectorXd y5 = y;
                for (int i = 0; i < 6; ++i)
                    if (T::a[6][i] != 0.0) y5 += h * T::a[6][i] * k[i];
                VectorXd y4 = y;
                for (int i = 0; i < 7; ++i)
                    if (T::b4[i] != 0.0) y4 += h * T::b4[i] * k[i];

                const double err = detail::error_norm(y5 - y4, y, y5, cfg.atol, cfg.rtol);
                if (err <= 1.0) {
                    t += h;
                    y = y5;
                    k1 = k[6];  // FSAL
                    if (record_steps && t < goal) {
                        traj.times.push_back(t);
                        traj.states.push_back(y);
                    }
                    const double grow =
                        err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
                    h_prop = h * grow;
                } else {
                    h_prop = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
                }
            }
            t = goal;
            traj.times.push_back(t);
            traj.states.push_back(y);
            ++next_target;
        }
        return traj;
    } catch (const DomainError&) {
        return fail(TrajStatus::domain_exit, t);
    }
}

using NamedFunctions = std::map<std::string, std::function<double(const VectorXd&)>>;

/// Drift of each named function along a trajectory: max_t |f(y(t)) - f(y(0))|.
/// Evaluation failures are counted per sample, not fatal.
struct MonitorReport {
    struct Entry {
        double initial = 0.0;
        double drift = 0.0;
        int failures = 0;
    };
    std::map<std::string, Entry> entries;

    double max_drift() const {
        double m = 0.0;
        for (const auto& [name, e] : entries) m = std::max(m, e.drift);
        return m;
    }
};

inline MonitorReport monitor(const Trajectory& traj, const NamedFunctions& fns) {
    MonitorReport report;
    for (const auto& [name, fn] : fns) {
        MonitorReport::Entry entry;
        bool have_first = false;
        for (const VectorXd& state : traj.states) {
            double v;
            try {
                v = fn(state);
            } catch (const std::exception&) {
                ++entry.failures;
                continue;
            }
            if (!have_first) {
                entry.initial = v;
                have_first = true;
            }
            entry.drift = std::max(entry.drift, std::abs(v - entry.initial));
        }
        report.entries[name] = entry;
    }
    return report;
}

/// Evaluates the named functions along the trajectory and stores the series
/// in traj.monitors (NaN marks a failed sample).
inline void attach_monitors(Trajectory& traj, const NamedFunctions& fns) {
    for (const auto& [name, fn] : fns) {
        std::vector<double> series;
        series.reserve(traj.states.size());
        for (const VectorXd& state : traj.states) {
            try {
                series.push_back(fn(state));
            } catch (const std::exception&) {
                series.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        traj.monitors[name] = std::move(series);
    }
}

/// Full dynamics as an ODE on interleaved real coordinates; the excluded-set
/// guard is enforced at every field evaluation.
inline VectorField full_dynamics_field(const ScalarField& h, const FormWeights& w,
                                       double eps = domain_eps) {
    return [h, w, eps](const VectorXd& y) {
        const PhasePoint p{VectorXd(y)};
        p.require_valid(eps);
        return hamiltonian_vector_field(h, p, w).reals();
    };
}

/// Reduced Lie-Poisson dynamics as an ODE on dual coordinates.
inline VectorField reduced_dynamics_field(const AlgebraPtr& alg, const ReducedHamiltonian& h) {
    return [alg, h](const VectorXd& mu) { return lie_poisson_field(alg, h, mu); };
}

}  // namespace kummer
