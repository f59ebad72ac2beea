#pragma once

#include <cmath>
#include <stdexcept>

#include "gyrosim/vec2.hpp"

namespace gyrosim {

/// Physical constants of the z-axis vibratory gyroscope (SI units) plus the
/// reference frequency/length used for nondimensionalization.
struct PhysicalParams {
    double mass = 0.0;        // proof mass [kg]
    double k_xx = 0.0;        // spring constants [N/m]
    double k_yy = 0.0;
    double k_xy = 0.0;        // asymmetric coupling term (any sign)
    double d_xx = 0.0;        // damping [N s/m]
    double d_yy = 0.0;
    double d_xy = 0.0;        // asymmetric coupling term (any sign)
    double angular_rate = 0.0;  // Omega*_z [rad/s]
    double ref_freq = 0.0;    // omega_0 [rad/s]
    double ref_length = 0.0;  // q_0 [m]
};

/**
 * Nondimensional plant parameters.
 *
 * The scalar fields are the single source of truth; the matrices of the
 * equation of motion q'' = -M q' - N q + u + E are always rebuilt from them:
 *   D = [[d_xx, d_xy], [d_xy, d_yy]]   (symmetric damping)
 *   K_b = [[w_x^2, w_xy], [w_xy, w_y^2]] (symmetric stiffness)
 *   Omega = [[0, -Omega_z], [Omega_z, 0]] (skew Coriolis coupling)
 *   M = D + 2*Omega,  N = K_b
 */
struct NondimParams {
    double omega_x2 = 0.0;
    double omega_y2 = 0.0;
    double omega_xy = 0.0;
    double d_xx = 0.0;
    double d_yy = 0.0;
    double d_xy = 0.0;
    double omega_z = 0.0;

    Mat2 damping() const { return {d_xx, d_xy, d_xy, d_yy}; }
    Mat2 stiffness() const { return {omega_x2, omega_xy, omega_xy, omega_y2}; }
    Mat2 coriolis() const { return {0.0, -omega_z, omega_z, 0.0}; }
    Mat2 M() const { return damping() + 2.0 * coriolis(); }
    Mat2 N() const { return stiffness(); }

    bool operator==(const NondimParams&) const = default;
};

struct PlantState {
    Vec2 q;      // nondimensional position
    Vec2 qdot;   // nondimensional velocity
    double t = 0.0;

    bool finite() const { return q.finite() && qdot.finite() && std::isfinite(t); }
};

/// Map the physical parameter set onto the nondimensional one:
/// w_i^2 = k_ii/(m w0^2), d_ij <- d*_ij/(m w0), Omega_z = Omega*_z/w0.
inline NondimParams nondimensionalize(const PhysicalParams& p) {
    if (!(p.mass > 0.0))
        throw std::invalid_argument("nondimensionalize: mass must be > 0");
    if (!(p.ref_freq > 0.0))
        throw std::invalid_argument("nondimensionalize: ref_freq must be > 0");
    if (!(p.ref_length > 0.0))
        throw std::invalid_argument("nondimensionalize: ref_length must be > 0");
    const double mw2 = p.mass * p.ref_freq * p.ref_freq;
    const double mw = p.mass * p.ref_freq;
    NondimParams n;
    n.omega_x2 = p.k_xx / mw2;
    n.omega_y2 = p.k_yy / mw2;
    n.omega_xy = p.k_xy / mw2;
    n.d_xx = p.d_xx / mw;
    n.d_yy = p.d_yy / mw;
    n.d_xy = p.d_xy / mw;
    n.omega_z = p.angular_rate / p.ref_freq;
    return n;
}

/// Nondimensional control from a physical force and back; u = u*/(m w0^2 q0).
inline double force_to_nondim(double force, const PhysicalParams& p) {
    return force / (p.mass * p.ref_freq * p.ref_freq * p.ref_length);
}

inline double force_from_nondim(double u, const PhysicalParams& p) {
    return u * p.mass * p.ref_freq * p.ref_freq * p.ref_length;
}

/// Right-hand side of the nondimensional equation of motion:
/// q'' = -M q' - N q + u + E.
inline Vec2 dynamics(const PlantState& s, Vec2 u, Vec2 E, const NondimParams& p) {
    return -(p.M() * s.qdot) - p.N() * s.q + u + E;
}

/**
 * Classical fixed-step RK4 advance of the plant under zero-order-hold
 * control. The disturbance is a function of time and is evaluated at the
 * stage times; u stays constant across the step. Throws if the new state
 * is not finite.
 */
template <typename DisturbanceFn>
PlantState step_rk4(const PlantState& s, Vec2 u, DisturbanceFn&& E_fn,
                    const NondimParams& p, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("step_rk4: dt must be > 0");

    const auto accel = [&](const PlantState& st, double time) {
        return dynamics(st, u, E_fn(time), p);
    };

    const double h = dt;
    const Vec2 k1q = s.qdot;
    const Vec2 k1v = accel(s, s.t);

    PlantState mid1{s.q + 0.5 * h * k1q, s.qdot + 0.5 * h * k1v, s.t};
    const Vec2 k2q = mid1.qdot;
    const Vec2 k2v = accel(mid1, s.t + 0.5 * h);

    PlantState mid2{s.q + 0.5 * h * k2q, s.qdot + 0.5 * h * k2v, s.t};
    const Vec2 k3q = mid2.qdot;
    const Vec2 k3v = accel(mid2, s.t + 0.5 * h);

    PlantState end{s.q + h * k3q, s.qdot + h * k3v, s.t};
    const Vec2 k4q = end.qdot;
    const Vec2 k4v = accel(end, s.t + h);

    PlantState out;
    out.q = s.q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    out.qdot = s.qdot + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out.t = s.t + h;
    if (!out.finite())
        throw std::runtime_error("step_rk4: state became non-finite");
    return out;
}

inline PlantState step_rk4(const PlantState& s, Vec2 u, const NondimParams& p,
                           double dt) {
    return step_rk4(s, u, [](double) { return Vec2{}; }, p, dt);
}

}  // namespace gyrosim
