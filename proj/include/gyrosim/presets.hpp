#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gyrosim/sim.hpp"

namespace gyrosim {

/// Physical gyroscope constants used throughout the bundled experiments.
inline PhysicalParams reference_gyroscope() {
    PhysicalParams p;
    p.mass = 1.8e-7;
    p.k_xx = 63.955;
    p.k_yy = 95.92;
    p.k_xy = 12.779;
    p.d_xx = 1.8e-6;
    p.d_yy = 1.8e-6;
    p.d_xy = 3.6e-7;
    p.angular_rate = 100.0;
    p.ref_freq = 1000.0;  // 1 kHz drive band, as a plain rad/s value
    p.ref_length = 1e-6;
    return p;
}

namespace detail {

// Surface/reaching gains shared by the tracking presets. The published
// alpha=40, beta=50, gamma=60 set is only realizable with a band-limited
// continuous-time operator; with the explicit sampled GL realization used
// here, a term g*D^nu e is stable only while g*dt^(2-nu) stays below
// 4/2^nu, so alpha and beta are retuned to hold a >=2x margin at every
// sample rate the bundled experiments use. See paper_verbatim_gains for
// the published values.
inline SurfaceGains stable_surface_gains() {
    SurfaceGains g;
    g.alpha = {0.01, 0.01};
    g.beta = {20.0, 20.0};
    g.gamma = {60.0, 60.0};
    g.k_s = {10.0, 10.0};
    g.mu = 2.5;
    g.r_exp = 1.5;
    g.m_exp = 1.25;
    return g;
}

inline SimConfig tracking_base() {
    SimConfig c;
    c.dt = 1e-3;
    c.horizon = 60.0;
    c.physical = reference_gyroscope();
    c.q0 = {0.5, 0.5};
    c.qdot0 = {0.0, 0.0};
    c.reference.amplitude = {1.0, 1.2};
    c.reference.frequency = {4.17, 5.11};
    c.gains = stable_surface_gains();
    c.stc.k1 = {2.0, 2.0};
    c.stc.k2 = {5.0, 5.0};
    c.u_max = 1e4;
    return c;
}

}  // namespace detail

inline std::vector<std::string> preset_names() {
    return {"paper_fosmc", "paper_fosmc_stc", "paper_known_disturbance",
            "paper_verbatim_gains"};
}

/**
 * Bundled experiment configurations.
 *
 *  - paper_fosmc:            FOSMC alone on the reference gyroscope.
 *  - paper_fosmc_stc:        the compound FOSMC+STC law, same plant/reference.
 *  - paper_known_disturbance: FOSMC+STC with a sinusoidal disturbance that
 *    the controller is told about (disturbance_mode=known), on a finer grid
 *    suited to the Lyapunov diagnostics.
 *  - paper_verbatim_gains:   the published gain set verbatim. The sampled
 *    GL loop is unstable under it (see presets.hpp notes); the saturation
 *    keeps the run bounded so the behavior can be inspected, but it does
 *    not track.
 */
inline SimConfig make_preset(const std::string& name) {
    if (name == "paper_fosmc") {
        SimConfig c = detail::tracking_base();
        c.controller = ControllerKind::fosmc;
        return c;
    }
    if (name == "paper_fosmc_stc") {
        SimConfig c = detail::tracking_base();
        c.controller = ControllerKind::fosmc_stc;
        return c;
    }
    if (name == "paper_known_disturbance") {
        SimConfig c = detail::tracking_base();
        c.controller = ControllerKind::fosmc_stc;
        c.disturbance_mode = DisturbanceMode::known;
        c.disturbance.amplitude = {0.1, 0.1};
        c.disturbance.frequency = {2.0, 3.0};
        c.dt = 1e-4;
        c.horizon = 20.0;
        return c;
    }
    if (name == "paper_verbatim_gains") {
        SimConfig c = detail::tracking_base();
        c.controller = ControllerKind::fosmc_stc;
        c.gains.alpha = {40.0, 40.0};
        c.gains.beta = {50.0, 50.0};
        c.gains.gamma = {60.0, 60.0};
        c.gains.k_s = {10.0, 10.0};
        c.stc.k1 = {20.0, 20.0};
        c.stc.k2 = {20.0, 20.0};
        c.horizon = 20.0;
        return c;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace gyrosim
