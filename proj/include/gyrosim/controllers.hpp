#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "gyrosim/frac_calc.hpp"
#include "gyrosim/plant.hpp"
#include "gyrosim/vec2.hpp"

namespace gyrosim {

/// Componentwise product, used for the diagonal per-axis gains.
constexpr Vec2 cmul(Vec2 a, Vec2 b) { return {a.x * b.x, a.y * b.y}; }

/// Gains of the fractional sliding surface and the FOSMC reaching law.
/// r_exp/m_exp is the fractional exponent applied to the error (r/m).
struct SurfaceGains {
    Vec2 alpha;          // gain on D^(mu-1) e in the surface, D^mu e in the law
    Vec2 beta;           // gain on D^(mu-2) e in the surface
    Vec2 gamma;          // gain on the integral of e^(r/m)
    Vec2 k_s;            // reaching-law gain
    double mu = 2.5;     // fractional surface order (> 2)
    double r_exp = 1.5;
    double m_exp = 1.25;

    double power() const { return r_exp / m_exp; }
};

/// Super-twisting gains.
struct STCGains {
    Vec2 k1;
    Vec2 k2;
};

enum class DisturbanceMode { unknown, known };

/**
 * Per-axis sample histories and accumulators owned by one control loop.
 *
 * The error and error-derivative histories share one dt; the two integral
 * accumulators (of e^(r/m) and of sign(e^(r/m))) are advanced with the
 * trapezoidal rule each time a sample is recorded. GL weights for the three
 * operator orders the laws need (mu, mu-1, mu-2) are precomputed once.
 */
class ControllerState {
public:
    ControllerState(double dt, std::size_t memory_len, double mu,
                    DisturbanceMode mode = DisturbanceMode::unknown)
        : mode_(mode),
          dt_(dt),
          ex_(dt, memory_len),
          ey_(dt, memory_len),
          edx_(dt, memory_len),
          edy_(dt, memory_len),
          w_mu_(gl_weights(mu, memory_len)),
          w_mu1_(gl_weights(mu - 1.0, memory_len)),
          w_mu2_(gl_weights(mu - 2.0, memory_len)) {}

    /// Record the tracking error and its derivative at the current sample
    /// and advance the integral accumulators.
    void observe(Vec2 e, Vec2 edot, double power) {
        ex_.push(e.x);
        ey_.push(e.y);
        edx_.push(edot.x);
        edy_.push(edot.y);
        const Vec2 ipow = signed_pow(e, power);
        const Vec2 isign{sgn(ipow.x), sgn(ipow.y)};
        if (has_prev_) {
            i_pow_ += 0.5 * dt_ * (ipow + prev_ipow_);
            i_sign_ += 0.5 * dt_ * (isign + prev_isign_);
        }
        prev_ipow_ = ipow;
        prev_isign_ = isign;
        has_prev_ = true;
    }

    Vec2 error() const { return {ex_.sample(0), ey_.sample(0)}; }
    Vec2 error_dot() const { return {edx_.sample(0), edy_.sample(0)}; }
    Vec2 integral_pow() const { return i_pow_; }
    Vec2 integral_sign() const { return i_sign_; }
    DisturbanceMode mode() const { return mode_; }
    double dt() const { return dt_; }
    bool empty() const { return ex_.empty(); }

    Vec2 differint_mu() const { return differint2(ex_, ey_, w_mu_); }
    Vec2 differint_mu1() const { return differint2(ex_, ey_, w_mu1_); }
    Vec2 differint_mu2() const { return differint2(ex_, ey_, w_mu2_); }

    const SampledHistory& error_history_x() const { return ex_; }
    const SampledHistory& error_history_y() const { return ey_; }

    /// Lyapunov bookkeeping used by compound_control.
    Vec2 prev_surface() const { return prev_s_; }
    bool has_surface() const { return has_s_; }
    void remember_surface(Vec2 s) {
        prev_s_ = s;
        has_s_ = true;
    }

private:
    DisturbanceMode mode_;
    double dt_;
    SampledHistory ex_, ey_;    // e(t) per axis
    SampledHistory edx_, edy_;  // de/dt per axis
    GLWeights w_mu_, w_mu1_, w_mu2_;
    Vec2 i_pow_;
    Vec2 i_sign_;
    Vec2 prev_ipow_, prev_isign_;
    bool has_prev_ = false;
    Vec2 prev_s_;
    bool has_s_ = false;
};

struct ControlOutput {
    Vec2 u_eq;
    Vec2 u_s;
    Vec2 u_stc;
    Vec2 u_total;
    Vec2 s;
    double V = 0.0;
    double Vdot = 0.0;
};

struct LyapunovSample {
    double V = 0.0;
    double Vdot = 0.0;
};

inline Vec2 tracking_error(Vec2 q, Vec2 q_d) { return q - q_d; }

/// Fractional sliding surface
/// s = de/dt + alpha D^(mu-1) e + beta D^(mu-2) e + gamma Int e^(r/m).
inline Vec2 sliding_surface(const ControllerState& cs, const SurfaceGains& g) {
    if (cs.empty())
        throw std::invalid_argument("sliding_surface: empty history");
    return cs.error_dot() + cmul(g.alpha, cs.differint_mu1()) +
           cmul(g.beta, cs.differint_mu2()) + cmul(g.gamma, cs.integral_pow());
}

/// Equivalent control obtained from s' = 0 under the nominal model:
/// u_eq = M q' + N q - E + q_d'' - alpha D^mu e - beta D^(mu-1) e - gamma e^(r/m).
inline Vec2 equivalent_control(const ControllerState& cs, const NondimParams& plant,
                               Vec2 q, Vec2 qdot, Vec2 qdd_d, Vec2 E_hat,
                               const SurfaceGains& g) {
    if (cs.empty())
        throw std::invalid_argument("equivalent_control: empty history");
    return plant.M() * qdot + plant.N() * q - E_hat + qdd_d -
           cmul(g.alpha, cs.differint_mu()) - cmul(g.beta, cs.differint_mu1()) -
           cmul(g.gamma, signed_pow(cs.error(), g.power()));
}

/// Reaching law u_s = -K_s s.
inline Vec2 reaching_control(Vec2 s, const SurfaceGains& g) {
    return -cmul(g.k_s, s);
}

/// The FOSMC law, u_eq + u_s.
inline Vec2 fosmc_control(const ControllerState& cs, const NondimParams& plant,
                          Vec2 q, Vec2 qdot, Vec2 qdd_d, Vec2 E_hat,
                          const SurfaceGains& g) {
    const Vec2 s = sliding_surface(cs, g);
    return equivalent_control(cs, plant, q, qdot, qdd_d, E_hat, g) +
           reaching_control(s, g);
}

/// Super-twisting term
/// u_stc = -k1 |e^(r/m)|^(1/2) sign(e^(r/m)) - k2 Int sign(e^(r/m)).
/// Under the signed-power convention the first factor is |e|^(r/2m) sign(e).
inline Vec2 stc_control(const ControllerState& cs, const STCGains& stc,
                        const SurfaceGains& g) {
    const Vec2 epow = signed_pow(cs.error(), g.power());
    const Vec2 root = signed_pow(epow, 0.5);
    return -cmul(stc.k1, root) - cmul(stc.k2, cs.integral_sign());
}

/// V = s^T s / 2 and its backward-difference derivative.
inline LyapunovSample lyapunov_diagnostics(Vec2 s_now, Vec2 s_prev, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("lyapunov_diagnostics: dt must be > 0");
    const double v_now = 0.5 * s_now.dot(s_now);
    const double v_prev = 0.5 * s_prev.dot(s_prev);
    return {v_now, (v_now - v_prev) / dt};
}

/**
 * Compound law u = u_FOSMC + u_STC with the surface value and numerical
 * Lyapunov diagnostics attached. The first call reports Vdot = 0 (there is
 * no previous surface sample to difference against).
 */
inline ControlOutput compound_control(ControllerState& cs, const NondimParams& plant,
                                      Vec2 q, Vec2 qdot, Vec2 qdd_d, Vec2 E_hat,
                                      const SurfaceGains& g, const STCGains& stc) {
    ControlOutput out;
    out.s = sliding_surface(cs, g);
    out.u_eq = equivalent_control(cs, plant, q, qdot, qdd_d, E_hat, g);
    out.u_s = reaching_control(out.s, g);
    out.u_stc = stc_control(cs, stc, g);
    out.u_total = (out.u_eq + out.u_s) + out.u_stc;
    if (cs.has_surface()) {
        const LyapunovSample lv = lyapunov_diagnostics(out.s, cs.prev_surface(), cs.dt());
        out.V = lv.V;
        out.Vdot = lv.Vdot;
    } else {
        out.V = 0.5 * out.s.dot(out.s);
        out.Vdot = 0.0;
    }
    cs.remember_surface(out.s);
    return out;
}

}  // namespace gyrosim
