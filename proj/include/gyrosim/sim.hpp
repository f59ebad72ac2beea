#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gyrosim/controllers.hpp"
#include "gyrosim/plant.hpp"
#include "gyrosim/vec2.hpp"

namespace gyrosim {

/// Per-axis sinusoidal reference q_d,i = A_i sin(w_i t).
struct ReferenceSpec {
    Vec2 amplitude{1.0, 1.2};
    Vec2 frequency{4.17, 5.11};
    bool operator==(const ReferenceSpec&) const = default;
};

/// Per-axis sinusoidal disturbance E_i = A_i sin(w_i t); zero by default.
struct DisturbanceSpec {
    Vec2 amplitude{0.0, 0.0};
    Vec2 frequency{0.0, 0.0};
    bool operator==(const DisturbanceSpec&) const = default;
};

enum class ControllerKind { fosmc, fosmc_stc };

struct SimConfig {
    double dt = 1e-3;
    double horizon = 60.0;
    ControllerKind controller = ControllerKind::fosmc_stc;
    SurfaceGains gains;
    STCGains stc;
    std::optional<PhysicalParams> physical;  // exactly one of physical/nondim
    std::optional<NondimParams> nondim;
    Vec2 q0{0.5, 0.5};
    Vec2 qdot0{0.0, 0.0};
    ReferenceSpec reference;
    DisturbanceSpec disturbance;
    DisturbanceMode disturbance_mode = DisturbanceMode::unknown;
    std::optional<double> u_max;          // control saturation, off by default
    std::optional<std::size_t> memory_len;  // GL memory cap, full by default

    NondimParams plant() const {
        if (nondim)
            return *nondim;
        if (physical)
            return nondimensionalize(*physical);
        throw std::invalid_argument("plant: neither physical nor nondim parameters set");
    }

    std::size_t steps() const {
        return static_cast<std::size_t>(std::llround(horizon / dt));
    }
};

inline bool operator==(const PhysicalParams& a, const PhysicalParams& b) {
    return a.mass == b.mass && a.k_xx == b.k_xx && a.k_yy == b.k_yy &&
           a.k_xy == b.k_xy && a.d_xx == b.d_xx && a.d_yy == b.d_yy &&
           a.d_xy == b.d_xy && a.angular_rate == b.angular_rate &&
           a.ref_freq == b.ref_freq && a.ref_length == b.ref_length;
}

inline bool operator==(const SurfaceGains& a, const SurfaceGains& b) {
    return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma &&
           a.k_s == b.k_s && a.mu == b.mu && a.r_exp == b.r_exp && a.m_exp == b.m_exp;
}

inline bool operator==(const STCGains& a, const STCGains& b) {
    return a.k1 == b.k1 && a.k2 == b.k2;
}

inline bool operator==(const SimConfig& a, const SimConfig& b) {
    return a.dt == b.dt && a.horizon == b.horizon && a.controller == b.controller &&
           a.gains == b.gains && a.stc == b.stc && a.physical == b.physical &&
           a.nondim == b.nondim && a.q0 == b.q0 && a.qdot0 == b.qdot0 &&
           a.reference == b.reference && a.disturbance == b.disturbance &&
           a.disturbance_mode == b.disturbance_mode && a.u_max == b.u_max &&
           a.memory_len == b.memory_len;
}

/// Throws std::invalid_argument naming the offending field.
inline void validate(const SimConfig& c) {
    const auto positive2 = [](Vec2 v, const char* key) {
        if (!(v.x > 0.0) || !(v.y > 0.0))
            throw std::invalid_argument(std::string(key) + ": entries must be > 0");
    };
    if (!(c.dt > 0.0))
        throw std::invalid_argument("dt: must be > 0");
    if (!(c.horizon > 0.0))
        throw std::invalid_argument("horizon: must be > 0");
    if (!(c.dt < c.horizon))
        throw std::invalid_argument("dt: must be smaller than horizon");
    positive2(c.gains.alpha, "gains.alpha");
    positive2(c.gains.beta, "gains.beta");
    positive2(c.gains.gamma, "gains.gamma");
    positive2(c.gains.k_s, "gains.k_s");
    if (!(c.gains.mu > 2.0))
        throw std::invalid_argument("gains.mu: must be > 2");
    if (!(c.gains.r_exp > 0.0))
        throw std::invalid_argument("gains.r_exp: must be > 0");
    if (!(c.gains.m_exp > 0.0))
        throw std::invalid_argument("gains.m_exp: must be > 0");
    if (c.controller == ControllerKind::fosmc_stc) {
        positive2(c.stc.k1, "stc.k1");
        positive2(c.stc.k2, "stc.k2");
    }
    if (static_cast<bool>(c.physical) == static_cast<bool>(c.nondim))
        throw std::invalid_argument("plant: exactly one of physical/nondim must be set");
    if (c.physical) {
        if (!(c.physical->mass > 0.0))
            throw std::invalid_argument("plant.mass: must be > 0");
        if (!(c.physical->ref_freq > 0.0))
            throw std::invalid_argument("plant.ref_freq: must be > 0");
        if (!(c.physical->ref_length > 0.0))
            throw std::invalid_argument("plant.ref_length: must be > 0");
    }
    if (c.u_max && !(*c.u_max > 0.0))
        throw std::invalid_argument("u_max: must be > 0 when set");
    if (c.memory_len && *c.memory_len == 0)
        throw std::invalid_argument("memory_len: must be >= 1 when set");
    if (c.steps() < 1)
        throw std::invalid_argument("horizon: too short for one step");
}

struct ReferenceSample {
    Vec2 q_d;
    Vec2 qd_d;
    Vec2 qdd_d;
};

/// Reference position/velocity/acceleration at time t (analytic derivatives).
inline ReferenceSample reference(double t, const ReferenceSpec& spec) {
    ReferenceSample r;
    for (std::size_t i = 0; i < 2; ++i) {
        const double A = spec.amplitude[i];
        const double w = spec.frequency[i];
        r.q_d[i] = A * std::sin(w * t);
        r.qd_d[i] = A * w * std::cos(w * t);
        r.qdd_d[i] = -A * w * w * std::sin(w * t);
    }
    return r;
}

inline Vec2 disturbance_at(double t, const DisturbanceSpec& spec) {
    return {spec.amplitude.x * std::sin(spec.frequency.x * t),
            spec.amplitude.y * std::sin(spec.frequency.y * t)};
}

/// One closed-loop sample: everything Figs. 2-5 plot plus the Lyapunov pair.
struct TelemetryRecord {
    double t = 0.0;
    Vec2 q;
    Vec2 q_d;
    Vec2 e;
    Vec2 qdot;
    Vec2 s;
    Vec2 u_total;  // as applied to the plant (saturated when u_max is set)
    Vec2 u_eq;
    Vec2 u_s;
    Vec2 u_stc;
    double V = 0.0;
    double Vdot = 0.0;
};

/// Thrown when the closed loop reaches a non-finite state.
class SimulationDiverged : public std::runtime_error {
public:
    SimulationDiverged(std::size_t step, double t, Vec2 last_u)
        : std::runtime_error("simulation diverged at step " + std::to_string(step) +
                             " (t=" + std::to_string(t) + ", last u=[" +
                             std::to_string(last_u.x) + ", " + std::to_string(last_u.y) +
                             "])"),
          step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/**
 * Run the closed loop: sample state, update controller histories, compute
 * the compound control (saturated when configured), record telemetry, then
 * RK4-advance the plant under zero-order hold. Deterministic for a fixed
 * config.
 */
inline std::vector<TelemetryRecord> run(const SimConfig& cfg) {
    validate(cfg);
    const NondimParams plant = cfg.plant();
    const std::size_t nsteps = cfg.steps();
    const std::size_t memory = cfg.memory_len.value_or(nsteps);
    const double power = cfg.gains.power();
    const STCGains stc = cfg.controller == ControllerKind::fosmc_stc
                             ? cfg.stc
                             : STCGains{{0.0, 0.0}, {0.0, 0.0}};

    ControllerState cs(cfg.dt, memory, cfg.gains.mu, cfg.disturbance_mode);
    PlantState state{cfg.q0, cfg.qdot0, 0.0};
    const auto E_fn = [&](double t) { return disturbance_at(t, cfg.disturbance); };

    std::vector<TelemetryRecord> telemetry;
    telemetry.reserve(nsteps);
    for (std::size_t k = 0; k < nsteps; ++k) {
        const ReferenceSample ref = reference(state.t, cfg.reference);
        const Vec2 e = tracking_error(state.q, ref.q_d);
        const Vec2 edot = state.qdot - ref.qd_d;
        cs.observe(e, edot, power);

        const Vec2 E_hat = cfg.disturbance_mode == DisturbanceMode::known
                               ? E_fn(state.t)
                               : Vec2{};
        ControlOutput out = compound_control(cs, plant, state.q, state.qdot,
                                             ref.qdd_d, E_hat, cfg.gains, stc);
        Vec2 u_cmd = out.u_total;
        if (cfg.u_max) {
            u_cmd.x = std::clamp(u_cmd.x, -*cfg.u_max, *cfg.u_max);
            u_cmd.y = std::clamp(u_cmd.y, -*cfg.u_max, *cfg.u_max);
        }

        telemetry.push_back({state.t, state.q, ref.q_d, e, state.qdot, out.s,
                             u_cmd, out.u_eq, out.u_s, out.u_stc, out.V, out.Vdot});
        try {
            state = step_rk4(state, u_cmd, E_fn, plant, cfg.dt);
        } catch (const std::runtime_error&) {
            throw SimulationDiverged(k, state.t, u_cmd);
        }
    }
    return telemetry;
}

/// Scalar summary of one run. Overshoot is the largest |e| after the first
/// zero crossing of the error; the chattering index is the total variation
/// of the applied control over the second half of the run per unit time.
struct Metrics {
    Vec2 rms_error;
    Vec2 max_overshoot;
    Vec2 settling_time;
    bool settled_x = false;
    bool settled_y = false;
    Vec2 chattering_index;
    double band = 0.0;
};

inline Metrics compute_metrics(const std::vector<TelemetryRecord>& telemetry,
                               double band = 0.05) {
    if (telemetry.size() < 2)
        throw std::invalid_argument("compute_metrics: need at least 2 records");
    const std::size_t n = telemetry.size();
    Metrics m;
    m.band = band;

    for (std::size_t ax = 0; ax < 2; ++ax) {
        double sumsq = 0.0;
        for (const auto& r : telemetry)
            sumsq += r.e[ax] * r.e[ax];
        m.rms_error[ax] = std::sqrt(sumsq / static_cast<double>(n));

        // First zero crossing of the error, then the worst excursion after it.
        std::size_t crossed = n;
        for (std::size_t i = 1; i < n; ++i) {
            if (telemetry[i].e[ax] == 0.0 ||
                (telemetry[i].e[ax] > 0.0) != (telemetry[i - 1].e[ax] > 0.0)) {
                crossed = i;
                break;
            }
        }
        double overshoot = 0.0;
        for (std::size_t i = crossed; i < n; ++i)
            overshoot = std::max(overshoot, std::abs(telemetry[i].e[ax]));
        m.max_overshoot[ax] = overshoot;

        // Last time the error leaves the band; settled if it came back for good.
        std::size_t last_out = n;  // n means "never out"
        for (std::size_t i = n; i-- > 0;) {
            if (std::abs(telemetry[i].e[ax]) > band) {
                last_out = i;
                break;
            }
        }
        bool settled;
        double t_settle;
        if (last_out == n) {
            settled = true;
            t_settle = telemetry.front().t;
        } else if (last_out == n - 1) {
            settled = false;
            t_settle = telemetry.back().t;
        } else {
            settled = true;
            t_settle = telemetry[last_out + 1].t;
        }
        m.settling_time[ax] = t_settle;
        if (ax == 0)
            m.settled_x = settled;
        else
            m.settled_y = settled;

        const std::size_t j0 = n / 2;
        double tv = 0.0;
        for (std::size_t i = j0 + 1; i < n; ++i)
            tv += std::abs(telemetry[i].u_total[ax] - telemetry[i - 1].u_total[ax]);
        const double elapsed = telemetry[n - 1].t - telemetry[j0].t;
        m.chattering_index[ax] = elapsed > 0.0 ? tv / elapsed : 0.0;
    }
    return m;
}

struct CompareResult {
    std::vector<TelemetryRecord> telemetry_a;
    std::vector<TelemetryRecord> telemetry_b;
    Metrics metrics_a;
    Metrics metrics_b;
};

/// Componentwise b - a over every metric field.
inline Metrics metrics_delta(const Metrics& a, const Metrics& b) {
    Metrics d;
    d.rms_error = b.rms_error - a.rms_error;
    d.max_overshoot = b.max_overshoot - a.max_overshoot;
    d.settling_time = b.settling_time - a.settling_time;
    d.chattering_index = b.chattering_index - a.chattering_index;
    d.settled_x = a.settled_x == b.settled_x;
    d.settled_y = a.settled_y == b.settled_y;
    d.band = b.band - a.band;
    return d;
}

/// Run two configs that share plant, reference, dt and horizon and pair up
/// their metrics. Controller kind and gains may differ; anything else differing
/// is rejected.
inline CompareResult compare(const SimConfig& a, const SimConfig& b,
                             double band = 0.05) {
    if (a.dt != b.dt)
        throw std::invalid_argument("compare: dt differs between configs");
    if (a.horizon != b.horizon)
        throw std::invalid_argument("compare: horizon differs between configs");
    if (!(a.physical == b.physical) || !(a.nondim == b.nondim))
        throw std::invalid_argument("compare: plant parameters differ between configs");
    if (!(a.reference == b.reference))
        throw std::invalid_argument("compare: reference differs between configs");
    CompareResult r;
    r.telemetry_a = run(a);
    r.telemetry_b = run(b);
    r.metrics_a = compute_metrics(r.telemetry_a, band);
    r.metrics_b = compute_metrics(r.telemetry_b, band);
    return r;
}

}  // namespace gyrosim
