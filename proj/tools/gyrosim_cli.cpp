// gyrosim command-line front end: run bundled or user experiments, compare
// controllers, self-test the fractional operator, sweep parameters.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gyrosim/config.hpp"
#include "gyrosim/csv.hpp"
#include "gyrosim/frac_calc.hpp"
#include "gyrosim/presets.hpp"
#include "gyrosim/sim.hpp"
#include "gyrosim/svg.hpp"

namespace fs = std::filesystem;
using namespace gyrosim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

SimConfig resolve_config(const std::string& spec) {
    if (fs::exists(spec))
        return load_config_file(spec);
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), spec) != names.end())
        return make_preset(spec);
    throw ConfigError("no such config file or preset: " + spec);
}

std::vector<double> column(const std::vector<TelemetryRecord>& tel,
                           double TelemetryRecord::* field) {
    std::vector<double> out;
    out.reserve(tel.size());
    for (const auto& r : tel)
        out.push_back(r.*field);
    return out;
}

std::vector<double> column(const std::vector<TelemetryRecord>& tel,
                           Vec2 TelemetryRecord::* field, std::size_t axis) {
    std::vector<double> out;
    out.reserve(tel.size());
    for (const auto& r : tel)
        out.push_back((r.*field)[axis]);
    return out;
}

void write_run_plots(const fs::path& dir, const std::vector<TelemetryRecord>& tel) {
    const auto t = column(tel, &TelemetryRecord::t);
    const char* axis_name[2] = {"x", "y"};
    for (std::size_t ax = 0; ax < 2; ++ax) {
        write_svg_plot((dir / (std::string("position_") + axis_name[ax] + ".svg")).string(),
                       std::string("Position tracking, ") + axis_name[ax] + "-axis",
                       "t", "q",
                       {{"reference", "#888888", t, column(tel, &TelemetryRecord::q_d, ax)},
                        {std::string("q_") + axis_name[ax], "#1f6fb2", t,
                         column(tel, &TelemetryRecord::q, ax)}});
    }
    write_svg_plot((dir / "error.svg").string(), "Tracking error", "t", "e",
                   {{"e_x", "#1f6fb2", t, column(tel, &TelemetryRecord::e, 0)},
                    {"e_y", "#b2421f", t, column(tel, &TelemetryRecord::e, 1)}});
    write_svg_plot((dir / "velocity.svg").string(), "Velocity", "t", "dq/dt",
                   {{"qdot_x", "#1f6fb2", t, column(tel, &TelemetryRecord::qdot, 0)},
                    {"qdot_y", "#b2421f", t, column(tel, &TelemetryRecord::qdot, 1)}});
}

int cmd_simulate(const std::string& config_spec, const std::string& out_dir,
                 double band) {
    const SimConfig cfg = resolve_config(config_spec);
    validate(cfg);
    fs::create_directories(out_dir);
    const auto telemetry = run(cfg);
    write_telemetry_csv((fs::path(out_dir) / "telemetry.csv").string(), telemetry);
    write_metrics((fs::path(out_dir) / "metrics.txt").string(),
                  compute_metrics(telemetry, band));
    write_run_plots(out_dir, telemetry);
    save_config_file(cfg, (fs::path(out_dir) / "config.json").string());
    std::cout << "wrote " << telemetry.size() << " records to " << out_dir << "\n";
    return kExitOk;
}

int cmd_compare(const std::string& spec_a, const std::string& spec_b,
                const std::string& out_dir, double band) {
    const SimConfig a = resolve_config(spec_a);
    const SimConfig b = resolve_config(spec_b);
    validate(a);
    validate(b);
    fs::create_directories(out_dir);
    const CompareResult r = compare(a, b, band);
    write_telemetry_csv((fs::path(out_dir) / "telemetry_a.csv").string(), r.telemetry_a);
    write_telemetry_csv((fs::path(out_dir) / "telemetry_b.csv").string(), r.telemetry_b);

    std::ofstream report((fs::path(out_dir) / "compare.txt").string());
    const Metrics delta = metrics_delta(r.metrics_a, r.metrics_b);
    report << "# A = " << spec_a << "\n";
    write_metrics(report, r.metrics_a);
    report << "\n# B = " << spec_b << "\n";
    write_metrics(report, r.metrics_b);
    report << "\n# delta (B - A)\n";
    write_metrics(report, delta);
    report << "\nchattering_ratio_x="
           << r.metrics_b.chattering_index.x / r.metrics_a.chattering_index.x << "\n";
    report << "chattering_ratio_y="
           << r.metrics_b.chattering_index.y / r.metrics_a.chattering_index.y << "\n";

    const auto t = column(r.telemetry_a, &TelemetryRecord::t);
    const char* axis_name[2] = {"x", "y"};
    for (std::size_t ax = 0; ax < 2; ++ax) {
        write_svg_plot(
            (fs::path(out_dir) / (std::string("error_overlay_") + axis_name[ax] + ".svg"))
                .string(),
            std::string("Tracking error, ") + axis_name[ax] + "-axis", "t", "e",
            {{"A: " + spec_a, "#b2421f", t, column(r.telemetry_a, &TelemetryRecord::e, ax)},
             {"B: " + spec_b, "#1f6fb2",
              column(r.telemetry_b, &TelemetryRecord::t),
              column(r.telemetry_b, &TelemetryRecord::e, ax)}});
    }
    std::cout << "wrote comparison to " << out_dir << "\n";
    return kExitOk;
}

struct OracleCheck {
    std::string name;
    bool pass;
    double got;
    double want;
};

/// The GL analytic oracle suite behind `validate-frac`. inject_fault corrupts
/// one weight so the suite can prove it catches a broken recurrence.
std::vector<OracleCheck> run_frac_oracles(bool inject_fault) {
    std::vector<OracleCheck> checks;
    const auto add = [&](const std::string& name, double got, double want, double tol) {
        checks.push_back({name, std::abs(got - want) <= tol, got, want});
    };

    GLWeights w0 = gl_weights(0.0, 4);
    add("weights.identity-order-0[k=1]", w0.weights[1], 0.0, 0.0);
    GLWeights w1 = gl_weights(1.0, 4);
    add("weights.backward-difference-order-1[k=1]", w1.weights[1], -1.0, 0.0);
    add("weights.backward-difference-order-1[k=2]", w1.weights[2], 0.0, 0.0);

    GLWeights wh = gl_weights(0.5, 4);
    if (inject_fault)
        wh.weights[2] += 1e-3;  // break the recurrence on purpose
    add("weights.recurrence-order-0.5[k=2]",
        wh.weights[2], wh.weights[1] * (1.0 - 1.5 / 2.0), 1e-15);
    add("weights.gamma-binomial-order-0.5[k=3]", wh.weights[3], -0.0625, 1e-15);

    // D^0.5 of f(t)=t at t=1 -> 2/sqrt(pi)
    {
        const double dt = 1e-4;
        const std::size_t n = static_cast<std::size_t>(std::llround(1.0 / dt)) + 1;
        SampledHistory h(dt);
        for (std::size_t k = 0; k < n; ++k)
            h.push(static_cast<double>(k) * dt);
        GLWeights w = gl_weights(0.5, n);
        if (inject_fault)
            w.weights[2] += 1e-3;
        const double want = 2.0 / std::sqrt(M_PI);
        add("differint.half-derivative-ramp", differint(h, w), want, 0.01 * want);
    }
    // order-1 degeneration: D^1 of a ramp is 1 up to one backward-difference step
    {
        const double dt = 1e-3;
        SampledHistory h(dt);
        for (std::size_t k = 0; k <= 1000; ++k)
            h.push(static_cast<double>(k) * dt);
        add("differint.order-1-ramp", differint(h, gl_weights(1.0, 1001)), 1.0, dt);
    }
    // D^1.5 of f(t)=t^2 at t=1 -> Gamma(3)/Gamma(1.5) = 4/sqrt(pi)
    {
        const double dt = 1e-4;
        const std::size_t n = static_cast<std::size_t>(std::llround(1.0 / dt)) + 1;
        SampledHistory h(dt);
        for (std::size_t k = 0; k < n; ++k) {
            const double t = static_cast<double>(k) * dt;
            h.push(t * t);
        }
        const double want = 4.0 / std::sqrt(M_PI);
        add("differint.three-halves-parabola", differint(h, gl_weights(1.5, n)), want,
            0.02 * want);
    }
    // order-2 equals the classical second backward difference exactly
    {
        const double dt = 0.1;
        SampledHistory h(dt);
        const double f[] = {0.37, -1.2, 2.75, 0.11};
        for (double v : f)
            h.push(v);
        const double wantb = (f[3] - 2.0 * f[2] + f[1]) / (dt * dt);
        add("differint.order-2-backward-difference",
            differint(h, gl_weights(2.0, 8)), wantb, 1e-9 * std::abs(wantb));
    }
    add("signed_pow.zero", signed_pow(0.0, 1.2), 0.0, 0.0);
    add("signed_pow.negative-base", signed_pow(-2.0, 1.2),
        -std::exp(1.2 * std::log(2.0)), 1e-12);
    return checks;
}

int cmd_validate_frac(bool inject_fault) {
    const auto checks = run_frac_oracles(inject_fault);
    bool all = true;
    std::printf("%-44s %-6s %-22s %s\n", "check", "result", "got", "expected");
    for (const auto& c : checks) {
        std::printf("%-44s %-6s %-22.15g %.15g\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.got, c.want);
        all = all && c.pass;
    }
    std::printf("%s\n", all ? "all oracle checks passed" : "oracle FAILURES present");
    return all ? kExitOk : kExitConfig;
}

int cmd_sweep(const std::string& config_spec, const std::string& param,
              const std::vector<double>& values, const std::string& out_dir,
              double band, bool parallel) {
    const SimConfig base = resolve_config(config_spec);
    nlohmann::json base_json = serialize_config(base);
    std::string pointer = "/" + param;
    std::replace(pointer.begin(), pointer.end(), '.', '/');

    fs::create_directories(out_dir);
    struct Row {
        double value;
        Metrics metrics;
    };
    std::vector<std::future<Row>> jobs;
    for (double v : values) {
        nlohmann::json j = base_json;
        j[nlohmann::json::json_pointer(pointer)] = v;
        SimConfig cfg = parse_config(j);
        validate(cfg);
        const auto policy = parallel ? std::launch::async : std::launch::deferred;
        jobs.push_back(std::async(policy, [cfg, band, v]() {
            return Row{v, compute_metrics(run(cfg), band)};
        }));
    }
    std::ofstream summary((fs::path(out_dir) / "sweep.csv").string());
    summary << param
            << ",rms_error_x,rms_error_y,max_overshoot_x,max_overshoot_y,"
               "settling_time_x,settling_time_y,chattering_index_x,chattering_index_y\n";
    char buf[256];
    for (auto& job : jobs) {
        const Row row = job.get();
        const Metrics& m = row.metrics;
        std::snprintf(buf, sizeof buf,
                      "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      row.value, m.rms_error.x, m.rms_error.y, m.max_overshoot.x,
                      m.max_overshoot.y, m.settling_time.x, m.settling_time.y,
                      m.chattering_index.x, m.chattering_index.y);
        summary << buf;
    }
    std::cout << "wrote sweep of " << param << " over " << values.size()
              << " values to " << out_dir << "\n";
    return kExitOk;
}

int cmd_presets(const std::string& export_dir) {
    for (const auto& name : preset_names()) {
        std::cout << name << "\n";
        if (!export_dir.empty()) {
            fs::create_directories(export_dir);
            save_config_file(make_preset(name),
                             (fs::path(export_dir) / (name + ".json")).string());
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional sliding-mode + super-twisting control testbed for a "
                 "2-DOF MEMS vibratory gyroscope"};
    app.require_subcommand(1);

    std::string config_spec, config_b, out_dir = "out";
    double band = 0.05;
    bool inject_fault = false;
    bool parallel = false;
    std::string param;
    std::vector<double> values;
    std::string export_dir;

    auto* sim = app.add_subcommand("simulate", "run one experiment");
    sim->add_option("config", config_spec, "config file or preset name")->required();
    sim->add_option("--out", out_dir, "output directory");
    sim->add_option("--band", band, "settling band for metrics");

    auto* cmp = app.add_subcommand("compare", "run two experiments and diff metrics");
    cmp->add_option("config_a", config_spec, "first config/preset")->required();
    cmp->add_option("config_b", config_b, "second config/preset")->required();
    cmp->add_option("--out", out_dir, "output directory");
    cmp->add_option("--band", band, "settling band for metrics");

    auto* vf = app.add_subcommand("validate-frac",
                                  "run the fractional-operator oracle self-test");
    vf->add_flag("--inject-fault", inject_fault,
                 "corrupt one GL weight first (negative control)");

    auto* sw = app.add_subcommand("sweep", "run a config across parameter values");
    sw->add_option("config", config_spec, "config file or preset name")->required();
    sw->add_option("--param", param, "dotted config key, e.g. gains.beta")->required();
    sw->add_option("--values", values, "values to sweep")->required()->delimiter(',');
    sw->add_option("--out", out_dir, "output directory");
    sw->add_option("--band", band, "settling band for metrics");
    sw->add_flag("--parallel", parallel, "run sweep points concurrently");

    auto* pr = app.add_subcommand("presets", "list bundled presets");
    pr->add_option("--export", export_dir, "also write preset JSON files here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(config_spec, out_dir, band);
        if (cmp->parsed())
            return cmd_compare(config_spec, config_b, out_dir, band);
        if (vf->parsed())
            return cmd_validate_frac(inject_fault);
        if (sw->parsed())
            return cmd_sweep(config_spec, param, values, out_dir, band, parallel);
        if (pr->parsed())
            return cmd_presets(export_dir);
    } catch (const SimulationDiverged& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
