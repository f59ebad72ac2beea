#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gyrosim/sim.hpp"

namespace gyrosim {

inline constexpr const char* kTelemetryHeader =
    "t,q_x,q_y,qd_x,qd_y,e_x,e_y,qdot_x,qdot_y,s_x,s_y,"
    "u_x,u_y,ueq_x,ueq_y,us_x,us_y,ustc_x,ustc_y,V,Vdot";

namespace detail {

// 17 significant digits round-trip an IEEE double exactly.
inline void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace detail

inline void write_telemetry_csv(std::ostream& os,
                                const std::vector<TelemetryRecord>& telemetry) {
    os << kTelemetryHeader << "\n";
    std::string line;
    for (const auto& r : telemetry) {
        line.clear();
        const double values[] = {r.t,       r.q.x,     r.q.y,    r.q_d.x,  r.q_d.y,
                                 r.e.x,     r.e.y,     r.qdot.x, r.qdot.y, r.s.x,
                                 r.s.y,     r.u_total.x, r.u_total.y, r.u_eq.x,
                                 r.u_eq.y,  r.u_s.x,   r.u_s.y,  r.u_stc.x,
                                 r.u_stc.y, r.V,       r.Vdot};
        bool first = true;
        for (double v : values) {
            if (!first)
                line += ',';
            detail::append_number(line, v);
            first = false;
        }
        line += '\n';
        os << line;
    }
}

inline void write_telemetry_csv(const std::string& path,
                                const std::vector<TelemetryRecord>& telemetry) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_telemetry_csv(out, telemetry);
}

inline std::vector<TelemetryRecord> read_telemetry_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("telemetry csv: empty stream");
    if (line != kTelemetryHeader)
        throw std::runtime_error("telemetry csv: unexpected header");
    std::vector<TelemetryRecord> out;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        double v[21];
        std::size_t pos = 0;
        for (int i = 0; i < 21; ++i) {
            std::size_t next = line.find(',', pos);
            const std::string field = line.substr(
                pos, next == std::string::npos ? std::string::npos : next - pos);
            try {
                v[i] = std::stod(field);
            } catch (const std::exception&) {
                throw std::runtime_error("telemetry csv: bad field '" + field + "'");
            }
            if (i < 20) {
                if (next == std::string::npos)
                    throw std::runtime_error("telemetry csv: short row");
                pos = next + 1;
            }
        }
        TelemetryRecord r;
        r.t = v[0];
        r.q = {v[1], v[2]};
        r.q_d = {v[3], v[4]};
        r.e = {v[5], v[6]};
        r.qdot = {v[7], v[8]};
        r.s = {v[9], v[10]};
        r.u_total = {v[11], v[12]};
        r.u_eq = {v[13], v[14]};
        r.u_s = {v[15], v[16]};
        r.u_stc = {v[17], v[18]};
        r.V = v[19];
        r.Vdot = v[20];
        out.push_back(r);
    }
    return out;
}

inline std::vector<TelemetryRecord> read_telemetry_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    return read_telemetry_csv(in);
}

/// Flat key=value dump of the run metrics.
inline void write_metrics(std::ostream& os, const Metrics& m) {
    char buf[64];
    const auto kv = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.12g\n", key, v);
        os << buf;
    };
    kv("rms_error_x", m.rms_error.x);
    kv("rms_error_y", m.rms_error.y);
    kv("max_overshoot_x", m.max_overshoot.x);
    kv("max_overshoot_y", m.max_overshoot.y);
    kv("settling_time_x", m.settling_time.x);
    kv("settling_time_y", m.settling_time.y);
    os << "settled_x=" << (m.settled_x ? "true" : "false") << "\n";
    os << "settled_y=" << (m.settled_y ? "true" : "false") << "\n";
    kv("chattering_index_x", m.chattering_index.x);
    kv("chattering_index_y", m.chattering_index.y);
    kv("band", m.band);
}

inline void write_metrics(const std::string& path, const Metrics& m) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_metrics(out, m);
}

}  // namespace gyrosim
