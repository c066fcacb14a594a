#include "orbitscale/trajectory.hpp"

#include <cstdio>

namespace orbitscale {

namespace {

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

}  // namespace

void Trajectory::write_csv(std::ostream& out) const {
    out << "t";
    if (has_tau()) out << ",tau";
    for (int k = 0; k < dimension; ++k) out << ",x" << k;
    for (int k = 0; k < dimension; ++k) out << ",p" << k;
    out << ",H\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        put(out, samples[i].t);
        if (has_tau()) {
            out << ',';
            put(out, tau[i]);
        }
        for (int k = 0; k < dimension; ++k) {
            out << ',';
            put(out, samples[i].x[k]);
        }
        for (int k = 0; k < dimension; ++k) {
            out << ',';
            put(out, samples[i].p[k]);
        }
        out << ',';
        put(out, energy.empty() ? 0.0 : energy[i]);
        out << '\n';
    }
}

}  // namespace orbitscale
