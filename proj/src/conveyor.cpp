#include "shuttlesim/conveyor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shuttlesim/numerics.hpp"

namespace shuttlesim::conveyor {

void GateStack::validate() const {
    if (gates.empty()) throw std::invalid_argument("GateStack: empty stack");
    for (size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].kernel_width_nm <= 0.0)
            throw std::invalid_argument("GateStack: kernel_width must be > 0");
        if (gates[i].lever_arm_meV_per_mV <= 0.0)
            throw std::invalid_argument("GateStack: lever_arm must be > 0");
        if (i > 0 && gates[i].center_nm <= gates[i - 1].center_nm)
            throw std::invalid_argument("GateStack: centers must be strictly increasing");
    }
}

double gate_voltage_at(const GateWaveform& w, double f_hz, double t_ns) {
    if (f_hz <= 0.0) throw std::invalid_argument("gate_voltage_at: f must be > 0");
    const double t = t_ns * 1e-9;
    double v = w.dc_offset_mV;
    if (w.tones != Tones::HalfOnly)
        v += 0.5 * w.amplitude_mV * std::sin(kTwoPi * f_hz * t - w.phase_f);
    if (w.tones != Tones::PrimaryOnly)
        v += 0.5 * w.amplitude_mV * std::sin(M_PI * f_hz * t - w.phase_f2);
    return v;
}

PotentialProfile synthesize_potential(const GateStack& stack,
                                      const std::vector<GateWaveform>& waveforms,
                                      double f_hz, double t_ns,
                                      const std::vector<double>& x_grid_nm) {
    stack.validate();
    if (waveforms.size() != stack.gates.size())
        throw std::invalid_argument("synthesize_potential: waveform/gate count mismatch");

    PotentialProfile p;
    p.x_nm = x_grid_nm;
    p.u_meV.assign(x_grid_nm.size(), 0.0);
    p.t_ns = t_ns;

    for (size_t g = 0; g < stack.gates.size(); ++g) {
        const auto& geo = stack.gates[g];
        const double v = gate_voltage_at(waveforms[g], f_hz, t_ns);
        const double scale = -geo.lever_arm_meV_per_mV * v;
        if (scale == 0.0) continue;
        const double inv_w = 1.0 / geo.kernel_width_nm;
        for (size_t i = 0; i < x_grid_nm.size(); ++i) {
            double u = (x_grid_nm[i] - geo.center_nm) * inv_w;
            p.u_meV[i] += scale * std::exp(-0.5 * u * u);
        }
    }
    return p;
}

namespace {

// refine grid extremum by a 3-point quadratic through (x[i-1..i+1], y[i-1..i+1])
void quad_refine(const std::vector<double>& x, const std::vector<double>& y, size_t i,
                 double& xr, double& yr, double& second_deriv) {
    double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
    double d1 = (y1 - y0) / (x1 - x0);
    double d2 = (y2 - y1) / (x2 - x1);
    double a = (d2 - d1) / (x2 - x0);  // half the second derivative
    second_deriv = 2.0 * a;
    if (a == 0.0) {
        xr = x1;
        yr = y1;
        return;
    }
    // Newton form: y0 + d1(x-x0) + a(x-x0)(x-x1); y'(x) = d1 + a(2x - x0 - x1) = 0
    xr = 0.5 * (x0 + x1) - 0.5 * d1 / a;
    double dx0 = xr - x0;
    yr = y0 + d1 * dx0 + a * dx0 * (xr - x1);
    // stay inside the bracketing interval
    if (xr < x0 || xr > x2) {
        xr = x1;
        yr = y1;
    }
}

}  // namespace

ConveyorState find_extrema(const PotentialProfile& p, double cycle_count) {
    const auto& x = p.x_nm;
    const auto& y = p.u_meV;
    if (x.size() < 3) throw std::invalid_argument("find_extrema: need >= 3 grid points");

    ConveyorState st;
    st.cycle_count = cycle_count;
    for (size_t i = 1; i + 1 < x.size(); ++i) {
        if (y[i] < y[i - 1] && y[i] < y[i + 1]) {
            Minimum m;
            double xr, yr, d2;
            quad_refine(x, y, i, xr, yr, d2);
            m.position_nm = xr;
            m.depth_meV = yr;
            m.curvature_meV_per_nm2 = d2;
            st.minima.push_back(m);
        }
    }
    std::sort(st.minima.begin(), st.minima.end(),
              [](const Minimum& a, const Minimum& b) { return a.position_nm < b.position_nm; });

    if (st.minima.size() >= 2) {
        // two deepest minima
        auto deepest = st.minima;
        std::sort(deepest.begin(), deepest.end(),
                  [](const Minimum& a, const Minimum& b) { return a.depth_meV < b.depth_meV; });
        double xa = std::min(deepest[0].position_nm, deepest[1].position_nm);
        double xb = std::max(deepest[0].position_nm, deepest[1].position_nm);
        double base = std::min(deepest[0].depth_meV, deepest[1].depth_meV);

        // highest point of the profile on the path between them (lowest saddle on a 1D path)
        double best_y = -1e300, best_x = xa;
        for (size_t i = 1; i + 1 < x.size(); ++i) {
            if (x[i] < xa || x[i] > xb) continue;
            if (y[i] > y[i - 1] && y[i] > y[i + 1]) {
                double xr, yr, d2;
                quad_refine(x, y, i, xr, yr, d2);
                if (yr > best_y) {
                    best_y = yr;
                    best_x = xr;
                }
            }
        }
        if (best_y > -1e299) {
            Barrier b;
            b.position_nm = best_x;
            b.height_meV = best_y - base;
            st.barrier = b;
        }
    }
    return st;
}

double displacement_for_cycles(double cycles) {
    if (cycles < 0.0) throw std::invalid_argument("displacement_for_cycles: c >= 0");
    return 180.0 * cycles;
}

GateStack default_stack() {
    GateStack s;
    s.plunger_pitch_nm = 90.0;
    const char* names[] = {"VP1", "VB1", "VP2", "B2", "P3", "B3", "P4", "B4", "P5", "B5", "P6", "B6"};
    for (int i = 0; i < 12; ++i) {
        GateGeometry g;
        g.gate_id = names[i];
        g.center_nm = 45.0 * i;
        // sub-pitch kernel: wider kernels low-pass the 90/180 nm traveling
        // components out of the summed potential and the minima stop moving
        g.kernel_width_nm = 40.0;
        g.lever_arm_meV_per_mV = 0.1;
        s.gates.push_back(g);
    }
    return s;
}

std::vector<GateWaveform> load_waveform_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open waveform table: " + path);
    std::vector<GateWaveform> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {  // skip the column-name row
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 5) throw std::runtime_error("waveform table row too short: " + line);
        GateWaveform w;
        w.gate_id = cells[0];
        w.amplitude_mV = std::stod(cells[1]);
        w.dc_offset_mV = std::stod(cells[2]);
        w.phase_f = std::stod(cells[3]) * kTwoPi;   // table phases are in units of 2*pi
        w.phase_f2 = std::stod(cells[4]) * kTwoPi;
        if (cells.size() >= 6) {
            std::string t = cells[5];
            t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
            if (t == "f") w.tones = Tones::PrimaryOnly;
            else if (t == "f2") w.tones = Tones::HalfOnly;
            else w.tones = Tones::Both;
        }
        if (w.amplitude_mV < 0.0) throw std::runtime_error("waveform amplitude must be >= 0");
        out.push_back(w);
    }
    return out;
}

std::vector<double> uniform_grid(double x0_nm, double x1_nm, double step_nm) {
    std::vector<double> g;
    for (double x = x0_nm; x <= x1_nm + 1e-9; x += step_nm) g.push_back(x);
    return g;
}

void write_profile_csv(const PotentialProfile& p, const std::string& path) {
    std::ofstream out(path);
    out << "x_nm,U_meV\n";
    for (size_t i = 0; i < p.x_nm.size(); ++i)
        out << p.x_nm[i] << "," << p.u_meV[i] << "\n";
}

}  // namespace shuttlesim::conveyor
