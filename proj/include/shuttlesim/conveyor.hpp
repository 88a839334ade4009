#pragma once

#include <optional>
#include <string>
#include <vector>

namespace shuttlesim::conveyor {

enum class Tones { Both, PrimaryOnly, HalfOnly };

// Two-tone drive parameters for one gate electrode.
// V_n(t) = V_DC + (A/2)[sin(2 pi f t - phi) + sin(pi f t - theta)]
struct GateWaveform {
    std::string gate_id;
    double amplitude_mV = 0.0;   // A >= 0
    double dc_offset_mV = 0.0;   // V_DC
    double phase_f = 0.0;        // phi, radians (primary tone)
    double phase_f2 = 0.0;       // theta, radians (half tone)
    Tones tones = Tones::Both;
};

struct GateGeometry {
    std::string gate_id;
    double center_nm = 0.0;
    double kernel_width_nm = 90.0;
    double lever_arm_meV_per_mV = 0.1;
};

struct GateStack {
    std::vector<GateGeometry> gates;  // centers strictly increasing
    double plunger_pitch_nm = 90.0;

    void validate() const;  // throws std::invalid_argument on bad geometry
};

struct PotentialProfile {
    std::vector<double> x_nm;
    std::vector<double> u_meV;
    double t_ns = 0.0;
};

struct Minimum {
    double position_nm = 0.0;
    double depth_meV = 0.0;
    double curvature_meV_per_nm2 = 0.0;
};

struct Barrier {
    double position_nm = 0.0;
    double height_meV = 0.0;  // above the deeper of the two bracketing minima
};

struct ConveyorState {
    double cycle_count = 0.0;
    std::vector<Minimum> minima;          // sorted by position
    std::optional<Barrier> barrier;       // lowest saddle between the two deepest minima
};

// Exact evaluation of the two-tone formula; a disabled tone contributes 0.
double gate_voltage_at(const GateWaveform& w, double f_hz, double t_ns);

// Sum of Gaussian-kernel gate contributions, -lever_arm * V_n(t) * K((x-c)/w).
PotentialProfile synthesize_potential(const GateStack& stack,
                                      const std::vector<GateWaveform>& waveforms,
                                      double f_hz, double t_ns,
                                      const std::vector<double>& x_grid_nm);

// Local minima refined by 3-point quadratic interpolation; saddle between
// the two deepest minima reported as the barrier.
ConveyorState find_extrema(const PotentialProfile& p, double cycle_count = 0.0);

double displacement_for_cycles(double cycles);  // 180 nm per cycle, c >= 0

// Default 12-gate stack matching the device layout: P1,B1,P2,...,B6 at 45 nm pitch.
GateStack default_stack();

// Waveform table file: columns gate, amplitude_mV, dc_offset_mV, phase_f, phase_f2
// (phases in units of 2*pi), optional 6th column tones in {both, f, f2}.
std::vector<GateWaveform> load_waveform_table(const std::string& path);

std::vector<double> uniform_grid(double x0_nm, double x1_nm, double step_nm = 1.0);

void write_profile_csv(const PotentialProfile& p, const std::string& path);

}  // namespace shuttlesim::conveyor
