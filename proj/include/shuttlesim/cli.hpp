#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace shuttlesim::cli {

// Exit codes: 0 success, 2 config/validation failure, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr const char* kVersion = "1.0.0";

// Runs one named scenario; writes data files plus manifest.json into out_dir.
// Returns an exit code rather than throwing.
int run_scenario(const std::string& name, const nlohmann::json& config, std::uint64_t seed,
                 const std::string& out_dir);

// Parses and validates a scenario config without running it.
int validate_config(const nlohmann::json& config, std::string* message = nullptr);

struct CalibrationPoint {
    double offset_mV = 0.0;
    double phase_difference_rad = 0.0;  // fringe-pair phase split
    double metric = 0.0;                // squared deviation from pi
};

struct CalibrationResult {
    double optimal_offset_mV = 0.0;
    bool boundary = false;  // no interior minimum found
    std::vector<CalibrationPoint> points;
};

// Sweeps the barrier-bias offsets, simulates the conditional-phase fringe
// pair at each, and returns the offset whose fringe split is closest to pi.
// heating_shift_hz models a residual frequency offset after the control-burst
// that biases the split; j_peak_table maps offset (mV) to peak exchange (Hz).
CalibrationResult cz_calibration_search(const std::vector<double>& b3_offsets_mV,
                                        double gate_time_ns,
                                        const std::string& j_peak_table_csv,
                                        const std::string& j_table_csv,
                                        double heating_shift_hz = 0.0);

// Full argv entry point (run / fit / validate subcommands).
int main_entry(int argc, char** argv);

}  // namespace shuttlesim::cli
