#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shuttlesim/numerics.hpp"
#include "shuttlesim/readout.hpp"
#include "shuttlesim/rng.hpp"

namespace shuttlesim::teleport {

using readout::Parity;

// Four-qubit register layout: bit 0 = Q1 (readout ancilla), bit 1 = Q2
// (teleportation output), bit 2 = Q5 (Bell-pair half), bit 3 = Q6 (input).
inline constexpr int kQ1 = 0, kQ2 = 1, kQ5 = 2, kQ6 = 3;

struct BellOutcome {
    Parity parity_1 = Parity::Even;
    Parity parity_2 = Parity::Even;
    std::string bell_label;  // "psi+", "phi-", or "ambiguous"
    char feedforward = 'N';  // 'X', 'Z', or 'N' (none / discarded)
};

// Parity-pair -> Bell-outcome lookup, loaded from a data file.
class BellTable {
public:
    static BellTable from_json_file(const std::string& path);
    const BellOutcome& lookup(Parity p1, Parity p2) const;

private:
    BellOutcome rows_[4];
    bool filled_[4] = {false, false, false, false};
};

// F_tele = (1 + 2 F_Bell) / 3
double teleport_fidelity_from_bell(double f_bell);

struct TeleportNoise {
    double bell_prep_fidelity = 1.0;  // target Bell fidelity of the Q2-Q5 pair
    double local_cz_depol = 0.0;      // Q5-Q6 CZ two-qubit depolarizing weight
    double local_cz_zz_rad = 0.0;     // Q5-Q6 CZ ZZ over-rotation angle
    double parity_error = 0.0;        // mislabel probability per parity readout
    double idle_dephasing = 0.0;      // Q2 phase-flip probability while the
                                      // Bell measurement runs (only incurred
                                      // when tomography is deferred past it)
};

struct TeleportConfig {
    bool use_rabi = true;          // input prep: Ry(rabi_angle) vs Rx(pi/2)Rz(theta1)
    double rabi_angle_rad = kTwoPi / 2;
    double theta1_rad = 0.0;

    bool tomo_phase_mode = false;  // tomo pulse: Rx(pi/2)Rz(theta2) vs basis selector
    double theta2_rad = 0.0;
    char tomo_basis = 'Z';
    bool tomo_after_bell = false;  // apply the tomo pulse after the Bell measurement

    TeleportNoise noise;
    int shots = 1000;
    std::uint64_t seed = 1;
};

struct ShotRecord {
    int shot = 0;
    Parity parity_1 = Parity::Even;
    Parity parity_2 = Parity::Even;
    std::string bell_label;
    bool kept = false;
    int q2_bit = 0;  // verification parity readout mapped to the Q2 state
};

struct BranchSummary {
    std::string label;
    int shots_kept = 0;
    double q2_excited_fraction = 0.0;  // raw, before feedforward bookkeeping
    double q2_corrected_fraction = 0.0;  // after classical feedforward
};

struct ProtocolResult {
    std::vector<ShotRecord> records;
    std::vector<BranchSummary> branches;
    double kept_fraction = 0.0;
};

ProtocolResult run_protocol(const TeleportConfig& cfg, const BellTable& table);

// Exact conditional evolution for one recorded parity pair: propagates an
// arbitrary Q6 input through the protocol (no tomography pulse), applies the
// branch feedforward physically, and returns the unnormalized reduced Q2
// density matrix; its trace is the branch probability.
Matrix2c branch_channel(const TeleportConfig& cfg, const BellTable& table,
                        const Matrix2c& rho_in, Parity p1, Parity p2);

// Runs tomography-before and tomography-after orderings on identical seeds
// and compares branch-resolved Q2 statistics; true when every branch agrees
// within 3 sigma. The worst deviation (in sigma) is written to max_sigma.
bool ordering_equivalence_check(const TeleportConfig& cfg, const BellTable& table,
                                double* max_sigma = nullptr);

void write_shots_csv(const ProtocolResult& result, const std::string& path);

}  // namespace shuttlesim::teleport
