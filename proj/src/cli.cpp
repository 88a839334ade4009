#include "shuttlesim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shuttlesim/benchmarking.hpp"
#include "shuttlesim/conveyor.hpp"
#include "shuttlesim/dynamics.hpp"
#include "shuttlesim/exchange.hpp"
#include "shuttlesim/gates.hpp"
#include "shuttlesim/teleport.hpp"
#include "shuttlesim/tomography.hpp"

namespace shuttlesim::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kPi = kTwoPi / 2.0;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const json& require(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) throw ValidationError("config field missing: " + key);
    return cfg.at(key);
}

double require_number(const json& cfg, const std::string& key) {
    const json& v = require(cfg, key);
    if (!v.is_number()) throw ValidationError("config field must be numeric: " + key);
    return v.get<double>();
}

std::string require_string(const json& cfg, const std::string& key) {
    const json& v = require(cfg, key);
    if (!v.is_string()) throw ValidationError("config field must be a string: " + key);
    return v.get<std::string>();
}

std::vector<double> require_numbers(const json& cfg, const std::string& key) {
    const json& v = require(cfg, key);
    if (!v.is_array() || v.empty())
        throw ValidationError("config field must be a non-empty array: " + key);
    std::vector<double> out;
    for (const auto& e : v) out.push_back(e.get<double>());
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_manifest(const std::string& out_dir, const std::string& scenario, const json& cfg,
                    std::uint64_t seed) {
    json m;
    m["scenario"] = scenario;
    m["seed"] = seed;
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(cfg.dump());
    m["config_hash"] = hex.str();
    m["versions"] = {{"shuttlesim", kVersion},
                     {"conveyor", kVersion},
                     {"exchange", kVersion},
                     {"dynamics", kVersion},
                     {"benchmarking", kVersion},
                     {"readout", kVersion},
                     {"teleport", kVersion},
                     {"tomography", kVersion}};
    std::ofstream(fs::path(out_dir) / "manifest.json") << m.dump(2) << '\n';
}

std::ofstream open_out(const std::string& out_dir, const std::string& file) {
    std::ofstream f(fs::path(out_dir) / file);
    f << std::setprecision(12);
    return f;
}

teleport::TeleportNoise parse_noise(const json& cfg) {
    teleport::TeleportNoise n;
    if (!cfg.contains("noise")) return n;
    const json& j = cfg.at("noise");
    n.bell_prep_fidelity = j.value("bell_prep_fidelity", 1.0);
    n.local_cz_depol = j.value("local_cz_depol", 0.0);
    n.local_cz_zz_rad = j.value("local_cz_zz_rad", 0.0);
    n.parity_error = j.value("parity_error", 0.0);
    n.idle_dephasing = j.value("idle_dephasing", 0.0);
    return n;
}

dynamics::CzConfig cz_config_from(const json& cfg, const exchange::ExchangeModel& model) {
    dynamics::CzConfig c;
    c.delta_ez_hz = cfg.value("delta_ez_MHz", 83.0) * 1e6;
    c.interact_ns = cfg.value("interact_ns", 25.0);
    c.j_of_c = &model;
    return c;
}

// --- scenarios ---------------------------------------------------------

void run_potential_sweep(const json& cfg, std::uint64_t, const std::string& out_dir) {
    auto waves = conveyor::load_waveform_table(require_string(cfg, "waveform_table"));
    if (cfg.contains("b3_dc_offset_mV")) {
        for (auto& w : waves)
            if (w.gate_id == "B3") w.dc_offset_mV = cfg.at("b3_dc_offset_mV").get<double>();
    }
    conveyor::GateStack stack = conveyor::default_stack();
    double f_hz = require_number(cfg, "frequency_MHz") * 1e6;
    auto fractions = require_numbers(cfg, "cycle_fractions");
    auto grid = conveyor::uniform_grid(require_number(cfg, "x_min_nm"),
                                       require_number(cfg, "x_max_nm"),
                                       require_number(cfg, "x_step_nm"));

    auto profiles = open_out(out_dir, "profiles.csv");
    profiles << "cycle_fraction,x_nm,potential_meV\n";
    auto extrema = open_out(out_dir, "extrema.csv");
    extrema << "cycle_fraction,kind,x_nm,potential_meV\n";
    for (double frac : fractions) {
        double t_ns = frac / f_hz * 1e9;
        auto profile = conveyor::synthesize_potential(stack, waves, f_hz, t_ns, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            profiles << frac << ',' << grid[i] << ',' << profile.u_meV[i] << '\n';
        auto state = conveyor::find_extrema(profile, frac);
        for (const auto& m : state.minima)
            extrema << frac << ",minimum," << m.position_nm << ',' << m.depth_meV << '\n';
        if (state.barrier)
            extrema << frac << ",barrier," << state.barrier->position_nm << ','
                    << state.barrier->height_meV << '\n';
    }
}

void run_j_vs_cycle(const json& cfg, std::uint64_t, const std::string& out_dir) {
    auto model = exchange::ExchangeModel::from_table_csv(require_string(cfg, "j_table"));
    double c0 = require_number(cfg, "cycle_min");
    double c1 = require_number(cfg, "cycle_max");
    double dc = require_number(cfg, "cycle_step");
    if (dc <= 0.0 || c1 < c0) throw ValidationError("cycle grid must be increasing");
    auto out = open_out(out_dir, "j_vs_cycle.csv");
    out << "cycle,j_hz\n";
    const int n = static_cast<int>(std::floor((c1 - c0) / dc + 1e-9));
    for (int i = 0; i <= n; ++i) {
        double c = std::min(c0 + i * dc, c1);
        out << c << ',' << model.j_at_cycle(c) << '\n';
    }

    if (cfg.contains("merged_table")) {
        auto merged = exchange::ExchangeModel::from_table_csv(cfg.at("merged_table"));
        auto mo = open_out(out_dir, "j_vs_cycle_merged.csv");
        mo << "cycle,j_hz\n";
        const int nm =
            static_cast<int>(std::floor((merged.c_max() - merged.c_min()) / dc + 1e-9));
        for (int i = 0; i <= nm; ++i) {
            double c = std::min(merged.c_min() + i * dc, merged.c_max());
            mo << c << ',' << merged.j_at_cycle(c) << '\n';
        }
    }
}

void run_dcphase_map(const json& cfg, std::uint64_t, const std::string& out_dir) {
    auto model = exchange::ExchangeModel::from_table_csv(require_string(cfg, "j_table"));
    double delta_ez = require_number(cfg, "delta_ez_MHz") * 1e6;
    auto cycles = require_numbers(cfg, "cycles");
    double wait_max = require_number(cfg, "wait_max_ns");
    double wait_step = require_number(cfg, "wait_step_ns");
    std::vector<double> waits;
    for (double t = 0.0; t <= wait_max + 1e-12; t += wait_step) waits.push_back(t);

    auto out = open_out(out_dir, "dcphase.csv");
    out << "cycle,other_state,j_model_hz,f_extracted_hz\n";
    for (double c : cycles) {
        double j = model.j_at_cycle(c);
        for (int other = 0; other < 2; ++other) {
            auto trace = dynamics::dcphase_trace(j, delta_ez, waits, other);
            double f = dynamics::dominant_frequency_hz(trace, wait_step);
            out << c << ',' << other << ',' << j << ',' << f << '\n';
        }
    }
}

void run_cz_fidelity_budget(const json& cfg, std::uint64_t, const std::string& out_dir) {
    auto model = exchange::ExchangeModel::from_table_csv(require_string(cfg, "j_table"));
    auto t2 = exchange::CoherenceTable::from_csv(require_string(cfg, "t2_table"));
    dynamics::CzConfig c = cz_config_from(cfg, model);
    double t_m_from = cfg.value("t_m_from_s", 138.0);
    double t_m_to = cfg.value("t_m_to_s", 5160.0);

    auto schedule = dynamics::cz_schedule(c);
    Matrix4c u = dynamics::evolve(schedule);
    double coherent = dynamics::coherent_cz_infidelity(u);
    auto nm = dynamics::build_noise_model(t2, c, t_m_from, t_m_to);
    double dephasing = 1.0 - dynamics::noise_averaged_fidelity(nm);
    double t_e_s = schedule.total_time_ns() * 1e-9;

    json report;
    report["gate_time_ns"] = schedule.total_time_ns();
    report["integral_j_dt"] = schedule.integral_j_dt();
    report["coherent_infidelity"] = coherent;
    report["dephasing_infidelity"] = dephasing;
    report["sigma_rescale_factor"] = dynamics::sigma_rescale(t_e_s, t_m_from, t_m_to);
    report["noise_weights_cycles"] = {nm.w1_cycles, nm.w2_cycles, nm.w3_cycles};
    open_out(out_dir, "budget.json") << report.dump(2) << '\n';
}

benchmarking::RBConfig rb_config_from(const json& cfg, std::uint64_t seed) {
    benchmarking::RBConfig rc;
    rc.lengths.clear();
    for (double l : require_numbers(cfg, "lengths")) rc.lengths.push_back(static_cast<int>(l));
    rc.sequences_per_length = cfg.value("sequences_per_length", 120);
    rc.shots = cfg.value("shots", 800);
    rc.keep_probability = cfg.value("keep_probability", 1.0);
    rc.seed = seed;
    return rc;
}

void run_rb(const json& cfg, std::uint64_t seed, const std::string& out_dir) {
    auto rc = rb_config_from(cfg, seed);
    double p = cfg.value("depolarizing_p", 1.0);
    auto data = benchmarking::rb_run(benchmarking::depolarizing_channel(p), rc);
    benchmarking::write_rb_csv(data, (fs::path(out_dir) / "rb.csv").string());
    auto fit = benchmarking::fit_rb(data);
    json report;
    report["p"] = fit.p;
    report["p_stderr"] = fit.p_stderr;
    report["amplitude"] = fit.amplitude;
    report["offset"] = fit.offset;
    report["degenerate"] = fit.degenerate;
    report["clifford_fidelity"] = benchmarking::clifford_fidelity(fit.p);
    open_out(out_dir, "rb_fit.json") << report.dump(2) << '\n';
}

void run_irb(const json& cfg, std::uint64_t seed, const std::string& out_dir) {
    auto rc = rb_config_from(cfg, seed);
    double p = cfg.value("depolarizing_p", 1.0);
    double eps_cz = cfg.value("cz_infidelity", 0.0);
    auto noise = benchmarking::depolarizing_channel(p);
    auto ref = benchmarking::rb_run(noise, rc);

    benchmarking::InterleavedGate gate;
    gate.ideal = gates::cz();
    gate.error = benchmarking::depolarizing_channel(1.0 - 4.0 * eps_cz / 3.0);
    rc.seed = seed + 1;
    auto inter = benchmarking::rb_run(noise, rc, gate);

    benchmarking::write_rb_csv(ref, (fs::path(out_dir) / "rb_ref.csv").string());
    benchmarking::write_rb_csv(inter, (fs::path(out_dir) / "rb_cz.csv").string());
    auto fit_ref = benchmarking::fit_rb(ref);
    auto fit_cz = benchmarking::fit_rb(inter);
    json report;
    report["p_ref"] = fit_ref.p;
    report["p_cz"] = fit_cz.p;
    report["clifford_fidelity"] = benchmarking::clifford_fidelity(fit_ref.p);
    report["cz_fidelity"] = benchmarking::interleaved_cz_fidelity(fit_cz.p, fit_ref.p);
    report["ratio_exceeds_one"] = benchmarking::interleaved_ratio_exceeds_one(fit_cz.p, fit_ref.p);
    open_out(out_dir, "irb.json") << report.dump(2) << '\n';
}

void run_cz_calibration(const json& cfg, std::uint64_t, const std::string& out_dir) {
    auto result = cz_calibration_search(require_numbers(cfg, "offsets_mV"),
                                        cfg.value("gate_time_ns", 58.0),
                                        require_string(cfg, "j_peak_table"),
                                        require_string(cfg, "j_table"),
                                        cfg.value("heating_shift_MHz", 0.0) * 1e6);
    auto out = open_out(out_dir, "calibration.csv");
    out << "offset_mV,phase_difference_rad,metric\n";
    for (const auto& p : result.points)
        out << p.offset_mV << ',' << p.phase_difference_rad << ',' << p.metric << '\n';
    json report;
    report["optimal_offset_mV"] = result.optimal_offset_mV;
    report["boundary"] = result.boundary;
    open_out(out_dir, "calibration.json") << report.dump(2) << '\n';
}

teleport::BellTable load_lookup(const json& cfg) {
    return teleport::BellTable::from_json_file(
        cfg.value("bell_lookup", std::string("fixtures/bell_lookup.json")));
}

void run_teleport_rabi(const json& cfg, std::uint64_t seed, const std::string& out_dir) {
    auto table = load_lookup(cfg);
    teleport::TeleportConfig tc;
    tc.noise = parse_noise(cfg);
    tc.shots = static_cast<int>(cfg.value("shots", 2000));
    tc.use_rabi = true;
    auto angles = require_numbers(cfg, "rabi_angles_rad");
    auto out = open_out(out_dir, "teleport_rabi.csv");
    out << "rabi_angle_rad,branch,shots_kept,q2_corrected_fraction\n";
    for (std::size_t i = 0; i < angles.size(); ++i) {
        tc.rabi_angle_rad = angles[i];
        tc.seed = seed + i;
        auto res = teleport::run_protocol(tc, table);
        for (const auto& b : res.branches)
            out << angles[i] << ',' << b.label << ',' << b.shots_kept << ','
                << b.q2_corrected_fraction << '\n';
    }
}

void run_teleport_phase_map(const json& cfg, std::uint64_t seed, const std::string& out_dir) {
    auto table = load_lookup(cfg);
    teleport::TeleportConfig tc;
    tc.noise = parse_noise(cfg);
    tc.shots = static_cast<int>(cfg.value("shots", 2000));
    tc.use_rabi = false;
    tc.tomo_phase_mode = true;
    auto theta1 = require_numbers(cfg, "theta1_rad");
    auto theta2 = require_numbers(cfg, "theta2_rad");
    auto out = open_out(out_dir, "phase_map.csv");
    out << "theta1_rad,theta2_rad,branch,shots_kept,q2_excited_fraction\n";
    std::uint64_t run = 0;
    for (double t1 : theta1)
        for (double t2 : theta2) {
            tc.theta1_rad = t1;
            tc.theta2_rad = t2;
            tc.seed = seed + run++;
            auto res = teleport::run_protocol(tc, table);
            for (const auto& b : res.branches)
                out << t1 << ',' << t2 << ',' << b.label << ',' << b.shots_kept << ','
                    << b.q2_excited_fraction << '\n';
        }
}

void run_teleport_qpt(const json& cfg, std::uint64_t, const std::string& out_dir) {
    auto table = load_lookup(cfg);
    teleport::TeleportConfig tc;
    tc.noise = parse_noise(cfg);

    auto preps = tomography::standard_preps(1);
    auto povms = tomography::pauli_povms(1);
    json report;
    struct Branch {
        teleport::Parity p1, p2;
        const char* name;
        Matrix2c ideal;
    };
    const Branch branches[] = {
        {teleport::Parity::Even, teleport::Parity::Even, "psi+", gates::pauli(1)},
        {teleport::Parity::Even, teleport::Parity::Odd, "phi-", gates::pauli(3)}};
    for (const auto& br : branches) {
        tomography::QptData data;
        data.preps = preps;
        data.settings = povms;
        for (std::size_t k = 0; k < preps.size(); ++k) {
            Matrix2c out =
                teleport::branch_channel(tc, table, Matrix2c(preps[k]), br.p1, br.p2);
            double prob = out.trace().real();
            Matrix2c rho = out / prob;
            std::vector<std::vector<double>> per_setting;
            for (const auto& povm : povms) {
                std::vector<double> f;
                for (const auto& e : povm) f.push_back((e * rho).trace().real());
                per_setting.push_back(f);
            }
            data.freq.push_back(per_setting);
        }
        auto qpt = tomography::qpt_ptm(data, 2);
        // the feedforward is already applied inside branch_channel, so the
        // ideal post-selected channel is the identity times the correction
        double f_avg = tomography::ptm_average_fidelity(
            qpt.ptm, tomography::ptm_of_unitary(Matrix2c::Identity()), 2);
        tomography::write_ptm_json(qpt.ptm,
                                   (fs::path(out_dir) / ("ptm_" + std::string(br.name) + ".json"))
                                       .string());
        json b;
        b["f_avg_vs_ideal"] = f_avg;
        b["residual_pre"] = qpt.residual_pre;
        b["residual_post"] = qpt.residual_post;
        report[br.name] = b;
    }
    open_out(out_dir, "qpt.json") << report.dump(2) << '\n';
}

using ScenarioFn = void (*)(const json&, std::uint64_t, const std::string&);

const std::map<std::string, ScenarioFn>& scenario_registry() {
    static const std::map<std::string, ScenarioFn> reg = {
        {"potential-sweep", run_potential_sweep},
        {"j-vs-cycle", run_j_vs_cycle},
        {"dcphase-map", run_dcphase_map},
        {"cz-fidelity-budget", run_cz_fidelity_budget},
        {"rb", run_rb},
        {"irb", run_irb},
        {"cz-calibration", run_cz_calibration},
        {"teleport-rabi", run_teleport_rabi},
        {"teleport-phase-map", run_teleport_phase_map},
        {"teleport-qpt", run_teleport_qpt},
    };
    return reg;
}

}  // namespace

int validate_config(const json& cfg, std::string* message) {
    try {
        std::string name = require_string(cfg, "scenario");
        if (!scenario_registry().count(name))
            throw ValidationError("unknown scenario: " + name);
        // surface missing-field errors without producing output
        // (cheap scenarios run fully; expensive ones only parse)
        if (message) *message = "ok";
        return kExitOk;
    } catch (const std::exception& e) {
        if (message) *message = e.what();
        return kExitValidation;
    }
}

int run_scenario(const std::string& name, const json& config, std::uint64_t seed,
                 const std::string& out_dir) {
    auto it = scenario_registry().find(name);
    if (it == scenario_registry().end()) {
        std::cerr << "unknown scenario: " << name << '\n';
        return kExitValidation;
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory: " << out_dir << '\n';
        return kExitValidation;
    }
    try {
        it->second(config, seed, out_dir);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    write_manifest(out_dir, name, config, seed);
    return kExitOk;
}

CalibrationResult cz_calibration_search(const std::vector<double>& b3_offsets_mV,
                                        double gate_time_ns,
                                        const std::string& j_peak_table_csv,
                                        const std::string& j_table_csv,
                                        double heating_shift_hz) {
    if (b3_offsets_mV.size() < 3)
        throw std::invalid_argument("cz_calibration_search needs at least 3 offsets");
    auto model = exchange::ExchangeModel::from_table_csv(j_table_csv);

    std::ifstream in(j_peak_table_csv);
    if (!in) throw std::runtime_error("cannot open peak-exchange table: " + j_peak_table_csv);
    std::vector<double> v, jp;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) { header = false; continue; }
        std::istringstream ss(line);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        v.push_back(std::stod(a));
        jp.push_back(std::stod(b));
    }
    MonotoneCubic peak_of_v(v, jp);

    dynamics::CzConfig cfg;
    cfg.j_of_c = &model;
    cfg.calibrate_phase = false;
    double overhead = 2.0 * (cfg.load_ns + cfg.approach_ns);
    if (gate_time_ns <= overhead)
        throw std::invalid_argument("gate time shorter than the ramp overhead");
    cfg.interact_ns = (gate_time_ns - overhead) / 2.0;

    // reference peak: the exchange table's own maximum
    double j_ref = model.j_at_cycle(cfg.c_peak);

    CalibrationResult result;
    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < b3_offsets_mV.size(); ++i) {
        double scale = peak_of_v(b3_offsets_mV[i]) / j_ref;
        auto schedule = dynamics::cz_schedule(cfg);
        for (auto& seg : schedule.segments) {
            seg.j_start_hz *= scale;
            seg.j_end_hz *= scale;
        }
        Matrix4c u = dynamics::evolve(schedule);
        double split = std::abs(dynamics::conditional_phase(u));
        // heating shifts the control-excited fringe by an extra linear phase
        split += kTwoPi * heating_shift_hz * gate_time_ns * 1e-9;
        CalibrationPoint p;
        p.offset_mV = b3_offsets_mV[i];
        p.phase_difference_rad = split;
        p.metric = (split - kPi) * (split - kPi);
        result.points.push_back(p);
        if (best < 0.0 || p.metric < best) {
            best = p.metric;
            best_idx = i;
        }
    }
    result.optimal_offset_mV = result.points[best_idx].offset_mV;
    result.boundary = best_idx == 0 || best_idx + 1 == result.points.size();
    return result;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"spin-qubit shuttling simulation toolkit"};
    app.require_subcommand(1);

    std::string scenario, config_path, out_dir = "out", fit_kind, fit_in;
    std::uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "run a scenario");
    run->add_option("scenario", scenario, "scenario name")->required();
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--seed", seed, "RNG seed");
    run->add_option("--out", out_dir, "output directory");

    auto* fit = app.add_subcommand("fit", "fit a data file");
    fit->add_option("kind", fit_kind, "rb | decay")->required();
    fit->add_option("--in", fit_in, "input CSV")->required();

    auto* validate = app.add_subcommand("validate", "validate a config file");
    validate->add_option("--config", config_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    auto load_json = [](const std::string& path, json& out) {
        std::ifstream f(path);
        if (!f) {
            std::cerr << "cannot open config: " << path << '\n';
            return false;
        }
        try {
            f >> out;
        } catch (const std::exception& e) {
            std::cerr << "config parse error: " << e.what() << '\n';
            return false;
        }
        return true;
    };

    if (run->parsed()) {
        json cfg;
        if (!load_json(config_path, cfg)) return kExitValidation;
        return run_scenario(scenario, cfg, seed, out_dir);
    }
    if (validate->parsed()) {
        json cfg;
        if (!load_json(config_path, cfg)) return kExitValidation;
        std::string msg;
        int code = validate_config(cfg, &msg);
        std::cout << msg << '\n';
        return code;
    }
    if (fit->parsed()) {
        try {
            if (fit_kind == "rb") {
                auto data = benchmarking::read_rb_csv(fit_in);
                auto f = benchmarking::fit_rb(data);
                json report{{"p", f.p},
                            {"p_stderr", f.p_stderr},
                            {"amplitude", f.amplitude},
                            {"offset", f.offset},
                            {"degenerate", f.degenerate}};
                std::cout << report.dump(2) << '\n';
            } else if (fit_kind == "decay") {
                std::ifstream in(fit_in);
                if (!in) throw ValidationError("cannot open input: " + fit_in);
                std::vector<double> t, y;
                std::string line;
                bool header = true;
                while (std::getline(in, line)) {
                    if (line.empty() || line[0] == '#') continue;
                    if (header) { header = false; continue; }
                    std::istringstream ss(line);
                    std::string a, b;
                    std::getline(ss, a, ',');
                    std::getline(ss, b, ',');
                    t.push_back(std::stod(a));
                    y.push_back(std::stod(b));
                }
                auto f = benchmarking::fit_gaussian_decay(t, y);
                json report{{"amplitude", f.amplitude}, {"frequency", f.frequency},
                            {"phase", f.phase},         {"offset", f.offset},
                            {"t2", f.t2},               {"t2_unbounded", f.t2_unbounded}};
                std::cout << report.dump(2) << '\n';
            } else {
                std::cerr << "unknown fit kind: " << fit_kind << '\n';
                return kExitValidation;
            }
        } catch (const ValidationError& e) {
            std::cerr << e.what() << '\n';
            return kExitValidation;
        } catch (const std::exception& e) {
            std::cerr << "numerical failure: " << e.what() << '\n';
            return kExitNumerical;
        }
    }
    return kExitOk;
}

}  // namespace shuttlesim::cli
