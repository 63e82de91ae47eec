// Copyright 2026 The ftsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ftsp/errors.hpp"
#include "ftsp/sim.hpp"
#include "ftsp/synth.hpp"
#include "ftsp/version.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace ftsp;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSynthFailure = 3;

struct GlobalOptions {
    uint64_t seed = 0;
    std::size_t threads = 1;
    std::string config_path;
    std::string out_dir = ".";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write file: " + path.string());
    }
    out << content;
}

CssCode resolve_code(const std::string& ref) {
    if (fs::exists(ref)) {
        auto [hx, hz] = parse_check_file(read_file(ref));
        CssCode code = CssCode::validate(hx, hz);
        code.d = distance(code, Basis::X);
        auto dz = distance(code, Basis::Z);
        if (code.d.has_value() && dz.has_value()) {
            code.d = std::min(*code.d, *dz);
        }
        return code;
    }
    return registry_lookup(ref);
}

SynthConfig load_config(const GlobalOptions& g) {
    SynthConfig cfg;
    if (!g.config_path.empty()) {
        cfg = synth_config_from_json(read_file(g.config_path));
    }
    cfg.seed = g.seed;
    return cfg;
}

json manifest_base(const std::string& command, const std::string& code_ref,
                   const GlobalOptions& g, const SynthConfig& cfg) {
    json m;
    m["command"] = command;
    m["code"] = code_ref;
    m["config"] = json::parse(synth_config_to_json(cfg));
    m["seed"] = g.seed;
    m["threads"] = g.threads;
    m["tool_version"] = kVersion;
    m["outputs"] = json::array();
    return m;
}

void finish_manifest(json& m, const fs::path& out_dir,
                     std::chrono::steady_clock::time_point start) {
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 start);
    m["wall_clock_seconds"] = elapsed.count();
    write_file(out_dir / "manifest.json", m.dump(2) + "\n");
}

json witness_to_json(const DistinctnessWitness& w) {
    json out;
    auto subset = [](const std::vector<PauliError>& errors,
                     const std::vector<std::pair<std::size_t, std::size_t>>& origins) {
        json arr = json::array();
        for (std::size_t i = 0; i < errors.size(); ++i) {
            json e;
            json support = json::array();
            for (std::size_t q = 0; q < errors[i].support.size(); ++q) {
                if (errors[i].support.get(q)) {
                    support.push_back(q);
                }
            }
            e["qubits"] = support;
            e["after_gate"] = origins[i].first;
            e["seed_qubit"] = origins[i].second;
            arr.push_back(e);
        }
        return arr;
    };
    out["subset_1"] = subset(w.subset_1, w.origin_1);
    out["subset_2"] = subset(w.subset_2, w.origin_2);
    out["combined_weight_bound"] = w.combined_weight_bound;
    return out;
}

json report_to_json(const QuadrupleReport& report) {
    json out;
    out["t"] = report.t;
    out["prepares"] = report.prepares;
    json conditions = json::array();
    for (int c = 1; c <= 3; ++c) {
        json cj;
        cj["condition"] = c;
        cj["passed"] = true;
        for (const ConditionWitness& w : report.witnesses) {
            if (w.condition == c) {
                cj["passed"] = false;
                cj["witness"] = witness_to_json(w.witness);
            }
        }
        conditions.push_back(cj);
    }
    out["conditions"] = conditions;
    out["ok"] = report.ok();
    return out;
}

std::array<PrepCircuit, 4> load_circuits(const std::vector<std::string>& paths) {
    if (paths.size() != 4) {
        throw ValidationError("expected exactly four circuit files");
    }
    std::array<PrepCircuit, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        try {
            out[i] = parse_circuit(read_file(paths[i]));
        } catch (const ParseError& e) {
            throw ValidationError(paths[i] + ": " + e.what());
        }
    }
    return out;
}

int cmd_codes() {
    for (const RegistryEntry& e : registry_list()) {
        std::cout << e.name << "  [[" << e.n << "," << e.k << "," << e.d << "]]  "
                  << e.description;
        if (e.automorphism.has_value()) {
            std::cout << "  (stored rotation automorphism)";
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_synth(const GlobalOptions& g, const std::string& code_ref) {
    auto start = std::chrono::steady_clock::now();
    CssCode code = resolve_code(code_ref);
    SynthConfig cfg = load_config(g);
    QuadrupleOutcome outcome = synth_quadruple(code, cfg);
    if (!outcome.ok()) {
        std::cerr << "synthesis failed at stage " << outcome.failed_stage << "\n";
        return kExitSynthFailure;
    }
    fs::path out_dir(g.out_dir);
    json manifest = manifest_base("synth", code_ref, g, cfg);
    json metrics;
    metrics["code"] = code_ref;
    std::size_t total_cx = 0;
    std::size_t max_depth = 0;
    for (int i = 0; i < 4; ++i) {
        const PrepCircuit& c = (*outcome.circuits)[i];
        std::string name = "c" + std::to_string(i + 1) + ".circ";
        write_file(out_dir / name, serialize_circuit(c));
        manifest["outputs"].push_back(name);
        json cm;
        cm["cnots"] = c.gates().size();
        cm["depth"] = c.depth();
        metrics["circuits"].push_back(cm);
        total_cx += c.gates().size();
        max_depth = std::max(max_depth, c.depth());
        std::cout << "C" << (i + 1) << ": " << c.gates().size() << " CX, depth "
                  << c.depth() << "\n";
    }
    ProtocolSchedule schedule =
        build_protocol((*outcome.circuits)[0], (*outcome.circuits)[1],
                       (*outcome.circuits)[2], (*outcome.circuits)[3], code);
    write_file(out_dir / "protocol.txt", serialize_protocol(schedule));
    manifest["outputs"].push_back("protocol.txt");
    metrics["total_cnots"] = total_cx;
    metrics["protocol_cnot_depth"] = schedule.cnot_depth();
    metrics["protocol_depth_with_measurement"] = schedule.depth_with_measurement();
    std::cout << "total: " << total_cx << " CX, protocol CNOT depth "
              << schedule.cnot_depth() << " (" << schedule.depth_with_measurement()
              << " counting the measurement layer)\n";
    write_file(out_dir / "metrics.json", metrics.dump(2) + "\n");
    manifest["outputs"].push_back("metrics.json");
    finish_manifest(manifest, out_dir, start);
    return kExitOk;
}

int cmd_verify(const GlobalOptions& g, const std::string& code_ref,
               const std::vector<std::string>& circuit_paths) {
    auto start = std::chrono::steady_clock::now();
    CssCode code = resolve_code(code_ref);
    std::array<PrepCircuit, 4> circuits = load_circuits(circuit_paths);
    QuadrupleReport report = verify_quadruple(circuits[0], circuits[1], circuits[2],
                                              circuits[3], code);
    json out = report_to_json(report);
    std::cout << out.dump(2) << "\n";
    fs::path out_dir(g.out_dir);
    write_file(out_dir / "verify_report.json", out.dump(2) + "\n");
    json manifest = manifest_base("verify", code_ref, g, load_config(g));
    manifest["inputs"] = circuit_paths;
    manifest["outputs"].push_back("verify_report.json");
    finish_manifest(manifest, out_dir, start);
    return report.ok() ? kExitOk : kExitViolation;
}

std::vector<double> parse_p_list(const std::string& arg) {
    std::vector<double> out;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(std::stod(tok));
    }
    if (out.empty()) {
        throw ValidationError("empty --p list");
    }
    return out;
}

double fit_slope(const std::vector<std::pair<double, double>>& points) {
    // least squares on (ln p, ln rate); points with zero rate are dropped
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& [p, rate] : points) {
        if (rate <= 0) {
            continue;
        }
        double x = std::log(p), y = std::log(rate);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) {
        return std::nan("");
    }
    double dm = static_cast<double>(m);
    return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

std::string csv_row(const std::string& code_ref, const std::string& estimator,
                    double p, const SimResult& r) {
    std::ostringstream out;
    out.precision(9);
    out << code_ref << "," << estimator << "," << p << "," << r.shots << ","
        << r.accepted << "," << r.logical_failures << "," << r.acceptance_rate
        << "," << r.acceptance_ci_lo << "," << r.acceptance_ci_hi << ","
        << r.logical_error_rate << "," << r.logical_ci_lo << "," << r.logical_ci_hi
        << "," << r.seed << "\n";
    return out.str();
}

int cmd_simulate(const GlobalOptions& g, const std::string& code_ref,
                 const std::vector<std::string>& circuit_paths,
                 const std::string& p_arg, std::size_t shots, bool force,
                 bool fit) {
    auto start = std::chrono::steady_clock::now();
    CssCode code = resolve_code(code_ref);
    SynthConfig cfg = load_config(g);
    std::array<PrepCircuit, 4> circuits;
    if (circuit_paths.empty()) {
        QuadrupleOutcome outcome = synth_quadruple(code, cfg);
        if (!outcome.ok()) {
            std::cerr << "synthesis failed at stage " << outcome.failed_stage
                      << "\n";
            return kExitSynthFailure;
        }
        circuits = std::move(*outcome.circuits);
    } else {
        circuits = load_circuits(circuit_paths);
    }
    QuadrupleReport report = verify_quadruple(circuits[0], circuits[1], circuits[2],
                                              circuits[3], code);
    if (!report.ok() && !force) {
        std::cerr << "quadruple fails verification; re-run with --force to "
                     "simulate anyway\n";
        return kExitViolation;
    }
    ProtocolSchedule schedule =
        build_protocol(circuits[0], circuits[1], circuits[2], circuits[3], code);
    std::vector<double> ps = parse_p_list(p_arg);
    std::string csv =
        "code,estimator,p,shots,accepted,failures,r_A,r_A_ci_lo,r_A_ci_hi,"
        "p_l,p_l_ci_lo,p_l_ci_hi,seed\n";
    std::vector<std::pair<double, double>> x_points, z_points;
    for (double p : ps) {
        NoiseModel noise{p};
        SimResult rx = estimate_x_logical(schedule, noise, shots, g.seed, g.threads);
        SimResult rz = estimate_z_logical(schedule, noise, shots, g.seed, g.threads);
        csv += csv_row(code_ref, "x", p, rx);
        csv += csv_row(code_ref, "z", p, rz);
        x_points.emplace_back(p, rx.logical_error_rate);
        z_points.emplace_back(p, rz.logical_error_rate);
        std::cout << "p=" << p << "  r_A=" << rx.acceptance_rate
                  << "  p_l(x)=" << rx.logical_error_rate
                  << "  p_l(z)=" << rz.logical_error_rate << "\n";
    }
    fs::path out_dir(g.out_dir);
    write_file(out_dir / "simulation.csv", csv);
    json manifest = manifest_base("simulate", code_ref, g, cfg);
    manifest["p"] = ps;
    manifest["shots"] = shots;
    manifest["outputs"].push_back("simulation.csv");
    if (fit) {
        double sx = fit_slope(x_points);
        double sz = fit_slope(z_points);
        std::cout << "fitted log-log slope: x=" << sx << " z=" << sz << "\n";
        manifest["fit_slope_x"] = sx;
        manifest["fit_slope_z"] = sz;
    }
    finish_manifest(manifest, out_dir, start);
    return kExitOk;
}

json location_to_json(const InjectedFault& f) {
    json out;
    switch (f.location.kind) {
        case FaultLocation::Kind::Init:
            out["kind"] = "init";
            break;
        case FaultLocation::Kind::PrepGate:
            out["kind"] = "prep_gate";
            break;
        case FaultLocation::Kind::TransversalGate:
            out["kind"] = "transversal_gate";
            break;
        case FaultLocation::Kind::Idle:
            out["kind"] = "idle";
            break;
        case FaultLocation::Kind::Measurement:
            out["kind"] = "measurement";
            break;
        case FaultLocation::Kind::PrepBoundary:
            out["kind"] = "boundary";
            break;
    }
    out["block"] = f.location.block + 1;
    out["index"] = f.location.index;
    out["qubit"] = f.location.qubit;
    out["pauli"] = f.pauli;
    return out;
}

int cmd_inject(const GlobalOptions& g, const std::string& code_ref,
               const std::vector<std::string>& circuit_paths, std::size_t t,
               std::size_t budget) {
    auto start = std::chrono::steady_clock::now();
    CssCode code = resolve_code(code_ref);
    std::array<PrepCircuit, 4> circuits = load_circuits(circuit_paths);
    ProtocolSchedule schedule =
        build_protocol(circuits[0], circuits[1], circuits[2], circuits[3], code);
    InjectReport report = inject_scan(schedule, t, budget);
    json out;
    out["max_faults"] = report.max_faults;
    out["elementary_faults"] = report.elementary_faults;
    out["combinations"] = report.combinations;
    out["counterexamples"] = json::array();
    for (const InjectCounterexample& ce : report.counterexamples) {
        json cj;
        cj["faults"] = json::array();
        for (const InjectedFault& f : ce.faults) {
            cj["faults"].push_back(location_to_json(f));
        }
        cj["x_exceeds"] = ce.x_exceeds;
        cj["z_exceeds"] = ce.z_exceeds;
        out["counterexamples"].push_back(cj);
    }
    std::cout << out.dump(2) << "\n";
    fs::path out_dir(g.out_dir);
    write_file(out_dir / "inject_report.json", out.dump(2) + "\n");
    json manifest = manifest_base("inject", code_ref, g, load_config(g));
    manifest["t"] = t;
    manifest["outputs"].push_back("inject_report.json");
    finish_manifest(manifest, out_dir, start);
    return report.counterexamples.empty() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steane-type fault-tolerant state preparation toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--threads", g.threads, "worker thread cap");
    app.add_option("--config", g.config_path, "synthesis config (JSON)");
    app.add_option("--out", g.out_dir, "output directory");

    CLI::App* codes = app.add_subcommand("codes", "list built-in codes");

    CLI::App* synth = app.add_subcommand("synth", "synthesize a circuit quadruple");
    std::string synth_code;
    synth->add_option("--code", synth_code, "registry name or check-matrix file")
        ->required();

    CLI::App* verify = app.add_subcommand("verify", "verify a circuit quadruple");
    std::string verify_code;
    std::vector<std::string> verify_circuits;
    verify->add_option("--code", verify_code, "registry name or check-matrix file")
        ->required();
    verify->add_option("circuits", verify_circuits, "four circuit files")
        ->expected(4);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimators");
    std::string sim_code, sim_p = "0.001";
    std::vector<std::string> sim_circuits;
    std::size_t sim_shots = 100000;
    bool sim_force = false, sim_fit = false;
    simulate->add_option("--code", sim_code, "registry name or check-matrix file")
        ->required();
    simulate->add_option("--circuits", sim_circuits,
                         "four circuit files (default: synthesize)")
        ->expected(4);
    simulate->add_option("--p", sim_p, "comma-separated physical error rates");
    simulate->add_option("--shots", sim_shots, "shots per (p, estimator)");
    simulate->add_flag("--force", sim_force, "simulate even if verification fails");
    simulate->add_flag("--fit", sim_fit, "fit the log-log slope over the p list");

    CLI::App* inject = app.add_subcommand("inject", "exhaustive fault injection");
    std::string inject_code;
    std::vector<std::string> inject_circuits;
    std::size_t inject_t = 2;
    std::size_t inject_budget = 50'000'000;
    inject->add_option("--code", inject_code, "registry name or check-matrix file")
        ->required();
    inject->add_option("circuits", inject_circuits, "four circuit files")
        ->expected(4);
    inject->add_option("--t", inject_t, "maximum number of faults");
    inject->add_option("--budget", inject_budget, "combination budget override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (codes->parsed()) {
            return cmd_codes();
        }
        if (synth->parsed()) {
            return cmd_synth(g, synth_code);
        }
        if (verify->parsed()) {
            return cmd_verify(g, verify_code, verify_circuits);
        }
        if (simulate->parsed()) {
            return cmd_simulate(g, sim_code, sim_circuits, sim_p, sim_shots,
                                sim_force, sim_fit);
        }
        if (inject->parsed()) {
            return cmd_inject(g, inject_code, inject_circuits, inject_t,
                              inject_budget);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
