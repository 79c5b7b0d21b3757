// Copyright 2026 The ncsim Authors
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

#include "cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ncsim/circuit.h"
#include "ncsim/decomposer.h"
#include "ncsim/io.h"
#include "ncsim/oracle.h"
#include "ncsim/sampler.h"
#include "ncsim/steane.h"

namespace ncsim {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    bool json = false;
    size_t workers = 1;
};

void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write file: " + path);
    }
    f << text;
    if (!f) {
        throw std::runtime_error("cannot write file: " + path);
    }
}

std::string csv_row(const std::vector<std::string> &fields) {
    std::string line;
    for (size_t i = 0; i < fields.size(); i++) {
        if (i) {
            line += ',';
        }
        line += csv_field(fields[i]);
    }
    return line + "\n";
}

// ---- decompose ----

struct DecomposeOptions {
    std::string channel;
    std::optional<double> theta;
    std::optional<double> gamma;
    std::optional<double> p;
    std::string kraus;
    size_t n = 0;
    std::string out;
};

double required_param(const std::optional<double> &value, const char *flag, const std::string &channel) {
    if (!value) {
        throw UsageError("channel " + channel + " needs " + flag);
    }
    return *value;
}

int run_decompose(const GlobalOptions &g, const DecomposeOptions &o, std::ostream &out) {
    Ptm ptm;
    size_t n = o.n;
    if (o.channel == "kraus-file") {
        if (o.kraus.empty()) {
            throw UsageError("channel kraus-file needs --kraus FILE");
        }
        auto kraus = kraus_from_json(read_file(o.kraus));
        auto dim = kraus.front().rows();
        size_t file_n = dim == 2 ? 1 : dim == 4 ? 2 : 0;
        if (file_n == 0) {
            throw std::invalid_argument("Kraus operators must act on 1 or 2 qubits");
        }
        if (n != 0 && n != file_n) {
            throw std::invalid_argument("--n does not match the Kraus operator size");
        }
        n = file_n;
        ptm = ptm_from_kraus(kraus);
    } else {
        ChannelSpec spec{o.channel, {}};
        if (o.channel == "rotation_z") {
            spec.params = {required_param(o.theta, "--theta", o.channel)};
        } else if (o.channel == "amplitude_damping") {
            spec.params = {required_param(o.gamma, "--gamma", o.channel)};
        } else if (o.channel == "depolarizing") {
            spec.params = {required_param(o.p, "--p", o.channel)};
        }
        // Validates the parameter range.
        make_named_channel(spec);
        ptm = ptm_from_kraus(named_channel_kraus(spec));
        if (n == 0) {
            n = 1;
        }
        if (n == 2) {
            ptm = tensor_product(ptm, ptm);
        }
    }
    ChannelDictionary dict(n);
    StabilizerDecomposition d = decompose_min_norm(ptm, dict);
    double residual = verify_decomposition(ptm, d);
    std::string text = decomposition_to_json(d);

    if (g.json) {
        if (!o.out.empty()) {
            write_output(o.out, text, out);
        }
        Json j;
        j["command"] = "decompose";
        j["channel"] = o.channel;
        j["n"] = n;
        j["one_norm"] = one_norm(d);
        j["negativity"] = negativity(d);
        j["residual"] = residual;
        j["num_terms"] = d.terms.size();
        if (o.out.empty()) {
            j["decomposition"] = Json::parse(text);
        } else {
            j["out"] = o.out;
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    write_output(o.out, text, out);
    if (!o.out.empty()) {
        out << "one_norm=" << format_double(one_norm(d)) << " negativity=" << format_double(negativity(d))
            << " residual=" << format_double(residual) << " terms=" << d.terms.size() << "\n";
    }
    return kExitOk;
}

// ---- run / verify ----

struct CircuitOptions {
    std::string circuit;
    std::string noise;
    std::vector<double> params;
    uint64_t shots = 10000;
    uint64_t seed = kDefaultSeed;
    std::vector<std::string> observables;
    std::string out;
};

struct LoadedPlan {
    Circuit circuit;
    SimulationPlan plan;
    std::vector<std::string> labels;
};

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, sep)) {
        parts.push_back(part);
    }
    return parts;
}

LoadedPlan load_plan(const CircuitOptions &o) {
    LoadedPlan l;
    l.circuit = parse_circuit(read_file(o.circuit));
    if (!o.noise.empty()) {
        ChannelSpec spec{o.noise, o.params};
        make_named_channel(spec);
        l.circuit = insert_noise(l.circuit, NoiseModel{spec});
    } else if (!o.params.empty()) {
        throw UsageError("--param needs --noise");
    }
    l.plan = compile(l.circuit, ChannelRegistry());
    size_t n = l.circuit.num_qubits;
    if (o.observables.empty()) {
        for (size_t q = 0; q < n; q++) {
            PauliString z = PauliString::single(n, q, 'Z');
            l.plan.observables.push_back(Observable{{z}, kFinalState});
            l.labels.push_back(z.str());
        }
    }
    for (const auto &text : o.observables) {
        Observable obs;
        for (const auto &part : split(text, ',')) {
            PauliString p = PauliString::from_text(part);
            if (p.num_qubits() != n) {
                throw std::invalid_argument("observable " + part + " does not match the qubit count");
            }
            obs.generators.push_back(p);
        }
        // Validates commutation and independence.
        StabilizerProjector check(obs.generators);
        std::string label;
        for (size_t i = 0; i < obs.generators.size(); i++) {
            label += (i ? "," : "") + obs.generators[i].str();
        }
        l.plan.observables.push_back(std::move(obs));
        l.labels.push_back(label);
    }
    return l;
}

int run_run(const GlobalOptions &g, const CircuitOptions &o, std::ostream &out) {
    LoadedPlan l = load_plan(o);
    auto results = estimate(l.plan, o.shots, o.seed, g.workers);
    std::string csv = csv_row({"observable", "estimate", "std_error", "shots", "one_norm_product"});
    Json rows = Json::array();
    for (size_t i = 0; i < results.size(); i++) {
        const auto &r = results[i];
        csv += csv_row(
            {l.labels[i], format_double(r.mean), format_double(r.std_error), std::to_string(r.shots),
             format_double(r.one_norm_product)});
        rows.push_back(
            {{"observable", l.labels[i]},
             {"estimate", r.mean},
             {"std_error", r.std_error},
             {"shots", r.shots},
             {"one_norm_product", r.one_norm_product}});
    }
    if (g.json) {
        if (!o.out.empty()) {
            write_output(o.out, csv, out);
        }
        Json j;
        j["command"] = "run";
        j["circuit"] = o.circuit;
        j["seed"] = o.seed;
        j["results"] = rows;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    write_output(o.out, csv, out);
    return kExitOk;
}

int run_verify(const GlobalOptions &g, const CircuitOptions &o, std::ostream &out, std::ostream &err) {
    LoadedPlan l = load_plan(o);
    size_t n = l.circuit.num_qubits;
    if (n > kMaxOracleQubits) {
        throw std::invalid_argument("verify supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    auto results = estimate(l.plan, o.shots, o.seed, g.workers);
    auto exact = exact_expectations(l.plan);
    DensityMatrix rho(n);
    for (const auto &step : l.circuit.steps) {
        for (const auto &inst : step) {
            dense_apply(rho, inst);
        }
    }
    bool ok = true;
    std::string csv = csv_row({"observable", "estimate", "std_error", "exact", "dense", "z_score", "status"});
    Json rows = Json::array();
    for (size_t i = 0; i < results.size(); i++) {
        const auto &r = results[i];
        double dense = rho.projection_probability(l.plan.observables[i].generators);
        double diff = r.mean - exact[i];
        double z = r.std_error > 0 ? diff / r.std_error
                   : std::abs(diff) < 1e-12 ? 0.0
                                            : std::numeric_limits<double>::infinity();
        bool row_ok = std::abs(exact[i] - dense) <= 1e-9 && std::abs(z) <= 4;
        ok = ok && row_ok;
        csv += csv_row(
            {l.labels[i], format_double(r.mean), format_double(r.std_error), format_double(exact[i]),
             format_double(dense), format_double(z), row_ok ? "ok" : "fail"});
        rows.push_back(
            {{"observable", l.labels[i]},
             {"estimate", r.mean},
             {"std_error", r.std_error},
             {"exact", exact[i]},
             {"dense", dense},
             {"z_score", std::isfinite(z) ? Json(z) : Json(nullptr)},
             {"ok", row_ok}});
    }
    if (g.json) {
        if (!o.out.empty()) {
            write_output(o.out, csv, out);
        }
        Json j;
        j["command"] = "verify";
        j["circuit"] = o.circuit;
        j["seed"] = o.seed;
        j["ok"] = ok;
        j["results"] = rows;
        out << j.dump(2) << "\n";
    } else {
        write_output(o.out, csv, out);
    }
    if (!ok) {
        err << "error: verification failed\n";
        return kExitRuntime;
    }
    return kExitOk;
}

// ---- rotation-demo ----

struct RotationOptions {
    size_t steps = 50;
    uint64_t shots = 10000;
    uint64_t seed = kDefaultSeed;
    bool positive = false;
    std::string out;
};

int run_rotation(const GlobalOptions &g, const RotationOptions &o, std::ostream &out) {
    SimulationPlan plan = rotation_demo_plan(o.steps, o.positive);
    auto results = estimate(plan, o.shots, o.seed, g.workers);
    std::string csv = csv_row({"step", "estimate", "std_error"});
    Json rows = Json::array();
    for (size_t k = 0; k < results.size(); k++) {
        csv += csv_row({std::to_string(k + 1), format_double(results[k].mean), format_double(results[k].std_error)});
        rows.push_back({{"step", k + 1}, {"estimate", results[k].mean}, {"std_error", results[k].std_error}});
    }
    if (g.json) {
        if (!o.out.empty()) {
            write_output(o.out, csv, out);
        }
        Json j;
        j["command"] = "rotation-demo";
        j["steps"] = o.steps;
        j["shots"] = o.shots;
        j["seed"] = o.seed;
        j["positive"] = o.positive;
        j["rows"] = rows;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    write_output(o.out, csv, out);
    return kExitOk;
}

// ---- steane ----

struct SteaneOptions {
    std::string noise;
    std::vector<double> strengths;
    uint64_t shots = 10000;
    uint64_t seed = kDefaultSeed;
    size_t rounds = 3;
    std::string out;
};

int run_steane(const GlobalOptions &g, const SteaneOptions &o, std::ostream &out) {
    ThresholdSweep sweep = threshold_sweep(o.noise, o.strengths, o.shots, o.seed, o.rounds, g.workers);
    std::string csv = csv_row({"strength", "physical_infidelity", "logical_infidelity", "std_error", "shots"});
    Json rows = Json::array();
    for (const auto &p : sweep.points) {
        csv += csv_row(
            {format_double(p.strength), format_double(p.physical_infidelity), format_double(p.logical_infidelity),
             format_double(p.std_error), std::to_string(p.shots)});
        rows.push_back(
            {{"strength", p.strength},
             {"physical_infidelity", p.physical_infidelity},
             {"logical_infidelity", p.logical_infidelity},
             {"std_error", p.std_error},
             {"shots", p.shots}});
    }
    if (g.json) {
        if (!o.out.empty()) {
            write_output(o.out, csv, out);
        }
        Json j;
        j["command"] = "steane";
        j["noise"] = o.noise;
        j["rounds"] = o.rounds;
        j["seed"] = o.seed;
        j["points"] = rows;
        if (sweep.crossing) {
            j["crossing"] = {
                {"physical_infidelity", sweep.crossing->physical_infidelity},
                {"extrapolated", sweep.crossing->extrapolated}};
        } else {
            j["crossing"] = nullptr;
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    write_output(o.out, csv, out);
    if (!o.out.empty()) {
        if (sweep.crossing) {
            out << "crossing_physical_infidelity=" << format_double(sweep.crossing->physical_infidelity)
                << (sweep.crossing->extrapolated ? " (extrapolated)" : "") << "\n";
        } else {
            out << "crossing_physical_infidelity=none\n";
        }
    }
    return kExitOk;
}

void add_circuit_options(CLI::App *cmd, CircuitOptions &o) {
    cmd->add_option("--circuit", o.circuit, "Circuit file")->required();
    cmd->add_option("--noise", o.noise, "Noise channel inserted after every step");
    cmd->add_option("--param", o.params, "Noise channel parameter (repeatable)");
    cmd->add_option("--shots", o.shots, "Number of shots")->check(CLI::Range(uint64_t{2}, uint64_t{1} << 62));
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--observable", o.observables, "Comma-separated commuting Pauli generators (repeatable)");
    cmd->add_option("--out", o.out, "CSV output path (default: standard output)");
}

}  // namespace

std::string csv_field(const std::string &value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) {
        return value;
    }
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Monte Carlo simulator for noisy near-Clifford circuits", "ncsim"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    app.add_flag("--json", g.json, "Print results as one JSON object on standard output");
    app.add_option("--workers", g.workers, "Worker threads (0: hardware concurrency)");

    DecomposeOptions dec;
    auto *decompose = app.add_subcommand("decompose", "Minimal 1-norm stabilizer decomposition of a channel");
    decompose->add_option("--channel", dec.channel, "Channel to decompose")
        ->required()
        ->check(CLI::IsMember({"rotation_z", "t", "amplitude_damping", "depolarizing", "kraus-file"}));
    decompose->add_option("--theta", dec.theta, "Rotation angle");
    decompose->add_option("--gamma", dec.gamma, "Damping strength");
    decompose->add_option("--p", dec.p, "Depolarizing probability");
    decompose->add_option("--kraus", dec.kraus, "JSON Kraus file for kraus-file");
    decompose->add_option("--n", dec.n, "Qubit count (2 tensors a named channel with itself)")
        ->check(CLI::IsMember({1, 2}));
    decompose->add_option("--out", dec.out, "Decomposition JSON output path (default: standard output)");

    CircuitOptions run_opts;
    auto *run = app.add_subcommand("run", "Estimate observables of a circuit");
    add_circuit_options(run, run_opts);

    CircuitOptions verify_opts;
    auto *verify = app.add_subcommand("verify", "Check a small circuit against the dense oracles");
    add_circuit_options(verify, verify_opts);

    RotationOptions rot;
    auto *rotation = app.add_subcommand("rotation-demo", "Single-qubit rotation from |+> to |+i>");
    rotation->add_option("--steps", rot.steps, "Number of rotation steps")->check(CLI::PositiveNumber);
    rotation->add_option("--shots", rot.shots, "Number of shots")->check(CLI::Range(uint64_t{2}, uint64_t{1} << 62));
    rotation->add_option("--seed", rot.seed, "Random seed");
    rotation->add_flag("--positive", rot.positive, "Use the nonnegative approximate decomposition");
    rotation->add_option("--out", rot.out, "CSV output path (default: standard output)");

    SteaneOptions st;
    auto *steane = app.add_subcommand("steane", "Steane code logical infidelity sweep");
    steane->add_option("--noise", st.noise, "Noise model")
        ->required()
        ->check(CLI::IsMember({"depolarizing", "amplitude_damping"}));
    steane->add_option("--strengths", st.strengths, "Comma-separated noise strengths")->required()->delimiter(',');
    steane->add_option("--shots", st.shots, "Circuit realizations per strength")
        ->check(CLI::Range(uint64_t{12}, uint64_t{1} << 62));
    steane->add_option("--seed", st.seed, "Random seed");
    steane->add_option("--rounds", st.rounds, "Noisy extraction rounds")->check(CLI::PositiveNumber);
    steane->add_option("--out", st.out, "CSV output path (default: standard output)");

    std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_tail.begin(), argv_tail.end());
    try {
        app.parse(argv_tail);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*decompose) {
            return run_decompose(g, dec, out);
        }
        if (*run) {
            return run_run(g, run_opts, out);
        }
        if (*verify) {
            return run_verify(g, verify_opts, out, err);
        }
        if (*rotation) {
            return run_rotation(g, rot, out);
        }
        if (*steane) {
            return run_steane(g, st, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace ncsim
