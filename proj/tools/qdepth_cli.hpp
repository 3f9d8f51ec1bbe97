// Copyright 2026 The qdepth Authors
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

// Command-line front end. Kept in a header so the test suite can drive it
// in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 simulation cap exceeded.

#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdepth/qdepth.hpp"

namespace qdepth::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2, kCap = 3 };

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Environment {
    std::size_t sim_cap = kDefaultSimCap;
    double tolerance = 1e-9;

    static Environment from_process() {
        Environment env;
        if (const char *cap = std::getenv("QDEPTH_SIM_CAP")) {
            try {
                env.sim_cap = std::stoul(cap);
            } catch (const std::exception &) {
                throw UsageError(std::string("QDEPTH_SIM_CAP is not an integer: ") + cap);
            }
        }
        if (const char *tol = std::getenv("QDEPTH_TOL")) {
            try {
                env.tolerance = std::stod(tol);
            } catch (const std::exception &) {
                throw UsageError(std::string("QDEPTH_TOL is not a number: ") + tol);
            }
        }
        return env;
    }
};

/// Options shared by synth, verify and scale.
struct ConstructionFlags {
    std::string construction;
    std::size_t n = 1;
    std::optional<unsigned> q;
    std::string discipline = "wf";
    std::optional<std::string> builder;
    std::string unitary = "h";
    std::uint64_t seed = 1;
    std::size_t classical_depth = 3;

    void attach(CLI::App *cmd, bool with_n) {
        cmd->add_option("--construction", construction, "Construction to build")
            ->required()
            ->check(CLI::IsMember({"cat", "fanout", "parity-fanout", "parity-cat", "modq-seq", "modq-const", "ctrl-u",
                                   "rev-embed"}));
        if (with_n) cmd->add_option("--n", n, "Number of inputs (controls for ctrl-u)")->check(CLI::Range(1, 64));
        cmd->add_option("--q", q, "Modulus for modq-*")->check(CLI::Range(2, 16));
        cmd->add_option("--discipline", discipline, "Layering discipline")->check(CLI::IsMember({"strict", "wf"}));
        cmd->add_option("--builder", builder, "Cat builder for parity-cat")
            ->check(CLI::IsMember({"fanout", "log-cat"}));
        cmd->add_option("--unitary", unitary, "Single-qubit gate for ctrl-u")->check(CLI::IsMember({"h", "x", "z"}));
        cmd->add_option("--seed", seed, "Seed of the random classical circuit for rev-embed");
        cmd->add_option("--depth", classical_depth, "Depth of the classical circuit for rev-embed")
            ->check(CLI::Range(1, 8));
    }

    /// Resolves the flags into a request for one n; rejects combinations
    /// that name a primitive the discipline does not have.
    [[nodiscard]] ConstructionRequest request(std::size_t for_n) const {
        ConstructionRequest req;
        req.kind = *construction_from_string(construction);
        req.n = for_n;
        req.discipline = *discipline_from_string(discipline);
        if (needs_modulus(req.kind)) {
            if (!q) throw UsageError("--q is required for " + construction);
            req.q = *q;
        } else if (q) {
            throw UsageError("--q only applies to modq-seq and modq-const");
        }
        const bool strict = req.discipline == Discipline::Strict;
        if (strict && (req.kind == Construction::Fanout || req.kind == Construction::ParityFanout ||
                       req.kind == Construction::RevEmbed)) {
            throw UsageError(construction + " needs fanout layering; it cannot be built with --discipline strict");
        }
        if (builder && req.kind != Construction::ParityCat) {
            throw UsageError("--builder only applies to parity-cat");
        }
        req.builder = builder ? (*builder == "fanout" ? CatBuilderKind::Fanout : CatBuilderKind::LogDepth)
                              : (strict ? CatBuilderKind::LogDepth : CatBuilderKind::Fanout);
        if (strict && req.builder == CatBuilderKind::Fanout && req.kind == Construction::ParityCat) {
            throw UsageError("--builder fanout needs --discipline wf");
        }
        req.unitary = unitary == "x" ? gates::pauli_x() : unitary == "z" ? gates::pauli_z() : gates::hadamard();
        req.seed = seed;
        req.classical_depth = classical_depth;
        return req;
    }
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Bitstring given qubit-0-first, or "plus@i".
inline StateVector parse_input(const std::string &text, std::size_t width) {
    if (text.rfind("plus@", 0) == 0) {
        std::size_t q = 0;
        try {
            q = std::stoul(text.substr(5));
        } catch (const std::exception &) {
            throw UsageError("bad qubit index in " + text);
        }
        if (q >= width) throw UsageError(text + " is outside a " + std::to_string(width) + "-qubit register");
        StateVector s(width);
        apply_gate(s, Gate::hadamard(q));
        return s;
    }
    if (text.size() != width) {
        throw UsageError("input has " + std::to_string(text.size()) + " bits, circuit width is " +
                         std::to_string(width));
    }
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < text.size(); ++q) {
        if (text[q] == '1') {
            index |= std::uint64_t{1} << q;
        } else if (text[q] != '0') {
            throw UsageError("input bits must be 0 or 1, got '" + std::string(1, text[q]) + "'");
        }
    }
    return StateVector::basis(width, index);
}

inline void print_diagram(const Circuit &c, std::ostream &out) {
    for (std::size_t l = 0; l < c.layers().size(); ++l) {
        out << "layer " << l << ':';
        for (const auto &g : c.layers()[l].gates) {
            out << ' ' << to_string(g.kind()) << '(';
            for (std::size_t i = 0; i < g.controls().size(); ++i) {
                out << (i ? "," : "") << (g.is_negated(g.controls()[i]) ? "!" : "") << g.controls()[i];
            }
            out << "->";
            for (std::size_t i = 0; i < g.targets().size(); ++i) out << (i ? "," : "") << g.targets()[i];
            out << ')';
        }
        out << '\n';
    }
}

inline void print_report(const VerificationReport &r, bool json, std::ostream &out) {
    if (json) {
        out << report_to_json(r).dump() << '\n';
        return;
    }
    out << "construction: " << r.construction << '\n' << "n: " << r.n << '\n';
    if (r.q) out << "q: " << *r.q << '\n';
    out << "discipline: " << to_string(r.discipline) << '\n'
        << "depth: " << r.depth << '\n'
        << "width: " << r.width << '\n'
        << "ancillae: " << r.ancillae << '\n'
        << "copy_ancillae: " << r.copy_ancillae << '\n'
        << "work_qubits: " << r.work_qubits << '\n';
    if (!r.amplitudes_checked) {
        out << "amplitudes: skipped (structural only)\n";
        return;
    }
    out << "inputs_checked: " << r.inputs_checked << '\n' << "max_error: " << r.max_error << '\n'
        << "leakage: " << r.leakage << '\n';
    if (r.superposition_error) out << "superposition_error: " << *r.superposition_error << '\n';
    out << "result: " << (r.pass ? "pass" : "FAIL") << '\n';
}

/// Ancilla figure used in summaries: copy ancillae for MOD_q circuits,
/// otherwise every ancilla-role qubit.
inline std::size_t summary_ancillae(const Synthesized &s) {
    return s.q ? s.copy_ancillae : s.circuit.ancilla_count();
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Constant-depth fanout, parity and MOD_q circuit synthesis and verification", "qdepth"};
    app.require_subcommand(1, 1);

    ConstructionFlags synth_flags;
    std::string synth_out;
    bool synth_diagram = false;
    auto *synth = app.add_subcommand("synth", "Build a construction and write it as JSON");
    synth_flags.attach(synth, true);
    synth->add_option("--out", synth_out, "Output path ('-' for stdout)");
    synth->add_flag("--diagram", synth_diagram, "Print a textual layer listing");

    std::string sim_path;
    std::string sim_input;
    auto *sim = app.add_subcommand("sim", "Simulate a circuit file and dump the state");
    sim->add_option("circuit", sim_path, "Circuit JSON file")->required();
    sim->add_option("--input", sim_input, "Basis bits, qubit 0 first, or plus@i")->required();

    ConstructionFlags verify_flags;
    bool verify_structural = false;
    bool verify_json = false;
    std::optional<double> verify_tol;
    std::size_t verify_superpositions = 0;
    auto *verify_cmd = app.add_subcommand("verify", "Check a construction against its reference gate");
    verify_flags.attach(verify_cmd, true);
    verify_cmd->add_flag("--structural-only", verify_structural, "Report depth and ancillae without simulating");
    verify_cmd->add_option("--tolerance", verify_tol, "Maximum amplitude error");
    verify_cmd->add_option("--superpositions", verify_superpositions, "Random superposition inputs to add");
    verify_cmd->add_flag("--json", verify_json, "Emit the report as JSON");

    ConstructionFlags scale_flags;
    std::size_t n_min = 1;
    std::size_t n_max = 1;
    bool scale_json = false;
    auto *scale = app.add_subcommand("scale", "Tabulate depth, width and ancillae over a range of n");
    scale_flags.attach(scale, false);
    scale->add_option("n_min", n_min, "Smallest n")->required()->check(CLI::Range(1, 4096));
    scale->add_option("n_max", n_max, "Largest n")->required()->check(CLI::Range(1, 4096));
    scale->add_flag("--json", scale_json, "Emit the table as JSON");

    bool identities_json = false;
    auto *identities = app.add_subcommand("identities", "Check the Hadamard-conjugation identities");
    identities->add_flag("--json", identities_json, "Emit results as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Environment env = Environment::from_process();

        if (*synth) {
            const auto s = synthesize(synth_flags.request(synth_flags.n));
            std::ostream &summary = synth_out == "-" ? err : out;
            summary << "depth=" << s.circuit.depth() << " width=" << s.circuit.width()
                    << " ancillae=" << summary_ancillae(s) << " work=" << s.work_qubits << '\n';
            if (synth_diagram) print_diagram(s.circuit, summary);
            if (synth_out == "-") {
                out << circuit_to_json(s.circuit);
            } else if (!synth_out.empty()) {
                std::ofstream f(synth_out);
                if (!f) throw UsageError("cannot write " + synth_out);
                f << circuit_to_json(s.circuit);
            }
            return kOk;
        }

        if (*sim) {
            Circuit c;
            try {
                c = circuit_from_json(read_file(sim_path));
            } catch (const FormatError &e) {
                throw UsageError(sim_path + ": " + e.what());
            }
            if (c.width() > env.sim_cap) {
                err << "circuit width " << c.width() << " exceeds the simulation cap of " << env.sim_cap << '\n';
                return kCap;
            }
            dump_state(run(c, parse_input(sim_input, c.width())), out);
            return kOk;
        }

        if (*verify_cmd) {
            const auto s = synthesize(verify_flags.request(verify_flags.n));
            VerifyOptions opts;
            opts.tolerance = verify_tol.value_or(env.tolerance);
            opts.sim_cap = env.sim_cap;
            opts.structural_only = verify_structural;
            opts.superposition_samples = verify_superpositions;
            VerificationReport report;
            try {
                report = verify(s, opts);
            } catch (const CapExceeded &e) {
                err << e.what() << "; rerun with --structural-only for depth and ancilla figures\n";
                return kCap;
            }
            print_report(report, verify_json, out);
            if (verify_structural) return kOk;
            return report.pass ? kOk : kFail;
        }

        if (*scale) {
            if (n_min > n_max) throw UsageError("n_min must not exceed n_max");
            (void)scale_flags.request(n_min);  // validates the flag combination once
            auto table = depth_scaling_table(
                [&](std::size_t n) { return synthesize(scale_flags.request(n)).circuit; }, n_min, n_max,
                [&](std::size_t n, const Circuit &c) {
                    const auto kind = *construction_from_string(scale_flags.construction);
                    if (kind == Construction::ModqConst) return modq_copy_ancillae(n, *scale_flags.q);
                    return c.ancilla_count();
                });
            if (scale_json) {
                nlohmann::json j;
                j["construction"] = scale_flags.construction;
                j["growth"] = to_string(table.growth);
                for (const auto &r : table.rows) {
                    j["rows"].push_back({{"n", r.n}, {"depth", r.depth}, {"width", r.width}, {"ancillae", r.ancillae}});
                }
                out << j.dump() << '\n';
            } else {
                out << "n\tdepth\twidth\tancillae\n";
                for (const auto &r : table.rows) {
                    out << r.n << '\t' << r.depth << '\t' << r.width << '\t' << r.ancillae << '\n';
                }
                out << "growth\t" << to_string(table.growth) << '\n';
            }
            return kOk;
        }

        if (*identities) {
            const auto results = run_identities();
            bool all = true;
            nlohmann::json j = nlohmann::json::array();
            for (const auto &r : results) {
                all = all && r.pass;
                if (identities_json) {
                    j.push_back({{"name", r.name}, {"max_error", r.max_error}, {"pass", r.pass}});
                } else {
                    out << r.name << ": " << (r.pass ? "pass" : "FAIL") << " (max error " << r.max_error << ")\n";
                }
            }
            if (identities_json) out << j.dump() << '\n';
            return all ? kOk : kFail;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CircuitError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SimulationError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace qdepth::cli
