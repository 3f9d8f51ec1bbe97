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

/**
 * @file catalog.hpp
 * Named constructions bundled with their reference operator, so that a
 * construction can be synthesized and verified from a handful of
 * parameters.
 */

#pragma once

#include <algorithm>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qdepth/classical.hpp"
#include "qdepth/synthesis.hpp"
#include "qdepth/verify.hpp"

namespace qdepth {

enum class Construction { Cat, Fanout, ParityFanout, ParityCat, ModqSeq, ModqConst, CtrlU, RevEmbed };

inline constexpr std::pair<Construction, std::string_view> kConstructionNames[] = {
    {Construction::Cat, "cat"},
    {Construction::Fanout, "fanout"},
    {Construction::ParityFanout, "parity-fanout"},
    {Construction::ParityCat, "parity-cat"},
    {Construction::ModqSeq, "modq-seq"},
    {Construction::ModqConst, "modq-const"},
    {Construction::CtrlU, "ctrl-u"},
    {Construction::RevEmbed, "rev-embed"},
};

inline std::string_view to_string(Construction c) {
    for (const auto &[k, name] : kConstructionNames) {
        if (k == c) return name;
    }
    return "?";
}

inline std::optional<Construction> construction_from_string(std::string_view s) {
    for (const auto &[k, name] : kConstructionNames) {
        if (name == s) return k;
    }
    return std::nullopt;
}

inline bool needs_modulus(Construction c) { return c == Construction::ModqSeq || c == Construction::ModqConst; }

struct ConstructionRequest {
    Construction kind = Construction::Cat;
    std::size_t n = 1;
    unsigned q = 3;
    Discipline discipline = Discipline::WithFanout;
    CatBuilderKind builder = CatBuilderKind::Fanout;
    /// Single-qubit unitary for ctrl-u.
    Matrix unitary = gates::hadamard();
    /// Random classical circuit for rev-embed.
    std::uint64_t seed = 1;
    std::size_t classical_depth = 3;
};

struct Synthesized {
    std::string name;
    std::size_t n = 0;
    std::optional<unsigned> q;
    Circuit circuit;
    std::vector<QubitId> data_qubits;
    /// Qubits that must return to |0>.
    std::vector<QubitId> ancillae;
    std::size_t copy_ancillae = 0;
    std::size_t work_qubits = 0;
    Reference reference;
    /// Data inputs the construction is specified on; empty means all.
    std::vector<std::uint64_t> domain;
};

/// Random classical circuit used by the rev-embed construction: n inputs,
/// up to 2 gates per layer, fan-in up to 4.
inline ClassicalCircuit catalog_classical_circuit(std::size_t n, std::size_t depth, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_classical_circuit(rng, n, depth, 2, 4);
}

inline Synthesized synthesize(const ConstructionRequest &req) {
    Synthesized s;
    s.name = std::string(to_string(req.kind));
    s.n = req.n;
    const std::size_t n = req.n;
    detail::require_positive(n, "synthesize");

    auto split_roles = [&s] {
        s.data_qubits = s.circuit.data_qubits();
        s.ancillae = s.circuit.qubits_with_role(QubitRole::Ancilla);
    };

    switch (req.kind) {
        case Construction::Cat: {
            s.circuit = cat_log_depth(n);
            // Only |x>|0..0> inputs are specified; the copies are outputs.
            s.data_qubits = detail::range(0, n);
            std::uint64_t all_ones = (std::uint64_t{1} << n) - 1;
            s.reference = [all_ones](std::uint64_t d) { return ReferenceColumn{{d == 0 ? 0 : all_ones, 1.0}}; };
            s.domain = {0, 1};
            return s;
        }
        case Construction::Fanout:
            s.circuit = fanout_gate(n);
            split_roles();
            s.reference = reference_for(Gate::fanout(0, detail::range(1, n)));
            return s;
        case Construction::ParityFanout:
            s.circuit = parity_from_fanout(n);
            split_roles();
            s.reference = reference_for(Gate::mod_q(detail::range(0, n), n, 2));
            return s;
        case Construction::ParityCat:
            s.circuit = parity_via_catstate(
                n, req.discipline == Discipline::Strict ? CatBuilderKind::LogDepth : req.builder);
            split_roles();
            s.reference = reference_for(Gate::mod_q(detail::range(0, n), n, 2));
            return s;
        case Construction::ModqSeq:
        case Construction::ModqConst: {
            s.q = req.q;
            s.circuit = req.kind == Construction::ModqSeq ? modq_sequential(n, req.q)
                                                          : modq_constant_depth(n, req.q, req.discipline);
            split_roles();
            s.work_qubits = ceil_log2(req.q);
            s.copy_ancillae = req.kind == Construction::ModqConst ? modq_copy_ancillae(n, req.q) : 0;
            s.reference = reference_for(Gate::mod_q(detail::range(0, n), n, req.q));
            return s;
        }
        case Construction::CtrlU:
            s.circuit = controlled_u_constant_depth(n, req.unitary);
            split_roles();
            s.reference = reference_for(Gate::controlled_u(detail::range(0, n), {n}, req.unitary));
            return s;
        case Construction::RevEmbed: {
            const auto classical = catalog_classical_circuit(n, req.classical_depth, req.seed);
            s.circuit = reversible_embed(classical);
            split_roles();
            s.reference = [classical, n](std::uint64_t d) {
                const std::uint64_t x = d & ((std::uint64_t{1} << n) - 1);
                const std::uint64_t y = d >> n;
                return ReferenceColumn{{x | ((y ^ classical.evaluate(x)) << n), 1.0}};
            };
            return s;
        }
    }
    throw CircuitError("unknown construction");
}

inline VerificationReport verify(const Synthesized &s, VerifyOptions opts = {}) {
    if (opts.domain.empty()) opts.domain = s.domain;
    auto report = verify_construction(s.circuit, s.reference, s.data_qubits, s.ancillae, opts);
    report.construction = s.name;
    report.n = s.n;
    report.q = s.q;
    report.copy_ancillae = s.copy_ancillae;
    report.work_qubits = s.work_qubits;
    return report;
}

struct IdentityResult {
    std::string name;
    double max_error = 0.0;
    bool pass = false;
};

/**
 * Matrix identities behind the parity constructions:
 *  - H on the target of a CNOT turns it into the controlled pi-shift;
 *  - Hadamards on every qubit turn a fanout gate into a MOD_2 gate pointing
 *    the other way (checked for n = 1..4).
 */
inline std::vector<IdentityResult> run_identities(double tolerance = 1e-12) {
    std::vector<IdentityResult> out;

    Circuit conj({QubitRole::Input, QubitRole::Target}, Discipline::Strict);
    conj.add_layer({Gate::hadamard(1)});
    conj.add_layer({Gate::cnot(0, 1)});
    conj.add_layer({Gate::hadamard(1)});
    Circuit cz({QubitRole::Input, QubitRole::Target}, Discipline::Strict);
    cz.add_layer({Gate::phase({0}, 1, std::numbers::pi)});
    const double e1 = max_abs_diff(unitary_of(conj), unitary_of(cz));
    out.push_back({"h-conjugated-cnot-is-controlled-pi-shift", e1, e1 <= tolerance});

    double e2 = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const Matrix parity = oracle_matrix(Gate::mod_q(detail::range(0, n), n, 2), n + 1);
        e2 = std::max(e2, max_abs_diff(unitary_of(parity_from_fanout(n)), parity));
    }
    out.push_back({"h-conjugated-fanout-is-parity", e2, e2 <= tolerance});
    return out;
}

}  // namespace qdepth
