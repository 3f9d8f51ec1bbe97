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
 * @file verify.hpp
 * Definitional gate oracles and brute-force equivalence checking.
 *
 * The oracles evaluate each gate straight from its definition on one
 * basis index at a time; they share no code with the simulator kernels.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdepth/circuit.hpp"
#include "qdepth/simulator.hpp"

namespace qdepth {

/// Default simulation cap in qubits for amplitude checks.
inline constexpr std::size_t kDefaultSimCap = 22;

class CapExceeded : public SimulationError {
   public:
    using SimulationError::SimulationError;
};

/// Image of a basis state under a permutation-with-phase gate.
struct OracleImage {
    std::uint64_t index;
    complex_t phase;
};

/// Sparse column of a reference operator: (basis index, amplitude) pairs.
using ReferenceColumn = std::vector<std::pair<std::uint64_t, complex_t>>;

/// Reference operator on the data register, given column by column.
using Reference = std::function<ReferenceColumn(std::uint64_t)>;

namespace oracle_detail {

inline bool bit(std::uint64_t index, QubitId q) { return ((index >> q) & 1U) != 0; }

inline std::uint64_t flip(std::uint64_t index, QubitId q) { return index ^ (std::uint64_t{1} << q); }

/// Number of controls reading 1 (0 for negated controls).
inline std::size_t firing(const Gate &g, std::uint64_t index) {
    std::size_t count = 0;
    for (auto c : g.controls()) {
        if (bit(index, c) != g.is_negated(c)) ++count;
    }
    return count;
}

inline bool all_fire(const Gate &g, std::uint64_t index) { return firing(g, index) == g.controls().size(); }

}  // namespace oracle_detail

/// True for the gate kinds whose oracle is a permutation with phases.
inline bool is_monomial(const Gate &g) {
    switch (g.kind()) {
        case GateKind::Toffoli:
        case GateKind::ModQ:
        case GateKind::Fanout:
        case GateKind::ControlledNot:
        case GateKind::PauliX:
        case GateKind::SymmetricPhase:
            return true;
        default:
            return false;
    }
}

/// Definitional action of a permutation/phase gate on one basis index.
/// Throws CircuitError for gates that create superpositions.
inline OracleImage oracle_apply(const Gate &g, std::uint64_t index) {
    using namespace oracle_detail;
    const QubitId t = g.targets()[0];
    switch (g.kind()) {
        case GateKind::PauliX:
            return {flip(index, t), 1.0};
        case GateKind::ControlledNot:
        case GateKind::Toffoli:
            return {all_fire(g, index) ? flip(index, t) : index, 1.0};
        case GateKind::ModQ:
            return {firing(g, index) % g.modulus() != 0 ? flip(index, t) : index, 1.0};
        case GateKind::Fanout: {
            if (!all_fire(g, index)) return {index, 1.0};
            for (auto q : g.targets()) index = flip(index, q);
            return {index, 1.0};
        }
        case GateKind::SymmetricPhase:
            if (all_fire(g, index) && bit(index, t)) return {index, std::polar(1.0, g.theta())};
            return {index, 1.0};
        default:
            throw CircuitError(std::string("oracle_apply: ") + to_string(g.kind()) +
                               " is not a permutation-with-phase gate");
    }
}

/// Column `index` of the gate's operator, for any gate kind.
inline ReferenceColumn oracle_column(const Gate &g, std::uint64_t index) {
    using namespace oracle_detail;
    if (is_monomial(g)) {
        const auto img = oracle_apply(g, index);
        return {{img.index, img.phase}};
    }
    Matrix u = g.kind() == GateKind::Hadamard ? gates::hadamard() : g.matrix();
    if (!all_fire(g, index)) return {{index, 1.0}};
    const auto &targets = g.targets();
    std::size_t col = 0;
    std::uint64_t base = index;
    for (std::size_t j = 0; j < targets.size(); ++j) {
        if (bit(index, targets[j])) {
            col |= std::size_t{1} << j;
            base = flip(base, targets[j]);
        }
    }
    ReferenceColumn out;
    for (std::size_t row = 0; row < u.dim(); ++row) {
        if (u(row, col) == complex_t{}) continue;
        std::uint64_t image = base;
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if ((row >> j) & 1U) image = flip(image, targets[j]);
        }
        out.emplace_back(image, u(row, col));
    }
    return out;
}

inline Reference reference_for(Gate g) {
    return [g = std::move(g)](std::uint64_t index) { return oracle_column(g, index); };
}

/// Dense matrix of a gate oracle on `width` qubits.
inline Matrix oracle_matrix(const Gate &g, std::size_t width) {
    const std::size_t dim = std::size_t{1} << width;
    Matrix m(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        for (const auto &[row, amp] : oracle_column(g, col)) m(row, col) += amp;
    }
    return m;
}

struct VerifyOptions {
    double tolerance = 1e-9;
    double leakage_tolerance = 1e-10;
    std::size_t sim_cap = kDefaultSimCap;
    /// Skip simulation and report depth/width/ancilla figures only.
    bool structural_only = false;
    /// Data basis inputs to check; empty means all of them.
    std::vector<std::uint64_t> domain;
    /// Random superpositions over the domain (phase-sensitive check).
    std::size_t superposition_samples = 0;
    std::uint64_t seed = 0x5eed;
};

struct VerificationReport {
    std::string construction;
    std::size_t n = 0;
    std::optional<unsigned> q;
    Discipline discipline = Discipline::Strict;
    bool amplitudes_checked = false;
    double max_error = 0.0;
    double leakage = 0.0;
    std::optional<double> superposition_error;
    std::size_t inputs_checked = 0;
    std::size_t depth = 0;
    std::size_t width = 0;
    std::size_t ancillae = 0;
    std::size_t copy_ancillae = 0;
    std::size_t work_qubits = 0;
    bool pass = false;
};

namespace verify_detail {

inline std::uint64_t spread(std::uint64_t data_index, std::span<const QubitId> data) {
    std::uint64_t full = 0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        if ((data_index >> j) & 1U) full |= std::uint64_t{1} << data[j];
    }
    return full;
}

inline std::uint64_t gather(std::uint64_t full, std::span<const QubitId> data) {
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < data.size(); ++j) {
        if ((full >> data[j]) & 1U) d |= std::uint64_t{1} << j;
    }
    return d;
}

struct Comparison {
    double sq_error = 0.0;  // squared l2 error incl. leaked mass
    double max_error = 0.0;
    double leakage = 0.0;
};

/// Compares a simulated output with the expected data-register vector.
inline Comparison compare(const StateVector &out, const std::vector<complex_t> &expected,
                          std::span<const QubitId> data, std::uint64_t ancilla_mask) {
    std::vector<complex_t> got(expected.size());
    Comparison cmp;
    for (std::uint64_t i = 0; i < out.size(); ++i) {
        if (out[i] == complex_t{}) continue;
        if ((i & ancilla_mask) != 0) {
            cmp.leakage += std::norm(out[i]);
        } else {
            got[gather(i, data)] += out[i];
        }
    }
    for (std::size_t d = 0; d < expected.size(); ++d) {
        const double e = std::abs(got[d] - expected[d]);
        cmp.max_error = std::max(cmp.max_error, e);
        cmp.sq_error += e * e;
    }
    cmp.sq_error += cmp.leakage;
    return cmp;
}

}  // namespace verify_detail

/**
 * Runs the circuit on every data basis input in the domain (ancillae |0>)
 * and compares the data register, phases included, with the reference.
 * Data qubits and ancillae must partition the register.
 *
 * max_error is the largest amplitude deviation on the ancilla-zero
 * subspace; leakage is the largest ancilla-nonzero mass of any output.
 * Throws CapExceeded when the register is wider than the cap; with
 * structural_only set nothing is simulated and pass stays false.
 */
inline VerificationReport verify_construction(const Circuit &circuit, const Reference &reference,
                                              std::span<const QubitId> data_qubits,
                                              std::span<const QubitId> ancillae, const VerifyOptions &opts = {}) {
    VerificationReport report;
    report.discipline = circuit.discipline();
    report.depth = circuit.depth();
    report.width = circuit.width();
    report.ancillae = circuit.ancilla_count();

    if (data_qubits.size() + ancillae.size() != circuit.width()) {
        throw SimulationError("verify_construction: " + std::to_string(data_qubits.size()) + " data qubits and " +
                              std::to_string(ancillae.size()) + " ancillae do not cover a register of width " +
                              std::to_string(circuit.width()));
    }
    for (auto q : data_qubits) {
        if (std::find(ancillae.begin(), ancillae.end(), q) != ancillae.end()) {
            throw SimulationError("verify_construction: qubit " + std::to_string(q) + " is both data and ancilla");
        }
        if (q >= circuit.width()) throw SimulationError("verify_construction: data qubit outside register");
    }
    if (opts.structural_only) return report;
    if (circuit.width() > opts.sim_cap) {
        throw CapExceeded("register of " + std::to_string(circuit.width()) + " qubits exceeds the simulation cap of " +
                          std::to_string(opts.sim_cap));
    }

    std::uint64_t ancilla_mask = 0;
    for (auto q : ancillae) {
        if (q >= circuit.width()) throw SimulationError("verify_construction: ancilla outside register");
        ancilla_mask |= std::uint64_t{1} << q;
    }

    std::vector<std::uint64_t> domain = opts.domain;
    const std::uint64_t data_dim = std::uint64_t{1} << data_qubits.size();
    if (domain.empty()) {
        domain.resize(data_dim);
        for (std::uint64_t d = 0; d < data_dim; ++d) domain[d] = d;
    }

    auto expected_column = [&](std::uint64_t d) {
        std::vector<complex_t> col(data_dim);
        for (const auto &[row, amp] : reference(d)) col[row] += amp;
        return col;
    };

    for (auto d : domain) {
        const auto out = run(circuit, StateVector::basis(circuit.width(), verify_detail::spread(d, data_qubits)));
        const auto cmp = verify_detail::compare(out, expected_column(d), data_qubits, ancilla_mask);
        report.max_error = std::max(report.max_error, cmp.max_error);
        report.leakage = std::max(report.leakage, cmp.leakage);
        ++report.inputs_checked;
    }

    if (opts.superposition_samples > 0) {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> gauss;
        double worst = 0.0;
        for (std::size_t s = 0; s < opts.superposition_samples; ++s) {
            std::vector<complex_t> coeffs(domain.size());
            double norm2 = 0.0;
            for (auto &c : coeffs) {
                c = {gauss(rng), gauss(rng)};
                norm2 += std::norm(c);
            }
            const double scale = 1.0 / std::sqrt(norm2);
            StateVector in = StateVector::from_amplitudes(std::vector<complex_t>(std::size_t{1} << circuit.width()));
            std::vector<complex_t> expected(data_dim);
            for (std::size_t i = 0; i < domain.size(); ++i) {
                const complex_t c = coeffs[i] * scale;
                in[verify_detail::spread(domain[i], data_qubits)] = c;
                for (const auto &[row, amp] : reference(domain[i])) expected[row] += c * amp;
            }
            const auto out = run(circuit, std::move(in));
            const auto cmp = verify_detail::compare(out, expected, data_qubits, ancilla_mask);
            worst = std::max(worst, std::sqrt(cmp.sq_error));
        }
        report.superposition_error = worst;
    }

    report.amplitudes_checked = true;
    report.pass = report.max_error <= opts.tolerance && report.leakage <= opts.leakage_tolerance &&
                  (!report.superposition_error || *report.superposition_error <= opts.tolerance);
    return report;
}

inline VerificationReport verify_construction(const Circuit &circuit, const Gate &oracle,
                                              std::span<const QubitId> data_qubits,
                                              std::span<const QubitId> ancillae, const VerifyOptions &opts = {}) {
    return verify_construction(circuit, reference_for(oracle), data_qubits, ancillae, opts);
}

enum class DepthGrowth { Constant, Logarithmic, Linear, Other };

inline const char *to_string(DepthGrowth g) {
    switch (g) {
        case DepthGrowth::Constant:
            return "constant";
        case DepthGrowth::Logarithmic:
            return "logarithmic";
        case DepthGrowth::Linear:
            return "linear";
        case DepthGrowth::Other:
            return "other";
    }
    return "?";
}

struct ScalingRow {
    std::size_t n = 0;
    std::size_t depth = 0;
    std::size_t width = 0;
    std::size_t ancillae = 0;
};

/// Exact integer classification of a depth column, checked in the order
/// constant, depth - ceil(log2 n) constant, depth - a*n constant (a > 0).
inline DepthGrowth classify_growth(const std::vector<ScalingRow> &rows) {
    if (rows.empty()) return DepthGrowth::Constant;
    auto signed_depth = [](const ScalingRow &r) { return static_cast<long long>(r.depth); };
    auto log2c = [](std::size_t n) { return n <= 1 ? 0LL : static_cast<long long>(std::bit_width(n - 1)); };
    if (std::all_of(rows.begin(), rows.end(), [&](const auto &r) { return r.depth == rows[0].depth; })) {
        return DepthGrowth::Constant;
    }
    const long long log_offset = signed_depth(rows[0]) - log2c(rows[0].n);
    if (std::all_of(rows.begin(), rows.end(),
                    [&](const auto &r) { return signed_depth(r) - log2c(r.n) == log_offset; })) {
        return DepthGrowth::Logarithmic;
    }
    if (rows.size() >= 2 && rows[1].n > rows[0].n) {
        const long long dn = static_cast<long long>(rows[1].n - rows[0].n);
        const long long dd = signed_depth(rows[1]) - signed_depth(rows[0]);
        if (dd > 0 && dd % dn == 0) {
            const long long slope = dd / dn;
            const long long offset = signed_depth(rows[0]) - slope * static_cast<long long>(rows[0].n);
            if (std::all_of(rows.begin(), rows.end(), [&](const auto &r) {
                    return signed_depth(r) - slope * static_cast<long long>(r.n) == offset;
                })) {
                return DepthGrowth::Linear;
            }
        }
    }
    return DepthGrowth::Other;
}

struct ScalingTable {
    std::vector<ScalingRow> rows;
    DepthGrowth growth = DepthGrowth::Other;
};

/// Structural depth/width/ancilla table over n in [n_min, n_max]. `build`
/// returns the circuit for one n; `ancillae_of` picks the ancilla figure to
/// report (defaults to the ancilla-role count).
inline ScalingTable depth_scaling_table(const std::function<Circuit(std::size_t)> &build, std::size_t n_min,
                                        std::size_t n_max,
                                        const std::function<std::size_t(std::size_t, const Circuit &)> &ancillae_of = {}) {
    if (n_min > n_max) throw CircuitError("depth_scaling_table: n_min > n_max");
    ScalingTable table;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        const Circuit c = build(n);
        table.rows.push_back({n, c.depth(), c.width(), ancillae_of ? ancillae_of(n, c) : c.ancilla_count()});
    }
    table.growth = classify_growth(table.rows);
    return table;
}

}  // namespace qdepth
