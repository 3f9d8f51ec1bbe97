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
 * @file synthesis.hpp
 * Constant-depth constructions for cat states, fanout, parity, n-ary
 * controlled-U and MOD_q gates.
 *
 * Register layouts are fixed so that the data qubits always come first:
 *
 *   cat_log_depth(n)            0 = source, 1..n-1 = copies (ancilla role)
 *   fanout_gate(n)              0 = control, 1..n = targets
 *   parity_*(n)                 0..n-1 = inputs, n = target
 *   parity_via_catstate(n, b)   ... then n+1..2n-1 = copies of the target
 *   fanout_from_parity(n)       0 = control, 1..n = targets
 *   controlled_u_*(n, u)        0..n-1 = controls, n = target, n+1 = ancilla
 *   modq_*(n, q)                0..n-1 = inputs, n = target,
 *                               n+1..n+k = work block,
 *                               then n blocks of k copies (const depth only)
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qdepth/circuit.hpp"
#include "qdepth/matrix.hpp"

namespace qdepth {

/// Ceiling of log2(n) for n >= 1.
inline std::size_t ceil_log2(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1)); }

namespace detail {

inline std::vector<QubitRole> layout(std::initializer_list<std::pair<std::size_t, QubitRole>> spans) {
    std::vector<QubitRole> roles;
    for (const auto &[count, role] : spans) roles.insert(roles.end(), count, role);
    return roles;
}

inline std::vector<QubitId> range(QubitId first, std::size_t count) {
    std::vector<QubitId> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
    return out;
}

inline Layer hadamards(std::span<const QubitId> qubits) {
    Layer l;
    for (auto q : qubits) l.gates.push_back(Gate::hadamard(q));
    return l;
}

/// Layer-wise union of independent sub-circuits acting on disjoint qubits.
inline std::vector<Layer> zip_layers(const std::vector<std::vector<Layer>> &parts) {
    std::vector<Layer> out;
    for (const auto &part : parts) {
        if (out.size() < part.size()) out.resize(part.size());
        for (std::size_t i = 0; i < part.size(); ++i) {
            out[i].gates.insert(out[i].gates.end(), part[i].gates.begin(), part[i].gates.end());
        }
    }
    return out;
}

/// CNOT doubling rounds over `qubits`: in round r each of the first 2^r
/// qubits copies itself onto the qubit 2^r positions later.
inline std::vector<Layer> doubling_rounds(std::span<const QubitId> qubits) {
    std::vector<Layer> rounds;
    for (std::size_t written = 1; written < qubits.size(); written *= 2) {
        Layer l;
        for (std::size_t i = 0; i < written && i + written < qubits.size(); ++i) {
            l.gates.push_back(Gate::cnot(qubits[i], qubits[i + written]));
        }
        rounds.push_back(std::move(l));
    }
    return rounds;
}

inline std::vector<Layer> reversed(std::vector<Layer> layers) {
    std::reverse(layers.begin(), layers.end());
    for (auto &l : layers) {
        for (auto &g : l.gates) g = g.adjoint();
    }
    return layers;
}

inline void require_positive(std::size_t n, const char *what) {
    if (n == 0) throw CircuitError(std::string(what) + ": n must be at least 1");
}

}  // namespace detail

/// Log-depth cat-state circuit: ceil(log2 n) layers of CNOTs, each round
/// doubling the number of written qubits.
inline Circuit cat_log_depth(std::size_t n) {
    detail::require_positive(n, "cat_log_depth");
    Circuit c(detail::layout({{1, QubitRole::Input}, {n - 1, QubitRole::Ancilla}}), Discipline::Strict);
    const auto qubits = detail::range(0, n);
    for (auto &l : detail::doubling_rounds(qubits)) c.add_layer(std::move(l));
    return c;
}

/// One Fanout gate copying qubit 0 onto n targets.
inline Circuit fanout_gate(std::size_t n) {
    detail::require_positive(n, "fanout_gate");
    Circuit c(detail::layout({{1, QubitRole::Input}, {n, QubitRole::Target}}), Discipline::WithFanout);
    c.add_layer({Gate::fanout(0, detail::range(1, n))});
    return c;
}

/// Cat state on n qubits with a single fanout layer (empty for n = 1).
inline Circuit cat_via_fanout(std::size_t n) {
    detail::require_positive(n, "cat_via_fanout");
    Circuit c(detail::layout({{1, QubitRole::Input}, {n - 1, QubitRole::Ancilla}}), Discipline::WithFanout);
    if (n > 1) c.add_layer({Gate::fanout(0, detail::range(1, n - 1))});
    return c;
}

/// MOD_2 gate as a fanout from the target onto the inputs, conjugated by
/// Hadamards on every qubit. Depth 3, no ancillae.
inline Circuit parity_from_fanout(std::size_t n) {
    detail::require_positive(n, "parity_from_fanout");
    Circuit c(detail::layout({{n, QubitRole::Input}, {1, QubitRole::Target}}), Discipline::WithFanout);
    const auto all = detail::range(0, n + 1);
    c.add_layer(detail::hadamards(all));
    c.add_layer({Gate::fanout(n, detail::range(0, n))});
    c.add_layer(detail::hadamards(all));
    return c;
}

/// Fanout from qubit 0 onto 1..n as a MOD_2 gate pointing the other way,
/// conjugated by Hadamards. Depth 3, no ancillae.
inline Circuit fanout_from_parity(std::size_t n) {
    detail::require_positive(n, "fanout_from_parity");
    Circuit c(detail::layout({{1, QubitRole::Input}, {n, QubitRole::Target}}), Discipline::Strict);
    const auto all = detail::range(0, n + 1);
    c.add_layer(detail::hadamards(all));
    c.add_layer({Gate::mod_q(detail::range(1, n), 0, 2)});
    c.add_layer(detail::hadamards(all));
    return c;
}

/// Produces an n-qubit circuit that maps a|0>+b|1> on qubit 0 (rest |0>)
/// to a|0..0> + b|1..1>.
using CatBuilder = std::function<Circuit(std::size_t)>;

enum class CatBuilderKind { Fanout, LogDepth };

inline CatBuilder cat_builder(CatBuilderKind kind) {
    if (kind == CatBuilderKind::Fanout) return [](std::size_t n) { return cat_via_fanout(n); };
    return [](std::size_t n) { return cat_log_depth(n); };
}

/**
 * MOD_2 gate as a product of controlled pi-shifts between each input and a
 * copy of the Hadamard-conjugated target. The copies are made by `builder`
 * and removed by its inverse, so depth is 2 * depth(builder) + 3 and the
 * n - 1 copy ancillae end in |0>.
 */
inline Circuit parity_via_catstate(std::size_t n, const CatBuilder &builder) {
    detail::require_positive(n, "parity_via_catstate");
    const Circuit cat = builder(n);
    if (cat.width() != n) {
        throw CircuitError("parity_via_catstate: cat builder returned width " + std::to_string(cat.width()) +
                           ", expected " + std::to_string(n));
    }
    const QubitId target = n;
    std::vector<QubitId> copies{target};
    for (std::size_t i = 1; i < n; ++i) copies.push_back(n + i);

    Circuit c(detail::layout({{n, QubitRole::Input}, {1, QubitRole::Target}, {n - 1, QubitRole::Ancilla}}),
              join(Discipline::Strict, cat.discipline()), cat.max_block_qubits());
    c.add_layer({Gate::hadamard(target)});
    c.append_mapped(cat, copies);
    Layer shifts;
    for (std::size_t i = 0; i < n; ++i) {
        shifts.gates.push_back(Gate::phase({i}, copies[i], std::numbers::pi));
    }
    c.add_layer(std::move(shifts));
    c.append_mapped(inverse(cat), copies);
    c.add_layer({Gate::hadamard(target)});
    return c;
}

inline Circuit parity_via_catstate(std::size_t n, CatBuilderKind kind) {
    return parity_via_catstate(n, cat_builder(kind));
}

/**
 * n-ary controlled-U in depth 3 with one ancilla: a Toffoli computes the
 * AND of the controls into the ancilla, a two-qubit controlled-U acts from
 * the ancilla, and a second Toffoli clears the ancilla.
 *
 * Qubits not named in `controls`, `target` or `ancilla` get the input role.
 */
inline Circuit controlled_u_constant_depth(const std::vector<QubitId> &controls, const Matrix &u, QubitId target,
                                           QubitId ancilla, std::size_t width) {
    if (controls.empty()) throw CircuitError("controlled_u_constant_depth: needs at least one control");
    if (u.dim() != 2) throw CircuitError("controlled_u_constant_depth: u must be 2x2");
    if (ancilla == target || std::find(controls.begin(), controls.end(), ancilla) != controls.end()) {
        throw CircuitError("controlled_u_constant_depth: ancilla overlaps the controls or target");
    }
    std::vector<QubitRole> roles(width, QubitRole::Input);
    if (target >= width || ancilla >= width) {
        throw CircuitError("controlled_u_constant_depth: qubit outside a register of width " + std::to_string(width));
    }
    roles[target] = QubitRole::Target;
    roles[ancilla] = QubitRole::Ancilla;
    Circuit c(std::move(roles), Discipline::Strict);
    c.add_layer({Gate::toffoli(controls, ancilla)});
    c.add_layer({Gate::controlled_u({ancilla}, {target}, u)});
    c.add_layer({Gate::toffoli(controls, ancilla)});
    return c;
}

inline Circuit controlled_u_constant_depth(std::size_t n, const Matrix &u) {
    detail::require_positive(n, "controlled_u_constant_depth");
    return controlled_u_constant_depth(detail::range(0, n), u, n, n + 1, n + 2);
}

/**
 * Counting permutation on k = ceil(log2 q) qubits and its diagonalization.
 *
 * M sends |x> to |x+1 mod q> for x < q and fixes x >= q, so M^q = 1.
 * T maps the Fourier eigenvectors of the q-cycle onto basis states:
 * T[j][x] = w^{jx} / sqrt(q) with w = e^{2 pi i / q}, identity on the fixed
 * states. D = diag(w^0, ..., w^{q-1}, 1, ..., 1) and T^dagger D T = M.
 */
struct ModQPlan {
    unsigned q = 0;
    std::size_t k = 0;
    Matrix M;
    Matrix T;
    Matrix D;
};

inline ModQPlan modq_plan(unsigned q) {
    if (q < 2) throw CircuitError("modq_plan: q must be at least 2, got " + std::to_string(q));
    ModQPlan plan;
    plan.q = q;
    plan.k = ceil_log2(q);
    const std::size_t dim = std::size_t{1} << plan.k;
    plan.M = Matrix(dim);
    plan.T = Matrix(dim);
    std::vector<complex_t> diag(dim, 1.0);
    const double inv_sqrt_q = 1.0 / std::sqrt(static_cast<double>(q));
    auto root = [q](std::size_t power) {
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(power % q) / q);
    };
    for (std::size_t x = 0; x < dim; ++x) {
        if (x < q) {
            plan.M((x + 1) % q, x) = 1.0;
            diag[x] = root(x);
            for (std::size_t j = 0; j < q; ++j) plan.T(j, x) = root(j * x) * inv_sqrt_q;
        } else {
            plan.M(x, x) = 1.0;
            plan.T(x, x) = 1.0;
        }
    }
    plan.D = Matrix::diagonal(diag);
    return plan;
}

namespace detail {

struct ModQLayout {
    std::size_t n;
    std::size_t k;
    QubitId target;
    std::vector<QubitId> work;
    std::vector<std::vector<QubitId>> copies;  // copies[i][j]: input i, work bit j
};

inline ModQLayout modq_layout(std::size_t n, std::size_t k, bool with_copies) {
    ModQLayout lay{n, k, n, range(n + 1, k), {}};
    if (with_copies) {
        for (std::size_t i = 0; i < n; ++i) lay.copies.push_back(range(n + 1 + k + i * k, k));
    }
    return lay;
}

/// OR of the work block onto the target: X on the target, then a Toffoli
/// whose controls are all negated.
inline std::vector<Layer> or_detect(const ModQLayout &lay) {
    return {Layer{{Gate::x(lay.target)}}, Layer{{Gate::toffoli(lay.work, lay.target, lay.work)}}};
}

/// Copies each work qubit onto its n copy slots.
inline std::vector<Layer> fan_work(const ModQLayout &lay, Discipline discipline) {
    if (discipline == Discipline::WithFanout) {
        Layer l;
        for (std::size_t j = 0; j < lay.k; ++j) {
            std::vector<QubitId> dst;
            for (std::size_t i = 0; i < lay.n; ++i) dst.push_back(lay.copies[i][j]);
            l.gates.push_back(Gate::fanout(lay.work[j], std::move(dst)));
        }
        return {l};
    }
    // Strict: seed copy 0 of every bit, then double across the copies.
    Layer seed;
    std::vector<std::vector<Layer>> per_bit;
    for (std::size_t j = 0; j < lay.k; ++j) {
        seed.gates.push_back(Gate::cnot(lay.work[j], lay.copies[0][j]));
        std::vector<QubitId> column;
        for (std::size_t i = 0; i < lay.n; ++i) column.push_back(lay.copies[i][j]);
        per_bit.push_back(doubling_rounds(column));
    }
    std::vector<Layer> out{seed};
    for (auto &l : zip_layers(per_bit)) out.push_back(std::move(l));
    return out;
}

}  // namespace detail

/**
 * Reference MOD_q construction: n controlled-M gates accumulate the count
 * mod q in the work block, an OR flags a nonzero count onto the target,
 * and n controlled-M^dagger gates clear the work block. Depth 2n + 2.
 */
inline Circuit modq_sequential(std::size_t n, unsigned q) {
    detail::require_positive(n, "modq_sequential");
    const auto plan = modq_plan(q);
    const auto lay = detail::modq_layout(n, plan.k, false);
    Circuit c(detail::layout({{n, QubitRole::Input}, {1, QubitRole::Target}, {plan.k, QubitRole::Ancilla}}),
              Discipline::Strict);
    for (std::size_t i = 0; i < n; ++i) c.add_layer({Gate::controlled_u({i}, lay.work, plan.M)});
    for (auto &l : detail::or_detect(lay)) c.add_layer(std::move(l));
    const Matrix m_dag = plan.M.adjoint();
    for (std::size_t i = n; i-- > 0;) c.add_layer({Gate::controlled_u({i}, lay.work, m_dag)});
    return c;
}

/**
 * MOD_q in depth independent of n.
 *
 * Compute phase: T on the work block, fan each work qubit out to n copies,
 * controlled-D from input i onto copy block i (all n in one layer), undo
 * the fanout, T^dagger. The work block now holds |count mod q>. An OR
 * flags a nonzero value onto the target and the compute phase is inverted.
 *
 * Under WithFanout each fanout phase is a single layer. Under Strict it is
 * a seeding CNOT layer plus ceil(log2 n) doubling rounds, so the circuit
 * gains 4 * ceil(log2 n) layers.
 */
inline Circuit modq_constant_depth(std::size_t n, unsigned q, Discipline discipline = Discipline::WithFanout) {
    detail::require_positive(n, "modq_constant_depth");
    const auto plan = modq_plan(q);
    const std::size_t k = plan.k;
    const auto lay = detail::modq_layout(n, k, true);

    std::vector<Layer> compute;
    compute.push_back(Layer{{Gate::controlled_u({}, lay.work, plan.T)}});
    const auto fan = detail::fan_work(lay, discipline);
    compute.insert(compute.end(), fan.begin(), fan.end());
    Layer phases;
    for (std::size_t i = 0; i < n; ++i) phases.gates.push_back(Gate::controlled_u({i}, lay.copies[i], plan.D));
    compute.push_back(std::move(phases));
    const auto unfan = detail::reversed(fan);
    compute.insert(compute.end(), unfan.begin(), unfan.end());
    compute.push_back(Layer{{Gate::controlled_u({}, lay.work, plan.T.adjoint())}});

    Circuit c(detail::layout({{n, QubitRole::Input},
                              {1, QubitRole::Target},
                              {k, QubitRole::Ancilla},
                              {n * k, QubitRole::Ancilla}}),
              discipline);
    for (const auto &l : compute) c.add_layer(l);
    for (auto &l : detail::or_detect(lay)) c.add_layer(std::move(l));
    for (auto &l : detail::reversed(compute)) c.add_layer(std::move(l));
    return c;
}

/// Number of copy ancillae modq_constant_depth uses: n * ceil(log2 q).
inline std::size_t modq_copy_ancillae(std::size_t n, unsigned q) { return n * ceil_log2(q); }

}  // namespace qdepth
