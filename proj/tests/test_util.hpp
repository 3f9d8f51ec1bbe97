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


// Reference implementations for the tests. Nothing here calls the
// simulator, the gate oracle in verify.hpp or ClassicalCircuit::evaluate:
// gate matrices are written out column by column from the gate
// definitions, and classical circuits are evaluated wire by wire.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "qdepth/qdepth.hpp"

namespace qdepth::testing {

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.dim() * b.dim());
    for (std::size_t r1 = 0; r1 < a.dim(); ++r1)
        for (std::size_t c1 = 0; c1 < a.dim(); ++c1)
            for (std::size_t r2 = 0; r2 < b.dim(); ++r2)
                for (std::size_t c2 = 0; c2 < b.dim(); ++c2)
                    out(r1 * b.dim() + r2, c1 * b.dim() + c2) = a(r1, c1) * b(r2, c2);
    return out;
}

/// U acting on qubit q of an n-qubit register (qubit 0 = least significant),
/// built as I (x) ... (x) U (x) ... (x) I.
inline Matrix on_qubit(std::size_t n, std::size_t q, const Matrix &u) {
    Matrix out = Matrix::identity(1);
    for (std::size_t k = n; k-- > 0;) out = kron(out, k == q ? u : Matrix::identity(2));
    return out;
}

inline bool bit_of(std::uint64_t x, std::size_t q) { return ((x >> q) & 1U) != 0; }

/// Number of controls of g that fire on basis state x.
inline std::size_t fired(const Gate &g, std::uint64_t x) {
    std::size_t count = 0;
    for (auto c : g.controls()) {
        const bool neg = g.is_negated(c);
        if (bit_of(x, c) != neg) ++count;
    }
    return count;
}

/// Full 2^width matrix of a single gate, written from its definition.
inline Matrix dense_gate(const Gate &g, std::size_t width) {
    const std::size_t dim = std::size_t{1} << width;
    Matrix m(dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        const std::size_t f = fired(g, col);
        const bool fire = f == g.controls().size();
        switch (g.kind()) {
            case GateKind::PauliX:
            case GateKind::ControlledNot:
            case GateKind::Toffoli: {
                const auto t = g.targets()[0];
                m(fire ? col ^ (std::uint64_t{1} << t) : col, col) = 1.0;
                break;
            }
            case GateKind::Fanout: {
                std::uint64_t row = col;
                if (fire)
                    for (auto t : g.targets()) row ^= std::uint64_t{1} << t;
                m(row, col) = 1.0;
                break;
            }
            case GateKind::ModQ: {
                const auto t = g.targets()[0];
                m(f % g.modulus() != 0 ? col ^ (std::uint64_t{1} << t) : col, col) = 1.0;
                break;
            }
            case GateKind::SymmetricPhase: {
                const bool on = fire && bit_of(col, g.targets()[0]);
                m(col, col) = on ? std::polar(1.0, g.theta()) : complex_t{1.0};
                break;
            }
            case GateKind::Hadamard:
            case GateKind::SingleQubitUnitary:
            case GateKind::ControlledU: {
                const Matrix u = g.kind() == GateKind::Hadamard ? gates::hadamard() : g.matrix();
                const auto &ts = g.targets();
                if (!fire) {
                    m(col, col) = 1.0;
                    break;
                }
                std::uint64_t in = 0;
                std::uint64_t rest = col;
                for (std::size_t j = 0; j < ts.size(); ++j) {
                    if (bit_of(col, ts[j])) in |= std::uint64_t{1} << j;
                    rest &= ~(std::uint64_t{1} << ts[j]);
                }
                for (std::uint64_t out = 0; out < u.dim(); ++out) {
                    std::uint64_t row = rest;
                    for (std::size_t j = 0; j < ts.size(); ++j)
                        if (bit_of(out, j)) row |= std::uint64_t{1} << ts[j];
                    m(row, col) = u(out, in);
                }
                break;
            }
        }
    }
    return m;
}

/// Product of dense_gate over every gate, last layer leftmost.
inline Matrix dense_circuit(const Circuit &c) {
    Matrix u = Matrix::identity(std::size_t{1} << c.width());
    for (const auto &layer : c.layers())
        for (const auto &g : layer.gates) u = dense_gate(g, c.width()) * u;
    return u;
}

inline std::vector<complex_t> matvec(const Matrix &m, const std::vector<complex_t> &v) {
    std::vector<complex_t> out(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

inline std::vector<complex_t> random_state(std::mt19937_64 &rng, std::size_t width) {
    std::normal_distribution<double> gauss;
    std::vector<complex_t> v(std::size_t{1} << width);
    double norm = 0.0;
    for (auto &a : v) {
        a = {gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    for (auto &a : v) a /= std::sqrt(norm);
    return v;
}

inline double max_diff(const std::vector<complex_t> &a, std::span<const complex_t> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

/// a|0...0> + b|1...1> on n qubits.
inline std::vector<complex_t> cat_state(std::size_t n, complex_t a, complex_t b) {
    std::vector<complex_t> v(std::size_t{1} << n);
    v[0] = a;
    v[v.size() - 1] += b;
    return v;
}

/// Output bits of a classical circuit, evaluated recursively from the
/// wire numbering (inputs first, then gates layer by layer).
inline std::uint64_t classical_eval(const ClassicalCircuit &c, std::uint64_t x) {
    std::vector<const BoolGate *> gate_of_wire(c.num_inputs(), nullptr);
    for (const auto &layer : c.layers())
        for (const auto &g : layer) gate_of_wire.push_back(&g);
    std::function<bool(std::size_t)> value = [&](std::size_t w) -> bool {
        if (w < c.num_inputs()) return bit_of(x, w);
        const BoolGate &g = *gate_of_wire[w];
        std::vector<bool> in;
        for (auto i : g.inputs) in.push_back(value(i));
        switch (g.op) {
            case BoolOp::And:
                return std::find(in.begin(), in.end(), false) == in.end();
            case BoolOp::Or:
                return std::find(in.begin(), in.end(), true) != in.end();
            case BoolOp::Not:
                return !in[0];
            case BoolOp::Xor: {
                bool acc = false;
                for (bool b : in) acc = acc != b;
                return acc;
            }
        }
        return false;
    };
    std::uint64_t out = 0;
    const std::size_t first = gate_of_wire.size() - c.num_outputs();
    for (std::size_t j = 0; j < c.num_outputs(); ++j)
        if (value(first + j)) out |= std::uint64_t{1} << j;
    return out;
}

/// The 16x16 MOD_2 gate on three inputs and a target as displayed in block
/// form: basis index 2x + t with t the target bit, and an X block exactly
/// when x has odd weight.
inline Matrix displayed_mod2_matrix() {
    const int blocks[8] = {0, 1, 1, 0, 1, 0, 0, 1};  // 0 = identity block, 1 = X
    Matrix m(16);
    for (std::size_t x = 0; x < 8; ++x) {
        if (blocks[x]) {
            m(2 * x, 2 * x + 1) = 1.0;
            m(2 * x + 1, 2 * x) = 1.0;
        } else {
            m(2 * x, 2 * x) = 1.0;
            m(2 * x + 1, 2 * x + 1) = 1.0;
        }
    }
    return m;
}

/// Reorders the displayed MOD_2 matrix into the register layout used by
/// the parity circuits: inputs on qubits 0..2 (input j = bit j of x) and
/// the target on qubit 3.
inline Matrix displayed_mod2_in_register_order() {
    const Matrix p = displayed_mod2_matrix();
    Matrix out(16);
    auto idx = [](std::uint64_t reg) { return 2 * (reg & 7U) + (reg >> 3); };
    for (std::uint64_t r = 0; r < 16; ++r)
        for (std::uint64_t c = 0; c < 16; ++c) out(r, c) = p(idx(r), idx(c));
    return out;
}

}  // namespace qdepth::testing
