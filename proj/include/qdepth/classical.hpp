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
 * @file classical.hpp
 * Layered Boolean circuits and their reversible, ancilla-clean embedding.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qdepth/circuit.hpp"

namespace qdepth {

enum class BoolOp { And, Or, Not, Xor };

inline const char *to_string(BoolOp op) {
    switch (op) {
        case BoolOp::And:
            return "and";
        case BoolOp::Or:
            return "or";
        case BoolOp::Not:
            return "not";
        case BoolOp::Xor:
            return "xor";
    }
    return "?";
}

/// Wires are numbered inputs first (0..n-1), then gate outputs in layer
/// order.
struct BoolGate {
    BoolOp op;
    std::vector<std::size_t> inputs;
};

/**
 * Layered Boolean circuit with unbounded fan-in. Gates in layer L read
 * wires produced before layer L. The outputs are the gates of the last
 * layer, in order, so m = size of the last layer, d = number of layers and
 * w = size of the widest layer.
 */
class ClassicalCircuit {
   public:
    ClassicalCircuit(std::size_t num_inputs, std::vector<std::vector<BoolGate>> layers)
        : num_inputs_(num_inputs), layers_(std::move(layers)) {
        if (layers_.empty()) throw CircuitError("classical circuit needs at least one layer");
        std::size_t defined = num_inputs_;
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            if (layers_[l].empty()) throw CircuitError("classical layer " + std::to_string(l) + " is empty");
            for (const auto &g : layers_[l]) {
                if (g.inputs.empty()) {
                    throw CircuitError("classical gate in layer " + std::to_string(l) + " has no inputs");
                }
                if (g.op == BoolOp::Not && g.inputs.size() != 1) {
                    throw CircuitError("NOT gate in layer " + std::to_string(l) + " must have one input");
                }
                auto sorted = g.inputs;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    throw CircuitError("classical gate in layer " + std::to_string(l) + " reads a wire twice");
                }
                if (sorted.back() >= defined) {
                    throw CircuitError("classical gate in layer " + std::to_string(l) + " reads wire " +
                                       std::to_string(sorted.back()) + " before it is defined");
                }
            }
            defined += layers_[l].size();
        }
    }

    [[nodiscard]] std::size_t num_inputs() const { return num_inputs_; }
    [[nodiscard]] std::size_t num_outputs() const { return layers_.back().size(); }
    [[nodiscard]] std::size_t depth() const { return layers_.size(); }
    [[nodiscard]] std::size_t width() const {
        std::size_t w = 0;
        for (const auto &l : layers_) w = std::max(w, l.size());
        return w;
    }
    [[nodiscard]] const std::vector<std::vector<BoolGate>> &layers() const { return layers_; }

    /// Wire id of gate `index` in layer `layer`.
    [[nodiscard]] std::size_t wire_of(std::size_t layer, std::size_t index) const {
        std::size_t wire = num_inputs_;
        for (std::size_t l = 0; l < layer; ++l) wire += layers_[l].size();
        return wire + index;
    }

    /// Output bits for input x (bit i of x is input wire i); bit j of the
    /// result is output j.
    [[nodiscard]] std::uint64_t evaluate(std::uint64_t x) const {
        std::vector<bool> wires;
        for (std::size_t i = 0; i < num_inputs_; ++i) wires.push_back(((x >> i) & 1U) != 0);
        for (const auto &layer : layers_) {
            std::vector<bool> produced;
            for (const auto &g : layer) {
                std::size_t ones = 0;
                for (auto w : g.inputs) ones += wires[w] ? 1 : 0;
                bool v = false;
                switch (g.op) {
                    case BoolOp::And:
                        v = ones == g.inputs.size();
                        break;
                    case BoolOp::Or:
                        v = ones > 0;
                        break;
                    case BoolOp::Not:
                        v = ones == 0;
                        break;
                    case BoolOp::Xor:
                        v = (ones % 2) == 1;
                        break;
                }
                produced.push_back(v);
            }
            wires.insert(wires.end(), produced.begin(), produced.end());
        }
        std::uint64_t out = 0;
        const std::size_t first_out = wires.size() - num_outputs();
        for (std::size_t j = 0; j < num_outputs(); ++j) {
            if (wires[first_out + j]) out |= std::uint64_t{1} << j;
        }
        return out;
    }

   private:
    std::size_t num_inputs_;
    std::vector<std::vector<BoolGate>> layers_;
};

/// Random well-formed circuit: `depth` layers of 1..max_width gates, each
/// reading 1..max_fan_in distinct earlier wires.
template <class Rng>
ClassicalCircuit random_classical_circuit(Rng &rng, std::size_t num_inputs, std::size_t depth, std::size_t max_width,
                                          std::size_t max_fan_in) {
    std::vector<std::vector<BoolGate>> layers;
    std::size_t defined = num_inputs;
    for (std::size_t l = 0; l < depth; ++l) {
        const std::size_t gates = std::uniform_int_distribution<std::size_t>(1, max_width)(rng);
        std::vector<BoolGate> layer;
        for (std::size_t g = 0; g < gates; ++g) {
            const auto op = static_cast<BoolOp>(std::uniform_int_distribution<int>(0, 3)(rng));
            std::size_t fan_in = op == BoolOp::Not
                                     ? 1
                                     : std::uniform_int_distribution<std::size_t>(1, std::min(max_fan_in, defined))(rng);
            std::vector<std::size_t> pool(defined);
            for (std::size_t w = 0; w < defined; ++w) pool[w] = w;
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(fan_in);
            layer.push_back({op, std::move(pool)});
        }
        defined += layer.size();
        layers.push_back(std::move(layer));
    }
    return ClassicalCircuit(num_inputs, std::move(layers));
}

/**
 * Reversible embedding on n + m + w*d qubits with depth 2d - 1.
 *
 * Layout: inputs 0..n-1, outputs n..n+m-1, then one ancilla per gate slot
 * (layer l, slot s) at n + m + l*w + s. Layers 1..d-1 XOR each gate value
 * into its ancilla, layer d XORs the last layer into the output bits, and
 * layers d-1..1 are replayed to clear the ancillae. Slots of the last layer
 * are allocated but never touched.
 *
 * Gate forms, each a single self-inverse gate:
 *   AND -> Toffoli, OR -> MOD_{f+1} with f the fan-in (fires iff any input
 *   is 1), XOR -> MOD_2, NOT -> CNOT with a negated control.
 *
 * Gates in a layer may read the same wire, so the result uses WithFanout
 * layering.
 */
inline Circuit reversible_embed(const ClassicalCircuit &c) {
    const std::size_t n = c.num_inputs();
    const std::size_t m = c.num_outputs();
    const std::size_t d = c.depth();
    const std::size_t w = c.width();

    std::vector<QubitRole> roles(n, QubitRole::Input);
    roles.insert(roles.end(), m, QubitRole::Target);
    roles.insert(roles.end(), w * d, QubitRole::Ancilla);

    std::vector<QubitId> wire_qubit(n);
    for (std::size_t i = 0; i < n; ++i) wire_qubit[i] = i;
    for (std::size_t l = 0; l < d; ++l) {
        for (std::size_t s = 0; s < c.layers()[l].size(); ++s) {
            wire_qubit.push_back(l + 1 == d ? n + s : n + m + l * w + s);
        }
    }

    std::vector<Layer> forward;
    for (std::size_t l = 0; l < d; ++l) {
        Layer layer;
        for (std::size_t s = 0; s < c.layers()[l].size(); ++s) {
            const BoolGate &g = c.layers()[l][s];
            const QubitId out = wire_qubit[c.wire_of(l, s)];
            std::vector<QubitId> reads;
            for (auto wire : g.inputs) reads.push_back(wire_qubit[wire]);
            switch (g.op) {
                case BoolOp::And:
                    layer.gates.push_back(Gate::toffoli(reads, out));
                    break;
                case BoolOp::Or:
                    layer.gates.push_back(Gate::mod_q(reads, out, static_cast<unsigned>(reads.size() + 1)));
                    break;
                case BoolOp::Xor:
                    layer.gates.push_back(Gate::mod_q(reads, out, 2));
                    break;
                case BoolOp::Not:
                    layer.gates.push_back(Gate::cnot(reads[0], out, true));
                    break;
            }
        }
        forward.push_back(std::move(layer));
    }

    Circuit out(std::move(roles), Discipline::WithFanout);
    for (const auto &l : forward) out.add_layer(l);
    for (std::size_t l = d - 1; l-- > 0;) out.add_layer(forward[l]);
    return out;
}

}  // namespace qdepth
