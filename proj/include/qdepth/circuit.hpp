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
 * @file circuit.hpp
 * Gate set, layers, layering disciplines and layered circuits.
 *
 * A circuit is an ordered list of layers over a fixed register. Every
 * qubit carries a role (input, target or ancilla). Depth is the number of
 * layers; a layer is accepted only if its gates can be applied
 * simultaneously under the circuit's discipline:
 *
 *  - Strict: gates act on pairwise disjoint qubits, and the shared-control
 *    Fanout primitive is not available.
 *  - WithFanout: gates may share control qubits, but every target qubit of
 *    a gate is untouched by all other gates in the layer.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdepth/matrix.hpp"

namespace qdepth {

using QubitId = std::size_t;

/// Default cap on the number of target qubits of an explicit-matrix gate.
inline constexpr std::size_t kDefaultMaxBlockQubits = 4;

class CircuitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class QubitRole { Input, Target, Ancilla };

enum class Discipline { Strict, WithFanout };

enum class GateKind {
    SingleQubitUnitary,
    Toffoli,
    ControlledU,
    ModQ,
    Fanout,
    SymmetricPhase,
    Hadamard,
    PauliX,
    ControlledNot,
};

inline const char *to_string(QubitRole role) {
    switch (role) {
        case QubitRole::Input:
            return "input";
        case QubitRole::Target:
            return "target";
        case QubitRole::Ancilla:
            return "ancilla";
    }
    return "?";
}

inline const char *to_string(Discipline d) { return d == Discipline::Strict ? "strict" : "wf"; }

inline const char *to_string(GateKind kind) {
    switch (kind) {
        case GateKind::SingleQubitUnitary:
            return "u1";
        case GateKind::Toffoli:
            return "toffoli";
        case GateKind::ControlledU:
            return "cu";
        case GateKind::ModQ:
            return "modq";
        case GateKind::Fanout:
            return "fanout";
        case GateKind::SymmetricPhase:
            return "phase";
        case GateKind::Hadamard:
            return "h";
        case GateKind::PauliX:
            return "x";
        case GateKind::ControlledNot:
            return "cnot";
    }
    return "?";
}

inline std::optional<QubitRole> role_from_string(std::string_view s) {
    if (s == "input") return QubitRole::Input;
    if (s == "target") return QubitRole::Target;
    if (s == "ancilla") return QubitRole::Ancilla;
    return std::nullopt;
}

inline std::optional<Discipline> discipline_from_string(std::string_view s) {
    if (s == "strict") return Discipline::Strict;
    if (s == "wf") return Discipline::WithFanout;
    return std::nullopt;
}

inline std::optional<GateKind> gate_kind_from_string(std::string_view s) {
    for (auto kind : {GateKind::SingleQubitUnitary, GateKind::Toffoli, GateKind::ControlledU, GateKind::ModQ,
                      GateKind::Fanout, GateKind::SymmetricPhase, GateKind::Hadamard, GateKind::PauliX,
                      GateKind::ControlledNot}) {
        if (s == to_string(kind)) return kind;
    }
    return std::nullopt;
}

/**
 * One primitive circuit element.
 *
 * Semantics on a computational basis state, where a control "fires" when
 * its bit is 1 (or 0 if the control is negated):
 *  - Toffoli: flip the target if every control fires (no controls: X).
 *  - ControlledU: apply the 2^k matrix to the k-qubit target block if every
 *    control fires. targets[0] is the least significant bit of the block.
 *  - ModQ: flip the target iff the number of firing controls is not a
 *    multiple of q.
 *  - Fanout: flip every target if the single control fires.
 *  - SymmetricPhase: multiply by e^{i theta} if every control fires and the
 *    target is 1. The gate is symmetric in all of its qubits; the target is
 *    only a bookkeeping slot.
 *  - Hadamard, PauliX, SingleQubitUnitary: one-qubit gates on the target.
 *  - ControlledNot: Toffoli with exactly one control.
 *
 * Instances are built through the named factories, which enforce the
 * per-kind shape invariants. Gates are immutable values.
 */
class Gate {
   public:
    static Gate hadamard(QubitId target) { return Gate(GateKind::Hadamard, {}, {target}, {}); }

    static Gate x(QubitId target) { return Gate(GateKind::PauliX, {}, {target}, {}); }

    static Gate unitary1(QubitId target, Matrix u) {
        Gate g(GateKind::SingleQubitUnitary, {}, {target}, {});
        g.set_matrix(std::move(u));
        return g;
    }

    static Gate cnot(QubitId control, QubitId target, bool negated = false) {
        return Gate(GateKind::ControlledNot, {control}, {target}, negated ? std::vector<QubitId>{control}
                                                                          : std::vector<QubitId>{});
    }

    static Gate toffoli(std::vector<QubitId> controls, QubitId target, std::vector<QubitId> negated = {}) {
        return Gate(GateKind::Toffoli, std::move(controls), {target}, std::move(negated));
    }

    static Gate controlled_u(std::vector<QubitId> controls, std::vector<QubitId> targets, Matrix u,
                             std::vector<QubitId> negated = {}) {
        Gate g(GateKind::ControlledU, std::move(controls), std::move(targets), std::move(negated));
        g.set_matrix(std::move(u));
        return g;
    }

    static Gate mod_q(std::vector<QubitId> inputs, QubitId target, unsigned q, std::vector<QubitId> negated = {}) {
        if (q < 2) {
            throw CircuitError("ModQ gate requires q >= 2, got " + std::to_string(q));
        }
        Gate g(GateKind::ModQ, std::move(inputs), {target}, std::move(negated));
        g.modulus_ = q;
        return g;
    }

    static Gate fanout(QubitId control, std::vector<QubitId> targets, bool negated = false) {
        return Gate(GateKind::Fanout, {control}, std::move(targets),
                    negated ? std::vector<QubitId>{control} : std::vector<QubitId>{});
    }

    static Gate phase(std::vector<QubitId> controls, QubitId target, double theta,
                      std::vector<QubitId> negated = {}) {
        Gate g(GateKind::SymmetricPhase, std::move(controls), {target}, std::move(negated));
        g.theta_ = theta;
        return g;
    }

    [[nodiscard]] GateKind kind() const { return kind_; }
    [[nodiscard]] const std::vector<QubitId> &controls() const { return controls_; }
    [[nodiscard]] const std::vector<QubitId> &targets() const { return targets_; }
    [[nodiscard]] const std::vector<QubitId> &negated_controls() const { return negated_; }
    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] unsigned modulus() const { return modulus_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] bool has_matrix() const { return !matrix_.empty(); }

    [[nodiscard]] bool is_negated(QubitId q) const {
        return std::find(negated_.begin(), negated_.end(), q) != negated_.end();
    }

    /// Controls followed by targets.
    [[nodiscard]] std::vector<QubitId> support() const {
        std::vector<QubitId> s = controls_;
        s.insert(s.end(), targets_.begin(), targets_.end());
        return s;
    }

    [[nodiscard]] QubitId max_qubit() const {
        QubitId m = 0;
        for (auto q : controls_) m = std::max(m, q);
        for (auto q : targets_) m = std::max(m, q);
        return m;
    }

    /// The inverse gate. Permutation gates and H are self-inverse.
    [[nodiscard]] Gate adjoint() const {
        Gate g = *this;
        switch (kind_) {
            case GateKind::SingleQubitUnitary:
            case GateKind::ControlledU:
                g.matrix_ = matrix_.adjoint();
                break;
            case GateKind::SymmetricPhase:
                g.theta_ = -theta_;
                break;
            default:
                break;
        }
        return g;
    }

    /// Same gate with every qubit index q replaced by mapping[q].
    [[nodiscard]] Gate remapped(std::span<const QubitId> mapping) const {
        auto map_all = [&](const std::vector<QubitId> &qs) {
            std::vector<QubitId> out;
            out.reserve(qs.size());
            for (auto q : qs) {
                if (q >= mapping.size()) {
                    throw CircuitError("remap: qubit " + std::to_string(q) + " has no image");
                }
                out.push_back(mapping[q]);
            }
            return out;
        };
        Gate g = *this;
        g.controls_ = map_all(controls_);
        g.targets_ = map_all(targets_);
        g.negated_ = map_all(negated_);
        g.check_shape();
        return g;
    }

    /// Same gate with all negation metadata dropped.
    [[nodiscard]] Gate without_negations() const {
        Gate g = *this;
        g.negated_.clear();
        return g;
    }

    friend bool operator==(const Gate &, const Gate &) = default;

   private:
    Gate(GateKind kind, std::vector<QubitId> controls, std::vector<QubitId> targets, std::vector<QubitId> negated)
        : kind_(kind), controls_(std::move(controls)), targets_(std::move(targets)), negated_(std::move(negated)) {
        check_shape();
    }

    void set_matrix(Matrix u) {
        const std::size_t expected = std::size_t{1} << targets_.size();
        if (u.dim() != expected) {
            throw CircuitError(std::string(to_string(kind_)) + " gate on " + std::to_string(targets_.size()) +
                               " target(s) needs a " + std::to_string(expected) + "x" + std::to_string(expected) +
                               " matrix, got dimension " + std::to_string(u.dim()));
        }
        const double err = unitarity_error(u);
        if (err > 1e-12) {
            throw CircuitError("explicit gate matrix is not unitary (||U^dag U - I||_max = " + std::to_string(err) +
                               ")");
        }
        matrix_ = std::move(u);
    }

    void check_shape() const {
        auto has_duplicates = [](std::vector<QubitId> qs) {
            std::sort(qs.begin(), qs.end());
            return std::adjacent_find(qs.begin(), qs.end()) != qs.end();
        };
        const std::string name = to_string(kind_);
        if (targets_.empty()) {
            throw CircuitError(name + " gate needs at least one target");
        }
        if (has_duplicates(controls_) || has_duplicates(targets_)) {
            throw CircuitError(name + " gate lists a qubit twice");
        }
        for (auto c : controls_) {
            if (std::find(targets_.begin(), targets_.end(), c) != targets_.end()) {
                throw CircuitError(name + " gate: qubit " + std::to_string(c) + " is both control and target");
            }
        }
        for (auto n : negated_) {
            if (std::find(controls_.begin(), controls_.end(), n) == controls_.end()) {
                throw CircuitError(name + " gate: negated qubit " + std::to_string(n) + " is not a control");
            }
        }
        switch (kind_) {
            case GateKind::Hadamard:
            case GateKind::PauliX:
            case GateKind::SingleQubitUnitary:
                if (!controls_.empty() || targets_.size() != 1) {
                    throw CircuitError(name + " gate acts on exactly one qubit");
                }
                break;
            case GateKind::ControlledNot:
                if (controls_.size() != 1 || targets_.size() != 1) {
                    throw CircuitError("cnot gate needs one control and one target");
                }
                break;
            case GateKind::Toffoli:
            case GateKind::ModQ:
            case GateKind::SymmetricPhase:
                if (targets_.size() != 1) {
                    throw CircuitError(name + " gate needs exactly one target");
                }
                break;
            case GateKind::Fanout:
                if (controls_.size() != 1) {
                    throw CircuitError("fanout gate needs exactly one control");
                }
                break;
            case GateKind::ControlledU:
                break;
        }
    }

    GateKind kind_;
    std::vector<QubitId> controls_;
    std::vector<QubitId> targets_;
    std::vector<QubitId> negated_;
    double theta_ = 0.0;
    unsigned modulus_ = 0;
    Matrix matrix_;
};

struct Layer {
    std::vector<Gate> gates;

    [[nodiscard]] bool empty() const { return gates.empty(); }
    friend bool operator==(const Layer &, const Layer &) = default;
};

/// Outcome of validate_layer. On rejection, `conflict` holds the indices of
/// the first offending gate pair (or the same index twice for a single-gate
/// problem such as an out-of-range qubit).
struct LayerValidation {
    bool ok = true;
    std::string message;
    std::optional<std::pair<std::size_t, std::size_t>> conflict;

    explicit operator bool() const { return ok; }
};

inline LayerValidation validate_layer(const Layer &layer, Discipline discipline, std::size_t width,
                                      std::size_t max_block_qubits = kDefaultMaxBlockQubits) {
    auto reject = [](std::size_t i, std::size_t j, std::string msg) {
        return LayerValidation{false, std::move(msg), std::make_pair(i, j)};
    };
    const auto &gates = layer.gates;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate &g = gates[i];
        if (g.max_qubit() >= width) {
            return reject(i, i,
                          "gate " + std::to_string(i) + " (" + to_string(g.kind()) + ") references qubit " +
                              std::to_string(g.max_qubit()) + " outside a register of width " +
                              std::to_string(width));
        }
        if (g.kind() == GateKind::ControlledU && g.targets().size() > max_block_qubits) {
            return reject(i, i,
                          "gate " + std::to_string(i) + " acts on a " + std::to_string(g.targets().size()) +
                              "-qubit block; limit is " + std::to_string(max_block_qubits));
        }
        if (discipline == Discipline::Strict && g.kind() == GateKind::Fanout) {
            return reject(i, i, "gate " + std::to_string(i) + " is a fanout gate, which strict layering forbids");
        }
    }

    auto intersects = [](const std::vector<QubitId> &a, const std::vector<QubitId> &b) {
        for (auto q : a) {
            if (std::find(b.begin(), b.end(), q) != b.end()) return true;
        }
        return false;
    };

    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto support_i = gates[i].support();
        for (std::size_t j = i + 1; j < gates.size(); ++j) {
            const auto support_j = gates[j].support();
            if (discipline == Discipline::Strict) {
                if (intersects(support_i, support_j)) {
                    return reject(i, j,
                                  "gates " + std::to_string(i) + " and " + std::to_string(j) +
                                      " share a qubit under strict layering");
                }
            } else {
                if (intersects(gates[i].targets(), gates[j].targets())) {
                    return reject(i, j,
                                  "gates " + std::to_string(i) + " and " + std::to_string(j) + " share a target qubit");
                }
                if (intersects(gates[i].targets(), support_j) || intersects(gates[j].targets(), support_i)) {
                    return reject(i, j,
                                  "gates " + std::to_string(i) + " and " + std::to_string(j) +
                                      ": a target of one is a control of the other");
                }
            }
        }
    }
    return {};
}

/**
 * Ordered layers over a register whose qubit roles are fixed at
 * construction. Layers are validated as they are appended, so a Circuit
 * value always satisfies its discipline.
 */
class Circuit {
   public:
    Circuit() = default;

    Circuit(std::vector<QubitRole> roles, Discipline discipline,
            std::size_t max_block_qubits = kDefaultMaxBlockQubits)
        : roles_(std::move(roles)), discipline_(discipline), max_block_qubits_(max_block_qubits) {}

    /// Throws CircuitError if the layer does not validate.
    Circuit &add_layer(Layer layer) {
        auto result = validate_layer(layer, discipline_, width(), max_block_qubits_);
        if (!result) {
            throw CircuitError("layer " + std::to_string(layers_.size()) + ": " + result.message);
        }
        layers_.push_back(std::move(layer));
        return *this;
    }

    Circuit &add_layer(std::vector<Gate> gates) { return add_layer(Layer{std::move(gates)}); }

    /// Appends every layer of `inner`, with inner qubit q placed on mapping[q].
    Circuit &append_mapped(const Circuit &inner, std::span<const QubitId> mapping) {
        if (mapping.size() != inner.width()) {
            throw CircuitError("append_mapped: mapping covers " + std::to_string(mapping.size()) +
                               " qubits, inner circuit has " + std::to_string(inner.width()));
        }
        for (const auto &layer : inner.layers()) {
            Layer mapped;
            mapped.gates.reserve(layer.gates.size());
            for (const auto &g : layer.gates) {
                mapped.gates.push_back(g.remapped(mapping));
            }
            add_layer(std::move(mapped));
        }
        return *this;
    }

    [[nodiscard]] std::size_t width() const { return roles_.size(); }
    [[nodiscard]] std::size_t depth() const { return layers_.size(); }
    [[nodiscard]] Discipline discipline() const { return discipline_; }
    [[nodiscard]] std::size_t max_block_qubits() const { return max_block_qubits_; }
    [[nodiscard]] const std::vector<QubitRole> &roles() const { return roles_; }
    [[nodiscard]] const std::vector<Layer> &layers() const { return layers_; }

    [[nodiscard]] std::vector<QubitId> qubits_with_role(QubitRole role) const {
        std::vector<QubitId> out;
        for (QubitId q = 0; q < roles_.size(); ++q) {
            if (roles_[q] == role) out.push_back(q);
        }
        return out;
    }

    /// Inputs and targets in register order.
    [[nodiscard]] std::vector<QubitId> data_qubits() const {
        std::vector<QubitId> out;
        for (QubitId q = 0; q < roles_.size(); ++q) {
            if (roles_[q] != QubitRole::Ancilla) out.push_back(q);
        }
        return out;
    }

    [[nodiscard]] std::size_t ancilla_count() const { return qubits_with_role(QubitRole::Ancilla).size(); }

    [[nodiscard]] std::size_t gate_count() const {
        std::size_t n = 0;
        for (const auto &l : layers_) n += l.gates.size();
        return n;
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

   private:
    std::vector<QubitRole> roles_;
    Discipline discipline_ = Discipline::Strict;
    std::size_t max_block_qubits_ = kDefaultMaxBlockQubits;
    std::vector<Layer> layers_;
};

inline std::size_t depth(const Circuit &c) { return c.depth(); }
inline std::size_t width(const Circuit &c) { return c.width(); }
inline std::size_t ancilla_count(const Circuit &c) { return c.ancilla_count(); }

/// The looser of two disciplines; every strict layer is also a valid
/// with-fanout layer.
inline Discipline join(Discipline a, Discipline b) {
    return (a == Discipline::WithFanout || b == Discipline::WithFanout) ? Discipline::WithFanout : Discipline::Strict;
}

/// `a` followed by `b`. Registers must agree in width and roles.
inline Circuit compose(const Circuit &a, const Circuit &b) {
    if (a.width() != b.width()) {
        throw CircuitError("compose: width mismatch (" + std::to_string(a.width()) + " vs " +
                           std::to_string(b.width()) + ")");
    }
    if (a.roles() != b.roles()) {
        throw CircuitError("compose: qubit roles differ");
    }
    Circuit out(a.roles(), join(a.discipline(), b.discipline()),
                std::max(a.max_block_qubits(), b.max_block_qubits()));
    for (const auto &l : a.layers()) out.add_layer(l);
    for (const auto &l : b.layers()) out.add_layer(l);
    return out;
}

inline Circuit inverse(const Circuit &c) {
    Circuit out(c.roles(), c.discipline(), c.max_block_qubits());
    for (auto it = c.layers().rbegin(); it != c.layers().rend(); ++it) {
        Layer adj;
        adj.gates.reserve(it->gates.size());
        for (const auto &g : it->gates) {
            adj.gates.push_back(g.adjoint());
        }
        out.add_layer(std::move(adj));
    }
    return out;
}

/**
 * Expands negated controls into explicit X conjugation: each layer that
 * carries negations becomes X-layer, bare gates, X-layer. Gates that read a
 * shared control with opposite polarity cannot share the conjugation, so
 * such a layer is split into groups with consistent polarity.
 */
inline Circuit lower_negations(const Circuit &c) {
    Circuit out(c.roles(), c.discipline(), c.max_block_qubits());
    for (const auto &layer : c.layers()) {
        bool any = std::any_of(layer.gates.begin(), layer.gates.end(),
                               [](const Gate &g) { return !g.negated_controls().empty(); });
        if (!any) {
            out.add_layer(layer);
            continue;
        }
        // Greedy grouping: a gate joins the first group where every shared
        // control has the same polarity.
        struct Group {
            std::vector<Gate> gates;
            std::vector<std::pair<QubitId, bool>> polarity;
        };
        std::vector<Group> groups;
        for (const auto &g : layer.gates) {
            auto compatible = [&](const Group &grp) {
                for (auto q : g.controls()) {
                    for (const auto &[pq, neg] : grp.polarity) {
                        if (pq == q && neg != g.is_negated(q)) return false;
                    }
                }
                return true;
            };
            auto it = std::find_if(groups.begin(), groups.end(), compatible);
            if (it == groups.end()) {
                groups.emplace_back();
                it = std::prev(groups.end());
            }
            it->gates.push_back(g);
            for (auto q : g.controls()) {
                it->polarity.emplace_back(q, g.is_negated(q));
            }
        }
        for (const auto &grp : groups) {
            std::vector<QubitId> flipped;
            for (const auto &[q, neg] : grp.polarity) {
                if (neg && std::find(flipped.begin(), flipped.end(), q) == flipped.end()) flipped.push_back(q);
            }
            std::sort(flipped.begin(), flipped.end());
            Layer xs;
            for (auto q : flipped) xs.gates.push_back(Gate::x(q));
            Layer bare;
            for (const auto &g : grp.gates) bare.gates.push_back(g.without_negations());
            if (!xs.empty()) out.add_layer(xs);
            out.add_layer(std::move(bare));
            if (!xs.empty()) out.add_layer(std::move(xs));
        }
    }
    return out;
}

}  // namespace qdepth
