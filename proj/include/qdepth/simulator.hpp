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
 * @file simulator.hpp
 * Dense state-vector simulation of layered circuits.
 *
 * Basis ordering is little-endian: qubit 0 is the least significant bit of
 * the basis index.
 */

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdepth/circuit.hpp"
#include "qdepth/matrix.hpp"

namespace qdepth {

/// Widest register unitary_of will expand by default.
inline constexpr std::size_t kDefaultUnitaryCap = 12;

class SimulationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class StateVector {
   public:
    StateVector() = default;

    /// |0...0> on `width` qubits.
    explicit StateVector(std::size_t width) : width_(width), amps_(std::size_t{1} << width) { amps_[0] = 1.0; }

    static StateVector basis(std::size_t width, std::uint64_t index) {
        StateVector s(width);
        if (index >= s.size()) {
            throw SimulationError("basis index " + std::to_string(index) + " out of range for width " +
                                  std::to_string(width));
        }
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    /// Takes the amplitudes as given; no normalization is applied.
    static StateVector from_amplitudes(std::vector<complex_t> amps) {
        if (!is_power_of_two(amps.size())) {
            throw SimulationError("amplitude count " + std::to_string(amps.size()) + " is not a power of two");
        }
        StateVector s;
        s.width_ = static_cast<std::size_t>(std::countr_zero(amps.size()));
        s.amps_ = std::move(amps);
        return s;
    }

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }

    complex_t &operator[](std::uint64_t i) { return amps_[i]; }
    const complex_t &operator[](std::uint64_t i) const { return amps_[i]; }

    [[nodiscard]] std::span<complex_t> amplitudes() { return amps_; }
    [[nodiscard]] std::span<const complex_t> amplitudes() const { return amps_; }

    [[nodiscard]] double norm() const {
        double sum = 0.0;
        for (const auto &a : amps_) sum += std::norm(a);
        return std::sqrt(sum);
    }

   private:
    std::size_t width_ = 0;
    std::vector<complex_t> amps_;
};

/// ||a - b||_2 over amplitudes.
inline double l2_distance(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw SimulationError("l2_distance: width mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
    return std::sqrt(sum);
}

namespace detail {

inline std::uint64_t mask_of(const std::vector<QubitId> &qs) {
    std::uint64_t m = 0;
    for (auto q : qs) m |= std::uint64_t{1} << q;
    return m;
}

/// Calls f(i) for every index i < dim whose bits under `fixed_mask` equal
/// `fixed_value`, in increasing order.
template <class F>
void for_each_index(std::uint64_t dim, std::uint64_t fixed_mask, std::uint64_t fixed_value, F &&f) {
    const std::uint64_t free = (dim - 1) & ~fixed_mask;
    std::uint64_t s = 0;
    do {
        f(s | fixed_value);
        s = (s - free) & free;
    } while (s != 0);
}

/// offsets[x] places the bits of block index x onto the target positions.
inline std::vector<std::uint64_t> block_offsets(const std::vector<QubitId> &targets) {
    std::vector<std::uint64_t> offsets(std::size_t{1} << targets.size(), 0);
    for (std::size_t x = 0; x < offsets.size(); ++x) {
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if ((x >> j) & 1U) offsets[x] |= std::uint64_t{1} << targets[j];
        }
    }
    return offsets;
}

/// Explicit-matrix gate: visits each base index with firing controls and
/// zero target bits, and multiplies the 2^k amplitudes of its block.
inline void apply_block(std::span<complex_t> amps, const Gate &gate, std::uint64_t ctrl_mask,
                        std::uint64_t ctrl_value) {
    const Matrix &u = gate.matrix();
    const auto offsets = block_offsets(gate.targets());
    const std::uint64_t target_mask = mask_of(gate.targets());
    const std::size_t dim = offsets.size();

    if (u.is_diagonal()) {
        std::vector<complex_t> diag(dim);
        for (std::size_t x = 0; x < dim; ++x) diag[x] = u(x, x);
        for_each_index(amps.size(), ctrl_mask | target_mask, ctrl_value, [&](std::uint64_t base) {
            for (std::size_t x = 0; x < dim; ++x) amps[base | offsets[x]] *= diag[x];
        });
        return;
    }

    std::vector<complex_t> in(dim);
    for_each_index(amps.size(), ctrl_mask | target_mask, ctrl_value, [&](std::uint64_t base) {
        for (std::size_t x = 0; x < dim; ++x) in[x] = amps[base | offsets[x]];
        for (std::size_t r = 0; r < dim; ++r) {
            complex_t acc = 0.0;
            for (std::size_t c = 0; c < dim; ++c) acc += u(r, c) * in[c];
            amps[base | offsets[r]] = acc;
        }
    });
}

}  // namespace detail

/// Applies `gate` in place. Throws SimulationError if the gate reaches
/// outside the register.
inline void apply_gate(StateVector &state, const Gate &gate) {
    if (gate.max_qubit() >= state.width()) {
        throw SimulationError(std::string(to_string(gate.kind())) + " gate references qubit " +
                              std::to_string(gate.max_qubit()) + " on a " + std::to_string(state.width()) +
                              "-qubit state");
    }
    auto amps = state.amplitudes();
    const std::uint64_t n = amps.size();
    const std::uint64_t ctrl_mask = detail::mask_of(gate.controls());
    const std::uint64_t neg_mask = detail::mask_of(gate.negated_controls());
    // Control bits of the indices where every control fires.
    const std::uint64_t ctrl_value = ctrl_mask & ~neg_mask;

    switch (gate.kind()) {
        case GateKind::PauliX:
        case GateKind::ControlledNot:
        case GateKind::Toffoli: {
            const std::uint64_t t = std::uint64_t{1} << gate.targets()[0];
            detail::for_each_index(n, ctrl_mask | t, ctrl_value,
                                   [&](std::uint64_t i) { std::swap(amps[i], amps[i | t]); });
            break;
        }
        case GateKind::Fanout: {
            // One pass: CNOTs sharing a control commute.
            const std::uint64_t tmask = detail::mask_of(gate.targets());
            const std::uint64_t top = std::bit_floor(tmask);
            detail::for_each_index(n, ctrl_mask | top, ctrl_value,
                                   [&](std::uint64_t i) { std::swap(amps[i], amps[i ^ tmask]); });
            break;
        }
        case GateKind::ModQ: {
            const std::uint64_t t = std::uint64_t{1} << gate.targets()[0];
            const unsigned q = gate.modulus();
            detail::for_each_index(n, t, 0, [&](std::uint64_t i) {
                const auto count = static_cast<unsigned>(std::popcount((i ^ neg_mask) & ctrl_mask));
                if (count % q != 0) std::swap(amps[i], amps[i | t]);
            });
            break;
        }
        case GateKind::SymmetricPhase: {
            const std::uint64_t t = std::uint64_t{1} << gate.targets()[0];
            const complex_t factor = std::polar(1.0, gate.theta());
            detail::for_each_index(n, ctrl_mask | t, ctrl_value | t, [&](std::uint64_t i) { amps[i] *= factor; });
            break;
        }
        case GateKind::Hadamard: {
            const std::uint64_t t = std::uint64_t{1} << gate.targets()[0];
            const double s = 1.0 / std::sqrt(2.0);
            detail::for_each_index(n, t, 0, [&](std::uint64_t i) {
                const complex_t a0 = amps[i];
                const complex_t a1 = amps[i | t];
                amps[i] = s * (a0 + a1);
                amps[i | t] = s * (a0 - a1);
            });
            break;
        }
        case GateKind::SingleQubitUnitary:
        case GateKind::ControlledU:
            detail::apply_block(amps, gate, ctrl_mask, ctrl_value);
            break;
    }
}

inline void apply_layer(StateVector &state, const Layer &layer) {
    for (const auto &g : layer.gates) apply_gate(state, g);
}

/// Applies the layers of `circuit` to `initial` in order.
inline StateVector run(const Circuit &circuit, StateVector initial) {
    if (initial.width() != circuit.width()) {
        throw SimulationError("run: circuit width " + std::to_string(circuit.width()) + " but state width " +
                              std::to_string(initial.width()));
    }
    for (const auto &layer : circuit.layers()) apply_layer(initial, layer);
    return initial;
}

/// Column j is run(circuit, |j>).
inline Matrix unitary_of(const Circuit &circuit, std::size_t max_width = kDefaultUnitaryCap) {
    if (circuit.width() > max_width) {
        throw SimulationError("unitary_of: width " + std::to_string(circuit.width()) + " exceeds cap " +
                              std::to_string(max_width));
    }
    const std::size_t dim = std::size_t{1} << circuit.width();
    Matrix u(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const auto out = run(circuit, StateVector::basis(circuit.width(), col));
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = out[row];
    }
    return u;
}

struct AncillaPurityResult {
    bool pure = true;
    /// Probability mass on basis states with any ancilla bit set.
    double leakage = 0.0;
};

inline AncillaPurityResult check_ancilla_purity(const StateVector &state, std::span<const QubitId> ancillae,
                                                double tolerance = 1e-10) {
    std::uint64_t mask = 0;
    for (auto q : ancillae) {
        if (q >= state.width()) {
            throw SimulationError("ancilla " + std::to_string(q) + " outside a " + std::to_string(state.width()) +
                                  "-qubit state");
        }
        mask |= std::uint64_t{1} << q;
    }
    double leak = 0.0;
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if ((i & mask) != 0) leak += std::norm(state[i]);
    }
    return {leak <= tolerance, leak};
}

/// Binary label for a basis index, qubit 0 rightmost.
inline std::string basis_label(std::uint64_t index, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t q = 0; q < width; ++q) {
        if ((index >> q) & 1U) s[width - 1 - q] = '1';
    }
    return s;
}

/// One line per amplitude with modulus above `threshold`:
/// "<binary index> <re> <im>".
inline void dump_state(const StateVector &state, std::ostream &os, double threshold = 1e-14) {
    char buf[64];
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if (std::abs(state[i]) <= threshold) continue;
        std::snprintf(buf, sizeof buf, " %.17g %.17g\n", state[i].real(), state[i].imag());
        os << basis_label(i, state.width()) << buf;
    }
}

}  // namespace qdepth
