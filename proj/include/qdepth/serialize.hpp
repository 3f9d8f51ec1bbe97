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
 * @file serialize.hpp
 * JSON forms of circuits and verification reports.
 *
 * Circuit documents look like
 *
 *   {"width": 3, "discipline": "wf", "roles": ["input", "target", "ancilla"],
 *    "layers": [[{"kind": "h", "controls": [], "neg": [], "targets": [0]}]]}
 *
 * with "theta" on phase gates, "q" on modq gates and a row-major "matrix"
 * of [re, im] pairs on u1/cu gates. Floats are written with 17 significant
 * digits so a write/read cycle is lossless.
 */

#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdepth/circuit.hpp"
#include "qdepth/verify.hpp"

namespace qdepth {

class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace serialize_detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_ids(std::ostringstream &os, const std::vector<QubitId> &ids) {
    os << '[';
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? ", " : "") << ids[i];
    os << ']';
}

inline void write_gate(std::ostringstream &os, const Gate &g) {
    os << "{\"kind\": \"" << to_string(g.kind()) << "\", \"controls\": ";
    write_ids(os, g.controls());
    os << ", \"neg\": ";
    write_ids(os, g.negated_controls());
    os << ", \"targets\": ";
    write_ids(os, g.targets());
    if (g.kind() == GateKind::SymmetricPhase) os << ", \"theta\": " << num(g.theta());
    if (g.kind() == GateKind::ModQ) os << ", \"q\": " << g.modulus();
    if (g.has_matrix()) {
        os << ", \"matrix\": [";
        const auto &data = g.matrix().data();
        for (std::size_t i = 0; i < data.size(); ++i) {
            os << (i ? ", " : "") << '[' << num(data[i].real()) << ", " << num(data[i].imag()) << ']';
        }
        os << ']';
    }
    os << '}';
}

template <class T>
T field(const nlohmann::json &obj, const char *key) {
    if (!obj.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("field \"") + key + "\": " + e.what());
    }
}

inline Gate read_gate(const nlohmann::json &j) {
    if (!j.is_object()) throw FormatError("gate entry is not an object");
    const auto kind_name = field<std::string>(j, "kind");
    const auto kind = gate_kind_from_string(kind_name);
    if (!kind) throw FormatError("unknown gate kind \"" + kind_name + "\"");
    const auto controls = field<std::vector<QubitId>>(j, "controls");
    const auto targets = field<std::vector<QubitId>>(j, "targets");
    const auto neg = j.contains("neg") ? field<std::vector<QubitId>>(j, "neg") : std::vector<QubitId>{};

    auto read_matrix = [&]() {
        const auto entries = field<std::vector<std::vector<double>>>(j, "matrix");
        std::vector<complex_t> data;
        data.reserve(entries.size());
        for (const auto &e : entries) {
            if (e.size() != 2) throw FormatError("matrix entries must be [re, im] pairs");
            data.emplace_back(e[0], e[1]);
        }
        const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(data.size()))));
        if (dim * dim != data.size()) throw FormatError("matrix entry count is not a square");
        return Matrix(dim, std::move(data));
    };
    auto single = [&](const std::vector<QubitId> &v, const char *what) {
        if (v.size() != 1) throw FormatError(kind_name + " gate needs exactly one " + what);
        return v[0];
    };

    try {
        switch (*kind) {
            case GateKind::Hadamard:
                return Gate::hadamard(single(targets, "target"));
            case GateKind::PauliX:
                return Gate::x(single(targets, "target"));
            case GateKind::SingleQubitUnitary:
                return Gate::unitary1(single(targets, "target"), read_matrix());
            case GateKind::ControlledNot:
                return Gate::cnot(single(controls, "control"), single(targets, "target"), !neg.empty());
            case GateKind::Toffoli:
                return Gate::toffoli(controls, single(targets, "target"), neg);
            case GateKind::ControlledU:
                return Gate::controlled_u(controls, targets, read_matrix(), neg);
            case GateKind::ModQ:
                return Gate::mod_q(controls, single(targets, "target"), field<unsigned>(j, "q"), neg);
            case GateKind::Fanout:
                return Gate::fanout(single(controls, "control"), targets, !neg.empty());
            case GateKind::SymmetricPhase:
                return Gate::phase(controls, single(targets, "target"), field<double>(j, "theta"), neg);
        }
    } catch (const CircuitError &e) {
        throw FormatError(std::string("invalid gate: ") + e.what());
    }
    throw FormatError("unhandled gate kind");
}

}  // namespace serialize_detail

inline std::string circuit_to_json(const Circuit &c) {
    std::ostringstream os;
    os << "{\"width\": " << c.width() << ", \"discipline\": \"" << to_string(c.discipline()) << "\", \"roles\": [";
    for (std::size_t q = 0; q < c.width(); ++q) os << (q ? ", " : "") << '"' << to_string(c.roles()[q]) << '"';
    os << "],\n \"layers\": [";
    for (std::size_t l = 0; l < c.layers().size(); ++l) {
        os << (l ? ",\n  [" : "\n  [");
        const auto &gates = c.layers()[l].gates;
        for (std::size_t i = 0; i < gates.size(); ++i) {
            if (i) os << ", ";
            serialize_detail::write_gate(os, gates[i]);
        }
        os << ']';
    }
    os << "]}\n";
    return os.str();
}

inline Circuit circuit_from_json(const std::string &text) {
    using serialize_detail::field;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("circuit document must be a JSON object");

    const auto width = field<std::size_t>(doc, "width");
    const auto discipline_name = field<std::string>(doc, "discipline");
    const auto discipline = discipline_from_string(discipline_name);
    if (!discipline) throw FormatError("unknown discipline \"" + discipline_name + "\"");
    const auto role_names = field<std::vector<std::string>>(doc, "roles");
    if (role_names.size() != width) {
        throw FormatError("roles lists " + std::to_string(role_names.size()) + " qubits, width is " +
                          std::to_string(width));
    }
    std::vector<QubitRole> roles;
    for (const auto &r : role_names) {
        const auto role = role_from_string(r);
        if (!role) throw FormatError("unknown role \"" + r + "\"");
        roles.push_back(*role);
    }
    if (!doc.contains("layers") || !doc["layers"].is_array()) throw FormatError("missing layers array");

    std::vector<Layer> layers;
    std::size_t max_block = kDefaultMaxBlockQubits;
    for (const auto &jl : doc["layers"]) {
        if (!jl.is_array()) throw FormatError("each layer must be an array of gates");
        Layer layer;
        for (const auto &jg : jl) {
            layer.gates.push_back(serialize_detail::read_gate(jg));
            if (layer.gates.back().kind() == GateKind::ControlledU) {
                max_block = std::max(max_block, layer.gates.back().targets().size());
            }
        }
        layers.push_back(std::move(layer));
    }
    Circuit c(std::move(roles), *discipline, max_block);
    try {
        for (auto &l : layers) c.add_layer(std::move(l));
    } catch (const CircuitError &e) {
        throw FormatError(e.what());
    }
    return c;
}

inline nlohmann::json report_to_json(const VerificationReport &r) {
    nlohmann::json j;
    j["construction"] = r.construction;
    j["n"] = r.n;
    j["q"] = r.q ? nlohmann::json(*r.q) : nlohmann::json(nullptr);
    j["discipline"] = to_string(r.discipline);
    j["amplitudes_checked"] = r.amplitudes_checked;
    j["max_error"] = r.amplitudes_checked ? nlohmann::json(r.max_error) : nlohmann::json(nullptr);
    j["leakage"] = r.amplitudes_checked ? nlohmann::json(r.leakage) : nlohmann::json(nullptr);
    j["superposition_error"] = r.superposition_error ? nlohmann::json(*r.superposition_error) : nlohmann::json(nullptr);
    j["inputs_checked"] = r.inputs_checked;
    j["depth"] = r.depth;
    j["width"] = r.width;
    j["ancillae"] = r.ancillae;
    j["copy_ancillae"] = r.copy_ancillae;
    j["work_qubits"] = r.work_qubits;
    j["pass"] = r.pass;
    return j;
}

}  // namespace qdepth
