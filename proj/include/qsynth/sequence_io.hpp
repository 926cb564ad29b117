// Copyright 2026 The qsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Text and JSON serialization of compiled spin sequences.
//
// Text format:
//   qsynth-sequence v1 units=<u> spins=<n> gate=<kind> angle=<a> [J_hz=<J>]
//   <generator> <duration_units> <sign>
//   ...
// Lines starting with '#' are comments. Local single-spin operations are
// written with duration 0 and sign 1. S1 and Pauli strings other than
// nearest-neighbour ZZ are not native; on reading they are expanded the same
// way the compiler expands them.

#include <istream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qsynth/gate_compiler.hpp"

namespace qsynth {

inline constexpr const char* kSequenceMagic = "qsynth-sequence";
inline constexpr int kSequenceVersion = 1;

inline std::string units_for(GateKind k) { return k == GateKind::Toric ? "ising" : "1/(piJ)"; }

struct SequenceDocument {
    GateSpec gate;
    std::string units = "1/(piJ)";
    std::optional<double> j_hz;
    SpinSequence sequence;
};

inline SequenceDocument make_document(const CompiledGate& g, bool expand, std::optional<double> j_hz = {}) {
    SequenceDocument d;
    d.gate = g.spec;
    d.units = units_for(g.spec.kind);
    d.j_hz = j_hz;
    d.sequence = expand ? flatten(g.sequence) : g.sequence;
    return d;
}

class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Text.

inline std::string to_text(const SequenceDocument& d) {
    std::ostringstream os;
    os << kSequenceMagic << " v" << kSequenceVersion << " units=" << d.units << " spins=" << d.sequence.spins
       << " gate=" << to_string(d.gate.kind) << " angle=" << format_number(d.gate.angle);
    if (d.j_hz) os << " J_hz=" << format_number(*d.j_hz);
    os << "\n";
    for (const auto& s : d.sequence.segments) {
        os << s.label << " " << format_number(s.duration) << " " << s.sign << "\n";
    }
    return os.str();
}

inline SpinSegment segment_from_fields(const std::string& label, double duration, int sign, int spins) {
    if (sign != 1 && sign != -1) throw FormatError("sign must be 1 or -1 (segment '" + label + "')");
    if (!(duration >= 0) || !std::isfinite(duration)) {
        throw FormatError("duration must be finite and >= 0 (segment '" + label + "')");
    }
    ResolvedLabel r;
    try {
        r = resolve_label(label, spins);
    } catch (const std::exception& e) {
        throw FormatError(e.what());
    }
    SpinSegment s;
    s.kind = r.kind;
    s.label = label;
    s.matrix = std::move(r.matrix);
    if (r.kind == SegmentKind::Local) {
        if (duration != 0) throw FormatError("local segment '" + label + "' must have duration 0");
        return s;
    }
    s.duration = duration;
    s.sign = sign;
    // Non-native generators are rebuilt exactly as the compiler expands them.
    try {
        if (label == "S1") {
            return trilinear_segment(s.signed_duration(), "S1");
        }
        if (PauliString::looks_like(label)) {
            PauliString p(label);
            bool native = p.weight() == 2 && label.find_first_of("XY") == std::string::npos &&
                          ring_adjacent(p.support()[0], p.support()[1]);
            if (!native) return pauli_rotation_segment(p, s.signed_duration(), PlaquetteStrategy::Optimal, label);
        }
    } catch (const std::exception& e) {
        throw FormatError("segment '" + label + "': " + e.what());
    }
    return s;
}

inline SequenceDocument parse_text(std::istream& in) {
    SequenceDocument d;
    std::string line;
    bool have_header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string magic, version, field;
            ls >> magic >> version;
            if (magic != kSequenceMagic || version != "v" + std::to_string(kSequenceVersion)) {
                throw FormatError("line " + std::to_string(line_no) + ": missing 'qsynth-sequence v1' header");
            }
            bool have_gate = false, have_angle = false, have_spins = false;
            while (ls >> field) {
                auto eq = field.find('=');
                if (eq == std::string::npos) throw FormatError("header field '" + field + "' is not key=value");
                std::string key = field.substr(0, eq), value = field.substr(eq + 1);
                try {
                    if (key == "units") {
                        d.units = value;
                    } else if (key == "spins") {
                        d.sequence.spins = std::stoi(value);
                        have_spins = true;
                    } else if (key == "gate") {
                        auto k = parse_gate_kind(value);
                        if (!k) throw FormatError("unknown gate '" + value + "'");
                        d.gate.kind = *k;
                        have_gate = true;
                    } else if (key == "angle") {
                        d.gate.angle = std::stod(value);
                        have_angle = true;
                    } else if (key == "J_hz") {
                        d.j_hz = std::stod(value);
                    } else {
                        throw FormatError("unknown header field '" + key + "'");
                    }
                } catch (const std::logic_error&) {
                    throw FormatError("bad value in header field '" + field + "'");
                }
            }
            if (!have_gate || !have_angle || !have_spins) {
                throw FormatError("header needs spins=, gate= and angle=");
            }
            if (d.sequence.spins != d.gate.spin_count()) throw FormatError("spins does not match gate");
            have_header = true;
            continue;
        }
        std::string label, extra;
        double duration = 0;
        int sign = 0;
        if (!(ls >> label >> duration >> sign) || (ls >> extra)) {
            throw FormatError("line " + std::to_string(line_no) + ": expected '<generator> <duration> <sign>'");
        }
        d.sequence.segments.push_back(segment_from_fields(label, duration, sign, d.sequence.spins));
    }
    if (!have_header) throw FormatError("empty sequence file");
    return d;
}

inline SequenceDocument parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_text(in);
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json to_json(const SequenceDocument& d) {
    nlohmann::json j;
    j["format"] = kSequenceMagic;
    j["version"] = kSequenceVersion;
    j["units"] = d.units;
    j["spins"] = d.sequence.spins;
    j["gate"] = to_string(d.gate.kind);
    j["angle"] = d.gate.angle;
    if (d.j_hz) j["J_hz"] = *d.j_hz;
    j["total_time_units"] = total_time(d.sequence);
    j["segments"] = nlohmann::json::array();
    for (const auto& s : d.sequence.segments) {
        j["segments"].push_back({{"generator", s.label}, {"duration_units", s.duration}, {"sign", s.sign}});
    }
    return j;
}

inline SequenceDocument from_json(const nlohmann::json& j) {
    SequenceDocument d;
    try {
        if (j.at("format").get<std::string>() != kSequenceMagic || j.at("version").get<int>() != kSequenceVersion) {
            throw FormatError("not a qsynth-sequence v1 document");
        }
        auto k = parse_gate_kind(j.at("gate").get<std::string>());
        if (!k) throw FormatError("unknown gate '" + j.at("gate").get<std::string>() + "'");
        d.gate.kind = *k;
        d.gate.angle = j.at("angle").get<double>();
        d.units = j.value("units", units_for(*k));
        d.sequence.spins = j.at("spins").get<int>();
        if (d.sequence.spins != d.gate.spin_count()) throw FormatError("spins does not match gate");
        if (j.contains("J_hz")) d.j_hz = j.at("J_hz").get<double>();
        for (const auto& s : j.at("segments")) {
            d.sequence.segments.push_back(segment_from_fields(s.at("generator").get<std::string>(),
                                                              s.at("duration_units").get<double>(),
                                                              s.at("sign").get<int>(), d.sequence.spins));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed sequence JSON: ") + e.what());
    }
    return d;
}

inline SequenceDocument parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed sequence JSON: ") + e.what());
    }
    return from_json(j);
}

/// Accepts either format, decided by the first non-blank character.
inline SequenceDocument parse_any(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);
    return parse_text(text);
}

/// Distance between the document's realized product and its gate target.
inline double verify_document(const SequenceDocument& d) {
    return unitary_distance(realize(d.sequence), target_unitary(d.gate));
}

}  // namespace qsynth
