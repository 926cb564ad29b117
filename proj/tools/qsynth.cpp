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

// qsynth command-line front end.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 domain error,
// 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qsynth/qsynth.hpp"

namespace {

using namespace qsynth;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerification = 3;

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string join_ms(const std::vector<double>& ms) {
    std::string out;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        if (k) out += ",";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", ms[k]);
        out += buf;
    }
    return out;
}

struct SynthesizeArgs {
    std::string gate;
    double angle = 0;
    bool degrees = false;
    std::optional<double> j_hz;
    std::string format = "text";
    bool expand = false;
    std::string out;
};

int write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return kExitUsage;
    }
    return 0;
}

int cmd_synthesize(const SynthesizeArgs& a) {
    auto kind = parse_gate_kind(a.gate);
    if (!kind) {
        std::cerr << "error: unknown gate '" << a.gate
                  << "' (trilinear, geodesic, xx_minus_yy, xx_plus_yy, heisenberg, toric)\n";
        return kExitUsage;
    }
    double angle = a.degrees ? a.angle * kPi / 180.0 : a.angle;
    if (a.j_hz && *kind == GateKind::Toric) {
        throw DomainError("--J applies to three-spin gates; toric times are in Ising units");
    }
    if (a.j_hz && !(*a.j_hz > 0)) throw DomainError("--J must be positive");
    CompiledGate g = compile({*kind, angle});
    SequenceDocument doc = make_document(g, a.expand, a.j_hz);
    double total = total_time(doc.sequence);

    std::vector<double> evolution_units;
    for (const auto& s : doc.sequence.segments) {
        if (s.kind == SegmentKind::Evolution) evolution_units.push_back(s.duration);
    }
    std::optional<PhysicalTiming> timing;
    if (a.j_hz) timing = to_physical(evolution_units, *a.j_hz);
    double total_ms = a.j_hz ? to_physical({total}, *a.j_hz).durations_ms[0] : 0;

    std::string text;
    if (a.format == "json") {
        auto j = to_json(doc);
        j["residual"] = g.residual;
        if (timing) {
            j["durations_ms"] = timing->durations_ms;
            j["total_ms"] = total_ms;
        }
        if (g.bch_fallback) j["bch_fallback"] = true;
        if (!g.notes.empty()) j["notes"] = g.notes;
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << to_text(doc);
        os << "# total_time_units " << fmt12(total) << "\n";
        if (timing) {
            os << "# durations_ms " << join_ms(timing->durations_ms) << "\n";
            os << "# total_ms " << join_ms({total_ms}) << "\n";
        }
        os << "# residual " << fmt12(g.residual) << "\n";
        if (g.bch_fallback) os << "# bch_fallback\n";
        for (const auto& n : g.notes) os << "# note: " << n << "\n";
        text = os.str();
    }
    return write_output(text, a.out);
}

struct SweepArgs {
    std::string quantity;
    double lo = 0;
    double hi = kPi / 2;
    int steps = 100;
    std::string out;
};

double sweep_value(const std::string& q, double angle) {
    if (q == "f") return min_time_f(angle);
    if (q == "bch") return bch_time(angle);
    if (q == "geodesic2x") return geodesic2x_time(angle);
    if (q == "g") return xx_yy_time(angle);
    throw std::invalid_argument("unknown quantity '" + q + "' (f, bch, geodesic2x, g)");
}

int cmd_sweep(const SweepArgs& a) {
    if (!(a.lo < a.hi)) throw DomainError("sweep: need lo < hi");
    if (a.steps < 2) throw DomainError("sweep: need steps >= 2");
    std::string csv = "angle,time_units\n";
    for (int k = 0; k < a.steps; ++k) {
        double angle = k == a.steps - 1 ? a.hi : a.lo + (a.hi - a.lo) * k / (a.steps - 1);
        csv += fmt12(angle) + "," + fmt12(sweep_value(a.quantity, angle)) + "\n";
    }
    return write_output(csv, a.out);
}

int cmd_verify(const std::string& suite) {
    SuiteReport r = run_suite(suite);
    for (const auto& c : r.checks) {
        std::printf("%s  %-7s  %-72s  %.3e < %.3e\n", c.pass ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(),
                    c.value, c.threshold);
    }
    std::size_t failed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.pass; });
    std::printf("%zu checks, %zu failed\n", r.checks.size(), failed);
    return r.pass() ? 0 : kExitVerification;
}

int cmd_nmr(const std::vector<std::string>& labels) {
    for (const auto& label : labels) {
        ProductOperator in;
        try {
            in = parse_product_operator(label);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        auto p = nmr_expected_state(in);
        if (p.propagator_check >= kTol.unitary) {
            std::cerr << "error: compiled pulse misses its target by " << p.propagator_check << "\n";
            return kExitVerification;
        }
        if (p.final_state) {
            std::cout << to_string(in) << " -> " << to_string(*p.final_state)
                      << "  (coefficient " << fmt12(p.final_state->coefficient) << ")\n";
        } else {
            std::cout << to_string(in) << " -> (not a single product operator)\n";
        }
    }
    return 0;
}

int cmd_check(const std::string& path, double tolerance) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitUsage;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    SequenceDocument d;
    try {
        d = parse_any(buf.str());
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    double residual = verify_document(d);
    std::cout << "gate " << to_string(d.gate.kind) << " angle " << fmt12(d.gate.angle) << " segments "
              << d.sequence.segments.size() << " total_time_units " << fmt12(total_time(d.sequence))
              << " residual " << fmt12(residual) << "\n";
    return residual < tolerance ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsynth: time-optimal pulse sequences for indirectly coupled spins"};
    app.require_subcommand(1);

    SynthesizeArgs syn;
    auto* s = app.add_subcommand("synthesize", "Compile a gate to a pulse sequence");
    s->add_option("gate", syn.gate, "trilinear | geodesic | xx_minus_yy | xx_plus_yy | heisenberg | toric")->required();
    s->add_option("--angle", syn.angle, "Gate angle (radians unless --degrees)")->required();
    s->add_flag("--degrees", syn.degrees, "Read --angle in degrees");
    s->add_option("--J", syn.j_hz, "Coupling in Hz; adds millisecond durations");
    s->add_option("--format", syn.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    s->add_flag("--expand", syn.expand, "Flatten nested sequences to native segments");
    s->add_option("--out", syn.out, "Output file (default stdout)");

    SweepArgs sw;
    auto* w = app.add_subcommand("sweep", "Tabulate a timing curve as CSV");
    w->add_option("quantity", sw.quantity, "f | bch | geodesic2x | g")
        ->required()
        ->check(CLI::IsMember({"f", "bch", "geodesic2x", "g"}));
    w->add_option("--lo", sw.lo, "First angle");
    w->add_option("--hi", sw.hi, "Last angle");
    w->add_option("--steps", sw.steps, "Number of rows");
    w->add_option("--out", sw.out, "Output CSV (default stdout)");

    std::string suite = "all";
    auto* v = app.add_subcommand("verify", "Run invariant suites");
    v->add_option("suite", suite, "algebra | so3 | pmp | gates | all")
        ->check(CLI::IsMember({"algebra", "so3", "pmp", "gates", "all"}));

    std::vector<std::string> labels;
    auto* n = app.add_subcommand("nmr", "Predict final states after the trilinear NMR pulse");
    n->add_option("initial", labels, "Product operators such as I1x or I3z")->required();

    std::string check_path;
    double check_tol = kTol.nested;
    auto* c = app.add_subcommand("check", "Re-verify a serialized sequence (text or JSON)");
    c->add_option("file", check_path, "Sequence file")->required();
    c->add_option("--tolerance", check_tol, "Residual threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*s) return cmd_synthesize(syn);
        if (*w) return cmd_sweep(sw);
        if (*v) return cmd_verify(suite);
        if (*n) return cmd_nmr(labels);
        if (*c) return cmd_check(check_path, check_tol);
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
