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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "qdepth/qdepth.hpp"
#include "test_util.hpp"

using namespace qdepth;
namespace qt = qdepth::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

/// Largest deviation between u and ref_data on the columns where every
/// ancilla (the qubits above the data block) is 0. Rows with an ancilla
/// bit set must be 0.
double clean_subspace_error(const Matrix &u, const Matrix &ref_data) {
    const std::size_t data_dim = ref_data.dim();
    double worst = 0.0;
    for (std::size_t col = 0; col < data_dim; ++col) {
        for (std::size_t row = 0; row < u.dim(); ++row) {
            const complex_t expect = row < data_dim ? ref_data(row, col) : complex_t{};
            worst = std::max(worst, std::abs(u(row, col) - expect));
        }
    }
    return worst;
}

std::vector<QubitId> ancillae_of(const Circuit &c) { return c.qubits_with_role(QubitRole::Ancilla); }

// 1. The three-input parity circuits reproduce the displayed MOD_2 matrix.
void mod2_matrix(Outcome &o) {
    const Matrix shown = qt::displayed_mod2_in_register_order();
    const double e_fanout = max_abs_diff(unitary_of(parity_from_fanout(3)), shown);
    const double e_cat_fan = clean_subspace_error(unitary_of(parity_via_catstate(3, CatBuilderKind::Fanout)), shown);
    const double e_cat_log =
        clean_subspace_error(unitary_of(parity_via_catstate(3, CatBuilderKind::LogDepth)), shown);
    o.require(e_fanout <= 1e-12, "fanout route");
    o.require(e_cat_fan <= 1e-12, "cat route (fanout builder)");
    o.require(e_cat_log <= 1e-12, "cat route (log-depth builder)");
    o.detail << "max error fanout route " << e_fanout << ", cat routes " << e_cat_fan << " / " << e_cat_log
             << " (tol 1e-12)";
}

// 2. H-conjugated CNOT is the controlled pi-shift; H^2 = 1.
void hadamard_identity(Outcome &o) {
    Circuit conj({QubitRole::Input, QubitRole::Target}, Discipline::Strict);
    conj.add_layer({Gate::hadamard(1)});
    conj.add_layer({Gate::cnot(0, 1)});
    conj.add_layer({Gate::hadamard(1)});
    const Matrix shift = qt::dense_gate(Gate::phase({0}, 1, std::numbers::pi), 2);
    const double e_shift = max_abs_diff(unitary_of(conj), shift);
    const double e_h2 = max_abs_diff(gates::hadamard() * gates::hadamard(), Matrix::identity(2));
    Circuit hh({QubitRole::Input}, Discipline::Strict);
    hh.add_layer({Gate::hadamard(0)});
    hh.add_layer({Gate::hadamard(0)});
    const double e_h2_sim = max_abs_diff(unitary_of(hh), Matrix::identity(2));
    o.require(e_shift <= 1e-12, "conjugated CNOT");
    o.require(e_h2 <= 1e-15 && e_h2_sim <= 1e-15, "H^2");
    o.detail << "conjugated CNOT error " << e_shift << " (tol 1e-12), H^2 error " << std::max(e_h2, e_h2_sim)
             << " (tol 1e-15)";
}

// 3. Cat state <=> parity <=> fanout for n = 2..6.
void equivalences(Outcome &o) {
    VerifyOptions opts;
    opts.tolerance = 1e-9;
    opts.leakage_tolerance = 1e-10;
    double worst = 0.0;
    double leak = 0.0;
    for (std::size_t n = 2; n <= 6; ++n) {
        const Gate parity = Gate::mod_q(detail::range(0, n), n, 2);
        const Gate fan = Gate::fanout(0, detail::range(1, n));
        auto check = [&](const Circuit &c, const Gate &oracle, const char *what) {
            const auto r = verify_construction(c, oracle, c.data_qubits(), ancillae_of(c), opts);
            worst = std::max(worst, r.max_error);
            leak = std::max(leak, r.leakage);
            o.require(r.pass, std::string(what) + " n=" + std::to_string(n));
        };
        for (auto kind : {CatBuilderKind::Fanout, CatBuilderKind::LogDepth}) {
            const Circuit c = parity_via_catstate(n, kind);
            check(c, parity, "cat => parity");
            o.require(c.ancilla_count() == n - 1, "cat route uses n-1 ancillae at n=" + std::to_string(n));
        }
        check(parity_from_fanout(n), parity, "fanout => parity");
        check(fanout_from_parity(n), fan, "parity => fanout");
    }
    o.detail << "max amplitude error " << worst << " (tol 1e-9), max leakage " << leak
             << " (tol 1e-10), cat route ancillae = n-1 for n=2..6";
}

// 4. Constant-depth MOD_q is correct on basis and superposition inputs.
void modq_correctness(Outcome &o) {
    VerifyOptions opts;
    opts.tolerance = 1e-9;
    opts.superposition_samples = 10;
    double worst = 0.0;
    double worst_sup = 0.0;
    double leak = 0.0;
    std::size_t checked = 0;
    std::string skipped;
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        for (std::size_t n = 2; n <= 6; ++n) {
            const Circuit c = modq_constant_depth(n, q);
            if (c.width() > kDefaultSimCap) {
                skipped += " (q=" + std::to_string(q) + ",n=" + std::to_string(n) + ")";
                continue;
            }
            opts.seed = 1000 * q + n;
            const auto r = verify_construction(c, Gate::mod_q(detail::range(0, n), n, q), c.data_qubits(),
                                               ancillae_of(c), opts);
            worst = std::max(worst, r.max_error);
            worst_sup = std::max(worst_sup, r.superposition_error.value_or(0.0));
            leak = std::max(leak, r.leakage);
            o.require(r.pass, "q=" + std::to_string(q) + " n=" + std::to_string(n));
            ++checked;
        }
    }
    o.detail << checked << " (q,n) pairs, basis error " << worst << ", superposition error " << worst_sup
             << " (tol 1e-9), leakage " << leak << "; over the 22-qubit cap:" << (skipped.empty() ? " none" : skipped);
}

// 5. Resource counts: n*ceil(log2 q) copies, depth independent of n.
void modq_resources(Outcome &o) {
    std::ostringstream depths;
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u}) {
        const std::size_t d0 = modq_constant_depth(2, q).depth();
        std::size_t prev_seq = 0;
        for (std::size_t n = 2; n <= 16; ++n) {
            const Circuit c = modq_constant_depth(n, q);
            const std::size_t copies = c.ancilla_count() - ceil_log2(q);
            o.require(copies == n * ceil_log2(q) && modq_copy_ancillae(n, q) == copies,
                      "copy count q=" + std::to_string(q) + " n=" + std::to_string(n));
            o.require(c.depth() == d0, "constant depth q=" + std::to_string(q) + " n=" + std::to_string(n));
            const std::size_t seq = modq_sequential(n, q).depth();
            o.require(seq > prev_seq, "sequential depth increases at n=" + std::to_string(n));
            prev_seq = seq;
        }
        depths << " q=" << q << ":" << d0;
    }
    o.detail << "copy ancillae = n*ceil(log2 q); constant depth for n=2..16 at" << depths.str()
             << "; sequential depth 2n+2 strictly increasing";
}

// 6. M^q = 1, T^dagger D T = M, and the q = 3 matrices.
void plan_algebra(Outcome &o) {
    double e_period = 0.0;
    double e_diag = 0.0;
    for (unsigned q = 2; q <= 8; ++q) {
        const auto p = modq_plan(q);
        e_period = std::max(e_period, max_abs_diff(p.M.pow(q), Matrix::identity(p.M.dim())));
        e_diag = std::max(e_diag, max_abs_diff(p.T.adjoint() * p.D * p.T, p.M));
    }
    o.require(e_period <= 1e-10, "M^q = 1");
    o.require(e_diag <= 1e-10, "T^dagger D T = M");

    // The displayed q = 3 matrix lists, in row x, the image of |x>:
    // 0 -> 1, 1 -> 2, 2 -> 0, 3 -> 3. That is M(shown(x, .), x) = 1.
    const double shown_m[4][4] = {{0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}};
    const auto p3 = modq_plan(3);
    bool m_exact = true;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y) m_exact = m_exact && p3.M(y, x) == complex_t(shown_m[x][y]);
    const complex_t w = std::polar(1.0, 2 * std::numbers::pi / 3);
    const Matrix shown_d = Matrix::diagonal({1.0, w, w * w, 1.0});
    const double e_d = max_abs_diff(p3.D, shown_d);
    o.require(m_exact, "q=3 M entries");
    o.require(e_d <= 1e-12, "q=3 D entries");
    o.detail << "q=2..8: |M^q - 1| " << e_period << ", |T^dag D T - M| " << e_diag
             << " (tol 1e-10); q=3 M exact: " << (m_exact ? "yes" : "no") << ", D error " << e_d << " (tol 1e-12)";
}

// 7. Both cat builders give a|0..0> + b|1..1>.
void cat_fidelity(Outcome &o) {
    std::mt19937_64 rng(2026);
    double worst = 0.0;
    for (std::size_t n = 2; n <= 10; ++n) {
        o.require(cat_log_depth(n).depth() == ceil_log2(n), "log-depth cat depth at n=" + std::to_string(n));
        for (int rep = 0; rep < 20; ++rep) {
            const auto ab = qt::random_state(rng, 1);
            std::vector<complex_t> in(std::size_t{1} << n);
            in[0] = ab[0];
            in[1] = ab[1];
            const auto expect = StateVector::from_amplitudes(qt::cat_state(n, ab[0], ab[1]));
            for (const auto &c : {cat_log_depth(n), cat_via_fanout(n)}) {
                const double e = l2_distance(run(c, StateVector::from_amplitudes(in)), expect);
                worst = std::max(worst, e);
            }
        }
    }
    o.require(worst <= 1e-10, "cat fidelity");
    o.detail << "n=2..10, 20 random (a,b) each, max l2 error " << worst
             << " (tol 1e-10); log-depth builder depth = ceil(log2 n)";
}

// 8. Reversible embedding of random classical circuits.
void embedding(Outcome &o) {
    std::mt19937_64 rng(88);
    std::size_t inputs = 0;
    std::size_t widest = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        const auto cc = random_classical_circuit(rng, n, d, 2, 4);
        const Circuit rc = reversible_embed(cc);
        const std::size_t m = cc.num_outputs();
        const std::string tag = "circuit " + std::to_string(rep);
        o.require(rc.depth() == 2 * d - 1, tag + " depth");
        o.require(rc.width() == n + m + cc.width() * d, tag + " width");
        widest = std::max(widest, rc.width());
        const auto anc = ancillae_of(rc);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const auto out = run(rc, StateVector::basis(rc.width(), x));
            const std::uint64_t expect = x | (qt::classical_eval(cc, x) << n);
            o.require(std::abs(out[expect] - complex_t(1.0)) <= 1e-12, tag + " output");
            o.require(check_ancilla_purity(out, anc).leakage == 0.0, tag + " ancillae");
            ++inputs;
        }
    }
    o.detail << "50 circuits (n<=6, d<=4, fan-in<=4, <=2 gates per layer), " << inputs
             << " inputs, depth 2d-1 and width n+m+wd, leakage 0; widest register " << widest;
}

// 9. Strict layering pays ceil(log2 n) layers per fanout phase.
void discipline_gap(Outcome &o) {
    std::ostringstream rows;
    for (unsigned q : {2u, 3u, 5u}) {
        for (std::size_t n = 2; n <= 16; ++n) {
            const Circuit wf = modq_constant_depth(n, q, Discipline::WithFanout);
            const Circuit strict = modq_constant_depth(n, q, Discipline::Strict);
            std::size_t phases = 0;
            for (const auto &l : wf.layers()) {
                phases += std::any_of(l.gates.begin(), l.gates.end(),
                                      [](const Gate &g) { return g.kind() == GateKind::Fanout; });
            }
            o.require(strict.depth() - wf.depth() == phases * ceil_log2(n),
                      "gap q=" + std::to_string(q) + " n=" + std::to_string(n));
            o.require(phases == 4, "four fanout phases");
            if (q == 3 && (n == 2 || n == 5 || n == 16)) {
                rows << " n=" << n << ": " << wf.depth() << " vs " << strict.depth() << ";";
            }
        }
    }
    // The strict circuit is itself a correct MOD_q gate.
    const Circuit small = modq_constant_depth(4, 3, Discipline::Strict);
    const auto r =
        verify_construction(small, Gate::mod_q(detail::range(0, 4), 4, 3), small.data_qubits(), ancillae_of(small));
    o.require(r.pass, "strict circuit verifies");
    o.detail << "strict depth = wf depth + 4 phases * ceil(log2 n) for q in {2,3,5}, n=2..16 (q=3" << rows.str()
             << " strict n=4 verifies with error " << r.max_error << ")";
}

// 10. Simulator against the dense definitions; norm and linearity.
void simulator_soundness(Outcome &o) {
    std::mt19937_64 rng(10);
    double e_gate = 0.0;
    double e_norm = 0.0;
    double e_lin = 0.0;
    std::size_t gates_checked = 0;
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (std::size_t width = 1; width <= 6; ++width) {
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<QubitId> qs(width);
            for (QubitId q = 0; q < width; ++q) qs[q] = q;
            std::shuffle(qs.begin(), qs.end(), rng);
            const QubitId t = qs[0];
            const Matrix u1 = gates::hadamard() * gates::phase(angle(rng));
            std::vector<Gate> gs = {Gate::hadamard(t), Gate::x(t), Gate::unitary1(t, u1)};
            if (width >= 2) {
                const std::vector<QubitId> ctrls(qs.begin() + 1, qs.end());
                const std::vector<QubitId> neg = {ctrls[0]};
                gs.push_back(Gate::cnot(ctrls[0], t, rep % 2 == 1));
                gs.push_back(Gate::toffoli(ctrls, t, neg));
                gs.push_back(Gate::controlled_u(ctrls, {t}, u1, neg));
                gs.push_back(Gate::mod_q(ctrls, t, 2 + rep % 4, neg));
                gs.push_back(Gate::fanout(t, ctrls, rep % 2 == 0));
                gs.push_back(Gate::phase(ctrls, t, angle(rng), neg));
            }
            if (width >= 3) {
                gs.push_back(Gate::controlled_u({qs.begin() + 2, qs.end()}, {qs[0], qs[1]}, modq_plan(3).T));
            }
            for (const auto &g : gs) {
                const Matrix ref = qt::dense_gate(g, width);
                for (std::uint64_t col = 0; col < (std::uint64_t{1} << width); ++col) {
                    StateVector s = StateVector::basis(width, col);
                    apply_gate(s, g);
                    for (std::uint64_t row = 0; row < s.size(); ++row)
                        e_gate = std::max(e_gate, std::abs(s[row] - ref(row, col)));
                }
                const auto x = qt::random_state(rng, width);
                const auto y = qt::random_state(rng, width);
                const complex_t a(0.6, -0.2);
                const complex_t b(-0.3, 0.9);
                std::vector<complex_t> mix(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) mix[i] = a * x[i] + b * y[i];
                StateVector sx = StateVector::from_amplitudes(x);
                StateVector sy = StateVector::from_amplitudes(y);
                StateVector sm = StateVector::from_amplitudes(mix);
                apply_gate(sx, g);
                apply_gate(sy, g);
                apply_gate(sm, g);
                e_norm = std::max(e_norm, std::abs(sx.norm() - 1.0));
                for (std::size_t i = 0; i < mix.size(); ++i)
                    e_lin = std::max(e_lin, std::abs(sm[i] - (a * sx[i] + b * sy[i])));
                ++gates_checked;
            }
        }
    }
    o.require(e_gate <= 1e-12, "gate agreement");
    o.require(e_norm <= 1e-12, "norm preservation");
    o.require(e_lin <= 1e-12, "linearity");
    o.detail << gates_checked << " gates of all 9 kinds at widths 1..6: oracle error " << e_gate
             << " (tol 1e-12), norm drift " << e_norm << ", linearity error " << e_lin;
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<void(Outcome &)>> criteria[] = {
        {"MOD_2 matrix reproduction", mod2_matrix},
        {"Hadamard identities", hadamard_identity},
        {"cat/parity/fanout equivalences", equivalences},
        {"constant-depth MOD_q correctness", modq_correctness},
        {"constant-depth MOD_q resources", modq_resources},
        {"counting matrix algebra", plan_algebra},
        {"cat-state fidelity", cat_fidelity},
        {"reversible embedding", embedding},
        {"strict vs fanout layering gap", discipline_gap},
        {"simulator soundness", simulator_soundness},
    };
    int failures = 0;
    int index = 0;
    for (const auto &[name, check] : criteria) {
        ++index;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            check(o);
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
