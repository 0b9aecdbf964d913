// Acceptance suite: one PASS/FAIL line per criterion, exact equality throughout.

#include "superquant/errors.hpp"
#include "superquant/io.hpp"
#include "superquant/lie.hpp"
#include "superquant/parse.hpp"
#include "superquant/projective.hpp"
#include "superquant/quantize.hpp"
#include "superquant/random.hpp"
#include "superquant/thomas.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

using namespace superquant;

namespace {

struct Tally {
    int passed = 0;
    int total = 0;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        ++total;
        if (ok) ++passed;
        else if (notes.size() < 5) notes.push_back(what);
    }
    bool all() const { return passed == total; }
    std::string summary() const { return std::to_string(passed) + "/" + std::to_string(total); }
};

struct Instance {
    SuperConnection connection;
    ContraSymbol symbol;
    Rational lambda;
    Rational mu;
};

int sign(int parity) { return parity ? -1 : 1; }

std::string chart_name(const Chart& c) { return "(" + std::to_string(c->n) + "|" + std::to_string(c->m) + ")"; }

// Random connection on the chart; at n - m = 1 the flat one (the lift needs a
// vanishing supersymmetric Ricci tensor there).
SuperConnection connection_for(RandomGenerator& gen, const Chart& c, int entries = 5) {
    return c->superdim() == 1 ? SuperConnection::flat(c) : gen.connection(c, entries, 2);
}

OneForm nonzero_even_form(RandomGenerator& gen, const Chart& c) {
    for (;;) {
        auto alpha = gen.one_form(c, 0, 1);
        for (const auto& f : alpha.components)
            if (!f.is_zero()) return alpha;
    }
}

// A quantizable instance with a noncritical shift.
Instance draw_instance(RandomGenerator& gen, const Chart& c, int kmin, int kmax) {
    for (;;) {
        int k = gen.uniform(kmin, kmax);
        Rational delta = gen.half_integer(-2, 3);
        if (criticality(c->n, c->m, delta, std::max(k, 1)).critical()) continue;
        Rational lambda = gen.half_integer(-2, 2);
        auto s = gen.nonzero_symbol(c, delta, k, c->m ? gen.uniform(0, 1) : 0, 3, 2);
        return {connection_for(gen, c), s, lambda, lambda + delta};
    }
}

std::vector<Instance> principal_instances() {
    RandomGenerator gen(1001);
    std::vector<Instance> out;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {2, 1}, {2, 2}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 30; ++t) out.push_back(draw_instance(gen, c, 0, 3));
    }
    return out;
}

Tally principal_symbol_exactness(const std::vector<Instance>& instances) {
    Tally tally;
    for (const auto& in : instances) {
        auto q = quantize(in.connection, in.symbol, in.lambda, in.mu);
        tally.check(principal_symbol(q) == in.symbol && q.order() == in.symbol.degree(),
                    chart_name(in.symbol.chart()) + " " + in.symbol.to_string());
    }
    return tally;
}

Tally projective_invariance() {
    RandomGenerator gen(1002);
    Tally tally;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {2, 2}, {3, 1}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 26; ++t) {
            auto in = draw_instance(gen, c, 1, 3);
            auto alpha = nonzero_even_form(gen, c);
            tally.check(quantize(perturb(in.connection, alpha), in.symbol, in.lambda, in.mu) ==
                            quantize(in.connection, in.symbol, in.lambda, in.mu),
                        chart_name(c) + " " + in.symbol.to_string());
        }
    }
    return tally;
}

Tally lift_correctness(const std::vector<Instance>& instances) {
    Tally tally;
    for (const auto& in : instances) {
        auto lift = div_free_lift(in.connection, in.symbol);
        tally.check(descend(lift) == in.symbol, "descent of the lift " + in.symbol.to_string());
        if (lift.degree() > 0)
            tally.check(tilde_divergence(in.connection, lift).is_zero(), "divergence of the lift " + in.symbol.to_string());
    }
    RandomGenerator gen(1003);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {2, 2}, {3, 1}, {1, 3}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 4; ++t) {
            auto g = perturb(gen.connection(c, 4, 2), gen.one_form(c, 0, 1));
            for (int j = 0; j <= 3; ++j) {
                auto a = gen.symbol(c, gen.half_integer(-2, 2), j, m ? gen.uniform(0, 1) : 0, 2, 1);
                for (int l = j == 0 ? 1 : 0; l <= 3; ++l) {
                    auto lifted = vee(horizontal_lift(a), euler_power(c, l));
                    tally.check(tilde_divergence(g, lifted) == tilde_divergence_formula(g, a, l),
                                chart_name(c) + " j=" + std::to_string(j) + " l=" + std::to_string(l));
                }
            }
        }
    }
    return tally;
}

Tally thomas_consistency() {
    RandomGenerator gen(1004);
    Tally tally;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 2}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 10; ++t) {
            auto check = check_thomas_connection(gen.connection(c, 5, 2));
            tally.check(check.frame_matches_coordinates, chart_name(c) + " frame vs coordinates");
            tally.check(check.euler_invariant, chart_name(c) + " Lie derivative along E");
        }
    }
    return tally;
}

Tally naturality() {
    RandomGenerator gen(1005);
    Tally tally;
    auto check = [&](const CoordinateChange& phi, const Instance& in) {
        auto lhs = quantize(pullback(phi, in.connection), pullback(phi, in.symbol), in.lambda, in.mu);
        tally.check(lhs == pullback(phi, quantize(in.connection, in.symbol, in.lambda, in.mu)),
                    chart_name(phi.chart()) + " " + in.symbol.to_string());
    };
    auto c22 = make_chart(2, 2);
    auto P = [&](const char* s) { return parse_expr(s, c22); };
    CoordinateChange shear(c22, {P("x1 + x3*x4"), P("x2"), P("x3"), P("x4")}, {P("x1 - x3*x4"), P("x2"), P("x3"), P("x4")});
    for (int t = 0; t < 12; ++t) check(shear, draw_instance(gen, c22, 1, 2));
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 12; ++t) check(gen.affine_change(c), draw_instance(gen, c, 1, 2));
    }
    return tally;
}

Tally flat_equivariance(int& quarantined) {
    RandomGenerator gen(1006);
    Tally tally;
    quarantined = 0;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}}) {
        auto c = make_chart(n, m);
        auto flat = SuperConnection::flat(c);
        for (const auto& x : flat_projective_generators(c)) {
            if (!preserves_flat_projective_class(c, x)) {
                ++quarantined;
                continue;
            }
            for (int t = 0; t < 3; ++t) {
                auto in = draw_instance(gen, c, 1, 2);
                tally.check(lie_derivative(x, quantize(flat, in.symbol, in.lambda, in.mu)) ==
                                quantize(flat, lie_derivative(x, in.symbol), in.lambda, in.mu),
                            chart_name(c) + " " + in.symbol.to_string());
            }
        }
    }
    return tally;
}

int run_cli(const std::string& args) {
#ifdef SUPERQUANT_CLI_PATH
    std::string command = std::string("\"") + SUPERQUANT_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    (void)args;
    return -1;
#endif
}

Tally criticality_gate() {
    Tally tally;
    auto report = criticality(2, 0, 1, 1);
    tally.check(report.entries.size() == 1 && report.entries[0].k == 1 && report.entries[0].l == 1 &&
                    report.entries[0].gamma == 0 && report.critical(),
                "criticality(2,0,1,1) reports gamma_1 = 0");

    auto c = make_chart(2, 0);
    ContraSymbol s = SymmetricTensor::symbol(c, 1, 1);
    s.add_term({0}, parse_expr("x1", c));
    bool rejected = false;
    try {
        quantize(SuperConnection::flat(c), s, 0, 1);
    } catch (const CriticalityError& e) {
        rejected = e.k() == 1 && e.l() == 1;
    }
    tally.check(rejected, "quantize raises the criticality precondition");

    auto path = std::filesystem::temp_directory_path() / "superquant_critical_spec.json";
    {
        ProblemSpec spec;
        spec.chart = c;
        spec.symbol = s;
        spec.lambda = Rational(0);
        spec.mu = Rational(1);
        std::ofstream(path) << to_json(spec).dump();
    }
    tally.check(run_cli("quantize \"" + path.string() + "\"") == 3, "command line exit code 3");
    std::filesystem::remove(path);

    auto negative = criticality(0, 2, 0, 2);
    bool flagged = false;
    for (const auto& e : negative.entries)
        if (2 * e.k - e.l == 2 && e.gamma == 0) flagged = true;
    tally.check(flagged && negative.critical(), "delta = 0 critical at n-m = -2, 2k-l = 2");
    return tally;
}

Tally ansatz_verdicts() {
    Tally tally;
    const Rational half(1, 2);
    tally.check(!ansatz_degree2_system(1, 0, half, half).solvable, "(1|0) unsolvable");
    tally.check(!ansatz_degree2_system(2, 1, half, half).solvable, "(2|1) unsolvable");
    tally.check(ansatz_degree2_system(2, 0, half, half).solvable, "(2|0) solvable at lambda = mu = 1/2");
    auto plane = ansatz_degree2_system(2, 0, 0, 0);
    tally.check(plane.solvable && plane.free_unknowns.empty(), "(2|0) uniquely solvable at lambda = mu = 0");
    if (!plane.solution) return tally;
    RandomGenerator gen(1008);
    auto c = make_chart(2, 0);
    for (int t = 0; t < 24; ++t) {
        auto g = gen.connection(c, 4, 2);
        auto s = gen.nonzero_symbol(c, 0, 2, 0, 3, 2);
        tally.check(degree2_ansatz(g, s, 0, 0, *plane.solution) == quantize(g, s, 0, 0), "ansatz vs quantize " + s.to_string());
    }
    return tally;
}

Tally special_formulas() {
    RandomGenerator gen(1009);
    Tally tally;
    auto c = make_chart(1, 2);
    for (Rational t : {Rational(0), Rational(1), Rational(-2, 3)})
        for (int trial = 0; trial < 50; ++trial) {
            auto g = gen.connection(c, 4, 1);
            auto alpha = nonzero_even_form(gen, c);
            Rational lambda = gen.half_integer(-2, 2), delta = gen.half_integer(-2, 2);
            auto s = gen.nonzero_symbol(c, delta, 1, gen.uniform(0, 1), 2, 1);
            tally.check(special_nm_minus1(perturb(g, alpha), s, lambda, lambda + delta, t) ==
                            special_nm_minus1(g, s, lambda, lambda + delta, t),
                        "degree 1, t = " + to_string(t));
        }
    for (int trial = 0; trial < 50; ++trial) {
        auto g = gen.connection(c, 4, 1);
        auto alpha = nonzero_even_form(gen, c);
        Rational lambda = gen.half_integer(-2, 2), delta = gen.half_integer(-2, 2);
        auto s = gen.nonzero_symbol(c, delta, 2, gen.uniform(0, 1), 2, 1);
        auto q = special_nm_minus1(g, s, lambda, lambda + delta, 0);
        tally.check(special_nm_minus1(perturb(g, alpha), s, lambda, lambda + delta, 0) == q && principal_symbol(q) == s,
                    "degree 2");
    }
    return tally;
}

std::vector<std::pair<std::string, Tally>> substrate() {
    RandomGenerator gen(1010);
    Tally comm, leibniz, partials, ber_mult, ber_deriv;
    const std::vector<std::pair<int, int>> dims{{2, 0}, {1, 1}, {2, 2}, {1, 3}};
    for (int t = 0; t < 240; ++t) {
        auto [n, m] = dims[t % dims.size()];
        auto c = make_chart(n, m);
        int pf = m ? gen.uniform(0, 1) : 0, pg = m ? gen.uniform(0, 1) : 0;
        auto f = gen.function(c, pf), g = gen.function(c, pg);
        comm.check(f * g == (g * f) * Rational(sign(pf * pg)), "supercommutativity");
        int i = gen.uniform(0, c->dim() - 1), j = gen.uniform(0, c->dim() - 1);
        int pi = c->parity(i), pj = c->parity(j);
        leibniz.check(partial(i, f * g) == partial(i, f) * g + (f * partial(i, g)) * Rational(sign(pi * pf)), "Leibniz");
        partials.check(partial(i, partial(j, f)) == partial(j, partial(i, f)) * Rational(sign(pi * pj)), "graded partials");
    }
    const std::vector<std::pair<int, int>> matrix_dims{{1, 1}, {2, 2}, {1, 3}, {2, 3}};
    for (int t = 0; t < 220; ++t) {
        auto [n, m] = matrix_dims[t % matrix_dims.size()];
        auto c = make_chart(n, m);
        auto parity = SuperMatrix::coordinate_parities(*c);
        auto a = gen.supported_matrix(c), b = gen.supported_matrix(c);
        ber_mult.check(berezinian(a * b) == berezinian(a) * berezinian(b), "Ber(AB) = Ber(A) Ber(B)");
        auto ainv = inverse(a);
        int i = gen.uniform(0, c->dim() - 1);
        SuperMatrix da(c, parity);
        for (int r = 0; r < a.size(); ++r)
            for (int s = 0; s < a.size(); ++s) da(r, s) = partial(i, a(r, s)) * Rational(sign(c->parity(i) * parity[r]));
        ber_deriv.check(partial(i, berezinian(a)) == berezinian(a) * supertrace(da * ainv), "d Ber = Ber str(dA A^-1)");
    }
    return {{"supercommutativity", comm},
            {"Leibniz rule", leibniz},
            {"graded commutation of partials", partials},
            {"Berezinian multiplicativity", ber_mult},
            {"Berezinian derivative", ber_deriv}};
}

} // namespace

int main() {
    bool all = true;
    auto line = [&](int number, const std::string& title, const std::function<std::string(bool&)>& body) {
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            detail = body(ok);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << number << ". " << title << ": " << detail << " ["
                  << static_cast<int>(seconds * 1000) << " ms]" << std::endl;
    };
    auto report = [](const Tally& t, bool& ok, int minimum) {
        ok = t.all() && t.total >= minimum;
        std::string out = t.summary() + " exact";
        for (const auto& n : t.notes) out += "; failed: " + n;
        return out;
    };

    const auto instances = principal_instances();
    line(1, "principal symbol of the quantization", [&](bool& ok) {
        return report(principal_symbol_exactness(instances), ok, 100) + " on (2|0),(1|1),(2|1),(2|2), degree <= 3";
    });
    line(2, "projective invariance", [&](bool& ok) { return report(projective_invariance(), ok, 100) + " random even alpha, degree <= 3"; });
    line(3, "lift correctness", [&](bool& ok) {
        return report(lift_correctness(instances), ok, 200) + " (descent, vanishing divergence, three-term divergence formula l <= 3)";
    });
    line(4, "lifted connection consistency", [&](bool& ok) {
        return report(thomas_consistency(), ok, 40) + " frame vs coordinate Christoffel symbols and L_E = 0 on (2|0),(2|2)";
    });
    line(5, "naturality", [&](bool& ok) {
        return report(naturality(), ok, 36) + " odd shear on (2|2), random affine changes on (2|0),(2|1)";
    });
    line(6, "flat projective equivariance", [&](bool& ok) {
        int quarantined = 0;
        auto t = flat_equivariance(quarantined);
        return report(t, ok, 1) + " on (2|0),(2|1), " + std::to_string(quarantined) + " generators quarantined";
    });
    line(7, "criticality gate", [&](bool& ok) { return report(criticality_gate(), ok, 4); });
    line(8, "degree-2 ansatz at superdimension 1", [&](bool& ok) {
        return report(ansatz_verdicts(), ok, 24) + " (unsolvable on (1|0),(2|1) at lambda = mu = 1/2; (2|0) matches quantization)";
    });
    line(9, "superdimension -1 formulas", [&](bool& ok) {
        return report(special_formulas(), ok, 200) + " on (1|2), t in {0, 1, -2/3} and degree 2";
    });
    line(10, "algebraic substrate", [&](bool& ok) {
        ok = true;
        std::string out;
        for (const auto& [name, t] : substrate()) {
            bool part = t.all() && t.total >= 200;
            ok = ok && part;
            if (!out.empty()) out += ", ";
            out += name + " " + t.summary();
        }
        return out;
    });
    return all ? 0 : 1;
}
