#include "random_objects.hpp"

#include "superquant/errors.hpp"
#include "superquant/lie.hpp"
#include "superquant/parse.hpp"
#include "superquant/projective.hpp"
#include "superquant/quantize.hpp"

#include <doctest.h>

using namespace superquant;
using superquant::testing::Generator;

namespace {

SuperFunction P(const std::string& s, const Chart& c) { return parse_expr(s, c); }

ContraSymbol x1d1(const Chart& c, const Rational& weight) {
    ContraSymbol s = SymmetricTensor::symbol(c, weight, 1);
    s.add_term({0}, P("x1", c));
    return s;
}

} // namespace

TEST_CASE("flat quantization of x1 d1") {
    auto c = make_chart(2, 0);
    auto flat = SuperConnection::flat(c);
    auto q0 = quantize(flat, x1d1(c, 0), 0, 0);
    CHECK(q0.terms.size() == 1);
    CHECK(q0.terms.at({1, 0}) == P("x1", c));
    auto q1 = quantize(flat, x1d1(c, 0), 1, 1);
    CHECK(q1.terms.size() == 2);
    CHECK(q1.terms.at({1, 0}) == P("x1", c));
    CHECK(q1.terms.at({0, 0}) == P("1", c));
    CHECK_THROWS_AS(quantize(flat, x1d1(c, 0), 0, 1), InputError);
}

TEST_CASE("quantization has the symbol as principal part") {
    Generator gen(511);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {2, 1}, {2, 2}}) {
        auto c = make_chart(n, m);
        for (int trial = 0; trial < 6; ++trial) {
            int k = gen.uniform(0, n + m >= 4 ? 2 : 3);
            Rational lambda = gen.half_integer(-2, 2), delta = gen.half_integer(-1, 3);
            auto g = n - m == 1 ? SuperConnection::flat(c) : gen.connection(c, 3, 1);
            auto s = gen.nonzero_symbol(c, delta, k, m ? gen.uniform(0, 1) : 0, 2, 1);
            try {
                auto q = quantize(g, s, lambda, lambda + delta);
                CHECK(principal_symbol(q) == s);
                CHECK(q.order() <= k);
            } catch (const CriticalityError&) {
            }
        }
    }
}

TEST_CASE("quantization is projectively invariant") {
    Generator gen(523);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 2}, {3, 1}, {1, 3}}) {
        auto c = make_chart(n, m);
        for (int trial = 0; trial < 3; ++trial) {
            int k = gen.uniform(1, 2);
            Rational lambda = gen.half_integer(-2, 2), delta = gen.half_integer(-1, 3);
            if (criticality(n, m, delta, k).critical()) continue;
            auto g = gen.connection(c, 3, 1);
            auto s = gen.nonzero_symbol(c, delta, k, m ? gen.uniform(0, 1) : 0, 2, 1);
            auto alpha = gen.one_form(c, 0, 1);
            CHECK(quantize(perturb(g, alpha), s, lambda, lambda + delta) == quantize(g, s, lambda, lambda + delta));
        }
    }
}

TEST_CASE("quantization is natural") {
    Generator gen(541);
    auto check = [&](const CoordinateChange& phi, const SuperConnection& g, int k) {
        const Chart& c = g.chart();
        Rational lambda = gen.half_integer(-2, 2), delta = gen.half_integer(-1, 2);
        if (criticality(c->n, c->m, delta, k).critical()) return;
        auto s = gen.nonzero_symbol(c, delta, k, c->m ? gen.uniform(0, 1) : 0, 2, 1);
        auto lhs = quantize(pullback(phi, g), pullback(phi, s), lambda, lambda + delta);
        CHECK(lhs == pullback(phi, quantize(g, s, lambda, lambda + delta)));
    };
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}}) {
        auto c = make_chart(n, m);
        for (int trial = 0; trial < 3; ++trial) {
            auto g = n - m == 1 ? SuperConnection::flat(c) : gen.connection(c, 3, 1);
            check(gen.affine_change(c), g, gen.uniform(1, 2));
        }
    }
    auto c = make_chart(2, 2);
    CoordinateChange odd_shear(c, {P("x1 + x3*x4", c), P("x2", c), P("x3", c), P("x4", c)},
                               {P("x1 - x3*x4", c), P("x2", c), P("x3", c), P("x4", c)});
    for (int trial = 0; trial < 3; ++trial) check(odd_shear, gen.connection(c, 3, 1), gen.uniform(1, 2));
}

TEST_CASE("flat generators preserve the projective class and commute with quantization") {
    Generator gen(557);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}}) {
        auto c = make_chart(n, m);
        auto flat = SuperConnection::flat(c);
        for (const auto& x : flat_projective_generators(c)) {
            REQUIRE(preserves_flat_projective_class(c, x));
            int k = gen.uniform(1, 2);
            Rational lambda = gen.half_integer(-2, 2), delta = gen.half_integer(-1, 2);
            if (criticality(n, m, delta, k).critical()) continue;
            auto s = gen.nonzero_symbol(c, delta, k, m ? gen.uniform(0, 1) : 0, 2, 2);
            CHECK(lie_derivative(x, quantize(flat, s, lambda, lambda + delta)) ==
                  quantize(flat, lie_derivative(x, s), lambda, lambda + delta));
        }
    }
    auto c = make_chart(2, 0);
    VectorField not_projective{{P("x1^3", c), SuperFunction(c)}};
    CHECK_FALSE(preserves_flat_projective_class(c, not_projective));
}

TEST_CASE("critical and superdimension preconditions") {
    auto c = make_chart(2, 0);
    CHECK_THROWS_AS(quantize(SuperConnection::flat(c), x1d1(c, 1), 0, 1), CriticalityError);
    auto c12 = make_chart(1, 2);
    CHECK_THROWS_AS(quantize(SuperConnection::flat(c12), x1d1(c12, 0), 0, 0), SuperdimensionError);
    auto c21 = make_chart(2, 1);
    auto curved = SuperConnection::from_entries(c21, {{0, 0, 0, P("x2", c21)}});
    CHECK_THROWS_AS(quantize(curved, x1d1(c21, 0), 0, 0), SuperdimensionError);
    CHECK(quantize(SuperConnection::flat(c21), x1d1(c21, 0), 1, 1).terms.size() == 2);
}

TEST_CASE("superdimension -1 formulas") {
    auto c = make_chart(1, 2);
    auto flat = SuperConnection::flat(c);
    ContraSymbol d1 = SymmetricTensor::symbol(c, 0, 1);
    d1.add_term({0}, SuperFunction::constant(c, 1));
    auto q = special_nm_minus1(flat, d1, 0, 0, 0);
    CHECK(q.terms.size() == 1);
    CHECK(q.terms.at({1, 0, 0}) == SuperFunction::constant(c, 1));
    CHECK_THROWS_AS(special_nm_minus1(SuperConnection::flat(make_chart(2, 0)), x1d1(make_chart(2, 0), 0), 0, 0, 0),
                    SuperdimensionError);

    Generator gen(563);
    for (int trial = 0; trial < 8; ++trial) {
        auto g = gen.connection(c, 4, 1);
        auto alpha = gen.one_form(c, 0, 1);
        Rational lambda = gen.half_integer(-2, 2), delta = gen.half_integer(-2, 2);
        for (Rational t : {Rational(0), Rational(1), Rational(-2, 3)}) {
            auto s = gen.nonzero_symbol(c, delta, 1, gen.uniform(0, 1), 2, 1);
            CHECK(special_nm_minus1(perturb(g, alpha), s, lambda, lambda + delta, t) ==
                  special_nm_minus1(g, s, lambda, lambda + delta, t));
        }
        auto s2 = gen.nonzero_symbol(c, delta, 2, gen.uniform(0, 1), 2, 1);
        auto q2 = special_nm_minus1(g, s2, lambda, lambda + delta, 0);
        CHECK(q2 == special_nm_minus1(perturb(g, alpha), s2, lambda, lambda + delta, 0));
        CHECK(principal_symbol(q2) == s2);
    }
}

TEST_CASE("degree-two ansatz system") {
    auto generic = ansatz_degree2_system(1, 0, Rational(1, 2), Rational(1, 2));
    CHECK_FALSE(generic.solvable);
    CHECK_FALSE(generic.solution);
    auto functions = ansatz_degree2_system(1, 0, 0, 0);
    CHECK(functions.solvable);
    CHECK(functions.free_unknowns == std::vector<int>{2});

    auto plane = ansatz_degree2_system(2, 0, 0, 0);
    REQUIRE(plane.solvable);
    CHECK(plane.free_unknowns.empty());
    CHECK(*plane.solution == std::array<Rational, 3>{Rational(1, 5), 0, 0});

    Generator gen(569);
    auto c = make_chart(2, 0);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = gen.connection(c, 4, 2);
        auto s = gen.nonzero_symbol(c, 0, 2, 0, 3, 2);
        CHECK(degree2_ansatz(g, s, 0, 0, *plane.solution) == quantize(g, s, 0, 0));
    }
}
