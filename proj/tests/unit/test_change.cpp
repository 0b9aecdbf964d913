#include "random_objects.hpp"

#include "superquant/change.hpp"
#include "superquant/errors.hpp"
#include "superquant/operator.hpp"
#include "superquant/parse.hpp"

#include <doctest.h>

using namespace superquant;
using superquant::testing::Generator;

namespace {

SuperFunction P(const std::string& s, const Chart& c) { return parse_expr(s, c); }

int sign(int p) { return p % 2 ? -1 : 1; }

std::vector<SuperFunction> images(const Chart& c, const std::vector<std::string>& text) {
    std::vector<SuperFunction> r;
    for (const auto& t : text) r.push_back(P(t, c));
    return r;
}

// Christoffel symbols of the pulled-back connection derived directly from
// nabla_{d_i} d_j with d_j = (d_j F^l) dbar_l.
std::vector<SuperFunction> derived_christoffels(const CoordinateChange& change, const SuperConnection& bar) {
    const Chart& c = change.chart();
    const int n = c->dim();
    auto p = [&](int i) { return c->parity(i); };
    const auto& F = change.forward();
    std::vector<SuperFunction> table(n * n * n, SuperFunction(c));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) {
                SuperFunction coeff = partial(i, partial(j, F[r]));
                for (int l = 0; l < n; ++l)
                    for (int t = 0; t < n; ++t)
                        coeff += sign(p(i) * (p(j) + p(l))) * partial(j, F[l]) * partial(i, F[t]) *
                                 change.compose(bar.gamma(t, l, r));
                for (int k = 0; k < n; ++k) table[(i * n + j) * n + k] += coeff * change.inverse_jacobian(r, k);
            }
    return table;
}

} // namespace

TEST_CASE("differential operator basics") {
    auto c = make_chart(2, 2);
    DifferentialOperator d{c, 0, 0, {}};
    d.terms[{0, 0, 1, 0}] = SuperFunction::constant(c, 1);
    auto r = apply_operator(d, WeightedDensity{0, P("x3*x4", c)});
    CHECK(r.value == P("x4", c));
    CHECK(d.parity() == 1);
    DifferentialOperator e{c, 0, 0, {}};
    e.terms[{1, 0, 0, 0}] = P("x1", c);
    e.terms[{0, 0, 0, 0}] = SuperFunction::constant(c, 1);
    auto s = principal_symbol(e);
    CHECK(s.degree() == 1);
    CHECK(s.coefficient({0}) == P("x1", c));
    CHECK(apply_operator(e, WeightedDensity{0, P("x1^2", c)}).value == P("3*x1^2", c));
    CHECK_THROWS_AS(apply_operator(e, WeightedDensity{1, P("x1", c)}), InputError);
    auto jet = JetFunction::argument(c);
    CHECK(DifferentialOperator::from_jet(apply_operator(e, jet), 0, 0) == e);
}

TEST_CASE("coordinate change validation and examples") {
    auto c = make_chart(2, 2);
    CHECK_THROWS_AS(CoordinateChange(c, images(c, {"x1+x3*x4", "x2", "x3", "x4"}), images(c, {"x1", "x2", "x3", "x4"})),
                    InputError);
    CHECK_THROWS_AS(CoordinateChange(c, images(c, {"x1+x2^2", "x2", "x3", "x4"}),
                                     images(c, {"x1-x2^2", "x2", "x3", "x4"})),
                    InputError);
    CHECK_THROWS_AS(CoordinateChange(c, images(c, {"-x1", "x2", "x3", "x4"}), images(c, {"-x1", "x2", "x3", "x4"})),
                    InputError);
    CoordinateChange ch(c, images(c, {"x1+x3*x4", "x2", "x3", "x4"}), images(c, {"x1-x3*x4", "x2", "x3", "x4"}));
    CHECK(ch.berezinian() == SuperFunction::constant(c, 1));
    CHECK(pullback(ch, P("x1^2", c)) == P("x1^2+2*x1*x3*x4", c));
    // dbar_1 = d_1 and dbar_3 = d_3 - x4 d_1.
    VectorField d3{images(c, {"0", "0", "1", "0"})};
    CHECK(pullback(ch, d3) == VectorField{images(c, {"-x4", "0", "1", "0"})});

    auto c2 = make_chart(2, 0);
    CoordinateChange scale(c2, images(c2, {"2*x1", "x2"}), images(c2, {"1/2*x1", "x2"}));
    CHECK(scale.berezinian() == SuperFunction::constant(c2, 2));
    CHECK(pullback(scale, WeightedDensity{1, P("x1", c2)}).value == P("4*x1", c2));
}

TEST_CASE("pullback and push-forward are inverse") {
    Generator gen(101);
    for (auto [n, m] : {std::pair{2, 0}, {1, 1}, {2, 1}, {2, 2}, {1, 3}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 8; ++t) {
            auto ch = gen.change(c);
            auto f = gen.function(c, gen.uniform(0, 1));
            CHECK(push_forward(ch, pullback(ch, f)) == f);
            WeightedDensity phi{gen.half_integer(-2, 2), gen.function(c, 0)};
            CHECK(push_forward(ch, pullback(ch, phi)) == phi);
            auto s = gen.symbol(c, gen.half_integer(-2, 2), gen.uniform(0, 3), gen.uniform(0, 1));
            CHECK(push_forward(ch, pullback(ch, s)) == s);
            auto g = gen.connection(c);
            CHECK(push_forward(ch, pullback(ch, g)) == g);
        }
    }
}

TEST_CASE("connection transformation law matches the derivation") {
    Generator gen(103);
    for (auto [n, m] : {std::pair{2, 0}, {1, 1}, {2, 1}, {2, 2}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 8; ++t) {
            auto ch = gen.change(c);
            auto g = gen.connection(c);
            CHECK(pullback(ch, g).table() == derived_christoffels(ch, g));
        }
    }
}

TEST_CASE("covariant derivatives are natural") {
    Generator gen(107);
    for (auto [n, m] : {std::pair{2, 0}, {1, 1}, {2, 1}, {2, 2}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 6; ++t) {
            auto ch = gen.change(c);
            auto g = gen.connection(c);
            auto g_star = pullback(ch, g);
            auto x = gen.vector_field(c, gen.uniform(0, 1), 1);
            auto x_star = pullback(ch, x);
            WeightedDensity phi{gen.half_integer(-2, 2), gen.function(c, gen.uniform(0, 1))};
            CHECK(pullback(ch, cov_deriv_density(g, x, phi)) == cov_deriv_density(g_star, x_star, pullback(ch, phi)));
            auto s = gen.symbol(c, gen.half_integer(-2, 2), gen.uniform(0, 2), gen.uniform(0, 1));
            CHECK(pullback(ch, cov_deriv_symbol(g, x, s)) == cov_deriv_symbol(g_star, x_star, pullback(ch, s)));
            if (s.degree() > 0) CHECK(pullback(ch, divergence(g, s)) == divergence(g_star, pullback(ch, s)));
        }
    }
}

TEST_CASE("operator pullback") {
    Generator gen(109);
    for (auto [n, m] : {std::pair{2, 0}, {1, 1}, {2, 2}}) {
        auto c = make_chart(n, m);
        for (int t = 0; t < 6; ++t) {
            auto ch = gen.change(c);
            Rational lambda = gen.half_integer(-2, 2), mu = gen.half_integer(-2, 2);
            int parity = gen.uniform(0, 1);
            DifferentialOperator d{c, lambda, mu, {}};
            for (int k = 0; k < 3; ++k) {
                MultiIndex alpha(c->dim(), 0);
                for (int r = gen.uniform(0, 2); r > 0; --r) {
                    int i = gen.uniform(0, c->dim() - 1);
                    if (c->parity(i) == 0 || alpha[i] == 0) ++alpha[i];
                }
                auto coeff = gen.function(c, (parity + odd_length(*c, alpha)) % 2, 2, 1);
                if (!coeff.is_zero()) d.terms[alpha] = coeff;
            }
            auto d_star = pullback(ch, d);
            WeightedDensity f{lambda, gen.function(c, gen.uniform(0, 1))};
            CHECK(apply_operator(d_star, pullback(ch, f)) == pullback(ch, apply_operator(d, f)));
            if (!d.is_zero()) CHECK(principal_symbol(d_star) == pullback(ch, principal_symbol(d)));
            CHECK(push_forward(ch, d_star) == d);
        }
    }
}
