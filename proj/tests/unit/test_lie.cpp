#include "random_objects.hpp"

#include "superquant/change.hpp"
#include "superquant/lie.hpp"
#include "superquant/parse.hpp"

#include <doctest.h>

using namespace superquant;
using superquant::testing::Generator;

namespace {

// Three extra odd coordinates e1, e2, e3 carry the infinitesimal parameter.
struct Extended {
    Chart base;
    Chart big;
    std::vector<SuperFunction> embedding;

    explicit Extended(const Chart& c) : base(c) {
        auto names = c->names;
        std::vector<std::string> even(names.begin(), names.begin() + c->n), odd(names.begin() + c->n, names.end());
        odd.push_back("e1");
        odd.push_back("e2");
        odd.push_back("e3");
        even.insert(even.end(), odd.begin(), odd.end());
        big = make_chart(c->n, c->m + 3, even);
        for (int i = 0; i < c->dim(); ++i) embedding.push_back(SuperFunction::coordinate(big, i));
    }

    SuperFunction lift(const SuperFunction& f) const { return substitute(f, embedding); }

    VectorField lift(const VectorField& x) const {
        VectorField r;
        for (const auto& c : x.components) r.components.push_back(lift(c));
        for (int e = 0; e < 3; ++e) r.components.push_back(SuperFunction(big));
        return r;
    }

    SymmetricTensor lift(const SymmetricTensor& s) const {
        SymmetricTensor r = SymmetricTensor::symbol(big, s.weight(), s.degree());
        for (const auto& [w, c] : s.terms()) r.add_term(w, lift(c));
        return r;
    }

    SuperConnection lift(const SuperConnection& g) const {
        const int n = base->dim(), N = big->dim();
        std::vector<SuperFunction> table(N * N * N, SuperFunction(big));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) table[(i * N + j) * N + k] = lift(g.gamma(i, j, k));
        return SuperConnection(big, table);
    }

    MultiIndex lift(const MultiIndex& alpha) const {
        MultiIndex r = alpha;
        r.insert(r.end(), 3, 0);
        return r;
    }

    DifferentialOperator lift(const DifferentialOperator& d) const {
        DifferentialOperator r{big, d.lambda, d.mu, {}};
        for (const auto& [alpha, c] : d.terms) r.terms[lift(alpha)] = lift(c);
        return r;
    }

    // t = e1 e2 for even X, t = e1 e2 e3 for odd X; every derivative of
    // x + t X stays nilpotent off the identity.
    SuperFunction parameter(int parity) const {
        const int d = big->dim();
        SuperFunction t = SuperFunction::coordinate(big, d - 3) * SuperFunction::coordinate(big, d - 2);
        return parity ? t * SuperFunction::coordinate(big, d - 1) : t;
    }

    // The change xbar = x + t X, inverse x - t X.
    CoordinateChange flow(const VectorField& x, int parity) const {
        VectorField lx = lift(x);
        SuperFunction t = parameter(parity);
        std::vector<SuperFunction> fwd, inv;
        for (int i = 0; i < big->dim(); ++i) {
            fwd.push_back(SuperFunction::coordinate(big, i) + t * lx.components[i]);
            inv.push_back(SuperFunction::coordinate(big, i) - t * lx.components[i]);
        }
        return CoordinateChange(big, fwd, inv);
    }
};

} // namespace

TEST_CASE("bracket and super divergence") {
    auto c = make_chart(1, 1);
    VectorField x{{parse_expr("x1", c), SuperFunction(c)}};
    VectorField y{{SuperFunction(c), parse_expr("x1*x2", c)}};
    CHECK(bracket(*c, x, y) == VectorField{{SuperFunction(c), parse_expr("x1*x2", c)}});
    CHECK(super_divergence(*c, y) == parse_expr("-x1", c));
    VectorField z{{parse_expr("x2", c), SuperFunction(c)}};
    CHECK(super_divergence(*c, z).is_zero());
    VectorField d2{{SuperFunction(c), SuperFunction::constant(c, 1)}};
    // [d2, d2] = 0 would be violated by a wrong sign for odd fields: [x2 d1, d2] has no trivial form.
    CHECK(bracket(*c, d2, d2).components[0].is_zero());
    CHECK(bracket(*c, z, d2) == VectorField{{SuperFunction::constant(c, 1), SuperFunction(c)}});
}

TEST_CASE("Lie derivatives match the infinitesimal pullback") {
    Generator gen(211);
    for (auto [n, m] : {std::pair{2, 0}, {1, 1}, {2, 1}, {1, 2}}) {
        auto c = make_chart(n, m);
        Extended ext(c);
        for (int trial = 0; trial < 8; ++trial) {
            int px = gen.uniform(0, 1);
            auto x = gen.vector_field(c, px, 2);
            auto flow = ext.flow(x, px);
            SuperFunction t = ext.parameter(px);

            WeightedDensity phi{gen.half_integer(-2, 2), gen.function(c, gen.uniform(0, 1))};
            WeightedDensity lphi{phi.weight, ext.lift(phi.value)};
            CHECK(pullback(flow, lphi).value - lphi.value == t * ext.lift(lie_derivative(x, phi).value));

            auto s = gen.symbol(c, gen.half_integer(-2, 2), gen.uniform(0, 3), gen.uniform(0, 1));
            CHECK(pullback(flow, ext.lift(s)) - ext.lift(s) == t * ext.lift(lie_derivative(x, s)));

            auto g = gen.connection(c);
            auto pulled = pullback(flow, ext.lift(g));
            auto lie = lie_derivative(x, g);
            const int N = c->dim();
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    for (int k = 0; k < N; ++k)
                        CHECK(pulled.gamma(i, j, k) - ext.lift(g.gamma(i, j, k)) ==
                              t * ext.lift(lie[(i * N + j) * N + k]));

            int pd = gen.uniform(0, 1);
            DifferentialOperator d{c, gen.half_integer(-2, 2), gen.half_integer(-2, 2), {}};
            for (int k = 0; k < 3; ++k) {
                MultiIndex alpha(c->dim(), 0);
                for (int r = gen.uniform(0, 2); r > 0; --r) {
                    int i = gen.uniform(0, c->dim() - 1);
                    if (c->parity(i) == 0 || alpha[i] == 0) ++alpha[i];
                }
                auto coeff = gen.function(c, (pd + odd_length(*c, alpha)) % 2, 2, 1);
                if (!coeff.is_zero()) d.terms[alpha] = coeff;
            }
            auto ld = lie_derivative(x, d);
            auto diff = pullback(flow, ext.lift(d)).as_jet() - ext.lift(d).as_jet();
            CHECK(diff == t * ext.lift(ld).as_jet());
        }
    }
}
