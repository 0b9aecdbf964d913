#include "superquant/lie.hpp"

#include "superquant/errors.hpp"

namespace superquant {

namespace {

int sign(int p) { return p % 2 ? -1 : 1; }

Chart chart_of(const VectorField& x) {
    for (const auto& c : x.components)
        if (c.chart()) return c.chart();
    throw InputError("vector field without chart");
}

} // namespace

SuperFunction super_divergence(const ChartSpec& chart, const VectorField& x) {
    int px = x.parity(chart);
    SuperFunction r(chart_of(x));
    for (int i = 0; i < chart.dim(); ++i) r += sign(chart.parity(i) * (px + 1)) * partial(i, x.components[i]);
    return r;
}

VectorField bracket(const ChartSpec& chart, const VectorField& x, const VectorField& y) {
    int s = sign(x.parity(chart) * y.parity(chart));
    VectorField r;
    for (int k = 0; k < chart.dim(); ++k) r.components.push_back(x.apply(y.components[k]) - s * y.apply(x.components[k]));
    return r;
}

VectorField covariant_derivative(const SuperConnection& connection, const VectorField& x, const VectorField& y) {
    const ChartSpec& chart = *connection.chart();
    const int n = chart.dim();
    int py = y.parity(chart);
    VectorField r;
    for (int k = 0; k < n; ++k) r.components.push_back(x.apply(y.components[k]));
    for (int a = 0; a < n; ++a) {
        if (x.components[a].is_zero()) continue;
        for (int b = 0; b < n; ++b) {
            if (y.components[b].is_zero()) continue;
            SuperFunction xy = sign(chart.parity(a) * (py + chart.parity(b))) * x.components[a] * y.components[b];
            for (int k = 0; k < n; ++k)
                if (!connection.gamma(a, b, k).is_zero()) r.components[k] += xy * connection.gamma(a, b, k);
        }
    }
    return r;
}

WeightedDensity lie_derivative(const VectorField& x, const WeightedDensity& f) {
    const ChartSpec& chart = *chart_of(x);
    return {f.weight, x.apply(f.value) + f.weight * (super_divergence(chart, x) * f.value)};
}

JetFunction lie_derivative(const VectorField& x, const JetFunction& f, const Rational& weight) {
    const Chart& chart = chart_of(x);
    JetFunction r(chart);
    for (int i = 0; i < chart->dim(); ++i)
        if (!x.components[i].is_zero()) r += x.components[i] * partial(i, f);
    if (weight != 0) r += weight * (super_divergence(*chart, x) * f);
    return r;
}

ContraSymbol lie_derivative(const VectorField& x, const ContraSymbol& s) {
    const Chart& chart = s.chart();
    const int n = chart->dim();
    int px = x.parity(*chart);
    // L_X xi_i = -(-1)^{p(X)p(i)} (d_i X^j) xi_j.
    std::vector<SymmetricTensor> lie_xi, xi;
    for (int i = 0; i < n; ++i) {
        SymmetricTensor l = SymmetricTensor::symbol(chart, 0, 1);
        for (int j = 0; j < n; ++j) l.add_term({j}, -sign(px * chart->parity(i)) * partial(i, x.components[j]));
        lie_xi.push_back(l);
        SymmetricTensor e = SymmetricTensor::symbol(chart, 0, 1);
        e.add_term({i}, SuperFunction::constant(chart, 1));
        xi.push_back(e);
    }
    SymmetricTensor one = SymmetricTensor::symbol(chart, 0, 0);
    one.add_term({}, SuperFunction::constant(chart, 1));
    SuperFunction sdiv = super_divergence(*chart, x);
    ContraSymbol r = SymmetricTensor::symbol(chart, s.weight(), s.degree());
    for (const auto& [w, phi] : s.terms()) {
        SymmetricTensor head = SymmetricTensor::symbol(chart, 0, 0);
        head.add_term({}, x.apply(phi) + s.weight() * (sdiv * phi));
        for (int i : w) head = vee(head, xi[i]);
        for (const auto& [v, c] : head.terms()) r.add_term(v, c);
        int pphi = phi.parity().value_or(0);
        SymmetricTensor moved(chart, s.index_parity(), 0, s.degree());
        for (std::size_t j = 0; j < w.size(); ++j) {
            SymmetricTensor t = one;
            for (std::size_t a = 0; a < w.size(); ++a) t = vee(t, a == j ? lie_xi[w[a]] : xi[w[a]]);
            int before = 0;
            for (std::size_t a = 0; a < j; ++a) before += chart->parity(w[a]);
            moved += sign(px * before) * t;
        }
        SymmetricTensor term = sign(px * pphi) * (phi * moved);
        for (const auto& [v, c] : term.terms()) r.add_term(v, c);
    }
    return r;
}

std::vector<SuperFunction> lie_derivative(const VectorField& x, const SuperConnection& connection) {
    const Chart& chart = connection.chart();
    const int n = chart->dim();
    int px = x.parity(*chart);
    auto unit = [&](int i) {
        VectorField e;
        for (int j = 0; j < n; ++j) e.components.push_back(SuperFunction::constant(chart, i == j ? 1 : 0));
        return e;
    };
    std::vector<VectorField> units, brackets;
    for (int i = 0; i < n; ++i) {
        units.push_back(unit(i));
        brackets.push_back(bracket(*chart, x, units.back()));
    }
    std::vector<SuperFunction> table(n * n * n, SuperFunction(chart));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j && chart->parity(i)) continue;
            VectorField nij;
            for (int k = 0; k < n; ++k) nij.components.push_back(connection.gamma(i, j, k));
            VectorField a = bracket(*chart, x, nij);
            VectorField b = covariant_derivative(connection, brackets[i], units[j]);
            VectorField c = covariant_derivative(connection, units[i], brackets[j]);
            int s = sign(px * chart->parity(i));
            for (int k = 0; k < n; ++k)
                table[(i * n + j) * n + k] = a.components[k] - b.components[k] - s * c.components[k];
        }
    return table;
}

DifferentialOperator lie_derivative(const VectorField& x, const DifferentialOperator& d) {
    const Chart& chart = d.chart;
    int px = x.parity(*chart);
    auto pd = d.parity();
    if (!pd) throw InputError("Lie derivative of an operator without definite parity");
    JetFunction u = JetFunction::argument(chart);
    JetFunction left = lie_derivative(x, apply_operator(d, u), d.mu);
    JetFunction right = apply_operator(d, lie_derivative(x, u, d.lambda));
    JetFunction total = left - sign(px * *pd) * right;
    return DifferentialOperator::from_jet(total, d.lambda, d.mu);
}

} // namespace superquant
