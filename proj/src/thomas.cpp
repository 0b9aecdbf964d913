#include "superquant/thomas.hpp"

#include "superquant/errors.hpp"
#include "superquant/lie.hpp"
#include "superquant/projective.hpp"
#include "superquant/supermatrix.hpp"

namespace superquant {

namespace {

SuperFunction with_sign(const SuperFunction& f, int parity) { return parity % 2 ? -f : f; }

void require_lift_dimension(const ChartSpec& chart) {
    if (chart.superdim() == -1) throw SuperdimensionError(-1, "the Thomas lift is undefined at superdimension -1");
}

Word shifted(const Word& w, int by) {
    Word v = w;
    for (int& i : v) i += by;
    return v;
}

CovTensor ricci_cov_tensor(const SuperConnection& connection) {
    const Chart& chart = connection.chart();
    const int n = chart->dim();
    auto r = lift_ricci_term(connection, curvature_package(connection));
    CovTensor t(chart, SuperMatrix::coordinate_parities(*chart), 0, 2);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            if (a != b || chart->parity(a) == 0) t.set_value({a, b}, JetFunction(r[a * n + b]));
    return t;
}

} // namespace

std::vector<int> lifted_parity(const ChartSpec& chart) {
    std::vector<int> p{0};
    for (int i = 0; i < chart.dim(); ++i) p.push_back(chart.parity(i));
    return p;
}

FrameGeometry thomas_frame(const SuperConnection& connection) {
    const Chart& chart = connection.chart();
    require_lift_dimension(*chart);
    const int n = chart->dim();
    const int size = n + 1;
    auto curvature = curvature_package(connection);
    auto r = lift_ricci_term(connection, curvature);
    const Rational d1 = chart->superdim() + 1;
    FrameGeometry g;
    g.chart = chart;
    g.parity = lifted_parity(*chart);
    g.coordinate.push_back(-1);
    g.multiplier.push_back(SuperFunction::constant(chart, 1));
    for (int i = 0; i < n; ++i) {
        g.coordinate.push_back(i);
        g.multiplier.push_back(-connection.trace(i));
    }
    g.coeffs.assign(size * size * size, SuperFunction(chart));
    auto at = [&](int a, int b, int c) -> SuperFunction& { return g.coeffs[(a * size + b) * size + c]; };
    const SuperFunction inv = SuperFunction::constant(chart, -1 / d1);
    at(0, 0, 0) = inv;
    for (int i = 0; i < n; ++i) {
        at(i + 1, 0, i + 1) = inv;
        at(0, i + 1, i + 1) = inv;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) at(i + 1, j + 1, k + 1) = connection.gamma(i, j, k);
            at(i + 1, j + 1, 0) = curvature.strR(i, j) * Rational(-1, 2) + r[i * n + j] * d1;
        }
    }
    return g;
}

LiftedTensor euler_power(const Chart& chart, int l) {
    LiftedTensor e(chart, lifted_parity(*chart), 0, l);
    e.add_term(Word(l, 0), SuperFunction::constant(chart, 1));
    return e;
}

LiftedTensor horizontal_lift(const ContraSymbol& s) {
    LiftedTensor r(s.chart(), lifted_parity(*s.chart()), s.weight(), s.degree());
    for (const auto& [w, c] : s.terms()) r.add_term(shifted(w, 1), c);
    return r;
}

ContraSymbol descend(const LiftedTensor& s) {
    ContraSymbol r = SymmetricTensor::symbol(s.chart(), s.weight(), s.degree());
    for (const auto& [w, c] : s.terms()) {
        bool has_euler = false;
        for (int i : w) has_euler = has_euler || i == 0;
        if (!has_euler) r.add_term(shifted(w, -1), c);
    }
    return r;
}

LiftedTensor tilde_divergence(const SuperConnection& connection, const LiftedTensor& s) {
    return divergence(thomas_frame(connection), s);
}

ContraSymbol interior_ricci_term(const SuperConnection& connection, const ContraSymbol& a) {
    return interior(ricci_cov_tensor(connection), a);
}

LiftedTensor tilde_divergence_formula(const SuperConnection& connection, const ContraSymbol& a, int l) {
    const Chart& chart = connection.chart();
    require_lift_dimension(*chart);
    const int j = a.degree();
    if (j + l == 0) throw InputError("divergence of a degree-0 tensor");
    LiftedTensor r(chart, lifted_parity(*chart), a.weight(), j + l - 1);
    if (j > 0) r += vee(horizontal_lift(divergence(connection, a)), euler_power(chart, l));
    if (j > 1)
        r += Rational(2 * (chart->superdim() + 1)) *
             vee(horizontal_lift(interior_ricci_term(connection, a)), euler_power(chart, l + 1));
    if (l > 0)
        r -= Rational(l) * gamma_value(chart->n, chart->m, a.weight(), 2 * j + l) *
             vee(horizontal_lift(a), euler_power(chart, l - 1));
    return r;
}

std::vector<ContraSymbol> lift_components(const SuperConnection& connection, const ContraSymbol& s) {
    const Chart& chart = connection.chart();
    require_lift_dimension(*chart);
    const int k = s.degree();
    require_noncritical(chart->n, chart->m, s.weight(), k);
    // a[j] holds A_{k-j}.
    std::vector<ContraSymbol> a{s};
    const Rational d1 = chart->superdim() + 1;
    for (int l = 0; l < k; ++l) {
        ContraSymbol next = divergence(connection, a[l]);
        if (l >= 1 && a[l - 1].degree() >= 2) next += Rational(2) * d1 * interior_ricci_term(connection, a[l - 1]);
        next *= Rational(1) / (Rational(l + 1) * gamma_value(chart->n, chart->m, s.weight(), 2 * k - l - 1));
        a.push_back(next);
    }
    return a;
}

LiftedTensor div_free_lift(const SuperConnection& connection, const ContraSymbol& s) {
    auto a = lift_components(connection, s);
    const Chart& chart = connection.chart();
    LiftedTensor r(chart, lifted_parity(*chart), s.weight(), s.degree());
    for (std::size_t j = 0; j < a.size(); ++j) r += vee(horizontal_lift(a[j]), euler_power(chart, static_cast<int>(j)));
    return r;
}

LiftedTensor coordinate_components(const SuperConnection& connection, const LiftedTensor& s) {
    const Chart& chart = connection.chart();
    const int n = chart->dim();
    std::vector<LiftedTensor> images;
    images.push_back(euler_power(chart, 1));
    for (int i = 0; i < n; ++i) {
        LiftedTensor v(chart, lifted_parity(*chart), 0, 1);
        v.add_term({i + 1}, SuperFunction::constant(chart, 1));
        v.add_term({0}, -connection.trace(i));
        images.push_back(v);
    }
    LiftedTensor r(chart, lifted_parity(*chart), s.weight(), s.degree());
    for (const auto& [w, c] : s.terms()) {
        LiftedTensor term(chart, lifted_parity(*chart), 0, 0);
        term.add_term({}, c);
        for (int a : w) term = vee(term, images[a]);
        for (const auto& [v, coeff] : term.terms()) r.add_term(v, coeff);
    }
    return r;
}

CovTensor tilde_nabla_s_power(const SuperConnection& connection, const JetFunction& f, const Rational& weight, int k) {
    return nabla_s_power(thomas_frame(connection), f, weight, k);
}

Chart thomas_chart(const Chart& chart) {
    std::vector<std::string> names{"x0"};
    for (const auto& name : chart->names) {
        if (name == "x0") throw InputError("coordinate name x0 is reserved for the Thomas bundle");
        names.push_back(name);
    }
    return make_chart(chart->n + 1, chart->m, names, chart->params);
}

namespace {

// Base functions viewed on the Thomas chart.
struct Embedding {
    Chart big;
    std::vector<SuperFunction> images;
    Embedding(const Chart& base, Chart t) : big(std::move(t)) {
        for (int i = 0; i < base->dim(); ++i) images.push_back(SuperFunction::coordinate(big, i + 1));
    }
    SuperFunction operator()(const SuperFunction& f) const { return substitute(f, images); }
};

} // namespace

SuperConnection thomas_coordinate_connection(const SuperConnection& connection) {
    const Chart& chart = connection.chart();
    const ChartSpec& c = *chart;
    require_lift_dimension(c);
    if (c.superdim() == 1)
        throw SuperdimensionError(1, "the coordinate Christoffel symbols of the lift are undefined at superdimension 1");
    const int n = c.dim();
    const int N = n + 1;
    auto p = [&](int i) { return c.parity(i); };
    auto pi = pi_invariant(connection);
    auto Pi = [&](int i, int j, int k) -> const SuperFunction& { return pi[(i * n + j) * n + k]; };
    Embedding embed(chart, thomas_chart(chart));
    std::vector<SuperFunction> table(N * N * N, SuperFunction(embed.big));
    auto at = [&](int a, int b, int cc) -> SuperFunction& { return table[(a * N + b) * N + cc]; };
    const Rational d = c.superdim();
    for (int a = 0; a < N; ++a) {
        at(0, a, a) = SuperFunction::constant(embed.big, -1 / (d + 1));
        at(a, 0, a) = SuperFunction::constant(embed.big, -1 / (d + 1));
    }
    const Rational factor = (d + 1) / (d - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) at(i + 1, j + 1, k + 1) = embed(Pi(i, j, k));
            SuperFunction v(chart);
            for (int q = 0; q < n; ++q) {
                SuperFunction inner = partial(q, Pi(i, j, q));
                for (int s = 0; s < n; ++s) inner -= Pi(q, i, s) * Pi(s, j, q);
                v += with_sign(inner, p(q) * (p(q) + p(i) + p(j)));
            }
            at(i + 1, j + 1, 0) = embed(v * factor);
        }
    return SuperConnection(embed.big, std::move(table));
}

std::vector<VectorField> thomas_frame_fields(const SuperConnection& connection) {
    const Chart& chart = connection.chart();
    const int n = chart->dim();
    Embedding embed(chart, thomas_chart(chart));
    std::vector<VectorField> fields;
    VectorField euler{std::vector<SuperFunction>(n + 1, SuperFunction(embed.big))};
    euler.components[0] = SuperFunction::constant(embed.big, 1);
    fields.push_back(euler);
    for (int i = 0; i < n; ++i) {
        VectorField h{std::vector<SuperFunction>(n + 1, SuperFunction(embed.big))};
        h.components[i + 1] = SuperFunction::constant(embed.big, 1);
        h.components[0] = -embed(connection.trace(i));
        fields.push_back(h);
    }
    return fields;
}

ThomasCheck check_thomas_connection(const SuperConnection& connection) {
    ThomasCheck out;
    const Chart& chart = connection.chart();
    FrameGeometry frame = thomas_frame(connection);
    SuperConnection coord = thomas_coordinate_connection(connection);
    auto fields = thomas_frame_fields(connection);
    Embedding embed(chart, coord.chart());
    const int size = frame.size();
    auto name = [&](int a) { return a == 0 ? std::string("E") : chart->names[a - 1] + "^h"; };
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            VectorField lhs = covariant_derivative(coord, fields[a], fields[b]);
            VectorField rhs{std::vector<SuperFunction>(size, SuperFunction(coord.chart()))};
            for (int c = 0; c < size; ++c) {
                SuperFunction coeff = embed(frame.coefficient(a, b, c));
                if (coeff.is_zero()) continue;
                for (int k = 0; k < size; ++k) rhs.components[k] += coeff * fields[c].components[k];
            }
            if (!(lhs == rhs)) {
                out.frame_matches_coordinates = false;
                out.mismatches.push_back("nabla_{" + name(a) + "} " + name(b));
            }
        }
    for (const auto& v : lie_derivative(fields[0], coord))
        if (!v.is_zero()) out.euler_invariant = false;
    // The same identity on the frame: [E, nabla_a b] - nabla_{[E,a]} b - nabla_a [E,b].
    const ChartSpec& big = *coord.chart();
    for (int a = 0; a < size && out.euler_invariant; ++a)
        for (int b = 0; b < size; ++b) {
            VectorField t = bracket(big, fields[0], covariant_derivative(coord, fields[a], fields[b]));
            VectorField u = covariant_derivative(coord, bracket(big, fields[0], fields[a]), fields[b]);
            VectorField w = covariant_derivative(coord, fields[a], bracket(big, fields[0], fields[b]));
            for (int k = 0; k < size; ++k)
                if (!(t.components[k] - u.components[k] - w.components[k]).is_zero()) out.euler_invariant = false;
        }
    return out;
}

} // namespace superquant
