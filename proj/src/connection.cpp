#include "superquant/connection.hpp"

#include "superquant/errors.hpp"

#include <algorithm>
#include <numeric>

namespace superquant {

namespace {

SuperFunction with_sign(const SuperFunction& f, int parity) { return parity % 2 ? -f : f; }

std::string index_name(const ChartSpec& chart, int i, int j, int k) {
    return "Gamma_" + chart.names[i] + "," + chart.names[j] + "^" + chart.names[k];
}

std::vector<int> coordinate_parity(const ChartSpec& chart) {
    std::vector<int> p;
    for (int i = 0; i < chart.dim(); ++i) p.push_back(chart.parity(i));
    return p;
}

} // namespace

SuperConnection::SuperConnection(Chart chart, std::vector<SuperFunction> table)
    : chart_(std::move(chart)), table_(std::move(table)) {
    const int n = dim();
    if (static_cast<int>(table_.size()) != n * n * n) throw InputError("Christoffel table has the wrong size");
    for (auto& g : table_)
        if (!g.chart()) g = SuperFunction(chart_);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const auto& g = gamma(i, j, k);
                require_parity(g, (chart_->parity(i) + chart_->parity(j) + chart_->parity(k)) % 2,
                               index_name(*chart_, i, j, k));
                if (g != with_sign(gamma(j, i, k), chart_->parity(i) * chart_->parity(j)))
                    throw InputError("Christoffel symbols violate torsion-free supersymmetry at " +
                                     index_name(*chart_, i, j, k));
            }
}

SuperConnection SuperConnection::flat(const Chart& chart) {
    const int n = chart->dim();
    return SuperConnection(chart, std::vector<SuperFunction>(n * n * n, SuperFunction(chart)));
}

SuperConnection SuperConnection::from_entries(const Chart& chart, const std::vector<Entry>& entries) {
    const int n = chart->dim();
    std::vector<SuperFunction> table(n * n * n, SuperFunction(chart));
    std::vector<bool> set(n * n * n, false);
    auto assign = [&](int i, int j, int k, const SuperFunction& v) {
        int idx = (i * n + j) * n + k;
        if (set[idx] && table[idx] != v)
            throw InputError("conflicting Christoffel entries at " + index_name(*chart, i, j, k));
        table[idx] = v;
        set[idx] = true;
    };
    for (const auto& e : entries) {
        if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n)
            throw InputError("Christoffel index out of range");
        if (e.i == e.j && chart->parity(e.i) == 1 && !e.value.is_zero())
            throw InputError("Christoffel symbol " + index_name(*chart, e.i, e.j, e.k) +
                             " must vanish (odd lower indices are antisymmetric)");
        assign(e.i, e.j, e.k, e.value);
        assign(e.j, e.i, e.k, with_sign(e.value, chart->parity(e.i) * chart->parity(e.j)));
    }
    return SuperConnection(chart, std::move(table));
}

SuperFunction SuperConnection::trace(int i) const {
    SuperFunction t(chart_);
    for (int s = 0; s < dim(); ++s) t += with_sign(gamma(i, s, s), chart_->parity(s));
    return t;
}

CurvatureData curvature_package(const SuperConnection& connection) {
    const ChartSpec& chart = *connection.chart();
    const int n = chart.dim();
    auto p = [&](int i) { return chart.parity(i); };
    CurvatureData d;
    d.dim = n;
    d.riemann.assign(n * n * n * n, SuperFunction(connection.chart()));
    // R(d_i,d_j)d_k = nabla_i nabla_j d_k - (-1)^{p(i)p(j)} nabla_j nabla_i d_k.
    auto half = [&](int i, int j, int k, int m) {
        SuperFunction v = partial(i, connection.gamma(j, k, m));
        for (int l = 0; l < n; ++l) {
            const auto& g = connection.gamma(j, k, l);
            if (g.is_zero()) continue;
            v += with_sign(g * connection.gamma(i, l, m), p(i) * (p(j) + p(k) + p(l)));
        }
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m)
                    d.riemann[((i * n + j) * n + k) * n + m] =
                        half(i, j, k, m) - with_sign(half(j, i, k, m), p(i) * p(j));
    d.ricci.assign(n * n, SuperFunction(connection.chart()));
    d.str_r.assign(n * n, SuperFunction(connection.chart()));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < n; ++i) {
                // Ric(Z,Y) = (-1)^{p(i)(p(i)+p(Y)+p(Z))} (R(d_i,Y)Z)^i with Z = d_a, Y = d_b.
                d.ricci[a * n + b] += with_sign(d.R(i, b, a, i), p(i) * (p(i) + p(a) + p(b)));
                d.str_r[a * n + b] += with_sign(d.R(a, b, i, i), p(i));
            }
    if (chart.superdim() != 1) {
        std::vector<SuperFunction> r(n * n, SuperFunction(connection.chart()));
        Rational scale = Rational(1) / Rational(2 * (chart.superdim() - 1));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                r[a * n + b] = (d.Ric(b, a) + with_sign(d.Ric(a, b), p(a) * p(b))) * scale;
        d.r = std::move(r);
    }
    return d;
}

std::vector<SuperFunction> lift_ricci_term(const SuperConnection& connection, const CurvatureData& curvature) {
    if (curvature.r) return *curvature.r;
    const ChartSpec& chart = *connection.chart();
    const int n = chart.dim();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!(curvature.Ric(b, a) + with_sign(curvature.Ric(a, b), chart.parity(a) * chart.parity(b))).is_zero())
                throw SuperdimensionError(chart.superdim(),
                                          "the lifted connection needs the Ricci term r, which is undefined here "
                                          "because the supersymmetric Ricci tensor does not vanish");
    return std::vector<SuperFunction>(n * n, SuperFunction(connection.chart()));
}

SuperFunction FrameGeometry::act(int a, const SuperFunction& f, const Rational& weight) const {
    SuperFunction r = coordinate[a] >= 0 ? partial(coordinate[a], f) : SuperFunction(f.chart());
    if (weight != 0 && !multiplier[a].is_zero()) r += (multiplier[a] * f) * weight;
    return r;
}

JetFunction FrameGeometry::act(int a, const JetFunction& f, const Rational& weight) const {
    JetFunction r = coordinate[a] >= 0 ? partial(coordinate[a], f) : JetFunction(f.chart());
    if (weight != 0 && !multiplier[a].is_zero()) r += (multiplier[a] * f) * weight;
    return r;
}

FrameGeometry coordinate_frame(const SuperConnection& connection) {
    const ChartSpec& chart = *connection.chart();
    FrameGeometry g;
    g.chart = connection.chart();
    g.parity = coordinate_parity(chart);
    for (int i = 0; i < chart.dim(); ++i) {
        g.coordinate.push_back(i);
        g.multiplier.push_back(-connection.trace(i));
    }
    g.coeffs = connection.table();
    return g;
}

SymmetricTensor covariant_derivative(const FrameGeometry& frame, int a, const SymmetricTensor& s) {
    if (s.index_parity() != frame.parity) throw InputError("covariant derivative: tensor and frame differ");
    const auto& parity = frame.parity;
    const int pa = parity[a];
    SymmetricTensor r(s.chart() ? s.chart() : frame.chart, parity, s.weight(), s.degree());
    for (const auto& [w, phi] : s.terms()) {
        r.add_term(w, frame.act(a, phi, s.weight()));
        SuperFunction moved = pa ? phi.even_part() - phi.odd_part() : phi;
        int before = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            for (int c = 0; c < frame.size(); ++c) {
                const auto& coeff = frame.coefficient(a, w[j], c);
                if (coeff.is_zero()) continue;
                Word v = w;
                v[j] = c;
                r.add_term(v, with_sign(moved * coeff, (parity[w[j]] + parity[c]) * before));
            }
            before += parity[w[j]];
        }
    }
    return r;
}

SymmetricTensor divergence(const FrameGeometry& frame, const SymmetricTensor& s) {
    if (s.degree() == 0) throw InputError("divergence of a degree-0 tensor");
    SymmetricTensor r(s.chart() ? s.chart() : frame.chart, frame.parity, s.weight(), s.degree() - 1);
    for (int a = 0; a < frame.size(); ++a) {
        auto term = contract_index(a, covariant_derivative(frame, a, s));
        if (frame.parity[a]) term *= Rational(-1);
        r += term;
    }
    return r;
}

JetFunction covariant_derivative_value(const FrameGeometry& frame, const CovTensor& t, const Word& w) {
    const auto& parity = frame.parity;
    const int a0 = w.at(0);
    Word rest(w.begin() + 1, w.end());
    JetFunction r = frame.act(a0, t.value(rest), t.weight());
    int before = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
        for (int c = 0; c < frame.size(); ++c) {
            const auto& coeff = frame.coefficient(a0, rest[j], c);
            if (coeff.is_zero()) continue;
            Word v = rest;
            v[j] = c;
            JetFunction value = t.value(v);
            if (value.is_zero()) continue;
            // Derivation sign past the earlier slots, then the coefficient's own sign
            // for leaving slot j.
            int s = parity[a0] * before + (parity[a0] + parity[rest[j]] + parity[c]) * before;
            JetFunction term = coeff * value;
            if (s % 2) r += term;
            else r -= term;
        }
        before += parity[rest[j]];
    }
    return r;
}

std::vector<Word> canonical_words(const std::vector<int>& parity, int length) {
    std::vector<Word> out;
    Word w;
    const int size = static_cast<int>(parity.size());
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(w.size()) == length) {
            out.push_back(w);
            return;
        }
        for (int i = start; i < size; ++i) {
            w.push_back(i);
            self(self, parity[i] ? i + 1 : i);
            w.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

CovTensor nabla_s(const FrameGeometry& frame, const CovTensor& t) {
    if (t.index_parity() != frame.parity) throw InputError("nabla_s: tensor and frame differ");
    const int l = t.degree() + 1;
    CovTensor r(t.chart() ? t.chart() : frame.chart, frame.parity, t.weight(), l);
    std::vector<int> perm(l);
    for (const auto& w : canonical_words(frame.parity, l)) {
        JetFunction total(r.chart());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Word v(l);
            for (int q = 0; q < l; ++q) v[q] = w[perm[q]];
            Word sorted = v;
            int eps = canonicalize_word(sorted, frame.parity);
            JetFunction d = covariant_derivative_value(frame, t, v);
            if (eps > 0) total += d;
            else total -= d;
        } while (std::next_permutation(perm.begin(), perm.end()));
        r.set_value(w, total);
    }
    return r;
}

CovTensor nabla_s_power(const FrameGeometry& frame, const JetFunction& f, const Rational& weight, int k) {
    CovTensor t(f.chart() ? f.chart() : frame.chart, frame.parity, weight, 0);
    t.set_value({}, f);
    for (int i = 0; i < k; ++i) t = nabla_s(frame, t);
    return t;
}

WeightedDensity cov_deriv_density(const SuperConnection& connection, const VectorField& x, const WeightedDensity& f) {
    x.parity(*connection.chart());
    FrameGeometry frame = coordinate_frame(connection);
    SuperFunction r(connection.chart());
    for (int i = 0; i < connection.dim(); ++i)
        if (!x.components[i].is_zero()) r += x.components[i] * frame.act(i, f.value, f.weight);
    return {f.weight, r};
}

ContraSymbol cov_deriv_symbol(const SuperConnection& connection, const VectorField& x, const ContraSymbol& s) {
    x.parity(*connection.chart());
    FrameGeometry frame = coordinate_frame(connection);
    SymmetricTensor r(connection.chart(), frame.parity, s.weight(), s.degree());
    for (int i = 0; i < connection.dim(); ++i)
        if (!x.components[i].is_zero()) r += x.components[i] * covariant_derivative(frame, i, s);
    return r;
}

ContraSymbol divergence(const SuperConnection& connection, const ContraSymbol& s) {
    return divergence(coordinate_frame(connection), s);
}

CovTensor nabla_s(const SuperConnection& connection, const CovTensor& t) { return nabla_s(coordinate_frame(connection), t); }

} // namespace superquant
