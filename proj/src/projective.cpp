#include "superquant/projective.hpp"

#include "superquant/errors.hpp"
#include "superquant/lie.hpp"

namespace superquant {

namespace {

SuperFunction with_sign(const SuperFunction& f, int parity) { return parity % 2 ? -f : f; }

void require_not_minus_one(const ChartSpec& chart, const std::string& what) {
    if (chart.superdim() == -1) throw SuperdimensionError(-1, what + " is undefined at superdimension -1");
}

} // namespace

std::vector<SuperFunction> pi_invariant(const SuperConnection& connection) {
    const ChartSpec& chart = *connection.chart();
    require_not_minus_one(chart, "the projective invariant Pi");
    const int n = chart.dim();
    Rational scale = Rational(1) / Rational(chart.superdim() + 1);
    std::vector<SuperFunction> traces;
    for (int i = 0; i < n; ++i) traces.push_back(connection.trace(i) * scale);
    std::vector<SuperFunction> pi = connection.table();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            pi[(i * n + j) * n + j] -= traces[i];
            pi[(i * n + j) * n + i] -= with_sign(traces[j], chart.parity(i) * chart.parity(j));
        }
    return pi;
}

SuperConnection perturb(const SuperConnection& connection, const OneForm& alpha) {
    const ChartSpec& chart = *connection.chart();
    const int n = chart.dim();
    if (static_cast<int>(alpha.components.size()) != n) throw InputError("1-form has the wrong number of components");
    if (alpha.parity(chart) != 0) throw InputError("projective perturbations need an even 1-form");
    std::vector<SuperFunction> table = connection.table();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            table[(i * n + j) * n + j] += alpha.components[i];
            table[(i * n + j) * n + i] += with_sign(alpha.components[j], chart.parity(i) * chart.parity(j));
        }
    return SuperConnection(connection.chart(), std::move(table));
}

std::optional<OneForm> projective_difference(const ChartSpec& chart, const std::vector<SuperFunction>& d) {
    const int n = chart.dim();
    OneForm alpha;
    for (int i = 0; i < n; ++i) {
        if (n == 1) {
            if (chart.parity(0)) return std::nullopt;
            alpha.components.push_back(d[0] * Rational(1, 2));
            continue;
        }
        int j = i == 0 ? 1 : 0;
        alpha.components.push_back(d[(i * n + j) * n + j]);
    }
    std::optional<int> shift;
    for (int i = 0; i < n; ++i) {
        auto q = alpha.components[i].parity();
        if (!q) return std::nullopt;
        if (alpha.components[i].is_zero()) continue;
        int s = (*q + chart.parity(i)) % 2;
        if (shift && *shift != s) return std::nullopt;
        shift = s;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SuperFunction expected(d[0].chart());
                if (j == k) expected += alpha.components[i];
                if (i == k) expected += with_sign(alpha.components[j], chart.parity(i) * chart.parity(j));
                if (d[(i * n + j) * n + k] != expected) return std::nullopt;
            }
    return alpha;
}

std::optional<OneForm> projective_difference(const SuperConnection& base, const SuperConnection& other) {
    if (!same_chart(base.chart(), other.chart())) throw InputError("connections live on different charts");
    std::vector<SuperFunction> d = other.table();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= base.table()[i];
    return projective_difference(*base.chart(), d);
}

std::vector<VectorField> flat_projective_generators(const Chart& chart) {
    const int n = chart->dim();
    auto x = [&](int i) { return SuperFunction::coordinate(chart, i); };
    auto field = [&](int j, const SuperFunction& f) {
        VectorField v{std::vector<SuperFunction>(n, SuperFunction(chart))};
        v.components[j] = f;
        return v;
    };
    std::vector<VectorField> out;
    for (int i = 0; i < n; ++i) out.push_back(field(i, SuperFunction::constant(chart, 1)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.push_back(field(j, x(i)));
    for (int i = 0; i < n; ++i) {
        VectorField v{std::vector<SuperFunction>(n, SuperFunction(chart))};
        for (int j = 0; j < n; ++j) v.components[j] = x(i) * x(j);
        out.push_back(v);
    }
    return out;
}

bool preserves_flat_projective_class(const Chart& chart, const VectorField& x) {
    return projective_difference(*chart, lie_derivative(x, SuperConnection::flat(chart))).has_value();
}

bool projectively_equivalent(const SuperConnection& a, const SuperConnection& b) {
    if (!same_chart(a.chart(), b.chart())) throw InputError("connections live on different charts");
    if (a.chart()->superdim() == -1) return projective_difference(a, b).has_value();
    return pi_invariant(a) == pi_invariant(b);
}

Rational gamma_value(int n, int m, const Rational& delta, int s) {
    const int d = n - m;
    if (d == -1) throw SuperdimensionError(-1, "gamma is undefined at superdimension -1");
    return (Rational(d + s) - Rational(d + 1) * delta) / Rational(d + 1);
}

bool CriticalityReport::critical() const { return !zeros().empty(); }

std::vector<std::pair<int, int>> CriticalityReport::zeros() const {
    std::vector<std::pair<int, int>> z;
    for (const auto& e : entries)
        if (e.gamma == 0) z.emplace_back(e.k, e.l);
    return z;
}

CriticalityReport criticality(int n, int m, const Rational& delta, int kmax) {
    if (n < 0 || m < 0) throw InputError("dimensions must be nonnegative");
    CriticalityReport r{n, m, delta, kmax, {}};
    for (int k = 1; k <= kmax; ++k)
        for (int l = 1; l <= k; ++l) r.entries.push_back({k, l, gamma_value(n, m, delta, 2 * k - l)});
    return r;
}

void require_noncritical(int n, int m, const Rational& delta, int k) {
    for (int l = 1; l <= k; ++l)
        if (gamma_value(n, m, delta, 2 * k - l) == 0)
            throw CriticalityError(k, l,
                                   "delta = " + to_string(delta) + " is critical: gamma_" + std::to_string(2 * k - l) +
                                       " vanishes at (k,l) = (" + std::to_string(k) + "," + std::to_string(l) + ")");
}

} // namespace superquant
