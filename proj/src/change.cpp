#include "superquant/change.hpp"

#include "superquant/errors.hpp"

namespace superquant {

namespace {

SuperFunction with_sign(const SuperFunction& f, int parity) { return parity % 2 ? -f : f; }

void check_round_trip(const Chart& chart, const std::vector<SuperFunction>& a, const std::vector<SuperFunction>& b,
                      const char* what) {
    for (int i = 0; i < chart->dim(); ++i)
        if (substitute(a[i], b) != SuperFunction::coordinate(chart, i))
            throw InputError(std::string("coordinate change: ") + what + " is not the identity on " + chart->names[i]);
}

} // namespace

CoordinateChange::CoordinateChange(Chart chart, std::vector<SuperFunction> forward, std::vector<SuperFunction> inverse)
    : chart_(std::move(chart)), forward_(std::move(forward)), inverse_(std::move(inverse)) {
    const int n = chart_->dim();
    if (static_cast<int>(forward_.size()) != n || static_cast<int>(inverse_.size()) != n)
        throw InputError("coordinate change needs one image per coordinate in each direction");
    for (int i = 0; i < n; ++i) {
        if (!forward_[i].chart()) forward_[i] = SuperFunction(chart_);
        if (!inverse_[i].chart()) inverse_[i] = SuperFunction(chart_);
        require_parity(forward_[i], chart_->parity(i), "image of " + chart_->names[i]);
        require_parity(inverse_[i], chart_->parity(i), "inverse image of " + chart_->names[i]);
    }
    check_round_trip(chart_, inverse_, forward_, "inverse after forward");
    check_round_trip(chart_, forward_, inverse_, "forward after inverse");
    jacobian_ = SuperMatrix(chart_, SuperMatrix::coordinate_parities(*chart_));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) jacobian_(i, j) = partial(i, forward_[j]);
    if (!in_berezinian_class(jacobian_))
        throw InputError("coordinate change: Jacobian outside the supported class (constant invertible + nilpotent)");
    berezinian_ = superquant::berezinian(jacobian_);
    if (berezinian_.constant_term() <= 0)
        throw InputError("coordinate change: Berezinian must have positive constant part");
    inverse_jacobian_.reserve(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) inverse_jacobian_.push_back(substitute(partial(j, inverse_[i]), forward_));
}

CoordinateChange CoordinateChange::identity(const Chart& chart) {
    std::vector<SuperFunction> id;
    for (int i = 0; i < chart->dim(); ++i) id.push_back(SuperFunction::coordinate(chart, i));
    return CoordinateChange(chart, id, id);
}

CoordinateChange CoordinateChange::inverted() const { return CoordinateChange(chart_, inverse_, forward_); }

SuperFunction CoordinateChange::berezinian_power(const Rational& w) const {
    if (w == 0) return SuperFunction::constant(chart_, 1);
    if (w == 1) return berezinian_;
    return unipotent_power(berezinian_, w);
}

SuperFunction pullback(const CoordinateChange& change, const SuperFunction& f) { return change.compose(f); }

WeightedDensity pullback(const CoordinateChange& change, const WeightedDensity& f) {
    return {f.weight, change.compose(f.value) * change.berezinian_power(f.weight)};
}

VectorField pullback(const CoordinateChange& change, const VectorField& x) {
    const int n = change.chart()->dim();
    VectorField r{std::vector<SuperFunction>(n, SuperFunction(change.chart()))};
    for (int j = 0; j < n; ++j) {
        SuperFunction c = change.compose(x.components.at(j));
        if (c.is_zero()) continue;
        for (int i = 0; i < n; ++i) r.components[i] += c * change.inverse_jacobian(j, i);
    }
    return r;
}

OneForm pullback(const CoordinateChange& change, const OneForm& alpha) {
    const int n = change.chart()->dim();
    OneForm r{std::vector<SuperFunction>(n, SuperFunction(change.chart()))};
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) r.components[i] += change.jacobian()(i, t) * change.compose(alpha.components.at(t));
    return r;
}

ContraSymbol pullback(const CoordinateChange& change, const ContraSymbol& s) {
    const Chart& chart = change.chart();
    const int n = chart->dim();
    std::vector<SymmetricTensor> images;
    for (int j = 0; j < n; ++j) {
        SymmetricTensor v = SymmetricTensor::symbol(chart, 0, 1);
        for (int i = 0; i < n; ++i) v.add_term({i}, change.inverse_jacobian(j, i));
        images.push_back(v);
    }
    SuperFunction ber = change.berezinian_power(s.weight());
    SymmetricTensor r = SymmetricTensor::symbol(chart, s.weight(), s.degree());
    for (const auto& [w, phi] : s.terms()) {
        SymmetricTensor term = SymmetricTensor::symbol(chart, 0, 0);
        term.add_term({}, change.compose(phi) * ber);
        for (int j : w) term = vee(term, images[j]);
        for (const auto& [v, c] : term.terms()) r.add_term(v, c);
    }
    return r;
}

SuperConnection pullback(const CoordinateChange& change, const SuperConnection& connection) {
    const Chart& chart = change.chart();
    const int n = chart->dim();
    auto p = [&](int i) { return chart->parity(i); };
    const auto& jac = change.jacobian();
    // Transformation law of the Christoffel symbols with the roles of the two
    // coordinate systems exchanged (the connection is known in xbar).
    std::vector<SuperFunction> second(n * n * n, SuperFunction(chart));
    std::vector<SuperFunction> gamma_bar(n * n * n, SuperFunction(chart));
    for (int t = 0; t < n; ++t)
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k) {
                second[(t * n + l) * n + k] = change.compose(partial(t, partial(l, change.inverse()[k])));
                gamma_bar[(t * n + l) * n + k] = change.compose(connection.gamma(t, l, k));
            }
    std::vector<SuperFunction> table(n * n * n, SuperFunction(chart));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < n; ++t) {
                if (jac(i, t).is_zero()) continue;
                for (int l = 0; l < n; ++l) {
                    if (jac(j, l).is_zero()) continue;
                    SuperFunction front = jac(i, t) * jac(j, l);
                    int s = p(t) * (p(l) + p(j));
                    for (int k = 0; k < n; ++k) {
                        SuperFunction inner = -second[(t * n + l) * n + k];
                        for (int r = 0; r < n; ++r) {
                            const auto& g = gamma_bar[(t * n + l) * n + r];
                            if (!g.is_zero()) inner += g * change.inverse_jacobian(r, k);
                        }
                        if (!inner.is_zero()) table[(i * n + j) * n + k] += with_sign(front * inner, s);
                    }
                }
            }
    return SuperConnection(chart, std::move(table));
}

DifferentialOperator pullback(const CoordinateChange& change, const DifferentialOperator& d) {
    const Chart& chart = change.chart();
    const int n = chart->dim();
    JetFunction start = change.berezinian_power(-d.lambda) * JetFunction::argument(chart);
    auto bar_partial = [&](int j, const JetFunction& g) {
        JetFunction r(chart);
        for (int i = 0; i < n; ++i) {
            const auto& c = change.inverse_jacobian(j, i);
            if (!c.is_zero()) r += c * partial(i, g);
        }
        return r;
    };
    JetFunction total(chart);
    for (const auto& [alpha, coeff] : d.terms) {
        JetFunction g = start;
        for (int j = n - 1; j >= 0; --j)
            for (int t = 0; t < alpha[j]; ++t) g = bar_partial(j, g);
        total += change.compose(coeff) * g;
    }
    total = change.berezinian_power(d.mu) * total;
    return DifferentialOperator::from_jet(total, d.lambda, d.mu);
}

} // namespace superquant
