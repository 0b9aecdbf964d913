#include "superquant/operator.hpp"

#include "superquant/errors.hpp"

namespace superquant {

DifferentialOperator DifferentialOperator::from_jet(const JetFunction& j, const Rational& lambda, const Rational& mu) {
    if (!j.free_part().is_zero()) throw InputError("jet expression has a part independent of the argument");
    DifferentialOperator d{j.chart(), lambda, mu, {}};
    for (const auto& [alpha, c] : j.linear()) d.terms.emplace(alpha, c);
    return d;
}

JetFunction DifferentialOperator::as_jet() const {
    JetFunction j(chart);
    for (const auto& [alpha, c] : terms) j.add_linear(alpha, c);
    return j;
}

int DifferentialOperator::order() const {
    int k = 0;
    for (const auto& [alpha, c] : terms) k = std::max(k, superquant::order(alpha));
    return k;
}

std::optional<int> DifferentialOperator::parity() const {
    std::optional<int> p;
    for (const auto& [alpha, c] : terms) {
        auto q = c.parity();
        if (!q) return std::nullopt;
        int t = (*q + odd_length(*chart, alpha)) % 2;
        if (p && *p != t) return std::nullopt;
        p = t;
    }
    return p.value_or(0);
}

JetFunction apply_operator(const DifferentialOperator& d, const JetFunction& f) {
    JetFunction r(d.chart);
    for (const auto& [alpha, c] : d.terms) {
        JetFunction g = f;
        for (int i = static_cast<int>(alpha.size()) - 1; i >= 0; --i)
            for (int t = 0; t < alpha[i]; ++t) g = partial(i, g);
        r += c * g;
    }
    return r;
}

WeightedDensity apply_operator(const DifferentialOperator& d, const WeightedDensity& f) {
    if (f.weight != d.lambda) throw InputError("operator applied to a density of the wrong weight");
    return {d.mu, apply_operator(d, JetFunction(f.value)).free_part()};
}

ContraSymbol principal_symbol(const DifferentialOperator& d) {
    const int k = d.order();
    ContraSymbol s = SymmetricTensor::symbol(d.chart, d.mu - d.lambda, k);
    for (const auto& [alpha, c] : d.terms) {
        if (order(alpha) != k) continue;
        Word w;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (int t = 0; t < alpha[i]; ++t) w.push_back(static_cast<int>(i));
        s.add_term(w, c);
    }
    return s;
}

std::string to_string(const DifferentialOperator& d) {
    if (d.terms.empty()) return "0";
    std::string out;
    for (const auto& [alpha, c] : d.terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*" + multi_index_string(*d.chart, alpha);
    }
    return out;
}

} // namespace superquant
