#pragma once

#include "superquant/jet.hpp"
#include "superquant/tensor.hpp"

#include <map>

namespace superquant {

/// D = sum_alpha D_alpha d^alpha acting from lambda-densities to mu-densities.
/// D_alpha are (mu - lambda)-density coefficients standing to the left.
struct DifferentialOperator {
    Chart chart;
    Rational lambda;
    Rational mu;
    std::map<MultiIndex, SuperFunction> terms;

    /// Reads the coefficients off a jet expression linear in the formal argument.
    static DifferentialOperator from_jet(const JetFunction& j, const Rational& lambda, const Rational& mu);
    JetFunction as_jet() const;

    int order() const;
    std::optional<int> parity() const;
    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const DifferentialOperator& a, const DifferentialOperator& b) {
        return a.lambda == b.lambda && a.mu == b.mu && a.terms == b.terms;
    }
};

/// D applied to a jet expression (in particular to a concrete function).
JetFunction apply_operator(const DifferentialOperator& d, const JetFunction& f);

WeightedDensity apply_operator(const DifferentialOperator& d, const WeightedDensity& f);

/// Top-order part sum_{|alpha|=k} D_alpha d_1^{alpha_1} v ... v d_N^{alpha_N}.
ContraSymbol principal_symbol(const DifferentialOperator& d);

std::string to_string(const DifferentialOperator& d);

} // namespace superquant
