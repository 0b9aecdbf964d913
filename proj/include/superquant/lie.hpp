#pragma once

#include "superquant/connection.hpp"
#include "superquant/operator.hpp"

namespace superquant {

/// sdiv X = sum_i (-1)^{p(i)(p(X)+1)} d_i X^i.
SuperFunction super_divergence(const ChartSpec& chart, const VectorField& x);

/// [X, Y]^k = X(Y^k) - (-1)^{p(X)p(Y)} Y(X^k).
VectorField bracket(const ChartSpec& chart, const VectorField& x, const VectorField& y);

/// nabla_X Y for vector fields.
VectorField covariant_derivative(const SuperConnection& connection, const VectorField& x, const VectorField& y);

WeightedDensity lie_derivative(const VectorField& x, const WeightedDensity& f);
/// Lie derivative of a formal weight-w density expression.
JetFunction lie_derivative(const VectorField& x, const JetFunction& f, const Rational& weight);
ContraSymbol lie_derivative(const VectorField& x, const ContraSymbol& s);
/// (L_X nabla)(d_i, d_j) as a table indexed (i*N + j)*N + k.
std::vector<SuperFunction> lie_derivative(const VectorField& x, const SuperConnection& connection);
/// L_X^mu o D - (-1)^{p(X)p(D)} D o L_X^lambda.
DifferentialOperator lie_derivative(const VectorField& x, const DifferentialOperator& d);

} // namespace superquant
