#pragma once

#include "superquant/connection.hpp"
#include "superquant/operator.hpp"
#include "superquant/supermatrix.hpp"

namespace superquant {

/// Change of graded coordinates on one chart: xbar^i = forward^i(x) with
/// inverse x^i = inverse^i(xbar). Both directions are written over the same
/// chart (the coordinate names play the role of x or xbar as appropriate).
///
/// Objects given in the xbar coordinates are pulled back to the x
/// coordinates; pushing forward is pulling back along the inverted change.
class CoordinateChange {
  public:
    CoordinateChange(Chart chart, std::vector<SuperFunction> forward, std::vector<SuperFunction> inverse);
    static CoordinateChange identity(const Chart& chart);

    const Chart& chart() const { return chart_; }
    const std::vector<SuperFunction>& forward() const { return forward_; }
    const std::vector<SuperFunction>& inverse() const { return inverse_; }
    CoordinateChange inverted() const;

    /// Jacobian(i, j) = d xbar^j / d x^i.
    const SuperMatrix& jacobian() const { return jacobian_; }
    const SuperFunction& berezinian() const { return berezinian_; }
    SuperFunction berezinian_power(const Rational& w) const;

    /// f(xbar) rewritten in x: f o forward.
    SuperFunction compose(const SuperFunction& f) const { return substitute(f, forward_); }
    /// (d x^i / d xbar^j) o forward, at index (j, i).
    const SuperFunction& inverse_jacobian(int j, int i) const { return inverse_jacobian_[j * chart_->dim() + i]; }

  private:
    Chart chart_;
    std::vector<SuperFunction> forward_;
    std::vector<SuperFunction> inverse_;
    SuperMatrix jacobian_;
    SuperFunction berezinian_;
    std::vector<SuperFunction> inverse_jacobian_;
};

SuperFunction pullback(const CoordinateChange& change, const SuperFunction& f);
WeightedDensity pullback(const CoordinateChange& change, const WeightedDensity& f);
VectorField pullback(const CoordinateChange& change, const VectorField& x);
OneForm pullback(const CoordinateChange& change, const OneForm& alpha);
ContraSymbol pullback(const CoordinateChange& change, const ContraSymbol& s);
SuperConnection pullback(const CoordinateChange& change, const SuperConnection& connection);
DifferentialOperator pullback(const CoordinateChange& change, const DifferentialOperator& d);

template <class T>
T push_forward(const CoordinateChange& change, const T& object) {
    return pullback(change.inverted(), object);
}

} // namespace superquant
