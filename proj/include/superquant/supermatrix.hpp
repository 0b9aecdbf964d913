#pragma once

#include "superquant/superfunction.hpp"

#include <vector>

namespace superquant {

/// Square matrix of superfunctions over a graded index set.
///
/// Row and column i carry parity `index_parity[i]`; entry (i,j) of a matrix
/// of parity p is homogeneous of parity index_parity[i]+index_parity[j]+p.
class SuperMatrix {
  public:
    SuperMatrix() = default;
    SuperMatrix(Chart chart, std::vector<int> index_parity);

    static SuperMatrix identity(const Chart& chart, const std::vector<int>& index_parity);
    /// Index parities of the chart's own coordinates.
    static std::vector<int> coordinate_parities(const ChartSpec& chart);

    int size() const { return static_cast<int>(parity_.size()); }
    const Chart& chart() const { return chart_; }
    const std::vector<int>& index_parity() const { return parity_; }

    SuperFunction& operator()(int i, int j) { return entries_.at(i * size() + j); }
    const SuperFunction& operator()(int i, int j) const { return entries_.at(i * size() + j); }

    /// Declared parity if every entry follows the block rule for it.
    std::optional<int> parity() const;

    friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
    friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

  private:
    Chart chart_;
    std::vector<int> parity_;
    std::vector<SuperFunction> entries_;
};

/// str(B) = sum_i (-1)^{p(i)(p(B)+p(i))} B_ii. Throws for non-homogeneous B.
SuperFunction supertrace(const SuperMatrix& b);

/// True when every entry is constant or nilpotent and the constant part is invertible.
bool in_berezinian_class(const SuperMatrix& a);

/// Inverse of an even matrix A = A_c + N (A_c constant invertible, N nilpotent).
SuperMatrix inverse(const SuperMatrix& a);

/// Ber(A) = det(A00 - A01 A11^{-1} A10) det(A11)^{-1} for even A in the supported class.
SuperFunction berezinian(const SuperMatrix& a);

/// Exact w-th power of an even function c(1 + nu) with nu nilpotent and c > 0
/// having a rational w-th power. Throws PreconditionError otherwise.
SuperFunction unipotent_power(const SuperFunction& f, const Rational& w);

/// Inverse of an even function with invertible constant body.
SuperFunction invert_even(const SuperFunction& f);

} // namespace superquant
