#pragma once

#include "superquant/chart.hpp"
#include "superquant/polynomial.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>

namespace superquant {

using OddMask = std::uint32_t;

/// Sign (+1/-1) of reordering the odd generators of `a` followed by those
/// of `b` into increasing order. Requires a & b == 0.
int koszul_sign(OddMask a, OddMask b);

/// Element of the supercommutative algebra of a chart: a finite sum of
/// odd monomials, each carrying an even-part polynomial.
///
/// Odd monomials are stored as bit masks over the odd coordinates (bit j is
/// coordinate n+j) in increasing order; a term p(x) * theta^mask means
/// p(x) * x^{n+j1} * x^{n+j2} * ... with j1 < j2 < .... A default
/// constructed value is a chartless zero that adopts the chart of whatever
/// it is combined with.
class SuperFunction {
  public:
    using TermMap = std::map<OddMask, Polynomial>;

    SuperFunction() = default;
    explicit SuperFunction(Chart chart) : chart_(std::move(chart)) {}

    static SuperFunction constant(const Chart& chart, const Rational& c);
    static SuperFunction coordinate(const Chart& chart, int index);
    static SuperFunction param(const Chart& chart, int index);

    const Chart& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }

    void add_term(OddMask mask, const Polynomial& p);

    bool is_zero() const { return terms_.empty(); }
    /// 0 or 1 for homogeneous elements (zero counts as even); nullopt when mixed.
    std::optional<int> parity() const;
    bool is_homogeneous() const { return parity().has_value(); }
    SuperFunction part(int parity) const;
    SuperFunction even_part() const { return part(0); }
    SuperFunction odd_part() const { return part(1); }

    /// The component free of odd generators.
    Polynomial body() const;
    bool is_constant() const;
    Rational constant_term() const;
    /// True when no term is free of odd generators.
    bool is_nilpotent() const;
    unsigned degree() const;

    std::string to_string() const;

    SuperFunction& operator+=(const SuperFunction& other);
    SuperFunction& operator-=(const SuperFunction& other);
    SuperFunction& operator*=(const Rational& c);
    SuperFunction operator-() const;

    friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
    friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
    friend SuperFunction operator*(SuperFunction a, const Rational& c) { return a *= c; }
    friend SuperFunction operator*(const Rational& c, SuperFunction a) { return a *= c; }
    friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
    friend bool operator==(const SuperFunction& a, const SuperFunction& b);

  private:
    void adopt(const Chart& other);

    Chart chart_;
    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& out, const SuperFunction& f) { return out << f.to_string(); }

/// Product that also reports whether some pair of terms was annihilated by a
/// repeated odd generator.
SuperFunction multiply(const SuperFunction& a, const SuperFunction& b, bool* odd_square = nullptr);

/// Left partial derivative with respect to coordinate `index` (0-based).
SuperFunction partial(int index, const SuperFunction& f);

/// Replaces every coordinate of f's chart by the matching image (parameters
/// are kept). Images must be parity-correct and live on one common chart.
SuperFunction substitute(const SuperFunction& f, std::span<const SuperFunction> images);

/// Checks `f` is homogeneous of the given parity; throws InputError naming `what`.
void require_parity(const SuperFunction& f, int parity, const std::string& what);

} // namespace superquant
