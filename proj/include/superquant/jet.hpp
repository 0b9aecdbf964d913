#pragma once

#include "superquant/superfunction.hpp"

#include <map>
#include <vector>

namespace superquant {

/// Multi-index over the chart coordinates; odd entries are 0 or 1.
using MultiIndex = std::vector<int>;

int order(const MultiIndex& alpha);

/// Number of odd coordinates, counted with multiplicity, in alpha.
int odd_length(const ChartSpec& chart, const MultiIndex& alpha);

/// d^alpha f = d_1^{a_1} d_2^{a_2} ... d_N^{a_N} f, rightmost factor acting first.
SuperFunction apply_multi_partial(const MultiIndex& alpha, const SuperFunction& f);

/// An expression `g + sum_alpha c_alpha u_alpha` where u_alpha stands for
/// d^alpha f of a formal argument f and each c_alpha sits to the left of
/// its generator. The formal argument's own parity never enters any sign.
class JetFunction {
  public:
    using LinearMap = std::map<MultiIndex, SuperFunction>;

    JetFunction() = default;
    explicit JetFunction(Chart chart) : chart_(std::move(chart)) {}
    /// Jet-free value g.
    JetFunction(const SuperFunction& g);

    /// The generator u_alpha (alpha = 0 is the formal argument itself).
    static JetFunction generator(const Chart& chart, const MultiIndex& alpha);
    static JetFunction argument(const Chart& chart) { return generator(chart, MultiIndex(chart->dim(), 0)); }

    const Chart& chart() const { return chart_; }
    const SuperFunction& free_part() const { return free_; }
    const LinearMap& linear() const { return linear_; }

    bool is_zero() const { return free_.is_zero() && linear_.empty(); }
    void add_linear(const MultiIndex& alpha, const SuperFunction& c);

    /// Replaces every u_alpha by d^alpha f.
    SuperFunction evaluate(const SuperFunction& f) const;

    JetFunction& operator+=(const JetFunction& other);
    JetFunction& operator-=(const JetFunction& other);
    JetFunction& operator*=(const Rational& c);
    JetFunction operator-() const;

    friend JetFunction operator+(JetFunction a, const JetFunction& b) { return a += b; }
    friend JetFunction operator-(JetFunction a, const JetFunction& b) { return a -= b; }
    friend JetFunction operator*(JetFunction a, const Rational& c) { return a *= c; }
    friend JetFunction operator*(const Rational& c, JetFunction a) { return a *= c; }
    /// Left multiplication by a superfunction.
    friend JetFunction operator*(const SuperFunction& g, const JetFunction& a);
    friend bool operator==(const JetFunction& a, const JetFunction& b);

    std::string to_string() const;

  private:
    void adopt(const Chart& other);

    Chart chart_;
    SuperFunction free_;
    LinearMap linear_;
};

inline std::ostream& operator<<(std::ostream& out, const JetFunction& f) { return out << f.to_string(); }

/// Left partial derivative of a jet expression.
JetFunction partial(int index, const JetFunction& f);

std::string multi_index_string(const ChartSpec& chart, const MultiIndex& alpha);

} // namespace superquant
