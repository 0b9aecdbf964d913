#pragma once

#include "superquant/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace superquant {

using Exponents = std::vector<std::uint16_t>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Every stored exponent vector has the same length (the number of
/// variables); zero coefficients are never stored.
class Polynomial {
  public:
    using TermMap = std::map<Exponents, Rational>;

    Polynomial() = default;
    static Polynomial constant(std::size_t num_vars, const Rational& c);
    static Polynomial variable(std::size_t num_vars, std::size_t var);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    unsigned degree() const;

    void add_term(const Exponents& e, const Rational& c);

    Polynomial derivative(std::size_t var) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  private:
    TermMap terms_;
};

} // namespace superquant
