#pragma once

#include "superquant/jet.hpp"
#include "superquant/superfunction.hpp"

#include <map>
#include <vector>

namespace superquant {

/// Index word over a graded index set.
using Word = std::vector<int>;

/// Sorts w into non-decreasing order. Returns the sign of the permutation
/// induced on the odd entries, or 0 when an odd index repeats.
int canonicalize_word(Word& w, const std::vector<int>& parity);

int word_parity(const Word& w, const std::vector<int>& parity);

std::string word_string(const Word& w);

/// phi |Dx|^weight.
struct WeightedDensity {
    Rational weight;
    SuperFunction value;

    friend bool operator==(const WeightedDensity&, const WeightedDensity&) = default;
};

/// Vector field X^i d_i on a chart.
struct VectorField {
    std::vector<SuperFunction> components;

    /// Parity of X; throws if the components are inconsistent.
    int parity(const ChartSpec& chart) const;
    /// X(f) = sum_i X^i d_i f.
    SuperFunction apply(const SuperFunction& f) const;

    friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// Super 1-form sum_i alpha_i dx^i, alpha_i = alpha(d_i).
struct OneForm {
    std::vector<SuperFunction> components;

    int parity(const ChartSpec& chart) const;

    friend bool operator==(const OneForm&, const OneForm&) = default;
};

/// Supersymmetric contravariant tensor with density coefficients over a
/// graded frame: sum_w phi^w e_{w_1} v ... v e_{w_k}, coefficients on the
/// left, words canonical.
///
/// Over the coordinate frame of a chart this is a symbol; over the extended
/// frame {E, d_1^h, ...} (index 0 is the Euler field) it is a lifted tensor.
class SymmetricTensor {
  public:
    using TermMap = std::map<Word, SuperFunction>;

    SymmetricTensor() = default;
    SymmetricTensor(Chart chart, std::vector<int> index_parity, Rational weight, int degree);
    /// Tensor over the coordinate frame of `chart`.
    static SymmetricTensor symbol(const Chart& chart, const Rational& weight, int degree);

    const Chart& chart() const { return chart_; }
    const std::vector<int>& index_parity() const { return parity_; }
    const Rational& weight() const { return weight_; }
    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }

    /// Adds coeff * e_{w_1} v ... v e_{w_k} for any (not necessarily sorted) word.
    void add_term(Word w, const SuperFunction& coeff);
    SuperFunction coefficient(const Word& canonical) const;

    bool is_zero() const { return terms_.empty(); }
    std::optional<int> parity() const;

    SymmetricTensor& operator+=(const SymmetricTensor& other);
    SymmetricTensor& operator-=(const SymmetricTensor& other);
    SymmetricTensor& operator*=(const Rational& c);
    friend SymmetricTensor operator+(SymmetricTensor a, const SymmetricTensor& b) { return a += b; }
    friend SymmetricTensor operator-(SymmetricTensor a, const SymmetricTensor& b) { return a -= b; }
    friend SymmetricTensor operator*(SymmetricTensor a, const Rational& c) { return a *= c; }
    friend SymmetricTensor operator*(const Rational& c, SymmetricTensor a) { return a *= c; }
    /// Left multiplication of every coefficient by g.
    friend SymmetricTensor operator*(const SuperFunction& g, const SymmetricTensor& s);
    /// Equal weight, degree, frame and terms; zero tensors of equal degree compare equal.
    friend bool operator==(const SymmetricTensor& a, const SymmetricTensor& b);

    std::string to_string() const;

  private:
    void check_compatible(const SymmetricTensor& other) const;

    Chart chart_;
    std::vector<int> parity_;
    Rational weight_;
    int degree_ = 0;
    TermMap terms_;
};

using ContraSymbol = SymmetricTensor;
using LiftedTensor = SymmetricTensor;

inline std::ostream& operator<<(std::ostream& out, const SymmetricTensor& s) { return out << s.to_string(); }

/// Supersymmetric product; weights add.
SymmetricTensor vee(const SymmetricTensor& a, const SymmetricTensor& b);

/// i(e^j): the contraction of slot j with the dual frame form (a left derivation).
SymmetricTensor contract_index(int j, const SymmetricTensor& s);

/// i(alpha) S = sum_i alpha_i i(e^i) S.
SymmetricTensor interior(const OneForm& alpha, const SymmetricTensor& s);

/// Supersymmetric covariant tensor with values in weight-`weight` densities,
/// stored by its values on canonical frame words. Values may carry formal
/// jet generators (e.g. iterated derivatives of a formal density).
class CovTensor {
  public:
    using ValueMap = std::map<Word, JetFunction>;

    CovTensor() = default;
    CovTensor(Chart chart, std::vector<int> index_parity, Rational weight, int degree);

    const Chart& chart() const { return chart_; }
    const std::vector<int>& index_parity() const { return parity_; }
    const Rational& weight() const { return weight_; }
    int degree() const { return degree_; }
    const ValueMap& values() const { return values_; }

    /// Sets the value on the canonical word of w, given the value on w itself.
    void set_value(Word w, const JetFunction& value);
    /// Value on an arbitrary ordered word of frame indices.
    JetFunction value(Word w) const;

    /// Replaces every formal jet generator by derivatives of f.
    CovTensor evaluate(const SuperFunction& f) const;

    friend bool operator==(const CovTensor& a, const CovTensor& b);

  private:
    Chart chart_;
    std::vector<int> parity_;
    Rational weight_;
    int degree_ = 0;
    ValueMap values_;
};

/// i(T) S = (1/l!) sum over ordered words a of eps(a) T(e_{a_1},...,e_{a_l}) i(e^{a_1}) ... i(e^{a_l}) S,
/// where eps(a) = (-1)^{sum_{i<j} p(a_i)p(a_j)} converts values into coefficients of e^{a_1} v ... v e^{a_l}.
/// T must be free of jet generators.
SymmetricTensor interior(const CovTensor& t, const SymmetricTensor& s);

/// <S, T> = sum over canonical words w of S^w T(e_w); weight(S) + weight(T).
JetFunction pair(const SymmetricTensor& s, const CovTensor& t);

} // namespace superquant
