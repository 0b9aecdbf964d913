#pragma once

#include "superquant/connection.hpp"
#include "superquant/operator.hpp"

#include <array>

namespace superquant {

/// The natural projectively invariant quantization of a symbol S of degree k
/// and weight mu - lambda: (Q(S)f)~ = c_k <S~, (nabla~_s)^k f~> with c_k = 1 / prod_{l<=k} l!.
DifferentialOperator quantize(const SuperConnection& connection, const ContraSymbol& s, const Rational& lambda,
                              const Rational& mu);

/// Superdimension -1 formulas: degree 1: <S, nabla_s f> + t <Div S, f>;
/// degree 2: (1/2)(<S, nabla_s^2 f> + <Div S, nabla_s f>) (t is ignored).
DifferentialOperator special_nm_minus1(const SuperConnection& connection, const ContraSymbol& s, const Rational& lambda,
                                       const Rational& mu, const Rational& t);

/// (1/2)<S, nabla_s^2 f> + a <Div S, nabla_s f> + b <Div^2 S, f> + c <i(Ric) S, f> for a degree-2 symbol,
/// with Ric supersymmetrized.
DifferentialOperator degree2_ansatz(const SuperConnection& connection, const ContraSymbol& s, const Rational& lambda,
                                    const Rational& mu, const std::array<Rational, 3>& abc);

struct AnsatzReport {
    int n = 0, m = 0;
    Rational lambda, mu;
    /// Rows (c_a, c_b, c_c, rhs) of the distinct equations c_a a + c_b b + c_c c = rhs.
    std::vector<std::array<Rational, 4>> equations;
    int rank = 0;
    bool solvable = false;
    /// A solution (free unknowns set to zero) when solvable.
    std::optional<std::array<Rational, 3>> solution;
    /// Unknowns left free by the system (0 = a, 1 = b, 2 = c).
    std::vector<int> free_unknowns;
};

/// Projective invariance of degree2_ansatz imposed on a symbolically generic
/// connection 2-jet, even 1-form 2-jet and every monomial symbol up to order 2,
/// reduced to an exact linear system in (a, b, c).
AnsatzReport ansatz_degree2_system(int n, int m, const Rational& lambda, const Rational& mu);

} // namespace superquant
