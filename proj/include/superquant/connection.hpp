#pragma once

#include "superquant/tensor.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace superquant {

/// Torsion-free superconnection on one chart, given by its Christoffel
/// symbols: nabla_{d_i} d_j = Gamma_ij^k d_k.
class SuperConnection {
  public:
    struct Entry {
        int i, j, k;
        SuperFunction value;
    };

    SuperConnection() = default;
    /// Full table indexed (i*N + j)*N + k. Validates parity and supersymmetry.
    SuperConnection(Chart chart, std::vector<SuperFunction> table);

    static SuperConnection flat(const Chart& chart);
    /// Builds the table from entries; the supersymmetric partner of each entry
    /// is derived, omitted entries are zero, conflicting entries are rejected.
    static SuperConnection from_entries(const Chart& chart, const std::vector<Entry>& entries);

    const Chart& chart() const { return chart_; }
    int dim() const { return chart_->dim(); }
    const SuperFunction& gamma(int i, int j, int k) const { return table_[(i * dim() + j) * dim() + k]; }
    const std::vector<SuperFunction>& table() const { return table_; }

    /// sum_s (-1)^{p(s)} Gamma_is^s.
    SuperFunction trace(int i) const;

    friend bool operator==(const SuperConnection& a, const SuperConnection& b) { return a.table_ == b.table_; }

  private:
    Chart chart_;
    std::vector<SuperFunction> table_;
};

/// Curvature R(d_i,d_j)d_k = R_ijk^l d_l and the derived two-tensors, all
/// evaluated on coordinate fields.
struct CurvatureData {
    int dim = 0;
    std::vector<SuperFunction> riemann;  // ((i*N + j)*N + k)*N + l
    std::vector<SuperFunction> ricci;    // Ric(d_a, d_b) at a*N + b
    std::vector<SuperFunction> str_r;    // strR(d_a, d_b)
    std::optional<std::vector<SuperFunction>> r;  // absent when n - m = 1

    const SuperFunction& R(int i, int j, int k, int l) const { return riemann[((i * dim + j) * dim + k) * dim + l]; }
    const SuperFunction& Ric(int a, int b) const { return ricci[a * dim + b]; }
    const SuperFunction& strR(int a, int b) const { return str_r[a * dim + b]; }
};

CurvatureData curvature_package(const SuperConnection& connection);

/// The two-tensor r entering the lifted connection. At n - m = 1 the defining
/// prefactor is singular; the lift is then only defined when the supersymmetric
/// part of the Ricci tensor vanishes, and r is taken to be zero.
std::vector<SuperFunction> lift_ricci_term(const SuperConnection& connection, const CurvatureData& curvature);

/// A graded frame {e_a} with its connection coefficients
/// nabla_{e_a} e_b = C_ab^c e_c and its action on weight-w coefficients:
/// e_a(phi) = d_{coordinate[a]} phi + w * multiplier[a] * phi.
struct FrameGeometry {
    Chart chart;
    std::vector<int> parity;
    std::vector<int> coordinate;  // -1 when e_a has no derivative part
    std::vector<SuperFunction> multiplier;
    std::vector<SuperFunction> coeffs;  // (a*size + b)*size + c

    int size() const { return static_cast<int>(parity.size()); }
    const SuperFunction& coefficient(int a, int b, int c) const { return coeffs[(a * size() + b) * size() + c]; }

    SuperFunction act(int a, const SuperFunction& f, const Rational& weight) const;
    JetFunction act(int a, const JetFunction& f, const Rational& weight) const;
};

/// Coordinate frame of the chart; densities of weight w are differentiated
/// covariantly: d_i(phi) - w (-1)^{p(s)} Gamma_is^s phi.
FrameGeometry coordinate_frame(const SuperConnection& connection);

/// nabla_{e_a} S for a symmetric tensor over the frame.
SymmetricTensor covariant_derivative(const FrameGeometry& frame, int a, const SymmetricTensor& s);

/// Div S = sum_a (-1)^{p(a)} i(e^a) nabla_{e_a} S.
SymmetricTensor divergence(const FrameGeometry& frame, const SymmetricTensor& s);

/// (nabla T)(e_{w_0}; e_{w_1}, ..., e_{w_l}) for an ordered word w.
JetFunction covariant_derivative_value(const FrameGeometry& frame, const CovTensor& t, const Word& w);

/// Symmetrized covariant derivative: (nabla_s T)(X_0..X_l) = sum over permutations
/// sigma of eps(sigma) (nabla T)(X_sigma(0); ...).
CovTensor nabla_s(const FrameGeometry& frame, const CovTensor& t);

/// nabla_s^k applied to a weight-`weight` function (or jet expression).
CovTensor nabla_s_power(const FrameGeometry& frame, const JetFunction& f, const Rational& weight, int k);

/// nabla_X (phi |Dx|^w).
WeightedDensity cov_deriv_density(const SuperConnection& connection, const VectorField& x, const WeightedDensity& f);
/// nabla_X S for a symbol S.
ContraSymbol cov_deriv_symbol(const SuperConnection& connection, const VectorField& x, const ContraSymbol& s);
ContraSymbol divergence(const SuperConnection& connection, const ContraSymbol& s);
CovTensor nabla_s(const SuperConnection& connection, const CovTensor& t);

/// Canonical words of a given length over a graded index set.
std::vector<Word> canonical_words(const std::vector<int>& parity, int length);

} // namespace superquant
