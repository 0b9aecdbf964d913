#pragma once

#include "superquant/connection.hpp"

#include <optional>

namespace superquant {

/// Gamma_ij^k - (Gamma_is^s delta_j^k (-1)^{p(s)} + Gamma_js^s delta_i^k (-1)^{p(i)p(j)+p(s)}) / (n-m+1),
/// indexed like a Christoffel table. Constant on projective classes.
std::vector<SuperFunction> pi_invariant(const SuperConnection& connection);

/// Gamma_ij^k + alpha_i delta_j^k + (-1)^{p(i)p(j)} alpha_j delta_i^k for an even 1-form alpha.
SuperConnection perturb(const SuperConnection& connection, const OneForm& alpha);

/// The even 1-form alpha with `other` = perturb(`base`, alpha), if there is one.
std::optional<OneForm> projective_difference(const SuperConnection& base, const SuperConnection& other);

/// The homogeneous 1-form alpha (of either parity) with `difference` = alpha v id, if there is one.
std::optional<OneForm> projective_difference(const ChartSpec& chart, const std::vector<SuperFunction>& difference);

/// Candidate infinitesimal symmetries of the flat projective class:
/// d_i, x^i d_j and x^i E with E = sum_j x^j d_j, each parity-homogeneous.
std::vector<VectorField> flat_projective_generators(const Chart& chart);

/// True when L_X of the flat connection has the form alpha v id.
bool preserves_flat_projective_class(const Chart& chart, const VectorField& x);

bool projectively_equivalent(const SuperConnection& a, const SuperConnection& b);

/// gamma(s) = (n-m+s-(n-m+1)delta)/(n-m+1).
Rational gamma_value(int n, int m, const Rational& delta, int s);

struct CriticalityEntry {
    int k;
    int l;
    Rational gamma;  // gamma_{2k-l}
};

struct CriticalityReport {
    int n = 0, m = 0;
    Rational delta;
    int kmax = 0;
    std::vector<CriticalityEntry> entries;  // 1 <= l <= k <= kmax
    bool critical() const;
    std::vector<std::pair<int, int>> zeros() const;
};

CriticalityReport criticality(int n, int m, const Rational& delta, int kmax);

/// Throws CriticalityError when some gamma_{2k-l}, 1 <= l <= k, vanishes for this k.
void require_noncritical(int n, int m, const Rational& delta, int k);

} // namespace superquant
