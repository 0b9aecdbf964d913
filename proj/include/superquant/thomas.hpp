#pragma once

#include "superquant/connection.hpp"

namespace superquant {

/// The lifted connection on the Thomas bundle, in the frame
/// {E, d_1^h, ..., d_{n+m}^h} (frame index 0 is the Euler field E, base
/// index i becomes i+1). Weighted functions on the bundle are modeled by
/// (weight, function on the base): E acts as multiplication by the weight
/// and d_i^h acts as d_i - weight * (-1)^{p(s)} Gamma_is^s.
FrameGeometry thomas_frame(const SuperConnection& connection);

/// Index parities of the extended frame.
std::vector<int> lifted_parity(const ChartSpec& chart);

/// The Euler field to the power l, as a weight-0 lifted tensor.
LiftedTensor euler_power(const Chart& chart, int l);

/// Replaces every d_i by d_i^h.
LiftedTensor horizontal_lift(const ContraSymbol& s);

/// Keeps the words without E and reads them as a symbol on the base.
ContraSymbol descend(const LiftedTensor& s);

/// Divergence with respect to the lifted connection.
LiftedTensor tilde_divergence(const SuperConnection& connection, const LiftedTensor& s);

/// (Div A)^h v E^l + 2(n-m+1) (i(r)A)^h v E^{l+1} - l gamma_{2j+l} A^h v E^{l-1} for A of degree j.
LiftedTensor tilde_divergence_formula(const SuperConnection& connection, const ContraSymbol& a, int l);

/// i(r) A with r the supersymmetrized Ricci term of the lift.
ContraSymbol interior_ricci_term(const SuperConnection& connection, const ContraSymbol& a);

/// The components A_k = S, A_{k-1}, ..., A_0 of the divergence-free lift.
std::vector<ContraSymbol> lift_components(const SuperConnection& connection, const ContraSymbol& s);

/// sum_j A_{k-j}^h v E^j: the unique divergence-free lift with descent S.
LiftedTensor div_free_lift(const SuperConnection& connection, const ContraSymbol& s);

/// Components of a lifted tensor in the coordinate frame {d_0, d_1, ...}
/// of the Thomas bundle (same index convention), using d_i^h = d_i - (-1)^{p(s)} Gamma_is^s d_0.
LiftedTensor coordinate_components(const SuperConnection& connection, const LiftedTensor& s);

/// Iterated symmetrized covariant derivative of a weighted function with
/// respect to the lifted connection.
CovTensor tilde_nabla_s_power(const SuperConnection& connection, const JetFunction& f, const Rational& weight, int k);

/// Chart (n+1|m) with an extra leading even coordinate `x0`; base
/// coordinate i becomes i+1.
Chart thomas_chart(const Chart& chart);

/// The lifted connection as a torsion-free connection on thomas_chart,
/// from its coordinate Christoffel symbols (built from Pi).
SuperConnection thomas_coordinate_connection(const SuperConnection& connection);

/// The frame fields E = d_0 and d_i^h = d_i - (-1)^{p(s)} Gamma_is^s d_0 on thomas_chart.
std::vector<VectorField> thomas_frame_fields(const SuperConnection& connection);

struct ThomasCheck {
    bool frame_matches_coordinates = true;
    bool euler_invariant = true;
    std::vector<std::string> mismatches;
};

/// Compares the frame description with the coordinate Christoffel symbols
/// entry by entry and checks that the Lie derivative of the lifted
/// connection along E vanishes.
ThomasCheck check_thomas_connection(const SuperConnection& connection);

} // namespace superquant
