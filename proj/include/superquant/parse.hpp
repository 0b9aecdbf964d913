#pragma once

#include "superquant/superfunction.hpp"

#include <string_view>

namespace superquant {

struct ParsedExpr {
    SuperFunction value;
    /// Set when a product contained a repeated odd generator (which
    /// canonicalizes to zero).
    bool odd_square = false;
};

/// Parses an expression over the chart's coordinates and parameters.
///
/// Grammar: rational literals, identifiers, binary `+ - * /`, unary minus,
/// parentheses, `^` with a nonnegative integer exponent, and juxtaposition
/// as multiplication. Products keep the written order of odd factors.
/// Division is only by nonzero constants. `^` applies to even coordinates,
/// parameters, literals and parenthesized even expressions.
ParsedExpr parse_expression(std::string_view text, const Chart& chart);

/// Convenience wrapper returning only the value.
SuperFunction parse_expr(std::string_view text, const Chart& chart);

} // namespace superquant
