#pragma once

#include "superquant/change.hpp"
#include "superquant/operator.hpp"

#include <json.hpp>

#include <optional>
#include <string_view>

namespace superquant {

using Json = nlohmann::ordered_json;

/// A problem specification: a chart and any of the objects living on it.
///
/// Indices in the JSON form are 1-based; index 0 in a lifted tensor is the
/// Euler field. Rationals and expressions are strings. An absent connection
/// means the flat one.
struct ProblemSpec {
    Chart chart;
    std::optional<SuperConnection> connection;
    std::optional<ContraSymbol> symbol;
    std::optional<LiftedTensor> lifted;
    std::optional<WeightedDensity> density;
    std::optional<CoordinateChange> change;
    std::optional<OneForm> alpha;
    std::optional<Rational> lambda;
    std::optional<Rational> mu;

    SuperConnection connection_or_flat() const { return connection ? *connection : SuperConnection::flat(chart); }
    const ContraSymbol& require_symbol() const;
    const Rational& require_lambda() const;
    const Rational& require_mu() const;
};

/// Validates and parses a specification. Throws InputError on any violation.
ProblemSpec parse_problem(const Json& j);
ProblemSpec parse_problem_text(std::string_view text);

Json to_json(const ProblemSpec& spec);

Json chart_to_json(const ChartSpec& chart);
Json connection_to_json(const SuperConnection& connection);
/// Symbols over the coordinate frame, or lifted tensors over the extended frame.
Json tensor_to_json(const SymmetricTensor& s);
Json density_to_json(const WeightedDensity& f);
Json one_form_to_json(const OneForm& alpha);
Json operator_to_json(const DifferentialOperator& d);

DifferentialOperator operator_from_json(const Chart& chart, const Json& j);

} // namespace superquant
