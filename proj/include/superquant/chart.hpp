#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace superquant {

/// A graded coordinate chart of dimension (n|m).
///
/// Coordinates are indexed 0..n+m-1 internally: the first n are even, the
/// remaining m are odd. Parameters are additional even indeterminates that
/// behave as constants under every coordinate derivative; they carry the
/// unknown coefficients of generic test objects.
struct ChartSpec {
    int n = 0;
    int m = 0;
    std::vector<std::string> names;
    std::vector<std::string> params;

    int dim() const { return n + m; }
    int superdim() const { return n - m; }
    int parity(int i) const { return i >= n ? 1 : 0; }
    /// Number of commuting polynomial variables: even coordinates then parameters.
    int num_vars() const { return n + static_cast<int>(params.size()); }

    std::optional<int> coordinate_index(const std::string& name) const;
    std::optional<int> param_index(const std::string& name) const;

    bool operator==(const ChartSpec&) const = default;
};

using Chart = std::shared_ptr<const ChartSpec>;

/// Builds a validated chart. Empty `names` defaults to x1..x{n+m}.
Chart make_chart(int n, int m, std::vector<std::string> names = {}, std::vector<std::string> params = {});

/// Same chart with extra parameters appended.
Chart with_params(const Chart& chart, const std::vector<std::string>& extra);

bool same_chart(const Chart& a, const Chart& b);

} // namespace superquant
