#include "superquant/chart.hpp"

#include "superquant/errors.hpp"

#include <algorithm>
#include <set>

namespace superquant {

std::optional<int> ChartSpec::coordinate_index(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<int>(it - names.begin());
}

std::optional<int> ChartSpec::param_index(const std::string& name) const {
    auto it = std::find(params.begin(), params.end(), name);
    if (it == params.end()) return std::nullopt;
    return static_cast<int>(it - params.begin());
}

Chart make_chart(int n, int m, std::vector<std::string> names, std::vector<std::string> params) {
    if (n < 0 || m < 0) throw InputError("chart dimensions must be nonnegative");
    if (m > 30) throw InputError("at most 30 odd coordinates are supported");
    if (names.empty())
        for (int i = 0; i < n + m; ++i) names.push_back("x" + std::to_string(i + 1));
    if (static_cast<int>(names.size()) != n + m)
        throw InputError("chart needs exactly n+m coordinate names");
    std::set<std::string> seen;
    for (const auto& s : names)
        if (s.empty() || !seen.insert(s).second) throw InputError("coordinate names must be distinct and nonempty: '" + s + "'");
    for (const auto& s : params)
        if (s.empty() || !seen.insert(s).second) throw InputError("parameter names must be distinct from coordinates: '" + s + "'");
    auto spec = std::make_shared<ChartSpec>();
    spec->n = n;
    spec->m = m;
    spec->names = std::move(names);
    spec->params = std::move(params);
    return spec;
}

Chart with_params(const Chart& chart, const std::vector<std::string>& extra) {
    auto params = chart->params;
    params.insert(params.end(), extra.begin(), extra.end());
    return make_chart(chart->n, chart->m, chart->names, std::move(params));
}

bool same_chart(const Chart& a, const Chart& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace superquant
