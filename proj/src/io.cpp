#include "superquant/io.hpp"

#include "superquant/errors.hpp"
#include "superquant/parse.hpp"
#include "superquant/thomas.hpp"

#include <set>

namespace superquant {

namespace {

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw InputError(where + " must be an object");
    std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!names.contains(key)) throw InputError("unknown key '" + key + "' in " + where);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError("missing '" + std::string(key) + "' in " + where);
    return *it;
}

Rational rational_of(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw InputError(where + " must be a rational written as a string");
}

int integer_of(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + " must be an integer");
    return j.get<int>();
}

SuperFunction expression_of(const Json& j, const Chart& chart, const std::string& where) {
    if (!j.is_string()) throw InputError(where + " must be an expression string");
    SuperFunction f = parse_expr(j.get<std::string>(), chart);
    if (!f.parity()) throw InputError(where + " is not parity-homogeneous");
    return f;
}

std::vector<std::string> names_of(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + " must be an array of names");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw InputError(where + " must contain strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

Chart chart_of(const Json& j) {
    only_keys(j, {"even", "odd", "params"}, "chart");
    auto even = names_of(field(j, "even", "chart"), "chart.even");
    auto odd = names_of(field(j, "odd", "chart"), "chart.odd");
    std::vector<std::string> params;
    if (j.contains("params")) params = names_of(j["params"], "chart.params");
    std::vector<std::string> names = even;
    names.insert(names.end(), odd.begin(), odd.end());
    return make_chart(static_cast<int>(even.size()), static_cast<int>(odd.size()), names, params);
}

int index_of(const Json& j, int lo, int hi, const std::string& where) {
    int i = integer_of(j, where);
    if (i < lo || i > hi)
        throw InputError(where + " = " + std::to_string(i) + " is outside " + std::to_string(lo) + ".." + std::to_string(hi));
    return i;
}

SuperConnection connection_of(const Json& j, const Chart& chart) {
    only_keys(j, {"gamma"}, "connection");
    const Json& gamma = field(j, "gamma", "connection");
    if (!gamma.is_array()) throw InputError("connection.gamma must be an array");
    std::vector<SuperConnection::Entry> entries;
    const int n = chart->dim();
    for (const auto& e : gamma) {
        only_keys(e, {"i", "j", "k", "value"}, "connection.gamma entry");
        int i = index_of(field(e, "i", "gamma entry"), 1, n, "gamma entry i");
        int jj = index_of(field(e, "j", "gamma entry"), 1, n, "gamma entry j");
        int k = index_of(field(e, "k", "gamma entry"), 1, n, "gamma entry k");
        entries.push_back({i - 1, jj - 1, k - 1, expression_of(field(e, "value", "gamma entry"), chart, "gamma value")});
    }
    return SuperConnection::from_entries(chart, entries);
}

SymmetricTensor tensor_of(const Json& j, const Chart& chart, bool lifted) {
    const std::string where = lifted ? "lifted" : "symbol";
    only_keys(j, {"degree", "delta", "terms"}, where);
    int degree = integer_of(field(j, "degree", where), where + ".degree");
    if (degree < 0) throw InputError(where + ".degree must be nonnegative");
    Rational delta = rational_of(field(j, "delta", where), where + ".delta");
    SymmetricTensor s = lifted ? SymmetricTensor(chart, lifted_parity(*chart), delta, degree)
                               : SymmetricTensor::symbol(chart, delta, degree);
    const Json& terms = field(j, "terms", where);
    if (!terms.is_array()) throw InputError(where + ".terms must be an array");
    for (const auto& t : terms) {
        only_keys(t, {"indices", "coeff"}, where + " term");
        const Json& indices = field(t, "indices", where + " term");
        if (!indices.is_array() || static_cast<int>(indices.size()) != degree)
            throw InputError(where + " term needs exactly " + std::to_string(degree) + " indices");
        Word w;
        for (const auto& x : indices)
            w.push_back(lifted ? index_of(x, 0, chart->dim(), "lifted index") : index_of(x, 1, chart->dim(), "symbol index") - 1);
        s.add_term(w, expression_of(field(t, "coeff", where + " term"), chart, where + " coefficient"));
    }
    if (!s.parity()) throw InputError(where + " is not parity-homogeneous");
    return s;
}

std::vector<SuperFunction> coordinate_map(const Json& j, const Chart& chart, const std::string& where) {
    if (!j.is_object()) throw InputError(where + " must map coordinate names to expressions");
    std::vector<SuperFunction> images;
    for (int i = 0; i < chart->dim(); ++i) images.push_back(SuperFunction::coordinate(chart, i));
    for (const auto& [name, value] : j.items()) {
        auto i = chart->coordinate_index(name);
        if (!i) throw InputError(where + ": unknown coordinate '" + name + "'");
        images[*i] = expression_of(value, chart, where + "." + name);
    }
    return images;
}

OneForm alpha_of(const Json& j, const Chart& chart) {
    if (!j.is_object()) throw InputError("alpha must map coordinate names to components");
    OneForm alpha{std::vector<SuperFunction>(chart->dim(), SuperFunction(chart))};
    for (const auto& [name, value] : j.items()) {
        auto i = chart->coordinate_index(name);
        if (!i) throw InputError("alpha: unknown coordinate '" + name + "'");
        alpha.components[*i] = expression_of(value, chart, "alpha." + name);
    }
    return alpha;
}

} // namespace

const ContraSymbol& ProblemSpec::require_symbol() const {
    if (!symbol) throw InputError("this command needs a symbol");
    return *symbol;
}

const Rational& ProblemSpec::require_lambda() const {
    if (!lambda) throw InputError("this command needs lambda");
    return *lambda;
}

const Rational& ProblemSpec::require_mu() const {
    if (!mu) throw InputError("this command needs mu");
    return *mu;
}

ProblemSpec parse_problem(const Json& j) {
    only_keys(j, {"chart", "connection", "symbol", "lifted", "density", "change", "alpha", "lambda", "mu"}, "specification");
    ProblemSpec spec;
    spec.chart = chart_of(field(j, "chart", "specification"));
    const Chart& chart = spec.chart;
    if (j.contains("connection")) spec.connection = connection_of(j["connection"], chart);
    if (j.contains("symbol")) spec.symbol = tensor_of(j["symbol"], chart, false);
    if (j.contains("lifted")) spec.lifted = tensor_of(j["lifted"], chart, true);
    if (j.contains("density")) {
        only_keys(j["density"], {"weight", "value"}, "density");
        spec.density = WeightedDensity{rational_of(field(j["density"], "weight", "density"), "density.weight"),
                                        expression_of(field(j["density"], "value", "density"), chart, "density.value")};
    }
    if (j.contains("change")) {
        only_keys(j["change"], {"forward", "inverse"}, "change");
        spec.change.emplace(chart, coordinate_map(field(j["change"], "forward", "change"), chart, "change.forward"),
                            coordinate_map(field(j["change"], "inverse", "change"), chart, "change.inverse"));
    }
    if (j.contains("alpha")) spec.alpha = alpha_of(j["alpha"], chart);
    if (j.contains("lambda")) spec.lambda = rational_of(j["lambda"], "lambda");
    if (j.contains("mu")) spec.mu = rational_of(j["mu"], "mu");
    return spec;
}

ProblemSpec parse_problem_text(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(j);
}

Json chart_to_json(const ChartSpec& chart) {
    Json j;
    j["even"] = std::vector<std::string>(chart.names.begin(), chart.names.begin() + chart.n);
    j["odd"] = std::vector<std::string>(chart.names.begin() + chart.n, chart.names.end());
    if (!chart.params.empty()) j["params"] = chart.params;
    return j;
}

Json connection_to_json(const SuperConnection& connection) {
    const ChartSpec& chart = *connection.chart();
    Json gamma = Json::array();
    for (int i = 0; i < chart.dim(); ++i)
        for (int j = i; j < chart.dim(); ++j)
            for (int k = 0; k < chart.dim(); ++k) {
                const auto& v = connection.gamma(i, j, k);
                if (v.is_zero()) continue;
                gamma.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", v.to_string()}});
            }
    return {{"gamma", gamma}};
}

Json tensor_to_json(const SymmetricTensor& s) {
    const bool lifted = static_cast<int>(s.index_parity().size()) != s.chart()->dim();
    Json terms = Json::array();
    for (const auto& [w, c] : s.terms()) {
        Json indices = Json::array();
        for (int i : w) indices.push_back(lifted ? i : i + 1);
        terms.push_back({{"indices", indices}, {"coeff", c.to_string()}});
    }
    return {{"degree", s.degree()}, {"delta", to_string(s.weight())}, {"terms", terms}};
}

Json density_to_json(const WeightedDensity& f) { return {{"weight", to_string(f.weight)}, {"value", f.value.to_string()}}; }

Json one_form_to_json(const OneForm& alpha) {
    Json j = Json::object();
    if (alpha.components.empty()) return j;
    const ChartSpec& chart = *alpha.components.front().chart();
    for (int i = 0; i < chart.dim(); ++i)
        if (!alpha.components[i].is_zero()) j[chart.names[i]] = alpha.components[i].to_string();
    return j;
}

Json operator_to_json(const DifferentialOperator& d) {
    Json terms = Json::array();
    for (const auto& [alpha, c] : d.terms)
        terms.push_back({{"alpha", alpha}, {"derivative", multi_index_string(*d.chart, alpha)}, {"coeff", c.to_string()}});
    return {{"lambda", to_string(d.lambda)}, {"mu", to_string(d.mu)}, {"order", d.order()}, {"terms", terms}};
}

DifferentialOperator operator_from_json(const Chart& chart, const Json& j) {
    only_keys(j, {"lambda", "mu", "order", "terms"}, "operator");
    DifferentialOperator d{chart, rational_of(field(j, "lambda", "operator"), "operator.lambda"),
                           rational_of(field(j, "mu", "operator"), "operator.mu"), {}};
    const Json& terms = field(j, "terms", "operator");
    if (!terms.is_array()) throw InputError("operator.terms must be an array");
    for (const auto& t : terms) {
        only_keys(t, {"alpha", "derivative", "coeff"}, "operator term");
        const Json& a = field(t, "alpha", "operator term");
        if (!a.is_array() || static_cast<int>(a.size()) != chart->dim())
            throw InputError("operator term alpha needs one exponent per coordinate");
        MultiIndex alpha;
        for (int i = 0; i < chart->dim(); ++i) {
            int e = integer_of(a[i], "operator exponent");
            if (e < 0 || (chart->parity(i) && e > 1)) throw InputError("invalid operator exponent");
            alpha.push_back(e);
        }
        SuperFunction c = expression_of(field(t, "coeff", "operator term"), chart, "operator coefficient");
        if (!c.is_zero()) d.terms[alpha] += c;
    }
    std::erase_if(d.terms, [](const auto& kv) { return kv.second.is_zero(); });
    return d;
}

Json to_json(const ProblemSpec& spec) {
    Json j;
    j["chart"] = chart_to_json(*spec.chart);
    if (spec.connection) j["connection"] = connection_to_json(*spec.connection);
    if (spec.symbol) j["symbol"] = tensor_to_json(*spec.symbol);
    if (spec.lifted) j["lifted"] = tensor_to_json(*spec.lifted);
    if (spec.density) j["density"] = density_to_json(*spec.density);
    if (spec.change) {
        Json forward = Json::object(), inverse = Json::object();
        for (int i = 0; i < spec.chart->dim(); ++i) {
            forward[spec.chart->names[i]] = spec.change->forward()[i].to_string();
            inverse[spec.chart->names[i]] = spec.change->inverse()[i].to_string();
        }
        j["change"] = {{"forward", forward}, {"inverse", inverse}};
    }
    if (spec.alpha) j["alpha"] = one_form_to_json(*spec.alpha);
    if (spec.lambda) j["lambda"] = to_string(*spec.lambda);
    if (spec.mu) j["mu"] = to_string(*spec.mu);
    return j;
}

} // namespace superquant
