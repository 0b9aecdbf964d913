#include "superquant/errors.hpp"
#include "superquant/io.hpp"
#include "superquant/lie.hpp"
#include "superquant/projective.hpp"
#include "superquant/quantize.hpp"
#include "superquant/random.hpp"
#include "superquant/thomas.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace superquant;

namespace {

enum ExitCode { ok = 0, verification_failed = 1, input_error = 2, precondition_failed = 3 };

struct Options {
    std::string format = "json";
    std::string spec_path;
    std::uint64_t seed = 0;
    int kmax = 3;
    std::string t = "0";
    int n = 1, m = 0;
    std::string delta = "0";
    std::string lambda = "1/2", mu = "1/2";
};

ProblemSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read specification file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_text(buffer.str());
}

Rational rational_option(const std::string& text, const std::string& name) {
    try {
        return parse_rational(text);
    } catch (const Error&) {
        throw InputError("--" + name + " expects a rational, got '" + text + "'");
    }
}

void render_text(std::ostream& out, const Json& j, const std::string& indent) {
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << indent << key << ":\n";
            render_text(out, value, indent + "  ");
        } else if (value.is_array() && !value.empty() && value.front().is_structured()) {
            out << indent << key << ":\n";
            for (const auto& item : value) {
                if (item.is_object()) {
                    out << indent << "  -\n";
                    render_text(out, item, indent + "    ");
                } else {
                    out << indent << "  - " << item.dump() << "\n";
                }
            }
        } else {
            out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

void emit(const Options& opt, const Json& report) {
    if (opt.format == "text")
        render_text(std::cout, report, "");
    else
        std::cout << report.dump(2) << "\n";
}

Json verdict(bool verified) { return verified ? "verified" : "failed"; }

DifferentialOperator quantize_spec(const ProblemSpec& spec, const SuperConnection& connection, const ContraSymbol& s,
                                   const Rational& t) {
    if (spec.chart->superdim() == -1)
        return special_nm_minus1(connection, s, spec.require_lambda(), spec.require_mu(), t);
    return quantize(connection, s, spec.require_lambda(), spec.require_mu());
}

int cmd_quantize(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    auto q = quantize(spec.connection_or_flat(), spec.require_symbol(), spec.require_lambda(), spec.require_mu());
    emit(opt, {{"command", "quantize"}, {"operator", operator_to_json(q)}});
    return ok;
}

int cmd_apply(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    if (!spec.density) throw InputError("apply needs a density");
    auto q = quantize(spec.connection_or_flat(), spec.require_symbol(), spec.require_lambda(), spec.require_mu());
    auto result = apply_operator(q, *spec.density);
    emit(opt, {{"command", "apply"}, {"operator", operator_to_json(q)}, {"density", density_to_json(result)}});
    return ok;
}

int cmd_lift(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    auto connection = spec.connection_or_flat();
    const auto& s = spec.require_symbol();
    Json components = Json::array();
    for (const auto& a : lift_components(connection, s)) components.push_back(tensor_to_json(a));
    emit(opt, {{"command", "lift"}, {"lifted", tensor_to_json(div_free_lift(connection, s))}, {"components", components}});
    return ok;
}

int cmd_descend(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    if (!spec.lifted) throw InputError("descend needs a lifted tensor");
    emit(opt, {{"command", "descend"}, {"symbol", tensor_to_json(descend(*spec.lifted))}});
    return ok;
}

int cmd_criticality(const Options& opt) {
    auto report = criticality(opt.n, opt.m, rational_option(opt.delta, "delta"), opt.kmax);
    Json entries = Json::array(), zeros = Json::array();
    for (const auto& e : report.entries) entries.push_back({{"k", e.k}, {"l", e.l}, {"gamma", to_string(e.gamma)}});
    for (auto [k, l] : report.zeros()) zeros.push_back({{"k", k}, {"l", l}});
    emit(opt, {{"command", "criticality"},
               {"n", opt.n},
               {"m", opt.m},
               {"delta", to_string(report.delta)},
               {"kmax", opt.kmax},
               {"critical", report.critical()},
               {"zeros", zeros},
               {"entries", entries}});
    return ok;
}

int cmd_check_invariance(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    RandomGenerator gen(opt.seed);
    OneForm alpha = spec.alpha ? *spec.alpha : gen.one_form(spec.chart, 0, 1);
    if (alpha.parity(*spec.chart) != 0) throw InputError("alpha must be even");
    auto connection = spec.connection_or_flat();
    Rational t = rational_option(opt.t, "t");
    const auto& s = spec.require_symbol();
    auto before = quantize_spec(spec, connection, s, t);
    auto after = quantize_spec(spec, perturb(connection, alpha), s, t);
    bool same = before == after;
    emit(opt, {{"command", "check-invariance"}, {"verdict", verdict(same)}, {"alpha", one_form_to_json(alpha)}});
    return same ? ok : verification_failed;
}

int cmd_check_naturality(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    RandomGenerator gen(opt.seed);
    CoordinateChange change = spec.change ? *spec.change : gen.affine_change(spec.chart);
    auto connection = spec.connection_or_flat();
    const auto& s = spec.require_symbol();
    Rational t = rational_option(opt.t, "t");
    auto lhs = quantize_spec(spec, pullback(change, connection), pullback(change, s), t);
    auto rhs = pullback(change, quantize_spec(spec, connection, s, t));
    bool same = lhs == rhs;
    Json forward = Json::object();
    for (int i = 0; i < spec.chart->dim(); ++i) forward[spec.chart->names[i]] = change.forward()[i].to_string();
    emit(opt, {{"command", "check-naturality"}, {"verdict", verdict(same)}, {"forward", forward}});
    return same ? ok : verification_failed;
}

int cmd_check_flat_equivariance(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    const Chart& c = spec.chart;
    auto flat = SuperConnection::flat(c);
    const auto& s = spec.require_symbol();
    const Rational& lambda = spec.require_lambda();
    const Rational& mu = spec.require_mu();
    auto q = quantize(flat, s, lambda, mu);
    Json generators = Json::array();
    bool all = true;
    for (const auto& x : flat_projective_generators(c)) {
        Json components = Json::array();
        for (const auto& f : x.components) components.push_back(f.to_string());
        Json entry{{"field", components}};
        if (!preserves_flat_projective_class(c, x)) {
            entry["status"] = "quarantined";
        } else {
            bool same = lie_derivative(x, q) == quantize(flat, lie_derivative(x, s), lambda, mu);
            all = all && same;
            entry["status"] = verdict(same);
        }
        generators.push_back(entry);
    }
    emit(opt, {{"command", "check-flat-equivariance"}, {"verdict", verdict(all)}, {"generators", generators}});
    return all ? ok : verification_failed;
}

int cmd_check_thomas(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    auto connection = spec.connection_or_flat();
    auto check = check_thomas_connection(connection);
    bool all = check.frame_matches_coordinates && check.euler_invariant;
    Json report{{"command", "check-thomas"},
                {"frame_matches_coordinates", check.frame_matches_coordinates},
                {"euler_invariant", check.euler_invariant},
                {"mismatches", check.mismatches}};
    if (spec.symbol) {
        Json divergence = Json::array();
        for (int l = spec.symbol->degree() == 0 ? 1 : 0; l <= opt.kmax; ++l) {
            auto lifted = vee(horizontal_lift(*spec.symbol), euler_power(spec.chart, l));
            bool same = tilde_divergence(connection, lifted) == tilde_divergence_formula(connection, *spec.symbol, l);
            all = all && same;
            divergence.push_back({{"l", l}, {"status", verdict(same)}});
        }
        report["divergence_formula"] = divergence;
    }
    report["verdict"] = verdict(all);
    emit(opt, report);
    return all ? ok : verification_failed;
}

int cmd_ansatz(const Options& opt) {
    auto report = ansatz_degree2_system(opt.n, opt.m, rational_option(opt.lambda, "lambda"), rational_option(opt.mu, "mu"));
    Json equations = Json::array();
    for (const auto& row : report.equations)
        equations.push_back({{"a", to_string(row[0])}, {"b", to_string(row[1])}, {"c", to_string(row[2])}, {"rhs", to_string(row[3])}});
    Json out{{"command", "ansatz-1d"},
             {"n", opt.n},
             {"m", opt.m},
             {"lambda", to_string(report.lambda)},
             {"mu", to_string(report.mu)},
             {"solvable", report.solvable},
             {"rank", report.rank},
             {"equations", equations}};
    if (report.solution) {
        const auto& x = *report.solution;
        out["solution"] = {{"a", to_string(x[0])}, {"b", to_string(x[1])}, {"c", to_string(x[2])}};
        Json free = Json::array();
        for (int i : report.free_unknowns) free.push_back(std::string(1, static_cast<char>('a' + i)));
        out["free"] = free;
    }
    emit(opt, out);
    return ok;
}

int cmd_special(const Options& opt) {
    auto spec = load_spec(opt.spec_path);
    auto q = special_nm_minus1(spec.connection_or_flat(), spec.require_symbol(), spec.require_lambda(), spec.require_mu(),
                               rational_option(opt.t, "t"));
    emit(opt, {{"command", "special-nm-1"}, {"operator", operator_to_json(q)}});
    return ok;
}

int report_error(const Options& opt, const char* kind, const std::string& message, int code) {
    std::cerr << "superquant: " << message << "\n";
    if (opt.format == "json") std::cout << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Exact natural projectively invariant quantization on supermanifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", opt.seed, "Seed for randomly drawn test objects");

    std::map<CLI::App*, int (*)(const Options&)> handlers;
    auto with_spec = [&](const char* name, const char* help, int (*run)(const Options&)) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("spec", opt.spec_path, "Problem specification (JSON)")->required();
        handlers[sub] = run;
        return sub;
    };
    with_spec("quantize", "Quantize the symbol with the connection", cmd_quantize);
    with_spec("apply", "Apply the quantized symbol to the density", cmd_apply);
    with_spec("lift", "Divergence-free lift of the symbol", cmd_lift);
    with_spec("descend", "Descend a lifted tensor to a symbol", cmd_descend);
    with_spec("check-invariance", "Check projective invariance (alpha from the spec or random)", cmd_check_invariance)
        ->add_option("--t", opt.t, "Parameter of the degree-1 formula at n-m=-1");
    with_spec("check-naturality", "Check naturality (change from the spec or random affine)", cmd_check_naturality)
        ->add_option("--t", opt.t, "Parameter of the degree-1 formula at n-m=-1");
    with_spec("check-flat-equivariance", "Check equivariance under the flat projective generators",
              cmd_check_flat_equivariance);
    with_spec("check-thomas", "Check the lifted connection and the lifted divergence formula", cmd_check_thomas)
        ->add_option("--kmax", opt.kmax, "Largest Euler power in the divergence check");
    with_spec("special-nm-1", "Quantize with the n-m=-1 formulas", cmd_special)
        ->add_option("--t", opt.t, "Parameter of the degree-1 formula");

    auto* crit = app.add_subcommand("criticality", "Tabulate gamma_{2k-l} and flag critical shifts");
    crit->add_option("--n", opt.n)->required();
    crit->add_option("--m", opt.m)->required();
    crit->add_option("--delta", opt.delta)->required();
    crit->add_option("--kmax", opt.kmax)->required();
    handlers[crit] = cmd_criticality;

    auto* ansatz = app.add_subcommand("ansatz-1d", "Solve the degree-2 natural ansatz for projective invariance");
    ansatz->add_option("--n", opt.n, "Even dimension");
    ansatz->add_option("--m", opt.m, "Odd dimension");
    ansatz->add_option("--lambda", opt.lambda, "Source weight");
    ansatz->add_option("--mu", opt.mu, "Target weight");
    handlers[ansatz] = cmd_ansatz;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    try {
        for (auto& [sub, run] : handlers)
            if (sub->parsed()) return run(opt);
        return input_error;
    } catch (const PreconditionError& e) {
        return report_error(opt, "precondition", e.what(), precondition_failed);
    } catch (const InputError& e) {
        return report_error(opt, "input", e.what(), input_error);
    } catch (const ResourceError& e) {
        return report_error(opt, "resource", e.what(), input_error);
    } catch (const Error& e) {
        return report_error(opt, "input", e.what(), input_error);
    }
}
