#include "superquant/errors.hpp"
#include "superquant/io.hpp"
#include "superquant/projective.hpp"
#include "superquant/quantize.hpp"
#include "superquant/thomas.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace superquant;

namespace {

std::string quantize_json(const std::string& spec_text) {
    auto spec = parse_problem_text(spec_text);
    return operator_to_json(quantize(spec.connection_or_flat(), spec.require_symbol(), spec.require_lambda(), spec.require_mu()))
        .dump();
}

std::string apply_json(const std::string& spec_text) {
    auto spec = parse_problem_text(spec_text);
    if (!spec.density) throw InputError("apply needs a density");
    auto q = quantize(spec.connection_or_flat(), spec.require_symbol(), spec.require_lambda(), spec.require_mu());
    return density_to_json(apply_operator(q, *spec.density)).dump();
}

std::string lift_json(const std::string& spec_text) {
    auto spec = parse_problem_text(spec_text);
    return tensor_to_json(div_free_lift(spec.connection_or_flat(), spec.require_symbol())).dump();
}

std::string descend_json(const std::string& spec_text) {
    auto spec = parse_problem_text(spec_text);
    if (!spec.lifted) throw InputError("descend needs a lifted tensor");
    return tensor_to_json(descend(*spec.lifted)).dump();
}

std::string special_json(const std::string& spec_text, const std::string& t) {
    auto spec = parse_problem_text(spec_text);
    return operator_to_json(special_nm_minus1(spec.connection_or_flat(), spec.require_symbol(), spec.require_lambda(),
                                              spec.require_mu(), parse_rational(t)))
        .dump();
}

bool invariant(const std::string& spec_text, const std::string& t) {
    auto spec = parse_problem_text(spec_text);
    if (!spec.alpha) throw InputError("the invariance check needs alpha");
    auto g = spec.connection_or_flat();
    auto run = [&](const SuperConnection& c) {
        if (spec.chart->superdim() == -1)
            return special_nm_minus1(c, spec.require_symbol(), spec.require_lambda(), spec.require_mu(), parse_rational(t));
        return quantize(c, spec.require_symbol(), spec.require_lambda(), spec.require_mu());
    };
    return run(perturb(g, *spec.alpha)) == run(g);
}

py::dict criticality_dict(int n, int m, const std::string& delta, int kmax) {
    auto report = criticality(n, m, parse_rational(delta), kmax);
    py::list entries, zeros;
    for (const auto& e : report.entries) entries.append(py::make_tuple(e.k, e.l, to_string(e.gamma)));
    for (auto [k, l] : report.zeros()) zeros.append(py::make_tuple(k, l));
    py::dict d;
    d["critical"] = report.critical();
    d["zeros"] = zeros;
    d["entries"] = entries;
    return d;
}

py::dict ansatz_dict(int n, int m, const std::string& lambda, const std::string& mu) {
    auto report = ansatz_degree2_system(n, m, parse_rational(lambda), parse_rational(mu));
    py::dict d;
    d["solvable"] = report.solvable;
    d["rank"] = report.rank;
    d["equations"] = report.equations.size();
    if (report.solution)
        d["solution"] = py::make_tuple(to_string((*report.solution)[0]), to_string((*report.solution)[1]),
                                       to_string((*report.solution)[2]));
    else
        d["solution"] = py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_superquant, m) {
    m.doc() = "Exact projectively invariant quantization on supermanifolds";

    auto base = py::register_exception<Error>(m, "SuperquantError");
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

    m.def("quantize_json", &quantize_json, py::arg("spec"));
    m.def("apply_json", &apply_json, py::arg("spec"));
    m.def("lift_json", &lift_json, py::arg("spec"));
    m.def("descend_json", &descend_json, py::arg("spec"));
    m.def("special_json", &special_json, py::arg("spec"), py::arg("t"));
    m.def("invariant", &invariant, py::arg("spec"), py::arg("t") = "0");
    m.def("criticality", &criticality_dict, py::arg("n"), py::arg("m"), py::arg("delta"), py::arg("kmax"));
    m.def("ansatz_degree2", &ansatz_dict, py::arg("n"), py::arg("m"), py::arg("lambda_"), py::arg("mu"));
}
