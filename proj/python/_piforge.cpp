#include "piforge/commands.hpp"
#include "piforge/congruence.hpp"
#include "piforge/identities.hpp"
#include "piforge/sequences.hpp"
#include "piforge/series.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

piforge::SequenceId make_id(const std::string& name, const std::vector<std::string>& params) {
    const auto tag = piforge::tag_from_name(name);
    if (!tag) throw piforge::DomainError("unknown sequence " + name);
    piforge::SequenceId id{*tag, {}};
    for (const auto& p : params) id.params.push_back(piforge::parse_rat(p));
    piforge::validate(id);
    return id;
}

py::dict verdict_dict(const piforge::Verdict& v) {
    return py::dict("case_id"_a = v.case_id, "status"_a = piforge::status_name(v.status), "p"_a = v.p,
                    "result"_a = piforge::verdict_name(v.result), "exponent"_a = v.exponent, "lhs"_a = v.lhs,
                    "rhs"_a = v.rhs, "branch"_a = v.branch, "note"_a = v.note,
                    "exact_recheck"_a = v.exact_recheck);
}

}  // namespace

PYBIND11_MODULE(_piforge, m) {
    m.doc() = "Exact checks for 1/pi series, binomial identities and supercongruences";

    py::register_exception<piforge::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<piforge::UsageError>(m, "UsageError", PyExc_ValueError);

    m.def("sequence_term", [](const std::string& name, long n, const std::vector<std::string>& params) {
        return piforge::to_string(piforge::sequence_term(make_id(name, params), n));
    }, "name"_a, "n"_a, "params"_a = std::vector<std::string>{});

    m.def("sequence_term_mod", [](const std::string& name, long n, const std::string& modulus,
                                  const std::vector<std::string>& params) -> std::optional<std::string> {
        const auto r = piforge::sequence_term_mod(make_id(name, params), n, piforge::parse_int(modulus));
        if (!r) return std::nullopt;
        return piforge::to_string(*r);
    }, "name"_a, "n"_a, "modulus"_a, "params"_a = std::vector<std::string>{});

    m.def("legendre", [](const std::string& a, long p) { return piforge::legendre(piforge::parse_int(a), p); },
          "a"_a, "p"_a);

    m.def("quadform_rep", [](const std::string& target, long a, long d) -> py::object {
        const auto r = piforge::quadform_rep(piforge::parse_int(target), a, d);
        if (!r.found) return py::none();
        return py::make_tuple(piforge::to_string(r.x), piforge::to_string(r.y));
    }, "target"_a, "a"_a, "d"_a);

    m.def("verify_identity", [](const std::string& id, long n_max) {
        const auto tag = piforge::identity_from_id(id);
        if (!tag) throw piforge::DomainError("unknown identity " + id);
        py::list out;
        for (const auto& v : piforge::verify_identity(*tag, n_max)) {
            out.append(py::dict("n"_a = v.n, "equal"_a = v.equal, "lhs"_a = piforge::to_string(v.lhs),
                                "rhs"_a = piforge::to_string(v.rhs)));
        }
        return out;
    }, "id"_a, "n_max"_a);

    m.def("check_convergence", [](const std::string& id, long digits, long max_terms) {
        const auto r = piforge::check_convergence(piforge::find_series(id), {digits, max_terms});
        return py::dict("outcome"_a = piforge::outcome_name(r.outcome), "digits"_a = r.digits, "terms"_a = r.terms,
                        "residual"_a = r.residual, "tail_bound"_a = r.tail_bound, "bound_kind"_a = r.bound_kind,
                        "partial_sum"_a = r.partial_sum, "target"_a = r.target);
    }, "id"_a, "digits"_a = 30, "max_terms"_a = 2000);

    m.def("series_ids", [] {
        std::vector<std::string> ids;
        for (const auto& s : piforge::series_registry()) ids.push_back(s.id);
        return ids;
    });

    m.def("case_ids", [] {
        std::vector<std::string> ids;
        for (const auto& c : piforge::congruence_registry()) ids.push_back(c.id);
        return ids;
    });

    m.def("check_case", [](const std::string& id, long p) {
        const auto* c = piforge::find_case(id);
        if (!c) throw piforge::DomainError("unknown congruence case " + id);
        return verdict_dict(piforge::check_case(*c, p));
    }, "id"_a, "p"_a);

    m.def("run", [](const std::string& command, const std::vector<std::string>& ids, const py::kwargs& kw) {
        piforge::RunConfig c;
        c.command = command;
        c.ids = ids;
        if (command == "seq") c.n_max = -1;
        for (const auto& [k, v] : kw) {
            const auto key = py::cast<std::string>(k);
            if (key == "all") c.all = py::cast<bool>(v);
            else if (key == "suite") c.suite = py::cast<std::string>(v);
            else if (key == "n_max") c.n_max = py::cast<long>(v);
            else if (key == "n") c.n = py::cast<long>(v);
            else if (key == "p_min") c.p_min = py::cast<long>(v);
            else if (key == "p_max") c.p_max = py::cast<long>(v);
            else if (key == "digits") c.digits = py::cast<long>(v);
            else if (key == "max_terms") c.max_terms = py::cast<long>(v);
            else if (key == "m") c.m = py::cast<std::vector<std::string>>(v);
            else if (key == "params") c.params = py::cast<std::map<std::string, std::string>>(v);
            else if (key == "workers") c.workers = py::cast<unsigned>(v);
            else if (key == "strict_conjectures") c.strict_conjectures = py::cast<bool>(v);
            else throw piforge::UsageError("unknown option " + key);
        }
        piforge::Report rep;
        {
            py::gil_scoped_release release;
            rep = piforge::run_command(c);
        }
        return py::make_tuple(rep.exit_code, piforge::report_body(rep).dump());
    }, "command"_a, "ids"_a = std::vector<std::string>{});
}
