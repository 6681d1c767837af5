#include "toroidalg/glvirmod.hpp"
#include "toroidalg/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace toroidalg;

namespace {

RunConfig config_from_text(const std::string& text)
{
    return config_from_json(json::parse(text));
}

py::dict charges_dict(const GlVirCharges& c)
{
    py::dict d;
    d["C_sl"] = rational_str(c.sl);
    d["C_Heis"] = rational_str(c.heis);
    d["C_Vir"] = rational_str(c.vir);
    d["C_VH"] = rational_str(c.vh);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "exact toroidal and EALA verification suites";
    m.attr("REPORT_SCHEMA") = kReportSchema;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("suite_commands", &suite_commands);
    m.def(
        "example_config", [](const std::string& name) { return config_to_json(example_config(name)).dump(); },
        py::arg("name"), "packaged example configuration as a JSON string");
    m.def(
        "run",
        [](const std::string& command, const std::string& config) {
            RunConfig cfg = config_from_text(config);
            py::gil_scoped_release release;
            return run_command(command, cfg).report.dump();
        },
        py::arg("command"), py::arg("config"), "run one suite or \"all\"; returns the report as a JSON string");
    m.def(
        "toroidal_charges",
        [](int N, const std::string& level, const std::string& mu, const std::string& nu, long dim_g,
           const std::string& dual_coxeter) {
            return charges_dict(toroidal_charges(N, parse_rational(level), parse_rational(mu), parse_rational(nu),
                                                 dim_g, parse_rational(dual_coxeter)));
        },
        py::arg("N"), py::arg("level"), py::arg("mu"), py::arg("nu"), py::arg("dim_g"), py::arg("dual_coxeter"));
    m.def(
        "eala_charges",
        [](int N, const std::string& level, const std::string& mu, long dim_g, const std::string& dual_coxeter) {
            return charges_dict(
                eala_charges(N, parse_rational(level), parse_rational(mu), dim_g, parse_rational(dual_coxeter)));
        },
        py::arg("N"), py::arg("level"), py::arg("mu"), py::arg("dim_g"), py::arg("dual_coxeter"));
}
