#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "coopstc/errors.hpp"
#include "coopstc/harness.hpp"

namespace py = pybind11;
using namespace coopstc;

namespace {

Curve curve_from(const std::vector<std::pair<double, double>>& pts) {
    Curve c;
    for (const auto& [snr, ber] : pts) c.push_back({snr, ber});
    return c;
}

}  // namespace

PYBIND11_MODULE(_coopstc, m) {
    m.doc() = "Monte Carlo BER simulation of cooperative MIMO amplify-and-forward relay networks";
    m.attr("__version__") = std::string(kVersion);

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    static py::exception<ConfigError> config_error(m, "ConfigError", base.ptr());
    static py::exception<RangeError> range_error(m, "RangeError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            config_error(e.what());
        } catch (const RangeError& e) {
            range_error(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_property(
            "system", [](const ExperimentConfig& c) { return std::string(to_string(c.system)); },
            [](ExperimentConfig& c, const std::string& v) { c.system = parse_system(v); })
        .def_property(
            "stc", [](const ExperimentConfig& c) { return std::string(to_string(c.scheme)); },
            [](ExperimentConfig& c, const std::string& v) { c.scheme = parse_scheme(v); })
        .def_property(
            "modulation", [](const ExperimentConfig& c) { return std::string(to_string(c.modulation)); },
            [](ExperimentConfig& c, const std::string& v) { c.modulation = parse_modulation(v); })
        .def_property(
            "policy", [](const ExperimentConfig& c) { return std::string(to_string(c.policy)); },
            [](ExperimentConfig& c, const std::string& v) { c.policy = parse_policy(v); })
        .def_readwrite("n_relays", &ExperimentConfig::n_relays)
        .def_readwrite("n_antennas", &ExperimentConfig::n_antennas)
        .def_readwrite("delays", &ExperimentConfig::delays)
        .def_readwrite("direct_link", &ExperimentConfig::direct_link)
        .def_readwrite("sigma2_n1", &ExperimentConfig::sigma2_n1)
        .def_readwrite("sigma2_d", &ExperimentConfig::sigma2_d)
        .def_readwrite("sigma2_f", &ExperimentConfig::sigma2_f)
        .def_readwrite("sigma2_g", &ExperimentConfig::sigma2_g)
        .def_readwrite("p1", &ExperimentConfig::p1)
        .def_readwrite("p2", &ExperimentConfig::p2)
        .def_readwrite("p_r", &ExperimentConfig::p_r)
        .def_readwrite("snr_db", &ExperimentConfig::snr_db)
        .def_readwrite("beta", &ExperimentConfig::beta)
        .def_readwrite("sg_iterations", &ExperimentConfig::sg_iterations)
        .def_readwrite("redetect", &ExperimentConfig::redetect)
        .def_readwrite("optimize", &ExperimentConfig::optimize)
        .def_readwrite("block_length", &ExperimentConfig::block_length)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("min_bit_errors", &ExperimentConfig::min_bit_errors)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("workers", &ExperimentConfig::workers)
        .def("code_power", &ExperimentConfig::code_power)
        .def("validate", &ExperimentConfig::validate)
        .def("to_text", &serialize_config)
        .def("__repr__", [](const ExperimentConfig& c) { return "ExperimentConfig(\n" + serialize_config(c) + ")"; });

    m.def("parse_config", &parse_config, py::arg("text"), "Parse flat key = value text.");
    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_snr_grid", &parse_snr_grid, py::arg("text"));

    py::class_<BERRecord>(m, "BERRecord")
        .def_readonly("snr_db", &BERRecord::snr_db)
        .def_readonly("ber", &BERRecord::ber)
        .def_readonly("bit_errors", &BERRecord::bit_errors)
        .def_readonly("bits", &BERRecord::bits)
        .def_readonly("ci95", &BERRecord::ci95)
        .def_readonly("blocks", &BERRecord::blocks)
        .def_readonly("degenerate_blocks", &BERRecord::degenerate_blocks)
        .def_readonly("wall_time", &BERRecord::wall_time)
        .def("__repr__", [](const BERRecord& r) {
            return "BERRecord(snr_db=" + std::to_string(r.snr_db) + ", ber=" + std::to_string(r.ber) +
                   ", bit_errors=" + std::to_string(r.bit_errors) + ", bits=" + std::to_string(r.bits) + ")";
        });

    m.def("run_point", &run_point, py::arg("config"), py::arg("snr_db"), py::arg("point_index") = 0,
          py::call_guard<py::gil_scoped_release>(), "BER at one SNR.");
    m.def(
        "run_sweep",
        [](const ExperimentConfig& cfg, std::optional<std::filesystem::path> out_dir) {
            py::gil_scoped_release release;
            return run_sweep(cfg, out_dir).records;
        },
        py::arg("config"), py::arg("out_dir") = py::none(),
        "BER over the config's SNR grid; writes ber.csv and manifest.json when out_dir is given.");
    m.def("format_csv", &format_csv, py::arg("records"));

    m.def(
        "measure_gain_db",
        [](const std::vector<std::pair<double, double>>& a, const std::vector<std::pair<double, double>>& b,
           double target) { return measure_gain_db(curve_from(a), curve_from(b), target); },
        py::arg("a"), py::arg("b"), py::arg("target_ber") = 1e-3,
        "SNR of curve a minus SNR of curve b at the target BER; curves are [(snr_db, ber), ...].");
    m.def(
        "estimate_diversity_order",
        [](const std::vector<std::pair<double, double>>& c, double lo, double hi) {
            return estimate_diversity_order(curve_from(c), lo, hi);
        },
        py::arg("curve"), py::arg("snr_lo"), py::arg("snr_hi"));
    m.def(
        "read_curve_csv",
        [](const std::filesystem::path& p) {
            std::vector<std::pair<double, double>> out;
            for (const auto& pt : read_curve_csv(p)) out.emplace_back(pt.snr_db, pt.ber);
            return out;
        },
        py::arg("path"));
    m.def("bpsk_awgn_ber", &bpsk_awgn_ber, py::arg("snr_db"));
    m.def(
        "wilson_interval",
        [](std::uint64_t k, std::uint64_t n) {
            const Interval i = wilson_interval(k, n);
            return std::make_pair(i.lo, i.hi);
        },
        py::arg("errors"), py::arg("bits"));
}
