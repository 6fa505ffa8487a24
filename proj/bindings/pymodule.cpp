#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "monsterlab/evalcore.hpp"
#include "monsterlab/extend.hpp"
#include "monsterlab/monsters.hpp"
#include "monsterlab/perfectsets.hpp"
#include "monsterlab/restrict.hpp"
#include "monsterlab/suites.hpp"

namespace py = pybind11;
using namespace monsterlab;

namespace {

py::tuple ball_tuple(const Ball& b) { return py::make_tuple(b.c, b.r); }

BallFn wrap_callable(const std::function<double(double)>& f) {
    return [f](double x) { return Ball(f(x), 1e-14); };
}

}  // namespace

PYBIND11_MODULE(_monsterlab, m) {
    m.doc() = "certified pathological constructions and their verification suites";

    // certified evaluators; each returns (center, radius)
    m.def("volterra_h", [](double x) { return ball_tuple(monsters::volterra_h(x)); });
    m.def("volterra_h_prime",
          [](double x) { return ball_tuple(monsters::volterra_h_prime(x)); });
    m.def("psi", [](double x) { return ball_tuple(monsters::psi(x)); });
    m.def("phi", [](double x) { return ball_tuple(monsters::phi(x)); });
    m.def("eta", [](double x) { return ball_tuple(monsters::eta(x)); });
    m.def("eta_prime", [](double x) { return ball_tuple(monsters::eta_prime(x)); });
    m.def("weierstrass", [](double x, int terms) {
        return ball_tuple(monsters::weierstrass_W(x, terms));
    }, py::arg("x"), py::arg("terms") = 30);

    m.def("takagi", [](const std::string& x, int depth) {
        auto v = monsters::takagi(monsters::TakagiSpec{depth}, rat_parse(x));
        return py::make_tuple(rat_str(v.partial), rat_str(v.tail));
    }, py::arg("x"), py::arg("depth") = 8, "exact partial sum and tail bound, rationals as p/q");

    m.def("pompeiu_g", [](double x) {
        static const auto spec = monsters::PompeiuSpec::standard();
        return ball_tuple(monsters::pompeiu_g(spec, x));
    });
    m.def("pompeiu_h", [](double y, double tol) {
        static const auto spec = monsters::PompeiuSpec::standard();
        return monsters::pompeiu_h(spec, y, tol);
    }, py::arg("y"), py::arg("tol") = 1e-12);

    m.def("cantor_gaps", [](int depth) {
        auto c = cantor_ternary(depth);
        std::vector<std::pair<std::string, std::string>> out;
        for (auto& [a, b] : c.gaps) out.emplace_back(rat_str(a), rat_str(b));
        return out;
    });

    m.def("code_N", [](const std::vector<int>& bits) {
        perfectsets::BitPrefix s(bits.begin(), bits.end());
        return perfectsets::code_N(s);
    });
    m.def("embed_h", [](const std::vector<int>& bits) {
        perfectsets::BitPrefix s(bits.begin(), bits.end());
        auto b = perfectsets::embed_h(s);
        return py::make_tuple(rat_str(b.c), rat_str(b.r));
    });
    m.def("adding_machine", [](const std::vector<int>& bits) {
        perfectsets::BitPrefix s(bits.begin(), bits.end());
        auto r = perfectsets::adding_machine(s);
        return std::vector<int>(r.begin(), r.end());
    });
    m.def("verify_property_b", [](const std::vector<int>& s, const std::vector<int>& t) {
        auto rep = perfectsets::verify_property_b(perfectsets::BitPrefix(s.begin(), s.end()),
                                                  perfectsets::BitPrefix(t.begin(), t.end()));
        return py::make_tuple(rep.n, rep.lower_ok, rep.upper_ok);
    });

    m.def("rising_sun", [](const std::string& sampled_json) {
        auto f = sampled_from_json(sampled_json);
        auto sun = restrict_ops::rising_sun(f, f.samples.front().first, f.samples.back().first);
        std::vector<std::pair<std::string, std::string>> out;
        for (auto& [c, d] : sun.components) out.emplace_back(rat_str(c), rat_str(d));
        return out;
    }, "components of the shadow set of a SampledFunction JSON document");

    m.def("lipschitz_restriction", [](const std::string& sampled_json, const std::string& L) {
        auto f = sampled_from_json(sampled_json);
        auto cert = restrict_ops::lipschitz_restriction(
            f, f.samples.front().first, f.samples.back().first, rat_parse(L));
        return restrict_ops::lipschitz_certificate_to_json(cert);
    });

    m.def("jarnik_extend", [](const std::string& setfunction_json) {
        auto f = setfunction_from_json(setfunction_json);
        auto ext = extend_ops::jarnik_extend(f);
        return piecewise_to_json(ext.F);
    });
    m.def("whitney_extend", [](const std::string& setfunction_json) {
        auto f = setfunction_from_json(setfunction_json);
        return piecewise_to_json(extend_ops::whitney_extend(f));
    });
    m.def("whitney_divergent", [](const std::string& setfunction_json) {
        auto f = setfunction_from_json(setfunction_json);
        return extend_ops::whitney_check(f).divergent;
    });
    m.def("ex111_value", [](const std::string& x) {
        auto ex = extend_ops::ex111_build(2);
        return rat_str(ex.value_at(rat_parse(x)));
    });

    m.def("ivp_probe", [](const std::function<double(double)>& f, double a, double b, double y,
                          int grid) {
        auto r = evalcore::ivp_probe(wrap_callable(f), a, b, y, grid);
        return r ? py::cast(*r) : py::none().cast<py::object>();
    }, py::arg("f"), py::arg("a"), py::arg("b"), py::arg("y"), py::arg("grid") = 1024);

    m.def("run_suite", [](const std::string& name, int depth, long grid, double tol,
                          std::uint64_t seed) {
        suites::SuiteConfig cfg;
        cfg.depth = depth;
        cfg.grid = grid;
        cfg.tol = tol;
        cfg.seed = seed;
        auto r = suites::run_suite(name, cfg);
        py::dict d;
        d["suite"] = r.suite;
        d["cases"] = r.cases;
        d["passed"] = r.passed;
        d["failed"] = r.failed;
        d["witnesses"] = r.witnesses;
        return d;
    }, py::arg("name"), py::arg("depth") = -1, py::arg("grid") = -1, py::arg("tol") = -1.0,
       py::arg("seed") = 1);
    m.def("suite_names", [] { return suites::suite_names(); });
}
