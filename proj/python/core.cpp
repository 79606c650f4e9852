#include "pervcalc/cli.hpp"
#include "pervcalc/gallery.hpp"
#include "pervcalc/io.hpp"
#include "pervcalc/theorems.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pervcalc;

namespace {

// Reports cross the boundary as JSON text; the Python side parses them.
std::string text(const Json& j) { return j.dump(); }

std::string module_text(const Module& m) { return to_json(m).dump(); }

py::object violation(const std::optional<Violation>& v)
{
    if (!v)
        return py::none();
    py::dict d;
    d["axiom"] = v->axiom;
    d["branch"] = v->branch ? py::cast(*v->branch + 1) : py::none();
    d["detail"] = v->detail;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact perverse-sheaf computations on curve germs";

    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<UnsupportedRingError> ring_error(m, "UnsupportedRingError", PyExc_ValueError);
    static py::exception<GalleryError> gallery_error(m, "GalleryError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const InputError& e) {
            py::set_error(input_error, e.what());
        } catch (const UnsupportedRingError& e) {
            py::set_error(ring_error, e.what());
        } catch (const GalleryError& e) {
            py::set_error(gallery_error, e.what());
        }
    });

    py::class_<PervObject>(m, "Object")
        .def_static("from_json", [](const std::string& s) { return object_from_json(parse_json(s)); })
        .def("to_json", [](const PervObject& p) { return dump(to_json(p)); })
        .def_property_readonly("ring", [](const PervObject& p) { return p.ring().tag(); })
        .def_property_readonly("branches", &PervObject::branches)
        .def("is_zero", &PervObject::is_zero)
        .def("__eq__", [](const PervObject& a, const PervObject& b) { return a == b; })
        .def("__add__", [](const PervObject& a, const PervObject& b) { return direct_sum(a, b); })
        .def("__repr__", [](const PervObject& p) {
            std::string s = "Object(ring=" + p.ring().tag() + ", psi=[";
            for (std::size_t i = 0; i < p.branches(); ++i)
                s += (i ? ", " : "") + p.psi(i).to_string();
            return s + "], phi=" + p.phi().to_string() + ")";
        });

    py::class_<PervMorphism>(m, "Morphism")
        .def_static("from_json", [](const std::string& s) { return morphism_from_json(parse_json(s)); })
        .def("to_json", [](const PervMorphism& t) { return dump(to_json(t)); })
        .def_property_readonly("source", &PervMorphism::source)
        .def_property_readonly("target", &PervMorphism::target)
        .def_property_readonly("ring", [](const PervMorphism& t) { return t.ring().tag(); })
        .def("is_zero", &PervMorphism::is_zero)
        .def("__eq__", [](const PervMorphism& a, const PervMorphism& b) { return a == b; })
        .def("__matmul__", [](const PervMorphism& second, const PervMorphism& first) { return compose(first, second); });

    m.def("validate_object", [](const PervObject& p) { return violation(validate_object(p)); });
    m.def("validate_morphism", [](const PervMorphism& t) { return violation(validate_morphism(t)); });

    m.def("factor", [](const PervMorphism& t) {
        auto f = perv_factorization(t);
        return py::make_tuple(f.kernel, f.image, f.cokernel);
    });
    m.def("classify", [](const PervMorphism& t) {
        auto f = morphism_classify(t);
        py::dict d;
        d["injective"] = f.injective;
        d["surjective"] = f.surjective;
        d["zero"] = f.zero;
        d["isomorphism"] = f.isomorphism;
        return d;
    });

    m.def("_stalk", [](const PervObject& p, const std::string& at) {
        return text(to_json(stalk_cohomology(p, Location::parse(at))));
    });
    m.def("_support", [](const PervObject& p) { return text(to_json(support(p))); });
    m.def("_characteristic_cycle", [](const PervObject& p) { return text(to_json(characteristic_cycle(p))); });
    m.def("_vanishing_cycles", [](const PervObject& p) {
        auto nv = nearby_and_vanishing(p);
        Json j;
        j["psi"] = to_json(nv.psi);
        j["psi_monodromy"] = to_json(nv.psi_monodromy.matrix());
        j["phi"] = to_json(nv.phi);
        j["phi_monodromy"] = to_json(nv.phi_monodromy.matrix());
        return text(j);
    });
    m.def("_hom", [](const PervObject& p, const PervObject& q) {
        auto h = hom_space(p, q);
        return py::make_tuple(module_text(h.module), h.generators);
    });
    m.def(
        "find_isomorphism",
        [](const PervObject& p, const PervObject& q, std::size_t trials, std::uint64_t seed) {
            auto r = find_isomorphism(p, q, trials, seed);
            const char* verdict = r.verdict == IsomorphismResult::Verdict::Isomorphic      ? "isomorphic"
                                  : r.verdict == IsomorphismResult::Verdict::Distinguished ? "distinguished"
                                                                                           : "unknown";
            py::object iso = r.isomorphism ? py::cast(*r.isomorphism) : py::none();
            return py::make_tuple(verdict, iso, r.witness);
        },
        py::arg("source"), py::arg("target"), py::arg("trials") = default_isomorphism_trials, py::arg("seed") = 0);

    m.def(
        "_check",
        [](const std::string& suite, std::size_t trials, std::uint64_t seed, const std::string& ring, std::size_t max_dim) {
            FuzzOptions o;
            o.suite = suite;
            o.trials = trials;
            o.seed = seed;
            o.ring = Ring::parse(ring);
            o.max_dim = max_dim;
            py::gil_scoped_release release;
            return text(to_json(fuzz(o)));
        });

    m.def("gallery_names", &gallery_names);
    m.def(
        "gallery",
        [](const std::string& name, const std::string& ring) -> py::object {
            auto e = gallery(name, Ring::parse(ring));
            if (e.object)
                return py::cast(*e.object);
            return py::cast(*e.morphism);
        },
        py::arg("name"), py::arg("ring") = "z");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::string& input) {
            std::istringstream in(input);
            std::ostringstream out, err;
            int code = cli::run(args, in, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "");
}
