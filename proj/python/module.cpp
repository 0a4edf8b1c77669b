// Python bindings: algebras, generator maps, constructions, resolutions and
// the skew3 classifier.  Field elements cross the boundary as strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kszl/cli.hpp"
#include "kszl/constructions.hpp"
#include "kszl/morphisms.hpp"
#include "kszl/resolution.hpp"
#include "kszl/skew3.hpp"

namespace py = pybind11;
using namespace kszl;

namespace {

struct Algebra {
    PresentationPtr p;
};

std::vector<std::string> relation_strings(const QuadraticPresentation& p) {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < p.relation_dim(); ++r) out.push_back(format_relation(p, r));
    return out;
}

std::vector<std::size_t> dims(const QuadraticPresentation& p, int max_degree, std::size_t budget) {
    return hilbert_prefix(p, max_degree, budget).coefficients;
}

GeneratorMap map_from_images(const Algebra& a, const std::map<std::string, std::string>& images,
                             const std::string& name) {
    std::ostringstream text;
    text << "map " << name << " : " << a.p->name() << " -> " << a.p->name() << " {";
    for (const auto& [g, img] : images) text << " " << g << " -> " << img << ";";
    text << " }";
    Document env;
    env.algebras.push_back(a.p);
    return verify_map(parse_map(text.str(), env));
}

GeneratorMap map_from_matrix(const Algebra& a, const std::vector<std::vector<std::string>>& rows,
                             const std::string& name) {
    std::vector<Vector> m;
    for (const auto& row : rows) {
        Vector v;
        for (const auto& s : row) v.push_back(FieldElement::parse(s, a.p->field()));
        m.push_back(std::move(v));
    }
    return verify_map(make_map(name, a.p, a.p, Matrix::from_rows(m, a.p->num_generators())));
}

Algebra wrap(QuadraticPresentation p) { return Algebra{share(std::move(p))}; }

py::dict koszul_dict(const KoszulVerdict& v) {
    py::dict d;
    d["koszul"] = v.koszul;
    d["verdict"] = v.to_string();
    d["homological_bound"] = v.homological_bound;
    d["reliable_degree"] = v.reliable_degree;
    d["fail"] = v.koszul ? py::object(py::none()) : py::object(py::make_tuple(v.fail_i, v.fail_j));
    d["diagonal"] = v.diagonal;
    d["dual_dims"] = v.dual_dims;
    d["dual_matches"] = v.dual_matches;
    d["hilbert_identity"] = v.hilbert_identity;
    d["betti"] = v.table.entries;
    return d;
}

py::dict verdict_dict(const skew3::SkewVerdict& v) {
    py::dict d;
    d["isomorphic"] = v.isomorphic();
    d["stable_cm_equivalent"] = v.stable_cm_equivalent();
    d["graded_morita"] = v.graded_morita();
    d["iso_witness"] = v.iso_witness();
    d["cm_witness"] = v.cm_witness();
    d["morita_witness"] = v.morita_witness();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact computations with quadratic algebras";
    m.attr("__version__") = cli::kVersion;

    // KszlError(message) with a .code attribute naming the failure category
    static py::handle error = py::exception<Error>(m, "KszlError").release();
    py::register_exception_translator([](std::exception_ptr e) {
        try {
            if (e) std::rethrow_exception(e);
        } catch (const Error& err) {
            py::object exc = py::reinterpret_borrow<py::object>(error)(err.what());
            exc.attr("code") = std::string(to_string(err.code()));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<GeneratorMap>(m, "Map")
        .def_readonly("name", &GeneratorMap::name)
        .def_readonly("automorphism", &GeneratorMap::automorphism)
        .def_property_readonly("matrix",
                               [](const GeneratorMap& f) {
                                   std::vector<std::vector<std::string>> rows(f.matrix.rows());
                                   for (std::size_t i = 0; i < f.matrix.rows(); ++i)
                                       for (std::size_t j = 0; j < f.matrix.cols(); ++j)
                                           rows[i].push_back(f.matrix(i, j).to_string());
                                   return rows;
                               })
        .def_property_readonly("images",
                               [](const GeneratorMap& f) {
                                   std::map<std::string, std::string> out;
                                   for (std::size_t j = 0; j < f.source->num_generators(); ++j)
                                       out[f.source->generators()[j]] = f.image_string(j);
                                   return out;
                               })
        .def("inverse", &invert)
        .def("compose", &compose, py::arg("inner"), "self after inner")
        .def("is_isomorphism",
             [](const GeneratorMap& f) {
                 try {
                     return verify_iso(f).replay();
                 } catch (const Error&) {
                     return false;
                 }
             })
        .def("__repr__", &print_map);

    py::class_<Algebra>(m, "Algebra")
        .def(py::init([](const std::string& text) { return wrap(parse_presentation(text)); }), py::arg("text"))
        .def_property_readonly("name", [](const Algebra& a) { return a.p->name(); })
        .def_property_readonly("field", [](const Algebra& a) { return a.p->field().to_string(); })
        .def_property_readonly("generators", [](const Algebra& a) { return a.p->generators(); })
        .def_property_readonly("relations", [](const Algebra& a) { return relation_strings(*a.p); })
        .def("same_relations", [](const Algebra& a, const Algebra& b) { return same_relation_space(*a.p, *b.p); })
        .def("hilbert", [](const Algebra& a, int n, std::size_t budget) { return dims(*a.p, n, budget); },
             py::arg("max_degree") = kDefaultMaxDegree, py::arg("word_budget") = kDefaultWordBudget)
        .def("dual", [](const Algebra& a) { return wrap(quadratic_dual(*a.p)); })
        .def("identity", [](const Algebra& a) { return identity_map(a.p); })
        .def("minus_one", [](const Algebra& a) { return minus_one(a.p); })
        .def("nakayama", [](const Algebra& a, int d) { return nakayama_regular(a.p, d); }, py::arg("dim"),
             "Nakayama automorphism of a Koszul AS-regular algebra of global dimension dim")
        .def("frobenius_nakayama",
             [](const Algebra& a) {
                 return frobenius_data(TruncatedAlgebra(*a.p, vanishing_degree(*a.p))).nakayama;
             })
        .def("map", &map_from_images, py::arg("images"), py::arg("name") = "f")
        .def("map_from_matrix", &map_from_matrix, py::arg("rows"), py::arg("name") = "f")
        .def("twist", [](const Algebra& a, const GeneratorMap& s) { return wrap(zhang_twist(*a.p, s)); })
        .def("ore", [](const Algebra& a, const GeneratorMap& s, const std::string& var) {
                 return wrap(ore_extension(*a.p, s, var.empty() ? fresh_generator_name(*a.p) : var));
             }, py::arg("sigma"), py::arg("var") = "")
        .def("trivial_extension", [](const Algebra& a, const GeneratorMap& s, const std::string& var) {
                 return wrap(trivial_extension(*a.p, TwistSpec(s), var));
             }, py::arg("sigma"), py::arg("var") = "")
        .def("betti",
             [](const Algebra& a, int n, int p, std::size_t budget) {
                 return betti_table(TruncatedAlgebra(*a.p, n, budget), p, budget).entries;
             },
             py::arg("max_degree") = kDefaultMaxDegree, py::arg("homological") = 5,
             py::arg("word_budget") = kDefaultWordBudget)
        .def("koszul",
             [](const Algebra& a, int n, int p, std::size_t budget) {
                 return koszul_dict(koszul_certificate(TruncatedAlgebra(*a.p, n, budget), p, budget));
             },
             py::arg("max_degree") = kDefaultMaxDegree, py::arg("homological") = 5,
             py::arg("word_budget") = kDefaultWordBudget)
        .def("__str__", [](const Algebra& a) { return print_presentation(*a.p); })
        .def("__repr__", [](const Algebra& a) { return "<Algebra " + a.p->name() + ">"; });

    py::module_ s3 = m.def_submodule("skew3", "3-variable skew polynomial algebras");
    s3.def("classify", [](const std::string& a, const std::string& b) {
        return verdict_dict(skew3::classify(skew3::SkewParams::parse(a), skew3::SkewParams::parse(b)));
    }, py::arg("a"), py::arg("b"));
    s3.def("algebra", [](const std::string& a) { return wrap(skew3::build_algebra(skew3::SkewParams::parse(a))); });
    s3.def("cross_validate", [](const std::string& a, const std::string& b, int max_degree) {
        auto r = skew3::cross_validate(skew3::SkewParams::parse(a), skew3::SkewParams::parse(b), max_degree);
        py::dict d;
        d["twisted_a"] = r.twisted_a.to_string();
        d["twisted_b"] = r.twisted_b.to_string();
        d["pipeline_stable_cm"] = r.pipeline_stable_cm;
        d["closed_form_stable_cm"] = r.closed_form_stable_cm;
        d["hilbert_preserved"] = r.hilbert_preserved;
        d["agree"] = r.agree();
        return d;
    }, py::arg("a"), py::arg("b"), py::arg("max_degree") = 4);
    s3.def("find_counterexamples", [](const std::string& mode, std::size_t budget, std::uint64_t seed) {
        auto r = skew3::find_counterexamples(skew3::parse_hunt_mode(mode), budget, seed);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (auto& [a, b] : r.pairs) pairs.emplace_back(a.to_string(), b.to_string());
        py::dict d;
        d["pairs"] = pairs;
        d["trials"] = r.trials;
        d["inconclusive"] = r.inconclusive;
        return d;
    }, py::arg("mode"), py::arg("budget") = 10000, py::arg("seed") = 1);

    m.def("_run", [](const std::vector<std::string>& args) {
        auto o = cli::execute(args);
        return py::make_tuple(o.exit_code, o.report_json);
    });
}
