#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modblob/curves.hpp"
#include "modblob/family.hpp"
#include "modblob/fixtures.hpp"
#include "modblob/invariants.hpp"
#include "modblob/json_io.hpp"
#include "modblob/render.hpp"
#include "modblob/rewriting.hpp"

namespace py = pybind11;
using namespace modblob;

// Everything crosses the boundary as JSON text; the Python side wraps it.
namespace {

std::string out(const Json& j) { return j.dump(); }

BlobDiagram blob_of(const std::string& text) {
  const Json j = parse_json(text);
  return has_faces(j) ? blob_from_json(j) : make_blob(diagram_from_json(j));
}

StrandDiagram word_of(const std::string& text) { return diagram_from_json(parse_json(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "event words for 2-moderate doodles and blobs";

  static py::exception<Error> error(m, "ModblobError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("word_string", [](const std::string& d) { return word_string(word_of(d)); });
  m.def("validate", [](const std::string& d) {
    const Json j = parse_json(d);
    return out(to_json(has_faces(j) ? validate(blob_from_json(j)) : validate(diagram_from_json(j))));
  });
  m.def("fill", [](const std::string& d) { return out(to_json(make_blob(word_of(d)))); });
  m.def("invariants", [](const std::string& d, bool doodle) {
    if (doodle) return out(to_json(invariant_report_doodle(word_of(d))));
    return out(to_json(invariant_report(blob_of(d))));
  }, py::arg("diagram"), py::arg("doodle") = false);

  m.def("kidney", [](int n) { return out(to_json(kidney(n))); });
  m.def("compose", [](const std::string& a, const std::string& b, bool star) {
    const BlobDiagram x = blob_of(a), y = blob_of(b);
    return out(to_json(star ? compose_star(x, y) : compose_uplus(x, y)));
  }, py::arg("a"), py::arg("b"), py::arg("star") = false);
  m.def("negate", [](const std::string& d) { return out(to_json(negate(word_of(d)))); });

  m.def("scramble", [](const std::string& d, std::uint64_t seed, int steps) {
    return out(to_json(scramble(word_of(d), seed, steps)));
  });
  m.def("normalize", [](const std::string& d) {
    const NormalizeResult r = normalize_embedded(blob_of(d));
    return py::make_tuple(out(to_json(r.canonical)), out(to_json(r.trace)));
  });
  m.def("equivalent", [](const std::string& a, const std::string& b, int depth, bool prefilter) {
    EquivalenceOptions o;
    o.depth = depth;
    o.invariant_prefilter = prefilter;
    const EquivalenceResult r = bounded_equivalence(word_of(a), word_of(b), o);
    Json j;
    if (const auto* t = std::get_if<MoveTrace>(&r)) {
      j["status"] = "trace";
      j["trace"] = to_json(*t);
    } else if (const auto* n = std::get_if<NotEquivalent>(&r)) {
      j["status"] = "not_equivalent";
      j["reason"] = n->reason;
    } else {
      j["status"] = "inconclusive";
      j["explored"] = std::get<Inconclusive>(r).explored;
    }
    return out(j);
  }, py::arg("a"), py::arg("b"), py::arg("depth") = 6, py::arg("prefilter") = true);

  m.def("kappa_family", [] { return out(to_json(kappa_family())); });
  m.def("lens_family", [] { return out(to_json(lens_family())); });
  m.def("from_family", [](const std::string& f, double tol) {
    SweepConfig c;
    if (tol > 0) c.root_precision = tol;
    return out(to_json(extract_diagram(family_from_json(parse_json(f)), c)));
  }, py::arg("family"), py::arg("tol") = 0.0);
  m.def("family_class", [](const std::string& f) { return family_class(family_from_json(parse_json(f))); });
  m.def("from_curves", [](const std::string& c) {
    return out(to_json(curves_to_diagram(curves_from_json(parse_json(c)))));
  });

  m.def("fixture_names", &fixture_names);
  m.def("fixture", [](const std::string& name) { return out(to_json(fixture(name))); });
  m.def("fixture_selftest", [] {
    std::vector<std::pair<std::string, bool>> lines;
    for (const auto& l : fixture_selftest(builtin_fixtures())) lines.emplace_back(l.name, l.ok);
    return lines;
  });

  m.def("render_svg", [](const std::string& d) {
    const Json j = parse_json(d);
    if (has_faces(j)) return render_svg(blob_from_json(j));
    return render_svg(diagram_from_json(j));
  });
}
