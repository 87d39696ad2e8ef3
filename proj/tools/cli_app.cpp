#include "cli_app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "modblob/curves.hpp"
#include "modblob/family.hpp"
#include "modblob/fixtures.hpp"
#include "modblob/invariants.hpp"
#include "modblob/json_io.hpp"
#include "modblob/render.hpp"
#include "modblob/rewriting.hpp"

namespace modblob::cli {

namespace {

struct Input {
  Json diagram;
  bool doodle_mode = false;  // set by fixture files
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out(out), err(err) {}

  Json read(const std::string& path) {
    std::string text;
    if (path == "-") {
      if (stdin_used_) throw Error(ErrorCode::MalformedInput, "stdin can be read only once");
      stdin_used_ = true;
      std::ostringstream os;
      os << in_.rdbuf();
      text = os.str();
    } else {
      std::ifstream f(path);
      if (!f) {
        // not a file: try a fixture name
        try {
          return to_json(fixture(path));
        } catch (const Error&) {
          throw Error(ErrorCode::MalformedInput, "cannot open " + path);
        }
      }
      std::ostringstream os;
      os << f.rdbuf();
      text = os.str();
    }
    return parse_json(text);
  }

  Input input(const std::string& path) {
    Json j = read(path);
    Input r;
    if (j.is_object() && j.contains("diagram")) {
      r.doodle_mode = j.value("mode", "blob") == "doodle";
      r.diagram = j.at("diagram");
    } else {
      r.diagram = std::move(j);
    }
    return r;
  }

  std::istream& in_;
  std::ostream& out;
  std::ostream& err;
  bool stdin_used_ = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::MalformedInput, "cannot write " + path);
  f << text;
}

BlobDiagram as_blob(const Input& in) {
  if (has_faces(in.diagram)) return blob_from_json(in.diagram);
  return make_blob(diagram_from_json(in.diagram));
}

void require_valid(const ValidationReport& report) {
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InvalidDiagram, std::string(to_string(v.rule)) + ": " + v.message);
  }
}

std::string iota_string(const IotaRho& i) {
  return "(" + std::to_string(i.rho_I_mod2) + "," + std::to_string(i.rho_III_mod2) + "," + std::to_string(i.twist) +
         ")";
}

void print_table(std::ostream& out, const InvariantReport& r) {
  auto row = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(12) << k << v << '\n'; };
  row("mode", r.blob_mode ? "blob" : "doodle");
  row("J", std::to_string(r.J));
  row("rho_I", std::to_string(r.rho.I));
  row("rho_II", std::to_string(r.rho.II));
  row("rho_III", std::to_string(r.rho.III));
  row("rho_IV", std::to_string(r.rho.IV));
  row("iota_rho", iota_string(r.iota));
  row("c_plus", std::to_string(r.c_plus));
  row("max_degree", std::to_string(r.max_degree));
  row("parity", r.parity_ok ? "ok" : "violated");
}

int cmd_validate(Context& cx, const std::string& file, bool json) {
  const Input in = cx.input(file);
  const ValidationReport report =
      has_faces(in.diagram) ? validate(blob_from_json(in.diagram)) : validate(diagram_from_json(in.diagram));
  if (json) {
    cx.out << dump(to_json(report));
  } else if (report.ok()) {
    cx.out << "valid\n";
  } else {
    for (const auto& v : report.violations)
      cx.out << to_string(v.rule) << (v.event_index >= 0 ? " at event " + std::to_string(v.event_index) : "") << ": "
             << v.message << '\n';
  }
  return report.ok() ? kOk : kInvalid;
}

int cmd_invariants(Context& cx, const std::string& file, bool json, bool doodle) {
  const Input in = cx.input(file);
  InvariantReport report;
  bool blob_mode = !doodle && !in.doodle_mode;
  std::optional<BlobDiagram> blob;
  if (blob_mode) {
    if (has_faces(in.diagram)) {
      blob = blob_from_json(in.diagram);
    } else {
      const StrandDiagram d = diagram_from_json(in.diagram);
      try {
        blob = make_blob(d);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFillable) throw;
        cx.err << "not fillable; reporting doodle invariants\n";
        blob_mode = false;
      }
    }
  }
  if (blob_mode) {
    require_valid(validate(*blob));
    report = invariant_report(*blob);
  } else {
    const StrandDiagram d = diagram_from_json(in.diagram);
    require_valid(validate(d));
    report = invariant_report_doodle(d);
  }
  if (json)
    cx.out << dump(to_json(report));
  else
    print_table(cx.out, report);
  return kOk;
}

int cmd_normalize(Context& cx, const std::string& file, const std::string& trace_path) {
  const BlobDiagram blob = as_blob(cx.input(file));
  require_valid(validate(blob));
  const NormalizeResult r = normalize_embedded(blob);
  cx.out << dump(to_json(r.canonical));
  if (!trace_path.empty()) write_file(trace_path, dump(to_json(r.trace)));
  cx.err << "canonical " << word_string(r.canonical.doodle) << " after " << r.trace.moves.size() << " moves\n";
  return kOk;
}

int cmd_equiv(Context& cx, const std::string& a, const std::string& b, int depth, bool no_prefilter,
              const std::string& trace_path) {
  const StrandDiagram da = diagram_from_json(cx.input(a).diagram);
  const StrandDiagram db = diagram_from_json(cx.input(b).diagram);
  require_valid(validate(da));
  require_valid(validate(db));
  EquivalenceOptions opt;
  opt.depth = depth;
  opt.invariant_prefilter = !no_prefilter;
  const EquivalenceResult r = bounded_equivalence(da, db, opt);
  if (const auto* t = std::get_if<MoveTrace>(&r)) {
    if (trace_path.empty())
      cx.out << dump(to_json(*t));
    else
      write_file(trace_path, dump(to_json(*t)));
    cx.err << "equivalent in " << t->moves.size() << " moves\n";
    return kOk;
  }
  if (const auto* n = std::get_if<NotEquivalent>(&r)) {
    cx.out << "not equivalent: " << n->reason << '\n';
    return kInequivalent;
  }
  const auto& inc = std::get<Inconclusive>(r);
  cx.out << "inconclusive: no trace within depth " << inc.depth << " (" << inc.explored << " words explored)\n";
  return kDepthExceeded;
}

int cmd_compose(Context& cx, const std::string& a, const std::string& b, bool star) {
  const Input ia = cx.input(a), ib = cx.input(b);
  if (has_faces(ia.diagram) && has_faces(ib.diagram)) {
    const BlobDiagram x = blob_from_json(ia.diagram), y = blob_from_json(ib.diagram);
    cx.out << dump(to_json(star ? compose_star(x, y) : compose_uplus(x, y)));
  } else {
    const StrandDiagram x = diagram_from_json(ia.diagram), y = diagram_from_json(ib.diagram);
    cx.out << dump(to_json(star ? compose_star(x, y) : compose_uplus(x, y)));
  }
  return kOk;
}

int cmd_negate(Context& cx, const std::string& file) {
  const Input in = cx.input(file);
  if (has_faces(in.diagram))
    cx.out << dump(to_json(negate(blob_from_json(in.diagram))));
  else
    cx.out << dump(to_json(negate(diagram_from_json(in.diagram))));
  return kOk;
}

SweepConfig sweep_config(double tol) {
  SweepConfig c;
  if (tol > 0) c.root_precision = tol;
  return c;
}

int cmd_from_family(Context& cx, const std::string& file, double tol) {
  const PolynomialFamily f = family_from_json(cx.read(file));
  const BlobDiagram b = extract_diagram(f, sweep_config(tol));
  cx.out << dump(to_json(b));
  return kOk;
}

int cmd_from_curves(Context& cx, const std::string& file, double tol) {
  const ParametricCurveSet c = curves_from_json(cx.read(file));
  const SweepConfig config = sweep_config(tol);
  const auto violations = genericity_check_curves(c, config);
  if (!violations.empty()) {
    for (const auto& v : violations)
      cx.err << to_string(v.kind) << " curve " << v.curve << " piece " << v.piece << ": " << v.message << '\n';
    return kInvalid;
  }
  cx.out << dump(to_json(curves_to_diagram(c, config)));
  return kOk;
}

int cmd_render(Context& cx, const std::string& file, const std::string& output, bool plain) {
  const Input in = cx.input(file);
  RenderSpec spec;
  if (plain) spec.label_crossings = spec.label_tangencies = false;
  std::string svg;
  std::optional<BlobDiagram> blob;
  if (has_faces(in.diagram)) {
    blob = blob_from_json(in.diagram);
  } else if (!in.doodle_mode) {
    const StrandDiagram d = diagram_from_json(in.diagram);
    if (d.oriented()) {
      try {
        blob = make_blob(d);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFillable) throw;
      }
    }
  }
  svg = blob ? render_svg(*blob, spec) : render_svg(diagram_from_json(in.diagram), spec);
  if (output.empty() || output == "-")
    cx.out << svg;
  else
    write_file(output, svg);
  return kOk;
}

std::vector<Fixture> selftest_corpus() {
  if (const char* dir = std::getenv("MODBLOB_FIXTURE_DIR"); dir && *dir) return load_fixture_dir(dir);
  return builtin_fixtures();
}

int cmd_fixtures(Context& cx, const std::string& name, bool list, bool selftest, const std::string& export_dir,
                 std::uint64_t seed, int steps) {
  if (list) {
    for (const auto& f : selftest_corpus()) cx.out << f.name << "  " << f.description << '\n';
    return kOk;
  }
  if (selftest) {
    bool all = true;
    for (const auto& line : fixture_selftest(selftest_corpus())) {
      cx.out << (line.ok ? "PASS " : "FAIL ") << line.name << (line.ok ? "" : ": " + line.message) << '\n';
      all = all && line.ok;
    }
    return all ? kOk : kInvalid;
  }
  if (!export_dir.empty()) {
    std::filesystem::create_directories(export_dir);
    for (const auto& f : builtin_fixtures())
      write_file((std::filesystem::path(export_dir) / (f.name + ".json")).string(), dump(to_json(f)));
    return kOk;
  }
  if (name.empty()) throw Error(ErrorCode::MalformedInput, "fixtures needs a NAME, --list, --selftest or --export");
  Fixture f = fixture(name);
  if (steps > 0) {
    f.word = scramble(f.word, seed, steps);
    f.expected.reset();  // c_plus and degrees change under moves
  }
  cx.out << dump(to_json(f));
  return kOk;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput:
      return kMalformed;
    case ErrorCode::DepthExceeded:
      return kDepthExceeded;
    default:
      return kInvalid;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial 2-moderate doodles and blobs", "modblob"};
  app.require_subcommand(1);
  Context cx(in, out, err);

  std::string file, file_b, trace_path, output, name, export_dir;
  bool json = false, doodle = false, star = false, no_prefilter = false, plain = false, list = false,
       selftest = false;
  int depth = 6, steps = 0;
  std::uint64_t seed = 1;
  double tol = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check the well-formedness rules");
  validate_cmd->add_option("FILE", file, "diagram JSON or - for stdin")->required();
  validate_cmd->add_flag("--json", json, "print the report as JSON");

  auto* inv = app.add_subcommand("invariants", "print J, rho, iota_rho, c+, degree and parity");
  inv->add_option("FILE", file)->required();
  inv->add_flag("--json", json);
  inv->add_flag("--doodle", doodle, "report doodle invariants even when the diagram fills");

  auto* norm = app.add_subcommand("normalize", "reduce an embedded blob to its kidney stack");
  norm->add_option("FILE", file)->required();
  norm->add_option("--trace", trace_path, "write the move trace here");

  auto* equiv = app.add_subcommand("equiv", "search for a move sequence between two diagrams");
  equiv->add_option("A", file)->required();
  equiv->add_option("B", file_b)->required();
  equiv->add_option("--depth", depth, "search depth")->check(CLI::NonNegativeNumber);
  equiv->add_option("--trace", trace_path, "write the trace here instead of stdout");
  equiv->add_flag("--no-prefilter", no_prefilter, "skip the invariant comparison");

  auto* compose = app.add_subcommand("compose", "side by side composition (or stacked with --star)");
  compose->add_option("A", file)->required();
  compose->add_option("B", file_b)->required();
  compose->add_flag("--star", star);

  auto* neg = app.add_subcommand("negate", "reverse theta (bordism inverse)");
  neg->add_option("FILE", file)->required();

  auto* fam = app.add_subcommand("from-family", "extract the blob of a polynomial family");
  fam->add_option("FILE", file)->required();
  fam->add_option("--tol", tol, "root precision")->check(CLI::PositiveNumber);

  auto* cur = app.add_subcommand("from-curves", "sweep parametric curves into an event word");
  cur->add_option("FILE", file)->required();
  cur->add_option("--tol", tol, "root precision")->check(CLI::PositiveNumber);

  auto* ren = app.add_subcommand("render", "write an SVG picture");
  ren->add_option("FILE", file)->required();
  ren->add_option("-o,--output", output, "output file (default stdout)");
  ren->add_flag("--plain", plain, "no labels");

  auto* fix = app.add_subcommand("fixtures", "named diagrams with expected invariants");
  fix->add_option("NAME", name);
  fix->add_flag("--list", list);
  fix->add_flag("--selftest", selftest, "recompute every stored report");
  fix->add_option("--export", export_dir, "write all fixtures to a directory");
  fix->add_option("--seed", seed, "scramble seed");
  fix->add_option("--steps", steps, "scramble the fixture by this many random moves")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(cx, file, json);
    if (inv->parsed()) return cmd_invariants(cx, file, json, doodle);
    if (norm->parsed()) return cmd_normalize(cx, file, trace_path);
    if (equiv->parsed()) return cmd_equiv(cx, file, file_b, depth, no_prefilter, trace_path);
    if (compose->parsed()) return cmd_compose(cx, file, file_b, star);
    if (neg->parsed()) return cmd_negate(cx, file);
    if (fam->parsed()) return cmd_from_family(cx, file, tol);
    if (cur->parsed()) return cmd_from_curves(cx, file, tol);
    if (ren->parsed()) return cmd_render(cx, file, output, plain);
    if (fix->parsed()) return cmd_fixtures(cx, name, list, selftest, export_dir, seed, steps);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace modblob::cli
