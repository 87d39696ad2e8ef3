#include "modblob/json_io.hpp"

#include "modblob/error.hpp"

namespace modblob {

namespace {

constexpr const char* kFamilySchema = "modblob.family/1";
constexpr const char* kCurvesSchema = "modblob.curves/1";
constexpr const char* kTraceSchema = "modblob.trace/1";

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<int>();
}

Rational as_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  malformed("expected a rational");
}

Json rational_json(const Rational& r) { return format_rational(r); }

Json poly_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(rational_json(c));
  return out;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) malformed("polynomial must be an array of coefficients");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(as_rational(x));
  return Poly(std::move(c));
}

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::Birth: return "birth";
    case EventKind::Death: return "death";
    case EventKind::Cross: return "cross";
  }
  return "?";
}

EventKind kind_from(const std::string& s) {
  if (s == "birth" || s == "B") return EventKind::Birth;
  if (s == "death" || s == "D") return EventKind::Death;
  if (s == "cross" || s == "X") return EventKind::Cross;
  malformed("unknown event kind '" + s + "'");
}

const char* move_kind_name(MoveKind k) { return to_string(k); }

MoveKind move_kind_from(const std::string& s) {
  for (MoveKind k : {MoveKind::M1_Slide, MoveKind::M2_DiskPair, MoveKind::M4_Saddle, MoveKind::M5_KidneyPair,
                     MoveKind::M6_CrossPair})
    if (s == to_string(k)) return k;
  malformed("unknown move kind '" + s + "'");
}

}  // namespace

Json to_json(const StrandDiagram& d) {
  Json j;
  j["base"] = d.base.is_strip() ? "strip" : "cycle";
  j["wrap_width"] = d.base.wrap_width;
  if (!d.base.is_strip() && !d.wrap_dirs.empty()) {
    Json dirs = Json::array();
    for (bool b : d.wrap_dirs) dirs.push_back(b ? "+" : "-");
    j["wrap_dirs"] = dirs;
  }
  Json events = Json::array();
  for (const auto& e : d.events) {
    Json ev;
    ev["kind"] = kind_name(e.kind);
    ev["slot"] = e.slot;
    if (e.theta) ev["theta"] = rational_json(*e.theta);
    if (e.orient_bit) ev["orient_bit"] = *e.orient_bit ? "+" : "-";
    events.push_back(ev);
  }
  j["events"] = events;
  return j;
}

Json to_json(const BlobDiagram& b) {
  Json j = to_json(b.doodle);
  j["faces"] = b.faces;
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"rule", to_string(x.rule)}, {"event", x.event_index}, {"message", x.message}});
  j["violations"] = v;
  return j;
}

Json to_json(const InvariantReport& r) {
  Json j;
  j["mode"] = r.blob_mode ? "blob" : "doodle";
  j["J"] = r.J;
  j["rho"] = {{"I", r.rho.I}, {"II", r.rho.II}, {"III", r.rho.III}, {"IV", r.rho.IV}};
  j["iota_rho"] = {r.iota.rho_I_mod2, r.iota.rho_III_mod2, r.iota.twist};
  j["c_plus"] = r.c_plus;
  j["crossing_count_parity"] = r.crossing_count_parity;
  j["max_degree"] = r.max_degree;
  j["parity_ok"] = r.parity_ok;
  j["in_blob_image"] = in_blob_image(r.iota);
  return j;
}

InvariantReport report_from_json(const Json& j) {
  InvariantReport r;
  try {
    r.blob_mode = field(j, "mode").get<std::string>() == "blob";
    r.J = field(j, "J").get<long long>();
    const Json& rho = field(j, "rho");
    r.rho = {rho.at("I").get<int>(), rho.at("II").get<int>(), rho.at("III").get<int>(), rho.at("IV").get<int>()};
    const Json& io = field(j, "iota_rho");
    r.iota = {io.at(0).get<int>(), io.at(1).get<int>(), io.at(2).get<long long>()};
    r.c_plus = field(j, "c_plus").get<long long>();
    r.crossing_count_parity = field(j, "crossing_count_parity").get<int>();
    r.max_degree = field(j, "max_degree").get<int>();
    r.parity_ok = field(j, "parity_ok").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("bad invariant report: ") + e.what());
  }
  return r;
}

StrandDiagram diagram_from_json(const Json& j) {
  if (!j.is_object()) malformed("diagram must be an object");
  StrandDiagram d;
  const std::string base = j.value("base", "strip");
  if (base == "strip") {
    d.base = BaseSpace::strip();
    if (j.contains("wrap_width") && as_int(j.at("wrap_width"), "wrap_width") != 0)
      malformed("strip diagrams have wrap_width 0");
  } else if (base == "cycle") {
    d.base = BaseSpace::cycle(j.contains("wrap_width") ? as_int(j.at("wrap_width"), "wrap_width") : 0);
    if (d.base.wrap_width < 0) malformed("wrap_width must be nonnegative");
    if (j.contains("wrap_dirs")) {
      for (const auto& x : j.at("wrap_dirs")) {
        if (x == "+" || x == true) d.wrap_dirs.push_back(true);
        else if (x == "-" || x == false) d.wrap_dirs.push_back(false);
        else malformed("wrap_dirs entries are '+' or '-'");
      }
    }
  } else {
    malformed("base must be 'strip' or 'cycle'");
  }
  const Json& events = field(j, "events");
  if (!events.is_array()) malformed("events must be an array");
  for (const auto& x : events) {
    if (!x.is_object()) malformed("event must be an object");
    const Json& k = field(x, "kind");
    if (!k.is_string()) malformed("event kind must be a string");
    Event e;
    e.kind = kind_from(k.get<std::string>());
    e.slot = as_int(field(x, "slot"), "slot");
    if (e.slot < 0) malformed("slot must be nonnegative");
    if (x.contains("theta") && !x.at("theta").is_null()) e.theta = as_rational(x.at("theta"));
    if (x.contains("orient_bit") && !x.at("orient_bit").is_null()) {
      const Json& b = x.at("orient_bit");
      if (b == "+" || b == true || b == 1) e.orient_bit = true;
      else if (b == "-" || b == false || b == 0) e.orient_bit = false;
      else malformed("orient_bit is '+' or '-'");
    }
    d.events.push_back(std::move(e));
  }
  return d;
}

bool has_faces(const Json& j) { return j.is_object() && j.contains("faces") && !j.at("faces").is_null(); }

BlobDiagram blob_from_json(const Json& j) {
  StrandDiagram d = diagram_from_json(j);
  if (!has_faces(j)) return make_blob(std::move(d));
  BlobDiagram b;
  b.doodle = std::move(d);
  try {
    b.faces = j.at("faces").get<FaceMap>();
  } catch (const nlohmann::json::exception&) {
    malformed("faces must be an array of integer rows");
  }
  return b;
}

Json to_json(const Move& m) {
  Json j;
  j["kind"] = move_kind_name(m.kind);
  j["position"] = m.position;
  j["slot"] = m.slot;
  j["direction"] = m.direction == MoveDirection::Forward ? "insert" : "delete";
  if (m.kind == MoveKind::M1_Slide) {
    j.erase("direction");
    if (m.above) j["above"] = true;
  }
  if (m.orient_bit) j["orient_bit"] = *m.orient_bit ? "+" : "-";
  return j;
}

Move move_from_json(const Json& j) {
  Move m;
  m.kind = move_kind_from(field(j, "kind").get<std::string>());
  m.position = as_int(field(j, "position"), "position");
  m.slot = as_int(field(j, "slot"), "slot");
  const std::string dir = j.value("direction", "insert");
  if (dir != "insert" && dir != "delete") malformed("direction is 'insert' or 'delete'");
  m.direction = dir == "insert" ? MoveDirection::Forward : MoveDirection::Inverse;
  m.above = j.value("above", false);
  if (j.contains("orient_bit")) m.orient_bit = j.at("orient_bit") == "+";
  return m;
}

Json to_json(const MoveTrace& t) {
  Json j;
  j["schema"] = kTraceSchema;
  j["start"] = to_json(t.start);
  j["end"] = to_json(t.end);
  Json moves = Json::array();
  for (const auto& m : t.moves) moves.push_back(to_json(m));
  j["moves"] = moves;
  return j;
}

MoveTrace trace_from_json(const Json& j) {
  if (j.value("schema", "") != kTraceSchema) malformed(std::string("trace schema must be ") + kTraceSchema);
  MoveTrace t;
  t.start = diagram_from_json(field(j, "start"));
  t.end = diagram_from_json(field(j, "end"));
  for (const auto& m : field(j, "moves")) t.moves.push_back(move_from_json(m));
  return t;
}

Json to_json(const PolynomialFamily& f) {
  Json j;
  j["schema"] = kFamilySchema;
  j["base"] = f.base == BaseKind::Strip ? "strip" : "cycle";
  j["degree"] = f.degree;
  Json bps = Json::array();
  for (const auto& b : f.breakpoints) bps.push_back(rational_json(b));
  j["breakpoints"] = bps;
  Json pieces = Json::array();
  for (const auto& p : f.pieces) {
    Json coeffs = Json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(poly_json(c));
    pieces.push_back({{"coefficients", coeffs}});
  }
  j["pieces"] = pieces;
  return j;
}

PolynomialFamily family_from_json(const Json& j) {
  if (j.value("schema", "") != kFamilySchema) malformed(std::string("family schema must be ") + kFamilySchema);
  PolynomialFamily f;
  const std::string base = j.value("base", "strip");
  if (base != "strip" && base != "cycle") malformed("base must be 'strip' or 'cycle'");
  f.base = base == "strip" ? BaseKind::Strip : BaseKind::Cycle;
  f.degree = as_int(field(j, "degree"), "degree");
  f.breakpoints.clear();
  if (j.contains("breakpoints")) {
    for (const auto& b : j.at("breakpoints")) f.breakpoints.push_back(as_rational(b));
  } else {
    f.breakpoints = {Rational(0), Rational(1)};
  }
  for (const auto& piece : field(j, "pieces")) {
    std::vector<Poly> coeffs;
    for (const auto& c : field(piece, "coefficients")) coeffs.push_back(poly_from_json(c));
    f.pieces.push_back(BiPoly(std::move(coeffs)));
  }
  return f;
}

Json to_json(const ParametricCurveSet& s) {
  Json j;
  j["schema"] = kCurvesSchema;
  j["base"] = s.base == BaseKind::Strip ? "strip" : "cycle";
  Json curves = Json::array();
  for (const auto& c : s.curves) {
    Json pieces = Json::array();
    for (const auto& p : c.pieces) pieces.push_back({{"theta", poly_json(p.theta)}, {"u", poly_json(p.u)}});
    curves.push_back({{"reversed", c.reversed}, {"pieces", pieces}});
  }
  j["curves"] = curves;
  return j;
}

ParametricCurveSet curves_from_json(const Json& j) {
  if (j.value("schema", "") != kCurvesSchema) malformed(std::string("curves schema must be ") + kCurvesSchema);
  ParametricCurveSet s;
  const std::string base = j.value("base", "strip");
  if (base != "strip" && base != "cycle") malformed("base must be 'strip' or 'cycle'");
  s.base = base == "strip" ? BaseKind::Strip : BaseKind::Cycle;
  for (const auto& c : field(j, "curves")) {
    ParametricCurve curve;
    curve.reversed = c.value("reversed", false);
    for (const auto& p : field(c, "pieces"))
      curve.pieces.push_back({poly_from_json(field(p, "theta")), poly_from_json(field(p, "u"))});
    if (curve.pieces.empty()) malformed("a curve needs at least one piece");
    s.curves.push_back(std::move(curve));
  }
  return s;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace modblob
