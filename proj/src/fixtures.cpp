#include "modblob/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "modblob/rewriting.hpp"

namespace modblob {

namespace {

StrandDiagram word(std::vector<Event> events) {
  StrandDiagram w;
  w.events = std::move(events);
  return w;
}

Event B(int slot, bool plus) { return Event::birth(slot, plus); }
Event D(int slot) { return Event::death(slot); }
Event X(int slot) { return Event::cross(slot); }

InvariantReport blob_report(long long J, RhoVector rho, IotaRho iota, long long c_plus, int max_degree) {
  InvariantReport r;
  r.blob_mode = true;
  r.J = J;
  r.rho = rho;
  r.iota = iota;
  r.c_plus = c_plus;
  r.crossing_count_parity = rho.total() % 2;
  r.max_degree = max_degree;
  r.parity_ok = r.crossing_count_parity == 0;
  return r;
}

InvariantReport doodle_report(long long J, RhoVector rho, IotaRho iota, long long c_plus, int max_degree) {
  InvariantReport r = blob_report(J, rho, iota, c_plus, max_degree);
  r.blob_mode = false;
  return r;
}

Fixture kidney_fixture(int n) {
  Fixture f;
  f.name = (n > 0 ? "kidney+" : "kidney-") + std::to_string(std::abs(n));
  f.description = std::to_string(std::abs(n)) + " stacked kidney(s) of sign " + (n > 0 ? "+" : "-");
  f.word = kidney_word(n);
  f.expected = blob_report(n, {}, {}, std::abs(n), 4);
  return f;
}

int parse_kidney(const std::string& name) {
  const std::string prefix = "kidney";
  if (name.rfind(prefix, 0) != 0 || name.size() < prefix.size() + 2) return 0;
  const char sign = name[prefix.size()];
  if (sign != '+' && sign != '-') return 0;
  const std::string digits = name.substr(prefix.size() + 1);
  if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return 0;
  const int n = std::stoi(digits);
  return sign == '+' ? n : -n;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::vector<Fixture> builtin_fixtures() {
  std::vector<Fixture> out;
  out.push_back(kidney_fixture(1));
  out.push_back(kidney_fixture(-1));

  auto add = [&](std::string name, std::string description, StrandDiagram w, bool blob, InvariantReport rep) {
    Fixture f;
    f.name = std::move(name);
    f.description = std::move(description);
    f.word = std::move(w);
    f.blob = blob;
    f.expected = rep;
    out.push_back(std::move(f));
  };

  const StrandDiagram a1 = word({B(0, true), B(2, true), X(1), X(0), D(1), D(0)});
  const StrandDiagram a3 = word({B(0, true), B(2, true), X(1), X(2), D(1), D(0)});
  add("alpha1", "two overlapping disks, crossings of types II and I", a1, true,
      blob_report(1, {1, 1, 0, 0}, {1, 0, 1}, 1, 4));
  add("alpha2", "reflection of alpha1, crossings of types I and IV", negate(a1), true,
      blob_report(-1, {1, 0, 0, 1}, {1, 0, -1}, 1, 4));
  add("alpha3", "two overlapping disks, crossings of types II and III", a3, true,
      blob_report(1, {0, 1, 1, 0}, {0, 1, 1}, 1, 4));
  add("alpha4", "reflection of alpha3, crossings of types III and IV", negate(a3), true,
      blob_report(-1, {0, 0, 1, 1}, {0, 1, -1}, 1, 4));
  add("torus", "one boundary circle, one crossing of each type",
      word({B(0, true), B(0, true), B(1, false), X(1), X(0), X(2), X(1), D(2), D(1), D(0)}), true,
      blob_report(0, {1, 1, 1, 1}, {1, 1, 0}, 2, 6));
  add("beta+", "horizontal figure eight", word({B(0, true), X(0), D(0)}), false,
      doodle_report(0, {1, 0, 0, 0}, {1, 0, 0}, 0, 2));
  add("beta-", "horizontal figure eight, reversed", word({B(0, false), X(0), D(0)}), false,
      doodle_report(0, {0, 0, 1, 0}, {0, 1, 0}, 0, 2));
  add("betatilde", "loop inside a loop", word({B(0, true), B(1, true), X(0), D(1), D(0)}), false,
      doodle_report(0, {0, 1, 0, 0}, {0, 0, 1}, 2, 4));
  add("betabar", "loop inside a loop, reversed", word({B(0, false), B(1, false), X(0), D(1), D(0)}), false,
      doodle_report(0, {0, 0, 0, 1}, {0, 0, -1}, 2, 4));
  add("disk", "convex disk", word({B(0, true), D(0)}), true, blob_report(0, {}, {}, 0, 2));
  add("annulus", "disk with a hole", word({B(0, true), B(1, false), D(1), D(0)}), true,
      blob_report(0, {}, {}, 2, 4));

  Fixture fig;
  fig.name = "figure8";
  fig.description = "figure eight; bounds no immersed surface";
  fig.word = word({B(0, true), X(0), D(0)});
  fig.blob = false;
  fig.expected = doodle_report(0, {1, 0, 0, 0}, {1, 0, 0}, 0, 2);
  fig.expected_error = ErrorCode::NotFillable;
  out.push_back(std::move(fig));
  return out;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& f : builtin_fixtures()) names.push_back(f.name);
  return names;
}

Fixture fixture(const std::string& name) {
  if (const char* dir = std::getenv("MODBLOB_FIXTURE_DIR"); dir && *dir) {
    for (auto& f : load_fixture_dir(dir))
      if (f.name == name) return f;
  }
  if (const int n = parse_kidney(name); n != 0) return kidney_fixture(n);
  for (auto& f : builtin_fixtures())
    if (f.name == name) return f;
  throw Error(ErrorCode::MalformedInput, "unknown fixture '" + name + "'");
}

std::vector<Fixture> load_fixture_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::MalformedInput, "not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Fixture> out;
  for (const auto& p : files) out.push_back(fixture_from_json(parse_json(read_file(p))));
  return out;
}

Json to_json(const Fixture& f) {
  Json j;
  j["name"] = f.name;
  j["description"] = f.description;
  j["mode"] = f.blob ? "blob" : "doodle";
  j["diagram"] = to_json(f.word);
  if (f.expected) j["expected"] = to_json(*f.expected);
  if (f.expected_error) j["expected_error"] = to_string(*f.expected_error);
  return j;
}

Fixture fixture_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("diagram"))
    throw Error(ErrorCode::MalformedInput, "fixture needs 'name' and 'diagram'");
  Fixture f;
  f.name = j.at("name").get<std::string>();
  f.description = j.value("description", "");
  f.blob = j.value("mode", "blob") == "blob";
  f.word = diagram_from_json(j.at("diagram"));
  if (j.contains("expected")) f.expected = report_from_json(j.at("expected"));
  if (j.contains("expected_error")) {
    const std::string code = j.at("expected_error").get<std::string>();
    if (code != to_string(ErrorCode::NotFillable))
      throw Error(ErrorCode::MalformedInput, "unsupported expected_error '" + code + "'");
    f.expected_error = ErrorCode::NotFillable;
  }
  return f;
}

namespace {

std::string describe(const InvariantReport& r) { return to_json(r).dump(); }

// Every assignment of birth bits (and wrap directions) to the word.
std::vector<StrandDiagram> orientations(const StrandDiagram& w) {
  std::vector<int> births;
  for (std::size_t k = 0; k < w.events.size(); ++k)
    if (w.events[k].kind == EventKind::Birth) births.push_back(static_cast<int>(k));
  std::vector<StrandDiagram> out;
  if (births.size() > 12) return {w};
  for (unsigned mask = 0; mask < (1u << births.size()); ++mask) {
    StrandDiagram c = w;
    for (std::size_t b = 0; b < births.size(); ++b) c.events[births[b]].orient_bit = (mask >> b) & 1u;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<SelftestLine> fixture_selftest(const std::vector<Fixture>& fixtures) {
  std::vector<SelftestLine> out;
  for (const auto& f : fixtures) {
    SelftestLine line{f.name, true, "ok"};
    try {
      if (f.expected_error) {
        for (const auto& o : orientations(f.word)) {
          try {
            make_blob(o);
            line.ok = false;
            line.message = "filled unexpectedly: " + word_string(o);
          } catch (const Error& e) {
            if (e.code() != *f.expected_error) {
              line.ok = false;
              line.message = std::string("wrong error ") + to_string(e.code());
            }
          }
        }
      }
      if (f.expected && line.ok) {
        InvariantReport got;
        if (f.blob) {
          const BlobDiagram b = make_blob(f.word);
          const auto v = validate(b);
          if (!v.ok()) throw Error(ErrorCode::InvalidDiagram, v.violations.front().message);
          got = invariant_report(b);
        } else {
          got = invariant_report_doodle(f.word);
        }
        if (!(got == *f.expected)) {
          line.ok = false;
          line.message = "expected " + describe(*f.expected) + " got " + describe(got);
        }
      }
    } catch (const Error& e) {
      line.ok = false;
      line.message = e.what();
    }
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace modblob
