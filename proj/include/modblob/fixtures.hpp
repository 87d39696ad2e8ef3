#pragma once

// Named diagrams with their expected invariant reports.

#include <optional>
#include <string>
#include <vector>

#include "modblob/diagram.hpp"
#include "modblob/error.hpp"
#include "modblob/invariants.hpp"
#include "modblob/json_io.hpp"

namespace modblob {

struct Fixture {
  std::string name;
  std::string description;
  StrandDiagram word;
  bool blob = true;  // false: the report is taken in doodle mode
  std::optional<InvariantReport> expected;
  // Filling the word must fail with this code for every orientation of it.
  std::optional<ErrorCode> expected_error;
};

/// Built-in names; kidney+N and kidney-N are accepted for any N >= 1.
std::vector<std::string> fixture_names();

/// Throws MalformedInput for unknown names.  Looks in MODBLOB_FIXTURE_DIR
/// first when that variable is set.
Fixture fixture(const std::string& name);

std::vector<Fixture> builtin_fixtures();

/// Reads every *.json fixture file in a directory, sorted by file name.
std::vector<Fixture> load_fixture_dir(const std::string& dir);

Json to_json(const Fixture& f);
Fixture fixture_from_json(const Json& j);

struct SelftestLine {
  std::string name;
  bool ok = false;
  std::string message;
};

/// Recomputes each fixture's report and compares with the stored one.
std::vector<SelftestLine> fixture_selftest(const std::vector<Fixture>& fixtures);

}  // namespace modblob
