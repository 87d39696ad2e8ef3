#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "modblob/diagram.hpp"

namespace modblob {

enum class Polarity { None, Plus, Minus };

struct TangencyRecord {
  int event_index = 0;
  EventKind kind = EventKind::Birth;
  int below_count = 0;  // strands strictly below the tangency point
  bool concave = false;
  Polarity polarity = Polarity::None;

  friend bool operator==(const TangencyRecord&, const TangencyRecord&) = default;
};

enum class CrossingType { I, II, III, IV };

const char* to_string(CrossingType type);
const char* to_string(Polarity polarity);

struct CrossingRecord {
  int event_index = 0;
  CrossingType type = CrossingType::I;
  // Blob mode: multiplicities of the sectors below, before (-theta), after
  // (+theta) and above the crossing.  Doodle mode: directions of the rising
  // and the falling strand in the first two entries.
  std::array<int, 4> sector_data{};

  friend bool operator==(const CrossingRecord&, const CrossingRecord&) = default;
};

struct RhoVector {
  int I = 0, II = 0, III = 0, IV = 0;

  int total() const { return I + II + III + IV; }
  RhoVector operator+(const RhoVector& o) const { return {I + o.I, II + o.II, III + o.III, IV + o.IV}; }
  friend bool operator==(const RhoVector&, const RhoVector&) = default;
};

/// (rho_I mod 2, rho_III mod 2, rho_II - rho_IV) in Z2 x Z2 x Z.
struct IotaRho {
  int rho_I_mod2 = 0;
  int rho_III_mod2 = 0;
  long long twist = 0;

  IotaRho operator+(const IotaRho& o) const {
    return {(rho_I_mod2 + o.rho_I_mod2) % 2, (rho_III_mod2 + o.rho_III_mod2) % 2, twist + o.twist};
  }
  friend bool operator==(const IotaRho&, const IotaRho&) = default;
};

/// Membership in M = span{(1,0,1), (0,1,1), (0,0,2)}, the image of the
/// immersed-blob bordism classes.
bool in_blob_image(const IotaRho& value);

/// Coset of value in Z2 x Z2 x Z / <(0,0,2)>, encoded as 4a + 2b + (c mod 2).
int coset_index(const IotaRho& value);

struct InvariantReport {
  bool blob_mode = false;
  long long J = 0;
  RhoVector rho;
  IotaRho iota;
  long long c_plus = 0;
  int crossing_count_parity = 0;
  int max_degree = 0;
  bool parity_ok = true;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

std::vector<TangencyRecord> classify_tangencies(const StrandDiagram& diagram);
std::vector<TangencyRecord> classify_tangencies(const BlobDiagram& blob);

/// #(concave, plus) - #(concave, minus).
long long invariant_J(const BlobDiagram& blob);
long long invariant_J(const std::vector<TangencyRecord>& records);

/// Types from the doubly covered sector.
std::vector<CrossingRecord> classify_crossings_blob(const BlobDiagram& blob);
/// Types from the sector spanned by the two oriented tangent vectors.
/// Throws UnorientedInput.
std::vector<CrossingRecord> classify_crossings_doodle(const StrandDiagram& doodle);

RhoVector rho(const std::vector<CrossingRecord>& records);
IotaRho iota_rho(const RhoVector& rho);
IotaRho iota_rho(const BlobDiagram& blob);
IotaRho iota_rho_doodle(const StrandDiagram& doodle);

/// #(concave, plus) + #(concave, minus).
long long complexity(const BlobDiagram& blob);

struct ComponentTopology {
  int euler_characteristic = 0;
  int boundary_circles = 0;
  int genus = 0;
};

struct TopologyReport {
  std::vector<ComponentTopology> components;
  int euler_characteristic = 0;
  int boundary_circles = 0;
};

/// Cell-complex topology of an embedded blob.  Throws NotEmbedded.
TopologyReport topology_report(const BlobDiagram& blob);

struct ParityAudit {
  bool ok = true;
  int crossing_count = 0;
  bool degrees_even = true;
  std::vector<std::string> failures;
};

/// Works on arbitrary words, including truncated ones.
ParityAudit parity_audit(const StrandDiagram& diagram);

InvariantReport invariant_report(const BlobDiagram& blob);
/// Doodle report: J and c+ use the image-pattern rule on the oriented
/// doodle, crossings are typed in doodle mode.
InvariantReport invariant_report_doodle(const StrandDiagram& doodle);

}  // namespace modblob
