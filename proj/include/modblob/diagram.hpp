#pragma once

// Combinatorial doodles and blobs over a foliated strip or cylinder.
//
// A diagram is an event word read along the trajectory space (the theta
// direction).  Between events the curve meets every fiber in a stack of
// strands ordered bottom-up along u; each event acts on that stack:
//
//   Birth(i)  inserts two strands at positions i, i+1   (fiber tangency)
//   Death(i)  joins and removes strands i, i+1          (fiber tangency)
//   Cross(i)  swaps strands i, i+1                      (transversal double point)
//
// Orientation is carried by strand directions: '+' when the curve runs toward
// +theta.  Blobs sit on the left of their oriented boundary, so crossing a
// '+' strand upward raises the face multiplicity by one.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modblob/rational.hpp"

namespace modblob {

enum class BaseKind { Strip, Cycle };

struct BaseSpace {
  BaseKind kind = BaseKind::Strip;
  int wrap_width = 0;  // strands crossing the wrap fiber; 0 for strips

  static BaseSpace strip() { return {BaseKind::Strip, 0}; }
  static BaseSpace cycle(int wrap_width) { return {BaseKind::Cycle, wrap_width}; }
  bool is_strip() const { return kind == BaseKind::Strip; }

  friend bool operator==(const BaseSpace&, const BaseSpace&) = default;
};

enum class EventKind { Birth, Death, Cross };

const char* to_string(EventKind kind);

struct Event {
  EventKind kind = EventKind::Birth;
  int slot = 0;
  std::optional<Rational> theta;
  // Birth only.  true: the lower newborn strand runs toward +theta.
  std::optional<bool> orient_bit;

  static Event birth(int slot, std::optional<bool> orient_bit = std::nullopt) {
    return {EventKind::Birth, slot, std::nullopt, orient_bit};
  }
  static Event death(int slot) { return {EventKind::Death, slot, std::nullopt, std::nullopt}; }
  static Event cross(int slot) { return {EventKind::Cross, slot, std::nullopt, std::nullopt}; }

  bool is_tangency() const { return kind != EventKind::Cross; }
  // Strands consumed from / produced into the pre-event stack.
  int consumed() const { return kind == EventKind::Birth ? 0 : 2; }
  int produced() const { return kind == EventKind::Death ? 0 : 2; }

  friend bool operator==(const Event& a, const Event& b) {
    return a.kind == b.kind && a.slot == b.slot && a.orient_bit == b.orient_bit && a.theta == b.theta;
  }
};

struct StrandDiagram {
  BaseSpace base;
  std::vector<Event> events;
  // Cycle only: direction of each wrap strand, bottom-up (true = '+').
  std::vector<bool> wrap_dirs;

  /// Every birth carries an orientation bit and (on a cycle) every wrap strand a direction.
  bool oriented() const;
  /// True when any orientation data at all is present.
  bool partially_oriented() const;
  /// Equality of the words, ignoring theta decorations.
  bool same_word(const StrandDiagram& other) const;
  StrandDiagram without_theta() const;
  int crossing_count() const;

  friend bool operator==(const StrandDiagram&, const StrandDiagram&) = default;
};

/// Face multiplicities, one row per slab.  Slab k lies before event k (slab n
/// after the last event); entry j of a row is the face between strands j-1
/// and j, so entry 0 is the bottom face.
using FaceMap = std::vector<std::vector<int>>;

struct BlobDiagram {
  StrandDiagram doodle;
  FaceMap faces;

  bool embedded() const;
  friend bool operator==(const BlobDiagram&, const BlobDiagram&) = default;
};

struct FiberPattern {
  std::vector<int> entries;  // 1 = transversal point, 2 = tangency or crossing point

  int degree() const;
  int twos() const;
  friend bool operator==(const FiberPattern&, const FiberPattern&) = default;
};

// ---------------------------------------------------------------------------
// Replay

struct StrandState {
  int arc = -1;  // arcs run from a birth (or the wrap) to a death (or the wrap)
  int dir = 0;   // +1 / -1, 0 when the diagram is unoriented

  friend bool operator==(const StrandState&, const StrandState&) = default;
};

struct Replay {
  std::vector<std::vector<StrandState>> slabs;  // size events+1
  std::vector<int> arc_dir;                     // per arc, 0 when unoriented
  int arc_count = 0;

  std::size_t stack_size(std::size_t slab) const { return slabs[slab].size(); }
};

/// Replays the word.  Throws Error(InvalidDiagram) if an event is out of
/// range or the final stack does not close up.
Replay replay(const StrandDiagram& diagram);

// ---------------------------------------------------------------------------
// Validation

enum class Rule {
  SlotRange,
  FinalStack,
  StripWrapWidth,
  WrapDirCount,
  ThetaOrder,
  ThetaCollision,
  OrientBitMissing,
  OrientBitOnNonBirth,
  DeathDirections,
  WrapOrientation,
  Unoriented,
  NegativeFace,
  UnboundedFace,
  FaceMismatch,
  OddDegree,
  OddCrossings,
};

const char* to_string(Rule rule);

struct Violation {
  Rule rule;
  int event_index;  // -1 when the violation is not tied to one event
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Rule rule) const;
};

ValidationReport validate(const StrandDiagram& diagram);
ValidationReport validate(const BlobDiagram& blob);

// ---------------------------------------------------------------------------
// Structure

struct Component {
  std::vector<int> arcs;
  std::vector<int> events;  // events touching the component, in word order
};

struct ComponentReport {
  std::vector<Component> components;
  std::vector<int> arc_component;  // arc id -> component index
};

/// Groups arcs into closed loops.  Throws OrientationInconsistent when the
/// orientation data contradicts the loop structure.
ComponentReport trace_components(const StrandDiagram& diagram);

/// Face multiplicities from strand directions.  Throws UnorientedInput or
/// NotFillable (some face negative, or a cycle face unbounded).
FaceMap face_multiplicities(const StrandDiagram& diagram);

/// Builds the blob filling of an oriented doodle (throws like face_multiplicities).
BlobDiagram make_blob(StrandDiagram doodle);

struct FiberLocus {
  enum class Kind { Slab, Event };
  Kind kind = Kind::Slab;
  int index = 0;

  friend bool operator==(const FiberLocus&, const FiberLocus&) = default;
};

struct FiberReport {
  std::vector<std::pair<FiberLocus, FiberPattern>> patterns;  // slab 0, event 0, slab 1, ...
  int max_degree = 0;
};

FiberReport fiber_patterns(const StrandDiagram& diagram);

struct CheckerboardReport {
  FaceMap parity;
  bool parity_conflict = false;  // cycle with an odd number of wrap strands
};

CheckerboardReport checkerboard(const StrandDiagram& diagram);

// ---------------------------------------------------------------------------
// Group operations

StrandDiagram boundary(const BlobDiagram& blob);

/// Side-by-side composition along theta.  Strips only.
StrandDiagram compose_uplus(const StrandDiagram& a, const StrandDiagram& b);
BlobDiagram compose_uplus(const BlobDiagram& a, const BlobDiagram& b);

/// Stacks b above a.  Events are merged by theta when both words are fully
/// decorated, otherwise all of a comes first.
StrandDiagram compose_star(const StrandDiagram& a, const StrandDiagram& b);
BlobDiagram compose_star(const BlobDiagram& a, const BlobDiagram& b);

/// Reflection of the strip in theta = 1/2.  Strand directions are kept, so
/// blobs stay on the left of their boundary and faces map bijectively.
StrandDiagram negate(const StrandDiagram& a);
BlobDiagram negate(const BlobDiagram& a);

std::string word_string(const StrandDiagram& diagram);

}  // namespace modblob
