#pragma once

// Local surgery moves on event words.
//
//   M1  slide two adjacent events with disjoint strand supports past each other
//   M2  insert / delete an adjacent [Birth(i), Death(i)]   (disk or hole)
//   M4  insert / delete an adjacent [Death(i), Birth(i)]   (saddle, 1-surgery)
//   M6  insert / delete an adjacent [Cross(i), Cross(i)]   (double-point arc)
//   M5  insert / delete a pair of opposite kidneys whose horns face each other
//
// Slides of a crossing through a third strand (triple points) are not moves.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modblob/diagram.hpp"

namespace modblob {

enum class MoveKind { M1_Slide, M2_DiskPair, M4_Saddle, M5_KidneyPair, M6_CrossPair };
enum class MoveDirection { Forward, Inverse };  // forward inserts, inverse deletes

const char* to_string(MoveKind kind);

struct Move {
  MoveKind kind = MoveKind::M1_Slide;
  int position = 0;  // index of the first event touched (insertion point for inserts)
  int slot = 0;
  MoveDirection direction = MoveDirection::Forward;
  // Birth orientation for inserted disks; for M5 inserts, true means the
  // (+1) kidney comes first.
  std::optional<bool> orient_bit;
  // M1 only: when a death is followed by a birth in the gap it leaves behind,
  // the birth may slide to either side of the dying pair.  true = above.
  bool above = false;

  friend bool operator==(const Move&, const Move&) = default;
};

std::string describe(const Move& move);

struct MoveTrace {
  StrandDiagram start;
  StrandDiagram end;
  std::vector<Move> moves;
};

struct MoveFilter {
  bool slides = true;
  bool disk_pairs = true;
  bool saddles = true;
  bool cross_pairs = true;
  bool insertions = true;
  // Keep blob words fillable (all faces >= 0).  Ignored on unoriented words.
  bool keep_fillable = true;
  // Keep face multiplicities within {0,1} and forbid crossings.
  bool keep_embedded = false;
  // Insertions are skipped once the word has this many events (0 = no cap).
  std::size_t max_events = 0;

  static MoveFilter embedded() {
    MoveFilter f;
    f.cross_pairs = false;
    f.keep_embedded = true;
    return f;
  }
};

/// All applicable moves in a deterministic order: by position, then kind, then slot.
std::vector<Move> enumerate_moves(const StrandDiagram& word, const MoveFilter& filter = {});

/// Applies a move after checking it is legal.  Throws IllegalMove.
/// Theta decorations are dropped from the result.
StrandDiagram apply_move(const StrandDiagram& word, const Move& move, const MoveFilter& filter = {});
BlobDiagram apply_move(const BlobDiagram& blob, const Move& move, const MoveFilter& filter = {});

/// The move that undoes `move` on `word`.
Move inverse_move(const StrandDiagram& word, const Move& move);

/// Replays a trace from its start word; throws IllegalMove on mismatch.
StrandDiagram replay_trace(const MoveTrace& trace, const MoveFilter& filter = {});

/// The canonical embedded blob of bordism class n: |n| kidneys of sign(n).
BlobDiagram kidney(int n);
/// The word of kidney(n), or the empty word for n = 0.
StrandDiagram kidney_word(int n);

struct NormalizeResult {
  BlobDiagram canonical;
  MoveTrace trace;
};

/// Reduces an embedded strip blob to kidney(J) by cutting it into pieces along
/// fibers, separating the pieces, removing disks and cancelling opposite
/// kidneys.  Throws NotEmbedded, BaseMismatch or NormalizationStuck.
NormalizeResult normalize_embedded(const BlobDiagram& blob);

/// `steps` random legal moves drawn from a generator seeded with `seed`.
/// Embedded inputs stay embedded unless `filter` says otherwise.
StrandDiagram scramble(const StrandDiagram& word, std::uint64_t seed, int steps,
                       std::optional<MoveFilter> filter = std::nullopt);

struct NotEquivalent {
  std::string reason;
};
struct Inconclusive {
  int depth = 0;
  std::size_t explored = 0;
};

using EquivalenceResult = std::variant<MoveTrace, NotEquivalent, Inconclusive>;

struct EquivalenceOptions {
  int depth = 6;
  int depth_cap = 12;  // requests beyond this throw DepthExceeded
  bool invariant_prefilter = true;
  // Intermediate words may grow this many events past the larger endpoint.
  std::size_t slack_events = 4;
};

/// Bidirectional breadth-first search over the move graph.
EquivalenceResult bounded_equivalence(const StrandDiagram& a, const StrandDiagram& b,
                                      const EquivalenceOptions& options = {});

}  // namespace modblob
