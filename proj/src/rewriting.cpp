#include "modblob/rewriting.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "modblob/error.hpp"
#include "modblob/invariants.hpp"

namespace modblob {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::M1_Slide: return "M1";
    case MoveKind::M2_DiskPair: return "M2";
    case MoveKind::M4_Saddle: return "M4";
    case MoveKind::M5_KidneyPair: return "M5";
    case MoveKind::M6_CrossPair: return "M6";
  }
  return "?";
}

std::string describe(const Move& m) {
  std::ostringstream os;
  os << to_string(m.kind);
  if (m.kind != MoveKind::M1_Slide) os << (m.direction == MoveDirection::Forward ? "+" : "-");
  os << "@" << m.position << ":" << m.slot;
  if (m.orient_bit) os << (*m.orient_bit ? "+" : "-");
  if (m.above) os << "^";
  return os.str();
}

namespace {

// Canonical kidneys at base slot 0.
std::vector<Event> kidney_events(bool positive) {
  if (positive) return {Event::birth(0, true), Event::birth(2, true), Event::death(1), Event::death(0)};
  return {Event::birth(0, true), Event::birth(1, false), Event::death(2), Event::death(0)};
}

std::vector<Event> shifted(std::vector<Event> events, int offset) {
  for (auto& e : events) e.slot += offset;
  return events;
}

bool events_match(const std::vector<Event>& word, std::size_t at, const std::vector<Event>& pattern) {
  if (at + pattern.size() > word.size()) return false;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const Event& a = word[at + k];
    const Event& b = pattern[k];
    if (a.kind != b.kind || a.slot != b.slot) return false;
    if (b.orient_bit && a.orient_bit && *a.orient_bit != *b.orient_bit) return false;
  }
  return true;
}

// Result of sliding e1 past e2 (e1 first in the word), or nullopt when the
// two events share strands.  `above` picks the side in the one ambiguous
// configuration, a birth in the gap left by a death.
std::optional<std::pair<Event, Event>> slide(const Event& e1, const Event& e2, bool above) {
  const int a = e1.slot, b = e2.slot;
  const bool fits_below = b + e2.consumed() <= a;
  const bool fits_above = b >= a + e1.produced();
  if (!fits_below && !fits_above) return std::nullopt;
  const bool ambiguous = fits_below && fits_above;
  if (above && !ambiguous) return std::nullopt;
  Event n1 = e2, n2 = e1;
  n1.theta.reset();
  n2.theta.reset();
  if (fits_below && !(ambiguous && above)) {
    n2.slot = a - e2.consumed() + e2.produced();
  } else {
    n1.slot = b - e1.produced() + e1.consumed();
  }
  return std::make_pair(n1, n2);
}

bool slide_ambiguous(const Event& e1, const Event& e2) {
  return e1.produced() == 0 && e2.consumed() == 0 && e1.slot == e2.slot;
}

struct WordState {
  Replay replay;
  bool oriented = false;
  bool fillable = false;

  int face(std::size_t slab, int interval) const {
    int m = 0;
    for (int j = 0; j < interval; ++j) m += replay.slabs[slab][j].dir;
    return m;
  }
};

WordState analyse(const StrandDiagram& w) {
  WordState st{replay(w), w.oriented(), false};
  if (st.oriented) {
    st.fillable = true;
    for (const auto& slab : st.replay.slabs) {
      int m = 0;
      for (const auto& s : slab) {
        m += s.dir;
        if (m < 0) st.fillable = false;
      }
      if (m != 0) st.fillable = false;
    }
  }
  return st;
}

bool face_allowed(int m, const WordState& st, const MoveFilter& f) {
  if (!st.oriented) return true;
  if (f.keep_embedded && (m < 0 || m > 1)) return false;
  if (f.keep_fillable && st.fillable && m < 0) return false;
  return true;
}

[[noreturn]] void illegal(const Move& m, const std::string& why) {
  throw Error(ErrorCode::IllegalMove, describe(m) + ": " + why);
}

// Checks legality and returns the new event list.
std::vector<Event> apply_checked(const StrandDiagram& w, const WordState& st, const Move& m, const MoveFilter& f) {
  const auto& ev = w.events;
  const int n = static_cast<int>(ev.size());
  const int p = m.position;
  const bool insert = m.direction == MoveDirection::Forward;
  std::vector<Event> out = ev;

  auto need_bit = [&](const Move& mv) {
    if (st.oriented && !mv.orient_bit) illegal(mv, "oriented word needs an orientation bit");
    if (!st.oriented && mv.orient_bit) illegal(mv, "unoriented word cannot take an orientation bit");
  };

  switch (m.kind) {
    case MoveKind::M1_Slide: {
      if (!f.slides) illegal(m, "slides disabled");
      if (p < 0 || p + 1 >= n) illegal(m, "no adjacent pair");
      auto res = slide(ev[p], ev[p + 1], m.above);
      if (!res) illegal(m, "events share strands");
      out[p] = res->first;
      out[p + 1] = res->second;
      break;
    }
    case MoveKind::M2_DiskPair: {
      if (!f.disk_pairs) illegal(m, "disk pairs disabled");
      if (insert) {
        if (!f.insertions) illegal(m, "insertions disabled");
        if (p < 0 || p > n) illegal(m, "position out of range");
        const int s = static_cast<int>(st.replay.slabs[p].size());
        if (m.slot < 0 || m.slot > s) illegal(m, "slot out of range");
        need_bit(m);
        if (st.oriented) {
          const int inner = st.face(p, m.slot) + (*m.orient_bit ? 1 : -1);
          if (!face_allowed(inner, st, f)) illegal(m, "face multiplicity constraint");
        }
        Event b = Event::birth(m.slot, m.orient_bit);
        out.insert(out.begin() + p, {b, Event::death(m.slot)});
      } else {
        if (p < 0 || p + 1 >= n) illegal(m, "no adjacent pair");
        if (ev[p].kind != EventKind::Birth || ev[p + 1].kind != EventKind::Death || ev[p].slot != m.slot ||
            ev[p + 1].slot != m.slot)
          illegal(m, "site is not [Birth(i), Death(i)]");
        out.erase(out.begin() + p, out.begin() + p + 2);
      }
      break;
    }
    case MoveKind::M4_Saddle: {
      if (!f.saddles) illegal(m, "saddles disabled");
      if (insert) {
        if (!f.insertions) illegal(m, "insertions disabled");
        if (p < 0 || p > n) illegal(m, "position out of range");
        const auto& slab = st.replay.slabs[p];
        const int s = static_cast<int>(slab.size());
        if (m.slot < 0 || m.slot > s - 2) illegal(m, "slot out of range");
        std::optional<bool> bit;
        if (st.oriented) {
          if (slab[m.slot].dir == slab[m.slot + 1].dir) illegal(m, "strands have equal direction");
          bit = slab[m.slot].dir > 0;
          if (m.orient_bit && *m.orient_bit != *bit) illegal(m, "orientation bit disagrees with strands");
        }
        out.insert(out.begin() + p, {Event::death(m.slot), Event::birth(m.slot, bit)});
      } else {
        if (p < 0 || p + 1 >= n) illegal(m, "no adjacent pair");
        if (ev[p].kind != EventKind::Death || ev[p + 1].kind != EventKind::Birth || ev[p].slot != m.slot ||
            ev[p + 1].slot != m.slot)
          illegal(m, "site is not [Death(i), Birth(i)]");
        if (st.oriented) {
          const auto& slab = st.replay.slabs[p];
          const int d = slab[m.slot].dir;
          if ((d > 0) != *ev[p + 1].orient_bit) illegal(m, "strand directions do not reconnect");
          if (!face_allowed(st.face(p, m.slot) + d, st, f)) illegal(m, "face multiplicity constraint");
        }
        out.erase(out.begin() + p, out.begin() + p + 2);
      }
      break;
    }
    case MoveKind::M6_CrossPair: {
      if (!f.cross_pairs) illegal(m, "crossing pairs disabled");
      if (insert) {
        if (!f.insertions) illegal(m, "insertions disabled");
        if (f.keep_embedded) illegal(m, "crossings leave embedded words");
        if (p < 0 || p > n) illegal(m, "position out of range");
        const auto& slab = st.replay.slabs[p];
        const int s = static_cast<int>(slab.size());
        if (m.slot < 0 || m.slot > s - 2) illegal(m, "slot out of range");
        if (st.oriented && !face_allowed(st.face(p, m.slot) + slab[m.slot + 1].dir, st, f))
          illegal(m, "face multiplicity constraint");
        out.insert(out.begin() + p, {Event::cross(m.slot), Event::cross(m.slot)});
      } else {
        if (p < 0 || p + 1 >= n) illegal(m, "no adjacent pair");
        if (ev[p].kind != EventKind::Cross || ev[p + 1].kind != EventKind::Cross || ev[p].slot != m.slot ||
            ev[p + 1].slot != m.slot)
          illegal(m, "site is not [Cross(i), Cross(i)]");
        out.erase(out.begin() + p, out.begin() + p + 2);
      }
      break;
    }
    case MoveKind::M5_KidneyPair: {
      if (!st.oriented) illegal(m, "kidney pairs need an oriented word");
      auto plus = shifted(kidney_events(true), m.slot);
      auto minus = shifted(kidney_events(false), m.slot);
      if (insert) {
        if (!f.insertions) illegal(m, "insertions disabled");
        if (p < 0 || p > n) illegal(m, "position out of range");
        const int s = static_cast<int>(st.replay.slabs[p].size());
        if (m.slot < 0 || m.slot > s) illegal(m, "slot out of range");
        if (!face_allowed(st.face(p, m.slot) + 1, st, f)) illegal(m, "face multiplicity constraint");
        const bool plus_first = m.orient_bit.value_or(true);
        std::vector<Event> block = plus_first ? plus : minus;
        const auto& second = plus_first ? minus : plus;
        block.insert(block.end(), second.begin(), second.end());
        out.insert(out.begin() + p, block.begin(), block.end());
      } else {
        if (p < 0) illegal(m, "position out of range");
        const bool pm = events_match(ev, p, plus) && events_match(ev, p + 4, minus);
        const bool mp = events_match(ev, p, minus) && events_match(ev, p + 4, plus);
        if (!pm && !mp) illegal(m, "site is not a pair of opposite kidneys");
        out.erase(out.begin() + p, out.begin() + p + 8);
      }
      break;
    }
  }
  for (auto& e : out) e.theta.reset();
  return out;
}

}  // namespace

std::vector<Move> enumerate_moves(const StrandDiagram& w, const MoveFilter& f) {
  const WordState st = analyse(w);
  const auto& ev = w.events;
  const int n = static_cast<int>(ev.size());
  const bool can_insert = f.insertions && (f.max_events == 0 || ev.size() + 2 <= f.max_events);
  std::vector<Move> out;
  auto bits = [&]() -> std::vector<std::optional<bool>> {
    if (st.oriented) return {true, false};
    return {std::nullopt};
  };

  for (int p = 0; p <= n; ++p) {
    const auto& slab = st.replay.slabs[p];
    const int s = static_cast<int>(slab.size());

    if (f.slides && p + 1 < n) {
      if (slide(ev[p], ev[p + 1], false)) out.push_back({MoveKind::M1_Slide, p, ev[p].slot, MoveDirection::Forward});
      if (slide_ambiguous(ev[p], ev[p + 1]))
        out.push_back({MoveKind::M1_Slide, p, ev[p].slot, MoveDirection::Forward, std::nullopt, true});
    }
    if (f.disk_pairs) {
      if (can_insert)
        for (int i = 0; i <= s; ++i)
          for (auto bit : bits()) {
            if (st.oriented && !face_allowed(st.face(p, i) + (*bit ? 1 : -1), st, f)) continue;
            out.push_back({MoveKind::M2_DiskPair, p, i, MoveDirection::Forward, bit});
          }
      if (p + 1 < n && ev[p].kind == EventKind::Birth && ev[p + 1].kind == EventKind::Death &&
          ev[p].slot == ev[p + 1].slot)
        out.push_back({MoveKind::M2_DiskPair, p, ev[p].slot, MoveDirection::Inverse});
    }
    if (f.saddles) {
      if (can_insert)
        for (int i = 0; i + 2 <= s; ++i) {
          std::optional<bool> bit;
          if (st.oriented) {
            if (slab[i].dir == slab[i + 1].dir) continue;
            bit = slab[i].dir > 0;
          }
          out.push_back({MoveKind::M4_Saddle, p, i, MoveDirection::Forward, bit});
        }
      if (p + 1 < n && ev[p].kind == EventKind::Death && ev[p + 1].kind == EventKind::Birth &&
          ev[p].slot == ev[p + 1].slot) {
        bool ok = true;
        if (st.oriented) {
          const int d = slab[ev[p].slot].dir;
          ok = (d > 0) == *ev[p + 1].orient_bit && face_allowed(st.face(p, ev[p].slot) + d, st, f);
        }
        if (ok) out.push_back({MoveKind::M4_Saddle, p, ev[p].slot, MoveDirection::Inverse});
      }
    }
    if (f.cross_pairs) {
      if (can_insert && !f.keep_embedded)
        for (int i = 0; i + 2 <= s; ++i) {
          if (st.oriented && !face_allowed(st.face(p, i) + slab[i + 1].dir, st, f)) continue;
          out.push_back({MoveKind::M6_CrossPair, p, i, MoveDirection::Forward});
        }
      if (p + 1 < n && ev[p].kind == EventKind::Cross && ev[p + 1].kind == EventKind::Cross &&
          ev[p].slot == ev[p + 1].slot)
        out.push_back({MoveKind::M6_CrossPair, p, ev[p].slot, MoveDirection::Inverse});
    }
  }
  return out;
}

StrandDiagram apply_move(const StrandDiagram& w, const Move& m, const MoveFilter& f) {
  const WordState st = analyse(w);
  StrandDiagram out;
  out.base = w.base;
  out.wrap_dirs = w.wrap_dirs;
  out.events = apply_checked(w, st, m, f);
  return out;
}

BlobDiagram apply_move(const BlobDiagram& blob, const Move& m, const MoveFilter& f) {
  return make_blob(apply_move(blob.doodle, m, f));
}

Move inverse_move(const StrandDiagram& w, const Move& m) {
  Move inv = m;
  switch (m.kind) {
    case MoveKind::M1_Slide: {
      auto res = slide(w.events.at(m.position), w.events.at(m.position + 1), m.above);
      if (!res) illegal(m, "events share strands");
      inv.above = false;
      if (slide_ambiguous(res->first, res->second)) {
        auto back = slide(res->first, res->second, true);
        inv.above = back && back->first.kind == w.events[m.position].kind &&
                    back->first.slot == w.events[m.position].slot &&
                    back->second.slot == w.events[m.position + 1].slot;
      }
      inv.slot = res->first.slot;
      return inv;
    }
    case MoveKind::M5_KidneyPair:
      if (m.direction == MoveDirection::Inverse) {
        inv.direction = MoveDirection::Forward;
        inv.orient_bit = w.events.at(m.position + 1).slot == m.slot + 2;
      } else {
        inv.direction = MoveDirection::Inverse;
        inv.orient_bit.reset();
      }
      return inv;
    default:
      if (m.direction == MoveDirection::Forward) {
        inv.direction = MoveDirection::Inverse;
        inv.orient_bit.reset();
      } else {
        inv.direction = MoveDirection::Forward;
        const Event& first = w.events.at(m.position);
        const Event& second = w.events.at(m.position + 1);
        inv.orient_bit = first.kind == EventKind::Birth ? first.orient_bit : second.orient_bit;
      }
      return inv;
  }
}

StrandDiagram replay_trace(const MoveTrace& trace, const MoveFilter& f) {
  StrandDiagram w = trace.start.without_theta();
  for (const auto& m : trace.moves) w = apply_move(w, m, f);
  if (!w.same_word(trace.end.without_theta()))
    throw Error(ErrorCode::IllegalMove, "trace does not end at the recorded word");
  return w;
}

StrandDiagram kidney_word(int n) {
  StrandDiagram w;
  const auto block = kidney_events(n > 0);
  for (int k = 0; k < std::abs(n); ++k) w.events.insert(w.events.end(), block.begin(), block.end());
  return w;
}

BlobDiagram kidney(int n) {
  if (n == 0) throw Error(ErrorCode::MalformedInput, "kidney(0) is not a generator; use the empty word");
  return make_blob(kidney_word(n));
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

class Normalizer {
 public:
  explicit Normalizer(StrandDiagram start) : word_(std::move(start)) {}

  void record(const Move& m) {
    trace_.push_back(m);
    // Moves here are constructed legal; cheap application without replay.
    auto& ev = word_.events;
    const int p = m.position;
    const bool insert = m.direction == MoveDirection::Forward;
    switch (m.kind) {
      case MoveKind::M1_Slide: {
        auto res = slide(ev[p], ev[p + 1], m.above);
        if (!res) throw Error(ErrorCode::NormalizationStuck, "illegal slide " + describe(m));
        ev[p] = res->first;
        ev[p + 1] = res->second;
        break;
      }
      case MoveKind::M4_Saddle:
        if (!insert) throw Error(ErrorCode::NormalizationStuck, "unexpected saddle deletion");
        ev.insert(ev.begin() + p, {Event::death(m.slot), Event::birth(m.slot, m.orient_bit)});
        break;
      case MoveKind::M2_DiskPair:
      case MoveKind::M6_CrossPair:
        if (insert) throw Error(ErrorCode::NormalizationStuck, "unexpected insertion");
        ev.erase(ev.begin() + p, ev.begin() + p + 2);
        break;
      case MoveKind::M5_KidneyPair:
        if (insert) throw Error(ErrorCode::NormalizationStuck, "unexpected insertion");
        ev.erase(ev.begin() + p, ev.begin() + p + 8);
        break;
    }
  }

  // Saddles across every filled band of every interior slab.
  void cut() {
    const Replay r = replay(word_);
    const int n = static_cast<int>(word_.events.size());
    for (int k = n - 1; k >= 1; --k) {
      const int bands = static_cast<int>(r.slabs[k].size()) / 2;
      for (int j = bands - 1; j >= 0; --j) record({MoveKind::M4_Saddle, k, 2 * j, MoveDirection::Forward, true});
    }
  }

  // Makes every component a contiguous block, ordered by first event.
  void separate() {
    const ComponentReport comps = trace_components(word_);
    std::vector<int> key(word_.events.size());
    for (std::size_t c = 0; c < comps.components.size(); ++c)
      for (int e : comps.components[c].events) key[e] = static_cast<int>(c);
    std::vector<int> first_event(comps.components.size(), -1);
    for (std::size_t k = 0; k < key.size(); ++k)
      if (first_event[key[k]] < 0) first_event[key[k]] = static_cast<int>(k);
    for (auto& k : key) k = first_event[k];

    for (std::size_t i = 1; i < key.size(); ++i) {
      for (std::size_t j = i; j > 0 && key[j - 1] > key[j]; --j) {
        const int p = static_cast<int>(j - 1);
        record({MoveKind::M1_Slide, p, word_.events[p].slot, MoveDirection::Forward});
        std::swap(key[j - 1], key[j]);
      }
    }
  }

  // Brings a four-event block at `p` to the canonical kidney by slides inside it.
  void canonicalize_kidney(int p, bool positive) {
    const auto target = kidney_events(positive);
    struct Node {
      std::vector<Event> block;
      std::vector<Move> path;
    };
    auto matches = [&](const std::vector<Event>& b) { return events_match(b, 0, target); };
    std::vector<Event> block(word_.events.begin() + p, word_.events.begin() + p + 4);
    std::vector<Node> frontier{{block, {}}};
    std::vector<std::vector<Event>> seen{block};
    for (int depth = 0; depth < 8; ++depth) {
      std::vector<Node> next;
      for (const auto& node : frontier) {
        if (matches(node.block)) {
          for (const auto& m : node.path) record(m);
          return;
        }
        for (int q = 0; q < 3; ++q)
          for (bool above : {false, true}) {
            auto res = slide(node.block[q], node.block[q + 1], above);
            if (!res) continue;
            Node child = node;
            child.block[q] = res->first;
            child.block[q + 1] = res->second;
            bool known = false;
            for (const auto& s : seen)
              if (events_match(s, 0, child.block) && events_match(child.block, 0, s)) known = true;
            if (known) continue;
            seen.push_back(child.block);
            child.path.push_back({MoveKind::M1_Slide, p + q, node.block[q].slot, MoveDirection::Forward,
                                  std::nullopt, above});
            next.push_back(std::move(child));
          }
      }
      frontier = std::move(next);
    }
    throw Error(ErrorCode::NormalizationStuck, "kidney block does not slide to canonical form");
  }

  // Removes disks, canonicalizes kidneys; returns the kidney signs in order.
  std::vector<bool> sweep_blocks() {
    std::vector<bool> signs;
    int p = 0;
    while (p < static_cast<int>(word_.events.size())) {
      // Blocks start on an empty stack; find where the stack empties again.
      int s = 0, q = p;
      do {
        s += word_.events[q].produced() - word_.events[q].consumed();
        ++q;
      } while (s != 0 && q < static_cast<int>(word_.events.size()));
      const int len = q - p;
      if (len == 2) {
        record({MoveKind::M2_DiskPair, p, 0, MoveDirection::Inverse});
      } else if (len == 4) {
        int concave_plus = 0, concave_minus = 0;
        for (int k = p; k < q; ++k) {
          const Event& e = word_.events[k];
          if (e.slot % 2 == 1) (e.kind == EventKind::Death ? concave_plus : concave_minus) += 1;
        }
        if (concave_plus + concave_minus != 1)
          throw Error(ErrorCode::NormalizationStuck, "four-event block is not a kidney");
        canonicalize_kidney(p, concave_plus == 1);
        signs.push_back(concave_plus == 1);
        p = q;
      } else {
        throw Error(ErrorCode::NormalizationStuck, "unexpected block of " + std::to_string(len) + " events");
      }
    }
    return signs;
  }

  void cancel_pairs(std::vector<bool> signs) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k + 1 < signs.size(); ++k)
        if (signs[k] != signs[k + 1]) {
          record({MoveKind::M5_KidneyPair, static_cast<int>(4 * k), 0, MoveDirection::Inverse});
          signs.erase(signs.begin() + k, signs.begin() + k + 2);
          changed = true;
          break;
        }
    }
  }

  const StrandDiagram& word() const { return word_; }
  std::vector<Move> take_trace() { return std::move(trace_); }

 private:
  StrandDiagram word_;
  std::vector<Move> trace_;
};

}  // namespace

NormalizeResult normalize_embedded(const BlobDiagram& blob) {
  if (!blob.doodle.base.is_strip()) throw Error(ErrorCode::BaseMismatch, "normalization works on the strip");
  const auto report = validate(blob);
  if (!report.ok()) throw Error(ErrorCode::InvalidDiagram, report.violations.front().message);
  BlobDiagram filled = blob.faces.empty() ? make_blob(blob.doodle) : blob;
  if (!filled.embedded()) throw Error(ErrorCode::NotEmbedded, "normalization needs an embedded blob");

  const long long j = invariant_J(filled);
  Normalizer norm(filled.doodle.without_theta());
  norm.cut();
  norm.separate();
  norm.cancel_pairs(norm.sweep_blocks());

  const StrandDiagram expected = kidney_word(static_cast<int>(j));
  if (!norm.word().same_word(expected))
    throw Error(ErrorCode::NormalizationStuck, "ended at " + word_string(norm.word()));

  NormalizeResult out;
  out.canonical = make_blob(expected);
  out.trace.start = filled.doodle;
  out.trace.end = expected;
  out.trace.moves = norm.take_trace();
  return out;
}

// ---------------------------------------------------------------------------

StrandDiagram scramble(const StrandDiagram& word, std::uint64_t seed, int steps, std::optional<MoveFilter> filter) {
  MoveFilter f;
  if (filter) {
    f = *filter;
  } else if (word.oriented() && word.crossing_count() == 0) {
    bool embedded = true;
    try {
      embedded = make_blob(word).embedded();
    } catch (const Error&) {
      embedded = false;
    }
    if (embedded) f = MoveFilter::embedded();
  }
  std::mt19937_64 rng(seed);
  StrandDiagram w = word.without_theta();
  for (int step = 0; step < steps; ++step) {
    const auto moves = enumerate_moves(w, f);
    std::vector<const Move*> buckets[3];
    for (const auto& m : moves) {
      int b = m.kind == MoveKind::M1_Slide ? 0 : (m.direction == MoveDirection::Forward ? 1 : 2);
      buckets[b].push_back(&m);
    }
    std::vector<int> live;
    for (int b = 0; b < 3; ++b)
      if (!buckets[b].empty()) live.push_back(b);
    if (live.empty()) break;
    const auto& bucket = buckets[live[std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng)]];
    const Move& m = *bucket[std::uniform_int_distribution<std::size_t>(0, bucket.size() - 1)(rng)];
    w = apply_move(w, m, f);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Bounded equivalence

namespace {

std::string word_key(const StrandDiagram& w) {
  std::string key;
  key.reserve(w.events.size() * 2 + 4);
  for (const auto& e : w.events) {
    key.push_back(static_cast<char>(static_cast<int>(e.kind) * 3 + (e.orient_bit ? (*e.orient_bit ? 1 : 2) : 0)));
    key.push_back(static_cast<char>(e.slot));
  }
  return key;
}

struct SearchSide {
  struct Entry {
    std::string parent;
    Move move;  // parent --move--> this word
    StrandDiagram word;
    int depth = 0;
  };
  std::unordered_map<std::string, Entry> seen;
  std::vector<std::string> frontier;
};

std::vector<Move> path_from_root(const SearchSide& side, const std::string& key) {
  std::vector<Move> moves;
  std::string cur = key;
  while (true) {
    const auto& e = side.seen.at(cur);
    if (e.depth == 0) break;
    moves.push_back(e.move);
    cur = e.parent;
  }
  std::reverse(moves.begin(), moves.end());
  return moves;
}

}  // namespace

EquivalenceResult bounded_equivalence(const StrandDiagram& a, const StrandDiagram& b, const EquivalenceOptions& opt) {
  if (opt.depth > opt.depth_cap)
    throw Error(ErrorCode::DepthExceeded, "requested depth " + std::to_string(opt.depth) + " exceeds the cap");
  if (!(a.base == b.base)) return NotEquivalent{"different base spaces"};

  bool a_blob = false, b_blob = false, embedded = false;
  BlobDiagram ba, bb;
  try {
    ba = make_blob(a);
    a_blob = validate(ba).ok();
  } catch (const Error&) {
  }
  try {
    bb = make_blob(b);
    b_blob = validate(bb).ok();
  } catch (const Error&) {
  }
  if (a_blob && b_blob) {
    embedded = ba.embedded() && bb.embedded();
    if (opt.invariant_prefilter) {
      if (invariant_J(ba) != invariant_J(bb)) return NotEquivalent{"J differs"};
      if (iota_rho(ba) != iota_rho(bb)) return NotEquivalent{"iota_rho differs"};
    }
  }

  MoveFilter f = embedded ? MoveFilter::embedded() : MoveFilter{};
  f.max_events = std::max(a.events.size(), b.events.size()) + opt.slack_events;

  SearchSide sides[2];
  const StrandDiagram roots[2] = {a.without_theta(), b.without_theta()};
  for (int s = 0; s < 2; ++s) {
    const std::string k = word_key(roots[s]);
    sides[s].seen.emplace(k, SearchSide::Entry{"", {}, roots[s], 0});
    sides[s].frontier.push_back(k);
  }

  auto build = [&](const std::string& meet) {
    MoveTrace trace;
    trace.start = a;
    trace.end = b;
    trace.moves = path_from_root(sides[0], meet);
    // Walk from the meeting word back to b, inverting side-b moves.
    std::string cur = meet;
    while (sides[1].seen.at(cur).depth > 0) {
      const auto& e = sides[1].seen.at(cur);
      const auto& parent = sides[1].seen.at(e.parent);
      trace.moves.push_back(inverse_move(parent.word, e.move));
      cur = e.parent;
    }
    return trace;
  };

  const std::string ka = word_key(roots[0]);
  if (sides[1].seen.count(ka)) return build(ka);

  int depth[2] = {0, 0};
  std::size_t explored = 0;
  while (depth[0] + depth[1] < opt.depth) {
    const int s = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
    if (sides[s].frontier.empty()) break;
    std::sort(sides[s].frontier.begin(), sides[s].frontier.end());
    std::vector<std::string> next;
    std::optional<std::string> meet;
    for (const auto& key : sides[s].frontier) {
      const StrandDiagram word = sides[s].seen.at(key).word;
      for (const auto& m : enumerate_moves(word, f)) {
        StrandDiagram child = apply_move(word, m, f);
        std::string ck = word_key(child);
        if (sides[s].seen.count(ck)) continue;
        ++explored;
        sides[s].seen.emplace(ck, SearchSide::Entry{key, m, std::move(child), depth[s] + 1});
        next.push_back(ck);
        if (!meet && sides[1 - s].seen.count(ck)) meet = ck;
      }
    }
    ++depth[s];
    sides[s].frontier = std::move(next);
    if (meet) return build(*meet);
  }
  return Inconclusive{opt.depth, explored};
}

}  // namespace modblob
