#include "modblob/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "modblob/invariants.hpp"

namespace modblob {

namespace {

struct Pt {
  double x, y;
};
using Poly = std::vector<Pt>;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string points(const Poly& p) {
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += ' ';
    s += num(p[k].x) + "," + num(p[k].y);
  }
  return s;
}

std::string fill_for(int m) {
  const int level = std::clamp(235 - 45 * (m - 1), 60, 235);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, std::min(255, level + 20));
  return buf;
}

// Cubic from a vertical-tangent tip to a horizontal end point.
Poly tip_curve(Pt tip, Pt end, int samples = 16) {
  const Pt c1{tip.x, end.y};
  const Pt c2{(tip.x + end.x) / 2, end.y};
  Poly out;
  for (int k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / samples, s = 1 - t;
    out.push_back({s * s * s * tip.x + 3 * s * s * t * c1.x + 3 * s * t * t * c2.x + t * t * t * end.x,
                   s * s * s * tip.y + 3 * s * s * t * c1.y + 3 * s * t * t * c2.y + t * t * t * end.y});
  }
  return out;
}

Poly reversed(Poly p) {
  std::reverse(p.begin(), p.end());
  return p;
}

Poly join(const Poly& a, const Poly& b) {
  Poly out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class Painter {
 public:
  Painter(const StrandDiagram& d, const FaceMap* faces, const RenderSpec& spec) : d_(d), faces_(faces), spec_(spec) {
    const Replay r = replay(d);
    stack_.resize(r.slabs.size());
    for (std::size_t k = 0; k < r.slabs.size(); ++k) {
      stack_[k] = static_cast<int>(r.slabs[k].size());
      max_stack_ = std::max(max_stack_, stack_[k]);
    }
    width_ = 2 * spec.margin + spec.column * (d.events.size() + 1);
    height_ = 2 * spec.margin + spec.pitch * (max_stack_ + 1);
  }

  std::string run() {
    collect_labels();
    for (std::size_t k = 0; k <= d_.events.size(); ++k) slab(k);
    for (std::size_t k = 0; k < d_.events.size(); ++k) event(k);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_) << "\" height=\""
       << num(height_) << "\" viewBox=\"0 0 " << num(width_) << " " << num(height_) << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
       << "\" fill=\"white\"/>\n";
    os << "<g id=\"faces\" stroke=\"none\">\n" << faces_svg_.str() << "</g>\n";
    os << "<g id=\"strands\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(spec_.stroke)
       << "\" stroke-linejoin=\"round\">\n"
       << strands_svg_.str() << "</g>\n";
    os << "<g id=\"labels\" font-family=\"serif\" font-size=\"12\" text-anchor=\"middle\">\n"
       << labels_svg_.str() << "</g>\n";
    os << "</svg>\n";
    return os.str();
  }

 private:
  double y(int i) const { return height_ - spec_.margin - spec_.pitch * (i + 1); }
  double slab_x0(std::size_t k) const { return spec_.margin + spec_.column * k; }
  double slab_x1(std::size_t k) const { return slab_x0(k) + spec_.column / 2; }
  double bottom() const { return height_ - spec_.margin / 2; }
  double top() const { return spec_.margin / 2; }

  int face(std::size_t slab, int j) const {
    if (!faces_ || slab >= faces_->size() || j < 0 || j >= static_cast<int>((*faces_)[slab].size())) return 0;
    return (*faces_)[slab][j];
  }

  // `cover` paints empty faces white over an earlier band.
  void shade(const Poly& p, int m, bool cover = false) {
    if (!faces_ || !spec_.shade_faces || p.size() < 3) return;
    if (m <= 0 && !cover) return;
    faces_svg_ << "<polygon points=\"" << points(p) << "\" fill=\"" << (m > 0 ? fill_for(m) : "white") << "\"/>\n";
  }

  void stroke(const Poly& p) { strands_svg_ << "<polyline points=\"" << points(p) << "\"/>\n"; }

  void label(Pt at, const std::string& text) {
    labels_svg_ << "<text x=\"" << num(at.x) << "\" y=\"" << num(at.y) << "\">" << text << "</text>\n";
  }

  // Lower / upper boundary of face j in a slab of n strands, as a level.
  double lower(int j) const { return j == 0 ? bottom() : y(j - 1); }
  double upper(int j, int n) const { return j == n ? top() : y(j); }

  void slab(std::size_t k) {
    const int n = stack_[k];
    const double x0 = slab_x0(k), x1 = slab_x1(k);
    for (int j = 0; j <= n; ++j)
      shade({{x0, lower(j)}, {x1, lower(j)}, {x1, upper(j, n)}, {x0, upper(j, n)}}, face(k, j));
    for (int i = 0; i < n; ++i) stroke({{x0, y(i)}, {x1, y(i)}});
  }

  // Straight band between two levels across an event column.
  void band(double x0, double x1, double lo0, double hi0, double lo1, double hi1, int m) {
    shade({{x0, lo0}, {x1, lo1}, {x1, hi1}, {x0, hi0}}, m);
  }

  void event(std::size_t k) {
    const Event& e = d_.events[k];
    const int s = e.slot;
    const int pre = stack_[k], post = stack_[k + 1];
    const double x0 = slab_x1(k), x1 = slab_x0(k + 1);
    const double xm = (x0 + x1) / 2;

    if (e.kind == EventKind::Cross) {
      for (int j = 0; j <= pre; ++j) {
        if (j == s || j == s + 1 || j == s + 2) continue;
        band(x0, x1, lower(j), upper(j, pre), lower(j), upper(j, pre), face(k, j));
      }
      const Pt mid{xm, (y(s) + y(s + 1)) / 2};
      shade({{x0, lower(s)}, {x1, lower(s)}, {x1, y(s)}, mid, {x0, y(s)}}, face(k, s));
      shade({{x0, y(s)}, mid, {x0, y(s + 1)}}, face(k, s + 1));
      shade({{x1, y(s)}, {x1, y(s + 1)}, mid}, face(k + 1, s + 1));
      shade({{x0, y(s + 1)}, mid, {x1, y(s + 1)}, {x1, upper(s + 2, pre)}, {x0, upper(s + 2, pre)}}, face(k, s + 2));
      for (int i = 0; i < pre; ++i) {
        if (i == s || i == s + 1) continue;
        stroke({{x0, y(i)}, {x1, y(i)}});
      }
      stroke({{x0, y(s)}, mid, {x1, y(s + 1)}});
      stroke({{x0, y(s + 1)}, mid, {x1, y(s)}});
      if (auto it = crossing_labels_.find(k); it != crossing_labels_.end()) label({mid.x, mid.y - 8}, it->second);
      return;
    }

    // Births open to the right, deaths to the left: draw a birth in a local
    // frame and mirror it for deaths.
    const bool birth = e.kind == EventKind::Birth;
    const int n = birth ? pre : post;       // stack without the pair
    const std::size_t wide = birth ? k + 1 : k, narrow = birth ? k : k + 1;
    const double xa = birth ? x0 : x1, xb = birth ? x1 : x0;
    auto X = [&](double t) { return xa + (xb - xa) * t; };

    for (int j = 0; j <= n; ++j) {
      if (j == s) continue;
      const int wj = j < s ? j : j + 2;
      const double lo_w = wj == 0 ? bottom() : y(wj - 1), hi_w = wj == n + 2 ? top() : y(wj);
      band(xa, xb, lower(j), upper(j, n), lo_w, hi_w, face(narrow, j));
    }
    const Pt tip{X(0.4), (y(s) + y(s + 1)) / 2};
    const Poly lo = tip_curve(tip, {xb, y(s)}), hi = tip_curve(tip, {xb, y(s + 1)});
    const double outer_lo = lower(s), outer_hi = upper(s, n);
    const double wide_lo = s == 0 ? bottom() : y(s - 1), wide_hi = s + 2 == n + 2 ? top() : y(s + 2);
    band(xa, xb, outer_lo, outer_hi, wide_lo, wide_hi, face(narrow, s));
    shade(join(lo, reversed(hi)), face(wide, s + 1), face(narrow, s) > 0);
    for (int i = 0; i < n; ++i) stroke({{xa, y(i)}, {xb, y(i < s ? i : i + 2)}});
    stroke(join(reversed(lo), hi));
    if (auto it = tangency_labels_.find(k); it != tangency_labels_.end())
      label({tip.x + (birth ? -10 : 10), tip.y + 4}, it->second);
  }

  void collect_labels() {
    if (!d_.oriented()) return;
    if (spec_.label_tangencies) {
      for (const auto& t : classify_tangencies(d_)) {
        if (t.polarity == Polarity::Plus) tangency_labels_[t.event_index] = "⊕";
        if (t.polarity == Polarity::Minus) tangency_labels_[t.event_index] = "⊖";
      }
    }
    if (spec_.label_crossings) {
      std::vector<CrossingRecord> records;
      if (faces_) {
        BlobDiagram b{d_, *faces_};
        records = classify_crossings_blob(b);
      } else {
        records = classify_crossings_doodle(d_);
      }
      for (const auto& c : records) crossing_labels_[c.event_index] = to_string(c.type);
    }
  }

  const StrandDiagram& d_;
  const FaceMap* faces_;
  const RenderSpec& spec_;
  std::vector<int> stack_;
  int max_stack_ = 0;
  double width_ = 0, height_ = 0;
  std::map<std::size_t, std::string> crossing_labels_, tangency_labels_;
  std::ostringstream faces_svg_, strands_svg_, labels_svg_;
};

}  // namespace

std::string render_svg(const StrandDiagram& doodle, const RenderSpec& spec) {
  return Painter(doodle, nullptr, spec).run();
}

std::string render_svg(const BlobDiagram& blob, const RenderSpec& spec) {
  return Painter(blob.doodle, &blob.faces, spec).run();
}

}  // namespace modblob
