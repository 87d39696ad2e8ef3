#pragma once

// SVG 1.1 pictures of event words: theta runs left to right, u bottom to top.

#include <string>

#include "modblob/diagram.hpp"

namespace modblob {

struct RenderSpec {
  double column = 60;   // width of one event column
  double pitch = 28;    // vertical distance between strands
  double margin = 30;
  double stroke = 2;
  bool shade_faces = true;       // blob input only
  bool label_crossings = true;   // I..IV, needs orientation
  bool label_tangencies = true;  // concave tangencies, needs orientation
};

std::string render_svg(const StrandDiagram& doodle, const RenderSpec& spec = {});
std::string render_svg(const BlobDiagram& blob, const RenderSpec& spec = {});

}  // namespace modblob
