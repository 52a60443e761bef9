#include "gcpack/svg.hpp"

#include "gcpack/io.hpp"

namespace gcpack {

namespace {

const char* stroke_for(const LayoutCircle& c) {
  if (c.dual) return "#c0392b";
  switch (c.kind) {
    case CircleKind::Circle:
      return "#2980b9";
    case CircleKind::Horocycle:
      return "#27ae60";
    case CircleKind::Hypercycle:
      return "#8e44ad";
  }
  return "#000000";
}

}  // namespace

std::string face_svg(const std::vector<LayoutCircle>& circles) {
  std::string out;
  out +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" "
      "viewBox=\"0 0 500 500\">\n";
  out += "  <rect width=\"500\" height=\"500\" fill=\"#ffffff\"/>\n";
  out +=
      "  <path d=\"M 500 250 A 250 250 0 1 1 0 250 A 250 250 0 1 1 500 250 "
      "Z\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  for (const LayoutCircle& c : circles) {
    const double cx = 250.0 + 250.0 * c.cx;
    const double cy = 250.0 - 250.0 * c.cy;
    const double r = 250.0 * c.radius;
    out += "  <circle cx=\"" + format_double(cx) + "\" cy=\"" +
           format_double(cy) + "\" r=\"" + format_double(r) +
           "\" fill=\"none\" stroke=\"" + stroke_for(c) +
           "\" stroke-width=\"1.5\"";
    if (c.dual) out += " stroke-dasharray=\"6 4\"";
    out += "/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace gcpack
