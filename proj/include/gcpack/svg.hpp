#pragma once

#include <string>
#include <vector>

#include "gcpack/face_kernel.hpp"

namespace gcpack {

// 500x500 picture of a laid-out face in the Poincare disk (disk center at
// (250,250), radius 250). The disk boundary is drawn as a path so that the
// <circle> elements are exactly the layout's circles: the dual circle
// (dashed) followed by the packing circles, color-coded by kind.
std::string face_svg(const std::vector<LayoutCircle>& circles);

}  // namespace gcpack
