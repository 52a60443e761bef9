#include "gcpack/cell_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gcpack {

namespace {
constexpr double kPi = std::numbers::pi;
}

CellComplex::CellComplex(ComplexSpec spec) {
  // Pass 1: vertex table.
  if (spec.vertices.empty()) violations_.push_back("no vertices declared");
  for (const auto& id : spec.vertices) {
    if (id.empty()) {
      violations_.push_back("empty vertex id");
      continue;
    }
    if (!index_.emplace(id, static_cast<int>(ids_.size())).second) {
      violations_.push_back("duplicate vertex id '" + id + "'");
      continue;
    }
    ids_.push_back(id);
  }

  // Pass 2: faces.
  if (spec.faces.empty()) violations_.push_back("no faces declared");
  for (size_t f = 0; f < spec.faces.size(); ++f) {
    const FaceSpec& face = spec.faces[f];
    const std::string where = "face " + std::to_string(f);
    const int n = static_cast<int>(face.vertices.size());
    if (n < 3)
      violations_.push_back(where + " has " + std::to_string(n) +
                            " vertices; need at least 3");

    std::vector<int> dense;
    dense.reserve(face.vertices.size());
    std::set<std::string> seen;
    bool resolved = true;
    for (const auto& id : face.vertices) {
      if (!seen.insert(id).second)
        violations_.push_back(where + " repeats vertex '" + id + "'");
      auto it = index_.find(id);
      if (it == index_.end()) {
        violations_.push_back(where + " references unknown vertex '" + id +
                              "'");
        resolved = false;
      } else {
        dense.push_back(it->second);
      }
    }

    if (!(std::isfinite(face.Y) && face.Y > (2.0 - n) * kPi &&
          face.Y < 2.0 * kPi)) {
      std::ostringstream msg;
      msg << where << " deficit " << face.Y << " outside ((2-" << n
          << ")*pi, 2*pi)";
      violations_.push_back(msg.str());
    }

    if (resolved && n >= 3 &&
        seen.size() == face.vertices.size()) {
      faces_.push_back(std::move(dense));
      deficits_.push_back(face.Y);
      side_count_ += n;
    }
  }

  // Pass 3: incidence (over the faces that survived pass 2).
  faces_at_vertex_.assign(ids_.size(), {});
  neighbors_.assign(ids_.size(), {});
  for (size_t f = 0; f < faces_.size(); ++f)
    for (int v : faces_[f])
      faces_at_vertex_[v].push_back(static_cast<int>(f));

  std::vector<std::set<int>> nbr(ids_.size());
  for (const auto& face : faces_)
    for (int a : face)
      for (int b : face)
        if (a != b) nbr[a].insert(b);
  for (size_t v = 0; v < ids_.size(); ++v)
    neighbors_[v].assign(nbr[v].begin(), nbr[v].end());

  for (size_t v = 0; v < ids_.size(); ++v)
    if (faces_at_vertex_[v].empty())
      violations_.push_back("vertex '" + ids_[v] + "' lies on no face");
}

int CellComplex::vertex_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw std::out_of_range("unknown vertex id '" + id + "'");
  return it->second;
}

bool CellComplex::has_vertex(const std::string& id) const {
  return index_.count(id) > 0;
}

const std::vector<int>& CellComplex::face_at(int f) const {
  if (f < 0 || f >= face_count())
    throw std::out_of_range("face index " + std::to_string(f) +
                            " out of range");
  return faces_[f];
}

void CellComplex::check_index(int v) const {
  if (v < 0 || v >= vertex_count())
    throw std::out_of_range("vertex index " + std::to_string(v) +
                            " out of range");
}

double CellComplex::face_deficit(int f) const {
  face_at(f);
  return deficits_[f];
}

double CellComplex::face_alpha(int f) const {
  return 2.0 * kPi - face_deficit(f);
}

const std::vector<int>& CellComplex::faces_at(int v) const {
  check_index(v);
  return faces_at_vertex_[v];
}

const std::vector<int>& CellComplex::neighbors(int v) const {
  check_index(v);
  return neighbors_[v];
}

CellComplex::IncidentFaces CellComplex::faces_meeting(
    const std::vector<int>& W) const {
  std::vector<char> in_W(vertex_count(), 0);
  for (int v : W) {
    check_index(v);
    in_W[v] = 1;
  }
  IncidentFaces out;
  for (int f = 0; f < face_count(); ++f) {
    int hits = 0;
    for (int v : faces_[f]) hits += in_W[v];
    if (hits > 0) {
      out.faces.push_back(f);
      out.hits.push_back(hits);
    }
  }
  return out;
}

Targets Targets::from_map(const CellComplex& complex,
                          const std::map<std::string, double>& values) {
  Targets t;
  t.L_hat.resize(complex.vertex_count());
  std::vector<char> covered(complex.vertex_count(), 0);
  for (const auto& [id, value] : values) {
    const int v = complex.vertex_index(id);
    if (!(std::isfinite(value) && value > 0))
      throw std::domain_error("target for '" + id +
                              "' must be finite and > 0");
    t.L_hat[v] = value;
    covered[v] = 1;
  }
  for (int v = 0; v < complex.vertex_count(); ++v)
    if (!covered[v])
      throw std::out_of_range("missing target for vertex '" +
                              complex.vertex_id(v) + "'");
  return t;
}

}  // namespace gcpack
