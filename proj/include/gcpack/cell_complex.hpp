#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace gcpack {

// Raw description of one polygonal face: the vertex ids on its boundary in
// cyclic order, and the cone-angle deficit Y carried by the face.
struct FaceSpec {
  std::vector<std::string> vertices;
  double Y = 0;
};

// Raw description of a polygonal cell complex, as it comes out of a file.
struct ComplexSpec {
  std::vector<std::string> vertices;
  std::vector<FaceSpec> faces;
};

// Validated cell complex with dense integer indexing. Construction checks all
// structural invariants and reports every breach in violations(); the derived
// accessors may only be used when valid().
//
// Invariants: vertex ids unique and non-empty; at least one face; every face
// has >= 3 distinct declared vertices; every vertex lies on >= 1 face; every
// deficit satisfies (2 - N(f))*pi < Y < 2*pi (equivalently the dual angle
// 2*pi - Y lies in (0, N(f)*pi)).
class CellComplex {
 public:
  explicit CellComplex(ComplexSpec spec);

  bool valid() const { return violations_.empty(); }
  const std::vector<std::string>& violations() const { return violations_; }

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  // Total number of face sides, counting a vertex pair once per shared face.
  int side_count() const { return side_count_; }

  const std::string& vertex_id(int v) const { return ids_.at(v); }
  const std::vector<std::string>& vertex_ids() const { return ids_; }
  // Dense index of an id; throws std::out_of_range for unknown ids.
  int vertex_index(const std::string& id) const;
  bool has_vertex(const std::string& id) const;

  int face_size(int f) const { return static_cast<int>(face_at(f).size()); }
  double face_deficit(int f) const;
  // Angle available at the face's dual center, 2*pi - Y.
  double face_alpha(int f) const;
  const std::vector<int>& face_vertices(int f) const { return face_at(f); }

  // Faces incident to vertex v, ascending.
  const std::vector<int>& faces_at(int v) const;
  // Vertices sharing at least one face with v (v excluded), ascending.
  const std::vector<int>& neighbors(int v) const;

  // For a vertex subset W: the incident faces F_W (ascending) and, aligned
  // with them, the count of W-vertices on each face.
  struct IncidentFaces {
    std::vector<int> faces;
    std::vector<int> hits;
  };
  IncidentFaces faces_meeting(const std::vector<int>& W) const;

 private:
  const std::vector<int>& face_at(int f) const;
  void check_index(int v) const;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> faces_;
  std::vector<double> deficits_;
  std::vector<std::vector<int>> faces_at_vertex_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::string> violations_;
  int side_count_ = 0;
};

// Per-vertex positive target curvatures, densely indexed against a complex.
struct Targets {
  Eigen::VectorXd L_hat;

  // Builds from an id -> value map; requires full coverage and strictly
  // positive finite values (throws std::domain_error / std::out_of_range).
  static Targets from_map(const CellComplex& complex,
                          const std::map<std::string, double>& values);
};

}  // namespace gcpack
