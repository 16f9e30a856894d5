#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "excat/matrix.hpp"

namespace excat {

struct Arrow {
  std::string name;
  int source;
  int target;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;
  bool is_acyclic() const;
  Quiver opposite() const;
};

// A path stores its arrows in application order: {a, b} means traverse a
// first, then b, so it requires target(a) == source(b).
struct BasisPath {
  int source;
  int target;
  std::vector<int> arrows;
};

struct RelationTerm {
  mpq_class coeff;
  std::vector<int> arrows;  // application order, length >= 2
};

struct Relation {
  std::vector<RelationTerm> terms;
};

// Finite-dimensional quotient of a path algebra by admissible relations,
// with an explicit residue-path basis and multiplication table.
class PathAlgebra : public std::enable_shared_from_this<PathAlgebra> {
 public:
  // Throws std::invalid_argument on non-parallel or too-short relation
  // terms, and std::runtime_error("possibly infinite-dimensional") when a
  // nonzero residue path of length max_path_length survives.
  static std::shared_ptr<const PathAlgebra> build(const Quiver& q, const std::vector<Relation>& relations,
                                                  const Field& field, int max_path_length = 12);

  const Quiver& quiver() const { return quiver_; }
  const Field& field() const { return field_; }
  const std::vector<Relation>& relations() const { return relations_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int num_vertices() const { return static_cast<int>(quiver_.vertices.size()); }
  int num_arrows() const { return static_cast<int>(quiver_.arrows.size()); }
  const std::vector<BasisPath>& basis() const { return basis_; }

  // Index of the length-0 path at a vertex.
  int idempotent_index(int vertex) const { return idempotent_index_[vertex]; }

  // Coefficient vectors over the basis.
  std::vector<mpq_class> multiply(int i, int j) const;  // basis_i followed by basis_j
  std::vector<mpq_class> reduce_path(const std::vector<int>& arrows) const;

  bool is_hereditary() const { return relations_.empty() && quiver_.is_acyclic(); }

  std::shared_ptr<const PathAlgebra> opposite() const;

  std::string path_name(int basis_index) const;

 private:
  PathAlgebra() = default;

  Quiver quiver_;
  Field field_ = Field::rationals();
  std::vector<Relation> relations_;
  int max_path_length_ = 0;
  std::vector<BasisPath> basis_;
  std::vector<int> idempotent_index_;
  std::map<std::vector<int>, std::vector<mpq_class>> reduction_;  // any path (<= L) -> basis coords
  mutable std::shared_ptr<const PathAlgebra> opposite_;
};

using AlgebraPtr = std::shared_ptr<const PathAlgebra>;

}  // namespace excat
