#pragma once

#include <optional>
#include <string>
#include <vector>

#include "excat/quiver.hpp"

namespace excat {

// Finite-dimensional representation of a path algebra: one vector space
// per vertex, one matrix per arrow (source space -> target space).
struct Module {
  AlgebraPtr alg;
  std::vector<int> dims;
  std::vector<Matrix> arrow_maps;

  static Module zero(const AlgebraPtr& a);
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  // Relations evaluate to zero and dimensions are consistent.
  void validate() const;
};

struct ModuleMap {
  Module source;
  Module target;
  std::vector<Matrix> comps;  // one per vertex

  static ModuleMap zero(const Module& src, const Module& tgt);
  static ModuleMap identity(const Module& m);
  void validate() const;  // intertwining with every arrow
  bool is_zero_map() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_invertible() const;
  ModuleMap inverse() const;  // requires is_invertible
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap add(const ModuleMap& f, const ModuleMap& g);
ModuleMap sub(const ModuleMap& f, const ModuleMap& g);
ModuleMap scale(const mpq_class& c, const ModuleMap& f);
bool maps_equal(const ModuleMap& f, const ModuleMap& g);

// Path action: the composite of arrow maps along the path (empty path at
// vertex v is the identity of the vertex space).
Matrix act_path(const Module& m, const std::vector<int>& arrows, int source_vertex);

struct DirectSum {
  Module total;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const AlgebraPtr& alg, const std::vector<Module>& parts);
ModuleMap direct_sum_map(const DirectSum& src, const DirectSum& tgt,
                         const std::vector<std::vector<ModuleMap>>& blocks);  // blocks[i][j] : src_j -> tgt_i

// Basis of the intertwiner space Hom(x, y).
std::vector<ModuleMap> hom_basis(const Module& x, const Module& y);
int hom_dim(const Module& x, const Module& y);

// Flattened coordinates of a map inside a hom space.
Matrix flatten_map(const ModuleMap& f);
ModuleMap map_from_flat(const Module& src, const Module& tgt, const Matrix& flat);
std::optional<Matrix> coords_in_basis(const std::vector<ModuleMap>& basis, const ModuleMap& f);
ModuleMap combine_basis(const std::vector<ModuleMap>& basis, const Matrix& coords);

struct SubquotientData {
  Module mod;
  ModuleMap map;  // kernel/image: inclusion into the ambient; cokernel: projection from it
};
SubquotientData kernel(const ModuleMap& f);
SubquotientData cokernel(const ModuleMap& f);
struct ImageData {
  Module mod;
  ModuleMap inclusion;       // image -> target
  ModuleMap corestriction;   // source -> image
};
ImageData image(const ModuleMap& f);

// h with g∘h = f (factoring f through g), if it exists as a module map.
std::optional<ModuleMap> lift_through(const ModuleMap& g, const ModuleMap& f);
// h with h∘g = f (extending f along g), if it exists as a module map.
std::optional<ModuleMap> extend_through(const ModuleMap& g, const ModuleMap& f);
// For g injective / surjective these are exact per-vertex solves.
ModuleMap factor_through_mono(const ModuleMap& incl, const ModuleMap& f);
ModuleMap factor_through_epi(const ModuleMap& proj, const ModuleMap& f);

struct PullbackData {
  Module mod;
  ModuleMap to_a;
  ModuleMap to_b;
};
PullbackData pullback(const ModuleMap& f, const ModuleMap& g);  // f: A->C, g: B->C
// Map T -> pullback induced by u: T->A, v: T->B with f u = g v.
ModuleMap into_pullback(const PullbackData& pb, const ModuleMap& u, const ModuleMap& v);

struct PushoutData {
  Module mod;
  ModuleMap from_a;
  ModuleMap from_b;
};
PushoutData pushout(const ModuleMap& f, const ModuleMap& g);  // f: C->A, g: C->B

// Standard modules.
Module simple_module(const AlgebraPtr& alg, int vertex);
Module indecomposable_projective(const AlgebraPtr& alg, int vertex);
Module indecomposable_injective(const AlgebraPtr& alg, int vertex);
Module regular_module(const AlgebraPtr& alg);  // direct sum of the P(v)

// Duality D = Hom_k(-, k): mod A  <->  mod A^op.
Module dual_module(const Module& m);
ModuleMap dual_map(const ModuleMap& f);

struct CoverData {
  Module proj;
  ModuleMap onto;  // proj ->> m
};
CoverData projective_cover(const Module& m);

struct ProjectiveResolution {
  // terms[0] = P^0, terms[k] = P^{-k}; diffs[k] : P^{-k-1} -> P^{-k};
  // augmentation : P^0 ->> m. finite == true when the resolution stops
  // (last kernel zero) at or before the requested length.
  std::vector<Module> terms;
  std::vector<ModuleMap> diffs;
  ModuleMap augmentation;
  bool finite = false;
};
ProjectiveResolution projective_resolution(const Module& m, int length);

// dim Ext^k(x, y) computed from a projective resolution of x.
int ext_dim(const Module& x, const Module& y, int k);

struct Extension {
  Module middle;
  ModuleMap incl;  // y >-> middle
  ModuleMap proj;  // middle ->> x
};
struct Ext1Data {
  int dim;
  std::vector<Extension> basis;
};
Ext1Data ext1(const Module& x, const Module& y);

// Realize a linear combination of the ext1 cocycle classes as an extension.
struct Ext1Machine {
  Module x, y;
  CoverData cover;                    // P0 ->> x
  SubquotientData omega;              // ker(P0 ->> x) with inclusion
  std::vector<ModuleMap> cocycles;    // maps omega -> y representing a basis of Ext^1
  Extension realize(const Matrix& coeffs) const;  // coeffs: |cocycles| x 1
};
Ext1Machine ext1_machine(const Module& x, const Module& y);

struct Decomposition {
  std::vector<Module> summands;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};
// Krull-Schmidt decomposition via Fitting's lemma. Throws
// std::runtime_error("splitting field insufficient") when splitting
// stalls over Q.
Decomposition decompose(const Module& m);

bool is_indecomposable(const Module& m);
std::optional<ModuleMap> find_isomorphism(const Module& x, const Module& y);
bool is_isomorphic(const Module& x, const Module& y);

// Radical (sum of images of all arrow maps) and top dimensions.
std::vector<int> radical_dims(const Module& m);
std::vector<int> top_dims(const Module& m);

// Transport a module to the opposite algebra (contravariant, via duality).
Module opposite_module(const Module& m);
ModuleMap opposite_map(const ModuleMap& f);

// Stable textual key of the representation data (dims + arrow matrices),
// used for memoization.
std::string module_signature(const Module& m);

}  // namespace excat
