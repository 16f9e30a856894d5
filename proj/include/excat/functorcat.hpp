#pragma once

#include "excat/complex.hpp"
#include "excat/subcat.hpp"

namespace excat {

// Finitely presented functor on E, presented as coker Hom(-, pres) for a
// morphism pres : M -> N between objects of E.
struct FpFunctor {
  ModuleMap pres;

  const Module& m() const { return pres.source; }
  const Module& n() const { return pres.target; }
  static FpFunctor representable(const Module& m);  // presentation 0 -> m
};

// Value of the functor at an object: dimension plus class representatives
// (maps a -> N whose cokernel classes form a basis).
struct Evaluation {
  int dim = 0;
  std::vector<ModuleMap> reps;
};
Evaluation evaluate(const FpFunctor& f, const Module& a);
// Coordinates of the class [x] (x : a -> N) in the evaluation basis.
Matrix class_coords(const FpFunctor& f, const Evaluation& ev, const ModuleMap& x);
bool class_is_zero(const FpFunctor& f, const ModuleMap& x);

// Morphism of functors given on presentations: n_comp o f = g o m_comp.
struct FunctorMap {
  FpFunctor source;
  FpFunctor target;
  ModuleMap n_comp;
  ModuleMap m_comp;
  void validate() const;
};

FunctorMap functor_identity(const FpFunctor& f);
FunctorMap functor_compose(const FunctorMap& b, const FunctorMap& a);
// All functor maps F -> G: ker(G(N_F) -> G(M_F)) realized on presentations.
std::vector<FunctorMap> functor_hom_basis(const FpFunctor& f, const FpFunctor& g);
bool functor_map_is_zero(const FunctorMap& a);
// Matrix of the induced map F(a) -> G(a) in the evaluation bases.
Matrix evaluate_map(const FunctorMap& alpha, const Module& a, const Evaluation& eva, const Evaluation& evb);

struct FunctorIso {
  FunctorMap fwd;  // F -> G
  FunctorMap bwd;  // G -> F, mutually inverse
};
std::optional<FunctorIso> find_functor_isomorphism(const FpFunctor& f, const FpFunctor& g, const ExactSubcat& e);

struct EffaceableResult {
  Tri value = Tri::No;
  std::string detail;
};
EffaceableResult is_effaceable(const FpFunctor& f, const ExactSubcat& e);

struct FractionResult {
  Tri invertible = Tri::No;
  EffaceableResult kernel_side;
  EffaceableResult cokernel_side;
};
FractionResult fraction_invertible(const FunctorMap& alpha, const ExactSubcat& e);

// ---------------------------------------------------------------------------
// Transport along mod E  ~  mod End(T)^op.

struct GammaModule {
  int dim = 0;
  std::vector<Matrix> action;  // one matrix per Gamma basis element
};

class GammaAlgebra {
 public:
  explicit GammaAlgebra(const ExactSubcat& e);

  int dim() const { return static_cast<int>(basis_endos_.size()); }
  const ExactSubcat& subcat() const { return *e_; }
  // Structure constants: basis_i * basis_j (the opposite-composition product).
  const std::vector<std::vector<std::vector<mpq_class>>>& table() const { return table_; }
  const std::vector<mpq_class>& identity_coords() const { return identity_; }

  GammaModule transport(const FpFunctor& f) const;   // F |-> F(T)
  GammaModule regular_module() const;                // Gamma as a left module over itself

  // Linear algebra over Gamma.
  std::vector<Matrix> module_hom_basis(const GammaModule& v, const GammaModule& w) const;
  bool is_projective(const GammaModule& v) const;
  // pd(v) <= depth? Yes/No decided via syzygies with projectivity stops;
  // Unknown when the depth is exhausted.
  Tri projective_dimension_at_most(const GammaModule& v, int depth, int* out_pd = nullptr) const;
  void validate() const;  // associativity, unit laws

 private:
  GammaModule syzygy(const GammaModule& v) const;
  const ExactSubcat* e_;
  std::vector<ModuleMap> basis_endos_;  // endomorphisms of T
  std::vector<std::vector<std::vector<mpq_class>>> table_;
  std::vector<mpq_class> identity_;
};

// ---------------------------------------------------------------------------
// Membership in the completions.

enum class CompletionClass { R, Rb, Rn, Qlcat };

struct CompletionQuery {
  CompletionClass cls = CompletionClass::Rb;
  int n = 1;       // for Rn
  int depth = 8;   // resolution depth budget
};

struct CompletionResult {
  Tri member = Tri::Unknown;
  int depth_reached = 0;
  int resolution_length = -1;  // when a bounded resolution was found
  bool syzygy_cycle = false;   // periodicity detected while extending
  std::string note;
  Complex resolution;          // the constructed complex (degrees <= 0)
};

CompletionResult membership_completion(const FpFunctor& f, const CompletionQuery& q, const ExactSubcat& e);

// Canonical weak kernel in add(T): the pruned trace cover of the ambient
// kernel module. Every generator map killed by d factors through it.
struct WeakKernelData {
  Module cover;
  ModuleMap map;  // cover -> source(d), with d o map = 0
};
WeakKernelData weak_kernel(const ExactSubcat& e, const ModuleMap& d);

}  // namespace excat
