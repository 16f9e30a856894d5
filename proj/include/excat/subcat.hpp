#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "excat/module.hpp"

namespace excat {

enum class ExactStructure { Split, Induced };

enum class Tri { Yes, No, Unknown };

struct SearchBounds {
  int multiplicity_bound = 2;  // generator multiplicity in quantifier scans
  int kernel_dim_bound = 0;    // 0 = auto (4 x dim of the base object)
  long coeff_budget = 600;     // cap on exhaustive coefficient enumeration
};

struct ConflationCertificate {
  bool conflation = false;
  std::string reason;  // why not, or which checks passed
  // Filled for genuine conflations under the split structure.
  std::optional<ModuleMap> retraction;  // r with r i = id
  std::optional<ModuleMap> section;     // s with p s = id
};

struct InflationResult {
  bool yes = false;
  std::string reason;
  std::optional<ModuleMap> complement;  // witness conflation partner (the deflation/inflation)
};

struct MembershipWitness {
  std::vector<int> mults;
  ModuleMap iso;  // (+) gens^mults -> x
};

struct ResolvingReport {
  bool r1 = false;
  std::string r1_detail;
  bool r2 = false;  // verified up to bound when true
  std::string r2_detail;
  int bound = 0;
};

struct MaxNonnegReport {
  bool verified = false;  // VerifiedUpToBound
  int bound = 0;
  std::string scheme;     // coefficient enumeration used
  std::string counterexample;  // which map violates which implication
};

// An additive subcategory add(T) of mod(alg) carrying the split or the
// induced (fully exact) structure.
class ExactSubcat {
 public:
  ExactSubcat(AlgebraPtr alg, std::vector<Module> generators, std::vector<std::string> names,
              ExactStructure structure, SearchBounds bounds = {});

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Module>& generators() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  ExactStructure structure() const { return structure_; }
  const SearchBounds& bounds() const { return bounds_; }
  const DirectSum& tilting_sum() const { return T_; }  // T = (+) generators

  std::optional<std::vector<int>> membership(const Module& x) const;
  std::optional<MembershipWitness> membership_witness(const Module& x) const;
  bool contains(const Module& x) const { return membership(x).has_value(); }

  ConflationCertificate is_conflation(const ModuleMap& i, const ModuleMap& p) const;
  bool is_mono(const ModuleMap& f) const;
  bool is_epi(const ModuleMap& f) const;
  InflationResult is_inflation(const ModuleMap& f) const;
  InflationResult is_deflation(const ModuleMap& f) const;

  ResolvingReport check_resolving(const ExactSubcat& ambient, int bound = 0) const;
  MaxNonnegReport check_maximally_nonnegative(int bound = 0) const;

  // All nonzero direct sums of generators with multiplicities <= bound.
  std::vector<std::vector<int>> bounded_multiplicities(int bound) const;
  DirectSum sum_of(const std::vector<int>& mults) const;

  // Deterministic enumeration of Hom(x, y): exhaustive over F_p within
  // budget, otherwise coefficients in {-1,0,1}. Returns the scheme used.
  std::string for_each_bounded_map(const Module& x, const Module& y,
                                   const std::function<bool(const ModuleMap&)>& visit) const;

  struct DeflationOnto {
    ModuleMap p;       // B ->> A, an E-deflation
    Module kernel_mod; // iso class of the kernel
  };
  // Nonsplit E-deflations onto a (Induced structure): middle terms built
  // from ext1 classes with kernels of dimension <= kernel_dim_bound.
  std::vector<DeflationOnto> enumerate_deflations_onto(const Module& a, int kernel_dim_bound = 0) const;

  // True when ext1(g, g') = 0 for all generators, i.e. every conflation
  // of the induced structure splits.
  bool all_conflations_split() const;

  // Bounded verification that this subcategory is resolving inside the
  // ambient abelian module category: the trace map onto the regular
  // module is surjective and surjections between bounded sums of
  // generators have kernels in the subcategory. Cached.
  bool resolving_in_module_category() const;

  const ExactSubcat& opposite() const;

 private:
  AlgebraPtr alg_;
  std::vector<Module> gens_;
  std::vector<std::string> names_;
  ExactStructure structure_;
  SearchBounds bounds_;
  DirectSum T_;
  bool dim_vector_feasible(const std::vector<int>& dims) const;
  const std::vector<ModuleMap>& hom_from_T(const Module& x) const;
  const std::vector<ModuleMap>& hom_to_T(const Module& x) const;

  mutable std::shared_ptr<ExactSubcat> opposite_;
  mutable std::optional<bool> all_split_;
  mutable std::optional<bool> resolving_ambient_;
  mutable std::map<std::string, std::optional<std::vector<int>>> membership_cache_;
  mutable std::map<std::string, std::vector<ModuleMap>> hom_from_T_cache_;
  mutable std::map<std::string, std::vector<ModuleMap>> hom_to_T_cache_;
};

}  // namespace excat
