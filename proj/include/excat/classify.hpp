#pragma once

#include "excat/complex.hpp"
#include "excat/subcat.hpp"

namespace excat {

enum class AcyclicityKind { SplitAcyclic, EAcyclic, LeftHom, LeftExt, RightHom, RightExt };

struct Verdict {
  Tri value = Tri::No;
  std::string detail;
};

struct DegreeReport {
  Verdict split_acyclic;
  Verdict e_acyclic;
  Verdict left_hom;
  Verdict left_ext;
  Verdict right_hom;
  Verdict right_ext;
};

struct AcyclicityReport {
  std::map<int, DegreeReport> degrees;
  // split => E-acyclic => left/right Ext, split => left/right Hom => Ext
  bool lattice_consistent() const;
};

Verdict classify_degree(const Complex& x, const ExactSubcat& e, int n, AcyclicityKind kind);
DegreeReport classify_all_kinds(const Complex& x, const ExactSubcat& e, int n);
AcyclicityReport classify(const Complex& x, const ExactSubcat& e);

// Pointwise exactness at degree n in the ambient abelian module category.
bool exact_at_ambient(const Complex& x, int n);

// E-acyclic in every degree / E-quasi-isomorphism (cone is E-acyclic).
bool is_e_acyclic_complex(const Complex& x, const ExactSubcat& e);
bool is_quasi_iso(const ChainMap& f, const ExactSubcat& e);

// Homology module at degree n (ambient abelian category).
Module homology(const Complex& x, int n);

// Produces, for a test map a : A -> X^n with d^n a = 0, an E-deflation
// p : B ->> A and h : B -> X^{n-1} with a p = d^{n-1} h. Requires the
// complex to be left Ext-acyclic at n with a determinate witness; throws
// std::runtime_error("cannot lift: Tier-C unknown") otherwise.
class DeflationWitnessProvider {
 public:
  DeflationWitnessProvider(const Complex& x, const ExactSubcat& e);

  struct Factorization {
    ModuleMap deflation;  // p : B ->> A
    ModuleMap through;    // h : B -> X^{n-1}
  };
  Factorization factor(int n, const ModuleMap& a) const;

  // The witness strategy available at a degree (diagnostics).
  std::string mode(int n) const;

 private:
  struct DegreeData;
  const DegreeData& degree_data(int n) const;

  Complex x_;
  const ExactSubcat& e_;
  mutable std::map<int, std::shared_ptr<DegreeData>> cache_;
};

struct HyperHomResult {
  int dim = 0;
  bool window_truncated = false;
  std::string path;  // which computation route was used
};
// dim Hom_{D^b}(x, y) in the ambient bounded derived category.
HyperHomResult hyper_hom(const Complex& x, const Complex& y, int window = 8);

// Always computes through the degreewise-projective replacement; the fast
// paths above must agree with it wherever both apply.
HyperHomResult hyper_hom_via_replacement(const Complex& x, const Complex& y, int window = 8);

}  // namespace excat
