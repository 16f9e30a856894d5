#pragma once

#include <map>
#include <optional>

#include "excat/module.hpp"

namespace excat {

// Bounded cochain complex ... -> X^n -> X^{n+1} -> ... over mod(alg).
// Terms outside the stored window are zero.
class Complex {
 public:
  Complex() = default;  // must be assigned before use
  explicit Complex(AlgebraPtr alg) : alg_(std::move(alg)) {}
  static Complex stalk(const Module& m, int degree);

  const AlgebraPtr& algebra() const { return alg_; }
  void set_term(int n, Module m);
  void set_diff(int n, ModuleMap d);  // X^n -> X^{n+1}

  Module term(int n) const;
  ModuleMap diff(int n) const;
  bool has_term(int n) const;

  int lo() const;
  int hi() const;
  bool is_zero_complex() const;
  int total_dim() const;

  void validate() const;  // shapes and d o d = 0

 private:
  AlgebraPtr alg_;
  std::map<int, Module> terms_;
  std::map<int, ModuleMap> diffs_;
};

struct ChainMap {
  Complex source;
  Complex target;
  std::map<int, ModuleMap> comps;

  ModuleMap comp(int n) const;
  void set_comp(int n, ModuleMap f);
  void validate() const;  // commutes with differentials
  bool is_zero_map() const;
};

ChainMap chain_identity(const Complex& x);
ChainMap chain_zero(const Complex& x, const Complex& y);
ChainMap chain_compose(const ChainMap& g, const ChainMap& f);
ChainMap chain_add(const ChainMap& f, const ChainMap& g);
ChainMap chain_sub(const ChainMap& f, const ChainMap& g);

Complex shift(const Complex& x, int k);  // (shift(x,k))^n = x^{n+k}, d negated k times
ChainMap shift(const ChainMap& f, int k);

struct ConeData {
  Complex cone;               // degree n term: X^{n+1} (+) Y^n
  ChainMap incl_target;       // Y -> cone
  ChainMap proj_shift_source; // cone -> shift(X, 1)
};
ConeData cone(const ChainMap& f);
Complex cylinder(const ChainMap& f);    // cone(shift^{-1} cone(f) -> X)
Complex cocylinder(const ChainMap& f);  // cone(shift^{-1} Y -> shift^{-1} cone(f))

struct ComplexSum {
  Complex total;
  std::vector<ChainMap> inclusions;
  std::vector<ChainMap> projections;
};
ComplexSum complex_direct_sum(const std::vector<Complex>& parts);

// Homotopy h with f^n = d_Y^{n-1} h^n + h^{n+1} d_X^n, if one exists.
std::optional<std::map<int, ModuleMap>> is_null_homotopic(const ChainMap& f);

// Basis of the space of chain maps x -> y (degreewise commuting solutions).
std::vector<ChainMap> chain_map_basis(const Complex& x, const Complex& y);

bool is_homotopy_equivalence_pair(const ChainMap& f, const ChainMap& g);  // gf ~ id and fg ~ id

// Strip contractible direct summands (Gaussian elimination on invertible
// differential blocks between indecomposable summands).
Complex minimize(const Complex& x);

// Transport to the opposite algebra: degrees are negated and all data
// dualized; contravariant on maps.
Complex opposite_complex(const Complex& x);

}  // namespace excat
