#pragma once

#include <random>

#include "excat/classify.hpp"
#include "excat/complex.hpp"
#include "excat/subcat.hpp"

namespace excat::testutil {

inline AlgebraPtr a2_algebra(const Field& F = Field::rationals()) {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {Arrow{"a", 1, 0}};
  return PathAlgebra::build(q, {}, F);
}

inline AlgebraPtr dual_numbers_algebra(const Field& F = Field::rationals()) {
  Quiver q;
  q.vertices = {"x"};
  q.arrows = {Arrow{"t", 0, 0}};
  Relation r;
  r.terms.push_back(RelationTerm{mpq_class(1), {0, 0}});
  return PathAlgebra::build(q, {r}, F);
}

struct A2Data {
  AlgebraPtr alg;
  Module P1, P2, I2;
};

inline A2Data a2_data(const Field& F = Field::rationals()) {
  A2Data d;
  d.alg = a2_algebra(F);
  d.P1 = indecomposable_projective(d.alg, 0);
  d.P2 = indecomposable_projective(d.alg, 1);
  d.I2 = indecomposable_injective(d.alg, 1);
  return d;
}

inline SearchBounds lean_bounds() {
  SearchBounds b;
  b.multiplicity_bound = 1;
  return b;
}

inline ExactSubcat mod_a2(const A2Data& d, SearchBounds b = lean_bounds()) {
  return ExactSubcat(d.alg, {d.P1, d.P2, d.I2}, {"P1", "P2", "I2"}, ExactStructure::Induced, b);
}

inline ExactSubcat add_injectives_a2(const A2Data& d, SearchBounds b = lean_bounds()) {
  return ExactSubcat(d.alg, {d.P2, d.I2}, {"P2", "I2"}, ExactStructure::Induced, b);
}

inline ExactSubcat add_projectives_a2(const A2Data& d, SearchBounds b = lean_bounds()) {
  return ExactSubcat(d.alg, {d.P1, d.P2}, {"P1", "P2"}, ExactStructure::Induced, b);
}

inline ExactSubcat add_regular_dual_numbers(const AlgebraPtr& alg, SearchBounds b = {}) {
  return ExactSubcat(alg, {regular_module(alg)}, {"L"}, ExactStructure::Split, b);
}

// The surjection P2 ->> I2 over kA2 (the unique map up to scalar).
inline ModuleMap a2_surjection(const A2Data& d) {
  ModuleMap p = hom_basis(d.P2, d.I2).at(0);
  if (!p.is_surjective()) throw std::runtime_error("unexpected: P2 -> I2 not surjective");
  return p;
}

// Multiplication by the loop on the regular module over k[T]/(T^2).
inline ModuleMap mult_t(const AlgebraPtr& alg) {
  Module L = regular_module(alg);
  for (const auto& f : hom_basis(L, L))
    if (!f.is_zero_map() && compose(f, f).is_zero_map()) return f;
  throw std::runtime_error("mult_t not found");
}

inline ModuleMap random_combination(const std::vector<ModuleMap>& basis, const Module& src, const Module& tgt,
                                    std::mt19937_64& rng, long lo = -2, long hi = 2) {
  ModuleMap f = ModuleMap::zero(src, tgt);
  std::uniform_int_distribution<long> d(lo, hi);
  for (const auto& b : basis) f = add(f, scale(src.alg->field().from_long(d(rng)), b));
  return f;
}

// Random object of the subcategory with total multiplicity <= max_mult.
inline Module random_object(const ExactSubcat& e, std::mt19937_64& rng, int max_mult = 2) {
  std::vector<Module> parts;
  int total = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_mult));
  for (int i = 0; i < total; ++i) parts.push_back(e.generators()[rng() % e.generators().size()]);
  return direct_sum(e.algebra(), parts).total;
}

// Random bounded complex over e with d o d = 0, built degree by degree by
// sampling in the kernel of composition with the previous differential.
inline Complex random_complex(const ExactSubcat& e, std::mt19937_64& rng, int lo, int hi, int max_mult = 2) {
  Complex x(e.algebra());
  std::vector<Module> terms;
  for (int n = lo; n <= hi; ++n) terms.push_back(random_object(e, rng, max_mult));
  for (size_t i = 0; i < terms.size(); ++i) x.set_term(lo + static_cast<int>(i), terms[i]);
  ModuleMap prev = ModuleMap::zero(Module::zero(e.algebra()), terms[0]);
  for (size_t i = 0; i + 1 < terms.size(); ++i) {
    // choose d with d o prev = 0
    std::vector<ModuleMap> B = hom_basis(terms[i], terms[i + 1]);
    if (B.empty()) {
      prev = ModuleMap::zero(terms[i], terms[i + 1]);
      continue;
    }
    const Field& F = e.algebra()->field();
    int flat_rows = flatten_map(compose(B[0], prev)).rows();
    Matrix C(F, flat_rows, static_cast<int>(B.size()));
    for (size_t k = 0; k < B.size(); ++k) {
      Matrix col = flatten_map(compose(B[k], prev));
      for (int r = 0; r < flat_rows; ++r) C.set(r, static_cast<int>(k), col.at(r, 0));
    }
    Matrix K = C.kernel_basis();
    ModuleMap d = ModuleMap::zero(terms[i], terms[i + 1]);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int c = 0; c < K.cols(); ++c) {
      mpq_class lam = F.from_long(coef(rng));
      if (lam == 0) continue;
      ModuleMap basis_elem = ModuleMap::zero(terms[i], terms[i + 1]);
      for (size_t k = 0; k < B.size(); ++k)
        basis_elem = add(basis_elem, scale(K.at(static_cast<int>(k), c), B[k]));
      d = add(d, scale(lam, basis_elem));
    }
    x.set_diff(lo + static_cast<int>(i), d);
    prev = d;
  }
  x.validate();
  return x;
}

// Random chain map f : x -> y (solves the commuting constraints, then a
// random element of the solution space).
inline ChainMap random_chain_map(const Complex& x, const Complex& y, std::mt19937_64& rng) {
  const Field& F = x.algebra()->field();
  int a = std::min(x.lo(), y.lo());
  int b = std::max(x.hi(), y.hi());
  std::map<int, std::vector<ModuleMap>> ub;
  std::map<int, int> uoff;
  int utot = 0;
  for (int n = a; n <= b; ++n) {
    ub[n] = hom_basis(x.term(n), y.term(n));
    uoff[n] = utot;
    utot += static_cast<int>(ub[n].size());
  }
  int flat_tot = 0;
  std::map<int, int> foff;
  for (int n = a; n <= b; ++n) {
    foff[n] = flat_tot;
    flat_tot += flatten_map(ModuleMap::zero(x.term(n), y.term(n + 1))).rows();
  }
  Matrix C(F, std::max(flat_tot, 1), std::max(utot, 1));
  for (int n = a; n <= b; ++n) {
    for (size_t k = 0; k < ub[n].size(); ++k) {
      Matrix col = flatten_map(compose(y.diff(n), ub[n][k]));
      for (int r = 0; r < col.rows(); ++r)
        C.set(foff[n] + r, uoff[n] + static_cast<int>(k), F.add(C.at(foff[n] + r, uoff[n] + static_cast<int>(k)), col.at(r, 0)));
    }
    for (size_t k = 0; k < ub[n + 1].size(); ++k) {
      Matrix col = flatten_map(compose(ub[n + 1][k], x.diff(n)));
      for (int r = 0; r < col.rows(); ++r)
        C.set(foff[n] + r, uoff[n + 1] + static_cast<int>(k),
              F.sub(C.at(foff[n] + r, uoff[n + 1] + static_cast<int>(k)), col.at(r, 0)));
    }
  }
  Matrix K = C.kernel_basis();
  ChainMap f = chain_zero(x, y);
  if (utot == 0) return f;
  std::uniform_int_distribution<long> coef(-2, 2);
  Matrix combo(F, utot, 1);
  for (int c = 0; c < K.cols(); ++c) {
    mpq_class lam = F.from_long(coef(rng));
    if (lam == 0) continue;
    for (int r = 0; r < utot; ++r) combo.set(r, 0, F.add(combo.at(r, 0), F.mul(lam, K.at(r, c))));
  }
  for (int n = a; n <= b; ++n) {
    ModuleMap fn = ModuleMap::zero(x.term(n), y.term(n));
    for (size_t k = 0; k < ub[n].size(); ++k)
      fn = add(fn, scale(combo.at(uoff[n] + static_cast<int>(k), 0), ub[n][k]));
    f.set_comp(n, fn);
  }
  f.validate();
  return f;
}

}  // namespace excat::testutil
