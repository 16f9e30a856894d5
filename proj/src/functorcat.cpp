#include "excat/functorcat.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace excat {

FpFunctor FpFunctor::representable(const Module& m) {
  FpFunctor f;
  f.pres = ModuleMap::zero(Module::zero(m.alg), m);
  return f;
}

Evaluation evaluate(const FpFunctor& f, const Module& a) {
  Evaluation ev;
  std::vector<ModuleMap> BN = hom_basis(a, f.n());
  if (BN.empty()) return ev;
  const Field& F = a.alg->field();
  // image of Hom(a, pres)
  std::vector<ModuleMap> BM = hom_basis(a, f.m());
  int rows = flatten_map(BN[0]).rows();
  Matrix img(F, rows, static_cast<int>(BM.size()));
  for (size_t k = 0; k < BM.size(); ++k) {
    Matrix col = flatten_map(compose(f.pres, BM[k]));
    for (int r = 0; r < rows; ++r) img.set(r, static_cast<int>(k), col.at(r, 0));
  }
  Matrix span = img.column_space_basis();
  for (const auto& b : BN) {
    Matrix col = flatten_map(b);
    if (span.contains_columns(col)) continue;
    span = span.hstack(col);
    ev.reps.push_back(b);
  }
  ev.dim = static_cast<int>(ev.reps.size());
  return ev;
}

Matrix class_coords(const FpFunctor& f, const Evaluation& ev, const ModuleMap& x) {
  const Field& F = x.source.alg->field();
  if (ev.dim == 0) return Matrix(F, 0, 1);
  std::vector<ModuleMap> BM = hom_basis(x.source, f.m());
  int rows = flatten_map(x).rows();
  Matrix cols(F, rows, static_cast<int>(BM.size() + ev.reps.size()));
  for (size_t k = 0; k < BM.size(); ++k) {
    Matrix c = flatten_map(compose(f.pres, BM[k]));
    for (int r = 0; r < rows; ++r) cols.set(r, static_cast<int>(k), c.at(r, 0));
  }
  for (size_t k = 0; k < ev.reps.size(); ++k) {
    Matrix c = flatten_map(ev.reps[k]);
    for (int r = 0; r < rows; ++r) cols.set(r, static_cast<int>(BM.size() + k), c.at(r, 0));
  }
  auto sol = cols.solve(flatten_map(x));
  if (!sol) throw std::runtime_error("class_coords: element not in the value space");
  Matrix out(F, ev.dim, 1);
  for (int k = 0; k < ev.dim; ++k) out.set(k, 0, sol->at(static_cast<int>(BM.size()) + k, 0));
  return out;
}

bool class_is_zero(const FpFunctor& f, const ModuleMap& x) {
  return lift_through(f.pres, x).has_value();
}

void FunctorMap::validate() const {
  if (!maps_equal(compose(n_comp, source.pres), compose(target.pres, m_comp)))
    throw std::runtime_error("functor map: presentation square does not commute");
}

FunctorMap functor_identity(const FpFunctor& f) {
  FunctorMap a;
  a.source = f;
  a.target = f;
  a.n_comp = ModuleMap::identity(f.n());
  a.m_comp = ModuleMap::identity(f.m());
  return a;
}

FunctorMap functor_compose(const FunctorMap& b, const FunctorMap& a) {
  FunctorMap c;
  c.source = a.source;
  c.target = b.target;
  c.n_comp = compose(b.n_comp, a.n_comp);
  c.m_comp = compose(b.m_comp, a.m_comp);
  return c;
}

std::vector<FunctorMap> functor_hom_basis(const FpFunctor& f, const FpFunctor& g) {
  // Hom(F, G) = ker(G(N_F) -> G(M_F)), the map precomposing with pres_F.
  std::vector<FunctorMap> out;
  Evaluation gn = evaluate(g, f.n());
  if (gn.dim == 0) return out;
  const Field& F = f.n().alg->field();
  Evaluation gm = evaluate(g, f.m());
  Matrix restrict(F, std::max(gm.dim, 1), gn.dim);
  for (int k = 0; k < gn.dim; ++k) {
    ModuleMap pulled = compose(gn.reps[k], f.pres);
    if (gm.dim > 0) {
      Matrix c = class_coords(g, gm, pulled);
      for (int r = 0; r < gm.dim; ++r) restrict.set(r, k, c.at(r, 0));
    }
  }
  Matrix K = restrict.kernel_basis();
  for (int c = 0; c < K.cols(); ++c) {
    ModuleMap t = ModuleMap::zero(f.n(), g.n());
    for (int k = 0; k < gn.dim; ++k) t = add(t, scale(K.at(k, c), gn.reps[k]));
    auto s = lift_through(g.pres, compose(t, f.pres));
    if (!s) throw std::runtime_error("functor_hom_basis: presentation lift failed");
    FunctorMap a;
    a.source = f;
    a.target = g;
    a.n_comp = t;
    a.m_comp = *s;
    out.push_back(a);
  }
  return out;
}

bool functor_map_is_zero(const FunctorMap& a) { return class_is_zero(a.target, a.n_comp); }

Matrix evaluate_map(const FunctorMap& alpha, const Module& a, const Evaluation& eva, const Evaluation& evb) {
  const Field& F = a.alg->field();
  Matrix out(F, evb.dim, eva.dim);
  for (int k = 0; k < eva.dim; ++k) {
    ModuleMap img = compose(alpha.n_comp, eva.reps[k]);
    if (evb.dim == 0) continue;
    Matrix c = class_coords(alpha.target, evb, img);
    for (int r = 0; r < evb.dim; ++r) out.set(r, k, c.at(r, 0));
  }
  return out;
}

std::optional<FunctorIso> find_functor_isomorphism(const FpFunctor& f, const FpFunctor& g, const ExactSubcat& e) {
  const Module& T = e.tilting_sum().total;
  Evaluation fT = evaluate(f, T);
  Evaluation gT = evaluate(g, T);
  if (fT.dim != gT.dim) return std::nullopt;
  std::vector<FunctorMap> fwd = functor_hom_basis(f, g);
  std::vector<FunctorMap> bwd = functor_hom_basis(g, f);
  const Field& F = T.alg->field();

  auto try_pair = [&](const FunctorMap& a) -> std::optional<FunctorIso> {
    Matrix ma = evaluate_map(a, T, fT, gT);
    if (fT.dim > 0 && !ma.is_invertible()) return std::nullopt;
    if (bwd.empty() && fT.dim > 0) return std::nullopt;
    int cells = fT.dim * fT.dim;
    Matrix sys(F, std::max(cells, 1), std::max(static_cast<int>(bwd.size()), 1));
    for (size_t k = 0; k < bwd.size(); ++k) {
      Matrix mb = evaluate_map(bwd[k], T, gT, fT) * ma;
      for (int i = 0; i < fT.dim; ++i)
        for (int j = 0; j < fT.dim; ++j) sys.set(i * fT.dim + j, static_cast<int>(k), mb.at(i, j));
    }
    Matrix rhs(F, std::max(cells, 1), 1);
    for (int i = 0; i < fT.dim; ++i) rhs.set(i * fT.dim + i, 0, mpq_class(1));
    auto sol = sys.solve(rhs);
    if (!sol) return std::nullopt;
    FunctorMap b;
    b.source = g;
    b.target = f;
    b.n_comp = ModuleMap::zero(g.n(), f.n());
    b.m_comp = ModuleMap::zero(g.m(), f.m());
    for (size_t k = 0; k < bwd.size(); ++k) {
      b.n_comp = add(b.n_comp, scale(sol->at(static_cast<int>(k), 0), bwd[k].n_comp));
      b.m_comp = add(b.m_comp, scale(sol->at(static_cast<int>(k), 0), bwd[k].m_comp));
    }
    FunctorIso iso;
    iso.fwd = a;
    iso.bwd = b;
    return iso;
  };

  for (const auto& a : fwd) {
    auto iso = try_pair(a);
    if (iso) return iso;
  }
  for (size_t i = 0; i < fwd.size(); ++i) {
    for (size_t j = i + 1; j < fwd.size(); ++j) {
      FunctorMap s = fwd[i];
      s.n_comp = add(fwd[i].n_comp, fwd[j].n_comp);
      s.m_comp = add(fwd[i].m_comp, fwd[j].m_comp);
      auto iso = try_pair(s);
      if (iso) return iso;
    }
  }
  return std::nullopt;
}

namespace {

EffaceableResult locally_effaceable(const ExactSubcat& e, const FpFunctor& f) {
  EffaceableResult out;
  if (e.structure() == ExactStructure::Split) {
    for (const auto& g : e.generators()) {
      if (evaluate(f, g).dim != 0) {
        out.value = Tri::No;
        out.detail = "split structure: only the zero functor is effaceable";
        return out;
      }
    }
    out.value = Tri::Yes;
    out.detail = "zero functor";
    return out;
  }
  if (f.pres.is_surjective()) {
    InflationResult defl = e.is_deflation(f.pres);
    if (defl.yes) {
      out.value = Tri::Yes;
      out.detail = "presented by an E-deflation";
      return out;
    }
  }
  for (size_t gi = 0; gi < e.generators().size(); ++gi) {
    const Module& A = e.generators()[gi];
    Evaluation ev = evaluate(f, A);
    if (ev.dim == 0) continue;
    std::vector<ExactSubcat::DeflationOnto> defls = e.enumerate_deflations_onto(A);
    for (const auto& rep : ev.reps) {
      bool killed = false;
      for (const auto& d : defls) {
        if (class_is_zero(f, compose(rep, d.p))) {
          killed = true;
          break;
        }
      }
      if (!killed) {
        bool no_nonsplit = true;
        for (const auto& G : e.generators())
          if (ext1(A, G).dim != 0) no_nonsplit = false;
        if (no_nonsplit) {
          out.value = Tri::No;
          out.detail = "a value class at " + e.generator_names()[gi] + " survives all (split) deflations";
        } else {
          out.value = Tri::Unknown;
          out.detail = "bounded deflation search exhausted at " + e.generator_names()[gi];
        }
        return out;
      }
    }
  }
  out.value = Tri::Yes;
  out.detail = "all value classes killed by bounded deflations";
  return out;
}

}  // namespace

EffaceableResult is_effaceable(const FpFunctor& f, const ExactSubcat& e) { return locally_effaceable(e, f); }

FractionResult fraction_invertible(const FunctorMap& alpha, const ExactSubcat& e) {
  FractionResult out;
  {
    DirectSum ds = direct_sum(e.algebra(), {alpha.target.m(), alpha.source.n()});
    ModuleMap block = add(compose(alpha.target.pres, ds.projections[0]), compose(alpha.n_comp, ds.projections[1]));
    FpFunctor cok;
    cok.pres = block;
    out.cokernel_side = is_effaceable(cok, e);
  }
  out.kernel_side.value = Tri::Yes;
  out.kernel_side.detail = "kernel classes killed by bounded deflations";
  for (size_t gi = 0; gi < e.generators().size(); ++gi) {
    const Module& A = e.generators()[gi];
    Evaluation evF = evaluate(alpha.source, A);
    if (evF.dim == 0) continue;
    Evaluation evG = evaluate(alpha.target, A);
    Matrix m = evaluate_map(alpha, A, evF, evG);
    Matrix K = m.kernel_basis();
    if (K.cols() == 0) continue;
    if (e.structure() == ExactStructure::Split) {
      out.kernel_side.value = Tri::No;
      out.kernel_side.detail = "nonzero kernel class at " + e.generator_names()[gi] + " (split structure)";
      break;
    }
    std::vector<ExactSubcat::DeflationOnto> defls = e.enumerate_deflations_onto(A);
    bool bad = false;
    for (int c = 0; c < K.cols() && !bad; ++c) {
      ModuleMap rep = ModuleMap::zero(A, alpha.source.n());
      for (int k = 0; k < evF.dim; ++k) rep = add(rep, scale(K.at(k, c), evF.reps[k]));
      bool killed = false;
      for (const auto& d : defls) {
        if (class_is_zero(alpha.source, compose(rep, d.p))) {
          killed = true;
          break;
        }
      }
      if (!killed) {
        bool no_nonsplit = true;
        for (const auto& G : e.generators())
          if (ext1(A, G).dim != 0) no_nonsplit = false;
        out.kernel_side.value = no_nonsplit ? Tri::No : Tri::Unknown;
        out.kernel_side.detail = "a kernel class at " + e.generator_names()[gi] +
                                 (no_nonsplit ? " survives all deflations" : ": bounded search exhausted");
        bad = true;
      }
    }
    if (bad) break;
  }
  if (out.kernel_side.value == Tri::Yes && out.cokernel_side.value == Tri::Yes)
    out.invertible = Tri::Yes;
  else if (out.kernel_side.value == Tri::Unknown || out.cokernel_side.value == Tri::Unknown)
    out.invertible = Tri::Unknown;
  else
    out.invertible = Tri::No;
  return out;
}

// ---------------------------------------------------------------------------
// Gamma transport

GammaAlgebra::GammaAlgebra(const ExactSubcat& e) : e_(&e) {
  const Module& T = e.tilting_sum().total;
  basis_endos_ = hom_basis(T, T);
  int d = dim();
  table_.assign(d, std::vector<std::vector<mpq_class>>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      // opposite product: basis_i * basis_j := basis_j o basis_i
      ModuleMap prod = compose(basis_endos_[j], basis_endos_[i]);
      auto c = coords_in_basis(basis_endos_, prod);
      if (!c) throw std::runtime_error("GammaAlgebra: composition escapes the basis");
      table_[i][j].resize(d);
      for (int k = 0; k < d; ++k) table_[i][j][k] = c->at(k, 0);
    }
  }
  auto idc = coords_in_basis(basis_endos_, ModuleMap::identity(T));
  if (!idc) throw std::runtime_error("GammaAlgebra: identity escapes the basis");
  identity_.resize(d);
  for (int k = 0; k < d; ++k) identity_[k] = idc->at(k, 0);
}

void GammaAlgebra::validate() const {
  int d = dim();
  const Field& F = e_->algebra()->field();
  auto mult = [&](const std::vector<mpq_class>& x, const std::vector<mpq_class>& y) {
    std::vector<mpq_class> out(d, mpq_class(0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (x[i] == 0 || y[j] == 0) continue;
        for (int k = 0; k < d; ++k) out[k] = F.add(out[k], F.mul(F.mul(x[i], y[j]), table_[i][j][k]));
      }
    return out;
  };
  for (int i = 0; i < d; ++i) {
    std::vector<mpq_class> ei(d, mpq_class(0));
    ei[i] = 1;
    if (mult(identity_, ei) != ei || mult(ei, identity_) != ei)
      throw std::runtime_error("GammaAlgebra: identity law fails");
    for (int j = 0; j < d; ++j) {
      std::vector<mpq_class> ej(d, mpq_class(0));
      ej[j] = 1;
      for (int k = 0; k < d; ++k) {
        std::vector<mpq_class> ek(d, mpq_class(0));
        ek[k] = 1;
        if (mult(mult(ei, ej), ek) != mult(ei, mult(ej, ek)))
          throw std::runtime_error("GammaAlgebra: associativity fails");
      }
    }
  }
}

GammaModule GammaAlgebra::transport(const FpFunctor& f) const {
  const Module& T = e_->tilting_sum().total;
  const Field& F = T.alg->field();
  Evaluation ev = evaluate(f, T);
  GammaModule v;
  v.dim = ev.dim;
  for (int i = 0; i < dim(); ++i) {
    Matrix a(F, ev.dim, ev.dim);
    for (int k = 0; k < ev.dim; ++k) {
      Matrix c = class_coords(f, ev, compose(ev.reps[k], basis_endos_[i]));
      for (int r = 0; r < ev.dim; ++r) a.set(r, k, c.at(r, 0));
    }
    v.action.push_back(a);
  }
  return v;
}

GammaModule GammaAlgebra::regular_module() const {
  const Field& F = e_->algebra()->field();
  GammaModule v;
  v.dim = dim();
  for (int i = 0; i < dim(); ++i) {
    Matrix a(F, dim(), dim());
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) a.set(k, j, table_[i][j][k]);
    v.action.push_back(a);
  }
  return v;
}

std::vector<Matrix> GammaAlgebra::module_hom_basis(const GammaModule& v, const GammaModule& w) const {
  const Field& F = e_->algebra()->field();
  int unknowns = v.dim * w.dim;
  int rows = dim() * v.dim * w.dim;
  Matrix C(F, std::max(rows, 1), std::max(unknowns, 1));
  int row = 0;
  for (int i = 0; i < dim(); ++i) {
    for (int r = 0; r < w.dim; ++r) {
      for (int c = 0; c < v.dim; ++c) {
        for (int k = 0; k < v.dim; ++k)
          C.set(row, r * v.dim + k, F.add(C.at(row, r * v.dim + k), v.action[i].at(k, c)));
        for (int k = 0; k < w.dim; ++k)
          C.set(row, k * v.dim + c, F.sub(C.at(row, k * v.dim + c), w.action[i].at(r, k)));
        ++row;
      }
    }
  }
  std::vector<Matrix> out;
  if (unknowns == 0) return out;
  Matrix K = C.kernel_basis();
  for (int c = 0; c < K.cols(); ++c) {
    Matrix phi(F, w.dim, v.dim);
    for (int r = 0; r < w.dim; ++r)
      for (int cc = 0; cc < v.dim; ++cc) phi.set(r, cc, K.at(r * v.dim + cc, c));
    out.push_back(phi);
  }
  return out;
}

namespace {

struct GammaCover {
  GammaModule free;
  Matrix onto;
  explicit GammaCover(const Field& f) : onto(f, 0, 0) {}
};

GammaCover free_cover(const GammaAlgebra& G, const GammaModule& v) {
  const Field& F = G.subcat().algebra()->field();
  GammaModule reg = G.regular_module();
  std::vector<Matrix> gens;
  for (int i = 0; i < v.dim; ++i) {
    Matrix e(F, v.dim, 1);
    e.set(i, 0, mpq_class(1));
    gens.push_back(e);
  }
  auto spanned_dim = [&](const std::vector<Matrix>& gs) {
    if (gs.empty()) return 0;
    Matrix span(F, v.dim, 0);
    for (const auto& g : gs)
      for (int i = 0; i < G.dim(); ++i) span = span.hstack(v.action[i] * g);
    return span.rank();
  };
  int full = spanned_dim(gens);
  for (size_t i = gens.size(); i-- > 0;) {
    std::vector<Matrix> rest;
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (spanned_dim(rest) == full) gens = rest;
  }
  GammaCover out(F);
  int copies = static_cast<int>(gens.size());
  out.free.dim = reg.dim * copies;
  for (int i = 0; i < G.dim(); ++i) {
    std::vector<Matrix> blocks(copies, reg.action[i]);
    out.free.action.push_back(Matrix::block_diag(F, blocks));
  }
  out.onto = Matrix(F, v.dim, out.free.dim);
  for (int c = 0; c < copies; ++c) {
    for (int j = 0; j < G.dim(); ++j) {
      Matrix col = v.action[j] * gens[c];
      for (int r = 0; r < v.dim; ++r) out.onto.set(r, c * reg.dim + j, col.at(r, 0));
    }
  }
  return out;
}

GammaModule submodule_from_basis(const GammaAlgebra& G, const GammaModule& v, const Matrix& basis) {
  GammaModule s;
  s.dim = basis.cols();
  for (int i = 0; i < G.dim(); ++i) {
    Matrix rhs = v.action[i] * basis;
    auto a = basis.solve(rhs);
    if (!a) throw std::runtime_error("gamma submodule: not action-stable");
    s.action.push_back(*a);
  }
  return s;
}

}  // namespace

bool GammaAlgebra::is_projective(const GammaModule& v) const {
  if (v.dim == 0) return true;
  GammaCover cov = free_cover(*this, v);
  std::vector<Matrix> H = module_hom_basis(v, cov.free);
  if (H.empty()) return false;
  const Field& F = e_->algebra()->field();
  int cells = v.dim * v.dim;
  Matrix sys(F, std::max(cells, 1), static_cast<int>(H.size()));
  for (size_t k = 0; k < H.size(); ++k) {
    Matrix comp = cov.onto * H[k];
    for (int i = 0; i < v.dim; ++i)
      for (int j = 0; j < v.dim; ++j) sys.set(i * v.dim + j, static_cast<int>(k), comp.at(i, j));
  }
  Matrix rhs(F, std::max(cells, 1), 1);
  for (int i = 0; i < v.dim; ++i) rhs.set(i * v.dim + i, 0, mpq_class(1));
  return sys.solve(rhs).has_value();
}

GammaModule GammaAlgebra::syzygy(const GammaModule& v) const {
  GammaCover cov = free_cover(*this, v);
  Matrix K = cov.onto.kernel_basis();
  return submodule_from_basis(*this, cov.free, K);
}

Tri GammaAlgebra::projective_dimension_at_most(const GammaModule& v, int depth, int* out_pd) const {
  GammaModule cur = v;
  for (int k = 0; k <= depth; ++k) {
    if (is_projective(cur)) {
      if (out_pd) *out_pd = k;
      return Tri::Yes;
    }
    cur = syzygy(cur);
  }
  return Tri::Unknown;
}

// ---------------------------------------------------------------------------
// Completion membership

// A pruned trace cover of the ambient kernel module; the extended
// complex is left Hom-acyclic by construction.
WeakKernelData weak_kernel(const ExactSubcat& e, const ModuleMap& d) {
  SubquotientData K = kernel(d);
  struct Gen {
    size_t gen;
    ModuleMap map;
  };
  std::vector<Gen> family;
  for (size_t g = 0; g < e.generators().size(); ++g)
    for (const auto& h : hom_basis(e.generators()[g], K.mod)) family.push_back(Gen{g, h});
  auto covers = [&](const std::vector<Gen>& fam) {
    if (fam.empty()) {
      for (const auto& g : e.generators())
        if (hom_dim(g, K.mod) > 0) return false;
      return true;
    }
    std::vector<Module> parts;
    for (const auto& f : fam) parts.push_back(e.generators()[f.gen]);
    DirectSum ds = direct_sum(e.algebra(), parts);
    ModuleMap t = ModuleMap::zero(ds.total, K.mod);
    for (size_t k = 0; k < fam.size(); ++k) t = add(t, compose(fam[k].map, ds.projections[k]));
    for (const auto& g : e.generators())
      for (const auto& a : hom_basis(g, K.mod))
        if (!lift_through(t, a)) return false;
    return true;
  };
  for (size_t i = family.size(); i-- > 0;) {
    std::vector<Gen> rest;
    for (size_t j = 0; j < family.size(); ++j)
      if (j != i) rest.push_back(family[j]);
    if (covers(rest)) family = rest;
  }
  WeakKernelData out;
  std::vector<Module> parts;
  for (const auto& f : family) parts.push_back(e.generators()[f.gen]);
  DirectSum ds = direct_sum(e.algebra(), parts);
  out.cover = ds.total;
  ModuleMap t = ModuleMap::zero(ds.total, K.mod);
  for (size_t k = 0; k < family.size(); ++k) t = add(t, compose(family[k].map, ds.projections[k]));
  out.map = compose(K.map, t);
  return out;
}

namespace {

std::string iso_class_signature(const Module& m) {
  Decomposition d = decompose(m);
  std::vector<std::string> keys;
  for (const auto& s : d.summands) {
    std::string k;
    for (int dd : s.dims) k += std::to_string(dd) + ".";
    keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& k : keys) out += k + "|";
  return out;
}

}  // namespace

CompletionResult membership_completion(const FpFunctor& f, const CompletionQuery& q, const ExactSubcat& e) {
  CompletionResult out;
  if (!e.contains(f.m()) || !e.contains(f.n()))
    throw std::invalid_argument("membership_completion: presentation outside the subcategory");

  if (q.cls == CompletionClass::Qlcat) {
    out.member = Tri::Yes;
    out.note = "finitely presented by construction";
    return out;
  }
  if (q.cls == CompletionClass::Rn && q.n == 1) {
    // Left E-admissible presentation: the intermediate object of any
    // deflation-mono factorization is forced to be im(f).
    ImageData im = image(f.pres);
    if (!e.contains(im.mod)) {
      out.member = Tri::No;
      out.note = "image of the presentation leaves the subcategory";
      return out;
    }
    InflationResult defl = e.is_deflation(im.corestriction);
    if (!defl.yes) {
      out.member = Tri::No;
      out.note = "presentation does not factor as deflation then mono: " + defl.reason;
      return out;
    }
    out.member = Tri::Yes;
    out.note = "left E-admissible presentation";
    out.resolution_length = 1;
    return out;
  }

  Complex res(e.algebra());
  res.set_term(0, f.n());
  res.set_term(-1, f.m());
  res.set_diff(-1, f.pres);
  ModuleMap current = f.pres;
  int k = 1;
  std::map<std::string, int> seen;
  seen[iso_class_signature(f.m())] = 1;
  int depth_budget = (q.cls == CompletionClass::Rn) ? q.n : q.depth;
  while (true) {
    // stopping at -k needs 0 -> X^{-k} -> X^{-k+1} left Ext-acyclic,
    // i.e. the differential a monomorphism in E
    if (e.is_mono(current)) {
      out.member = Tri::Yes;
      out.resolution_length = k;
      out.depth_reached = k;
      out.note = "bounded resolution of length " + std::to_string(k);
      out.resolution = res;
      return out;
    }
    if (k >= depth_budget) break;
    WeakKernelData wk = weak_kernel(e, current);
    res.set_term(-k - 1, wk.cover);
    res.set_diff(-k - 1, wk.map);
    current = wk.map;
    ++k;
    std::string sig = iso_class_signature(wk.cover);
    if (seen.count(sig)) out.syzygy_cycle = true;
    seen[sig] += 1;
  }
  out.depth_reached = k;
  out.resolution = res;
  if (q.cls == CompletionClass::R) {
    out.member = Tri::Yes;
    out.note = out.syzygy_cycle ? "member: weak-kernel resolution extended to depth " + std::to_string(k) +
                                      " with periodic syzygies"
                                : "member up to depth " + std::to_string(k) + " (weak kernels always extend)";
    return out;
  }
  out.member = Tri::Unknown;
  out.note = "no bounded resolution within depth " + std::to_string(k);
  if (e.structure() == ExactStructure::Split) {
    // the pruned covers are minimal (Nakayama), so the canonical
    // construction computes minimal resolutions and exceeding the budget
    // at the Rn bound is a genuine failure
    if (q.cls == CompletionClass::Rn) {
      out.member = Tri::No;
      out.note = "minimal resolution exceeds length " + std::to_string(q.n);
    }
  }
  return out;
}

}  // namespace excat
