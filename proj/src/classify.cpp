#include "excat/classify.hpp"

#include <sstream>
#include <stdexcept>

namespace excat {

namespace {

struct ThreeTerms {
  Module L, M, N;
  ModuleMap f, g;  // f : L -> M, g : M -> N
};

ThreeTerms three_terms(const Complex& x, int n) {
  ThreeTerms t;
  t.L = x.term(n - 1);
  t.M = x.term(n);
  t.N = x.term(n + 1);
  t.f = x.diff(n - 1);
  t.g = x.diff(n);
  return t;
}

void require_terms_in_e(const Complex& x, const ExactSubcat& e, int n) {
  for (int m = n - 1; m <= n + 1; ++m)
    if (!e.contains(x.term(m)))
      throw std::invalid_argument("classify: term at degree " + std::to_string(m) + " fails membership");
}

bool exact_at(const ThreeTerms& t) {
  for (int v = 0; v < t.M.alg->num_vertices(); ++v)
    if (t.f.comps[v].rank() + t.g.comps[v].rank() != t.M.dims[v]) return false;
  return true;
}

Verdict yes(std::string d) { return Verdict{Tri::Yes, std::move(d)}; }
Verdict no(std::string d) { return Verdict{Tri::No, std::move(d)}; }

Verdict split_acyclic_degree(const ThreeTerms& t, const ExactSubcat& e) {
  if (t.M.total_dim() == 0) return yes("middle term is zero");
  if (!exact_at(t)) return no("im(f) != ker(g) in the ambient module category");
  ImageData K = image(t.f);
  if (!e.contains(K.mod)) return no("im(f) is not an object of the subcategory");
  SubquotientData C = cokernel(K.inclusion);
  if (!e.contains(C.mod)) return no("coim(g) is not an object of the subcategory");
  if (!lift_through(K.corestriction, ModuleMap::identity(K.mod))) return no("L ->> im(f) does not split");
  if (!extend_through(K.inclusion, ModuleMap::identity(K.mod))) return no("im(f) >-> M does not split");
  ModuleMap gbar = factor_through_epi(C.map, t.g);
  if (!extend_through(gbar, ModuleMap::identity(C.mod))) return no("coim(g) >-> N does not split");
  return yes("split factorization through im(f) and coim(g)");
}

Verdict e_acyclic_degree(const ThreeTerms& t, const ExactSubcat& e) {
  if (e.structure() == ExactStructure::Split) return split_acyclic_degree(t, e);
  if (t.M.total_dim() == 0) return yes("middle term is zero");
  if (!exact_at(t)) return no("im(f) != ker(g) in the ambient module category");
  ImageData K = image(t.f);
  if (!e.contains(K.mod)) return no("im(f) is not an object of the subcategory");
  SubquotientData C = cokernel(K.inclusion);
  if (!e.contains(C.mod)) return no("coim(g) is not an object of the subcategory");
  if (!e.contains(kernel(t.f).mod)) return no("ker(f) is not in the subcategory (L ->> im f not a deflation)");
  if (!e.contains(cokernel(t.g).mod)) return no("coker(g) is not in the subcategory (coim g >-> N not an inflation)");
  std::ostringstream os;
  os << "conflation im(f) >-> M ->> coim(g) with im(f) of dimension " << K.mod.total_dim() << " and coim(g) of dimension "
     << C.mod.total_dim();
  return yes(os.str());
}

// Cycle/boundary analysis feeding left Hom- and left Ext-acyclicity.
struct GenObstructions {
  std::vector<ModuleMap> hom_to_L;      // basis of Hom(A, L)
  Matrix boundary_cols;                 // flattened f o Hom(A, L)
  std::vector<ModuleMap> cycles;        // basis of {z : A -> M, g z = 0}
  std::vector<ModuleMap> obstructions;  // greedy complement of the boundaries inside the cycles

  GenObstructions() : boundary_cols(Field::rationals(), 0, 0) {}
};

GenObstructions gen_obstructions(const ThreeTerms& t, const Module& A) {
  GenObstructions out;
  const Field& F = A.alg->field();
  std::vector<ModuleMap> BM = hom_basis(A, t.M);
  out.hom_to_L = hom_basis(A, t.L);
  int flat_rows = flatten_map(ModuleMap::zero(A, t.M)).rows();
  // cycles: kernel of composition with g
  Matrix G(F, flatten_map(ModuleMap::zero(A, t.N)).rows(), static_cast<int>(BM.size()));
  for (size_t k = 0; k < BM.size(); ++k) {
    Matrix col = flatten_map(compose(t.g, BM[k]));
    for (int r = 0; r < col.rows(); ++r) G.set(r, static_cast<int>(k), col.at(r, 0));
  }
  Matrix kerco = G.kernel_basis();
  for (int c = 0; c < kerco.cols(); ++c) {
    ModuleMap z = ModuleMap::zero(A, t.M);
    for (size_t k = 0; k < BM.size(); ++k) z = add(z, scale(kerco.at(static_cast<int>(k), 0 + c), BM[k]));
    out.cycles.push_back(z);
  }
  out.boundary_cols = Matrix(F, flat_rows, static_cast<int>(out.hom_to_L.size()));
  for (size_t k = 0; k < out.hom_to_L.size(); ++k) {
    Matrix col = flatten_map(compose(t.f, out.hom_to_L[k]));
    for (int r = 0; r < flat_rows; ++r) out.boundary_cols.set(r, static_cast<int>(k), col.at(r, 0));
  }
  Matrix span = out.boundary_cols.column_space_basis();
  for (const auto& z : out.cycles) {
    Matrix col = flatten_map(z);
    if (span.contains_columns(col)) continue;
    span = span.hstack(col);
    out.obstructions.push_back(z);
  }
  return out;
}

Verdict left_hom_degree(const ThreeTerms& t, const ExactSubcat& e) {
  for (size_t g = 0; g < e.generators().size(); ++g) {
    GenObstructions go = gen_obstructions(t, e.generators()[g]);
    if (!go.obstructions.empty())
      return no("a map from " + e.generator_names()[g] + " killed by the outgoing differential does not factor");
  }
  return yes("every killed test map factors through the incoming differential");
}

struct TierCWitness {
  // per generator, per obstruction: the deflation killing it
  std::vector<std::vector<ExactSubcat::DeflationOnto>> chosen;
  bool complete = true;
  bool provably_unkillable = false;
  std::string note;
};

bool deflation_kills(const ThreeTerms& t, const ModuleMap& z, const ExactSubcat::DeflationOnto& d) {
  ModuleMap zp = compose(z, d.p);
  // does z o p factor through f?
  return lift_through(t.f, zp).has_value();
}

TierCWitness tier_c_search(const ThreeTerms& t, const ExactSubcat& e) {
  TierCWitness w;
  for (size_t g = 0; g < e.generators().size(); ++g) {
    const Module& A = e.generators()[g];
    GenObstructions go = gen_obstructions(t, A);
    w.chosen.emplace_back();
    if (go.obstructions.empty()) continue;
    std::vector<ExactSubcat::DeflationOnto> defls = e.enumerate_deflations_onto(A);
    if (defls.empty()) {
      bool no_nonsplit = true;
      for (const auto& G : e.generators())
        if (ext1(A, G).dim != 0) no_nonsplit = false;
      if (no_nonsplit) {
        w.provably_unkillable = true;
        w.note = "obstruction from " + e.generator_names()[g] + ": only split deflations exist";
        return w;
      }
      w.complete = false;
      w.note = "no deflations found within bounds for generator " + e.generator_names()[g];
      return w;
    }
    for (const auto& z : go.obstructions) {
      bool killed = false;
      for (const auto& d : defls) {
        if (deflation_kills(t, z, d)) {
          w.chosen.back().push_back(d);
          killed = true;
          break;
        }
      }
      if (!killed) {
        bool no_nonsplit = true;
        for (const auto& G : e.generators())
          if (ext1(A, G).dim != 0) no_nonsplit = false;
        if (no_nonsplit) {
          w.provably_unkillable = true;
          w.note = "obstruction from " + e.generator_names()[g] + ": only split deflations exist";
        } else {
          w.complete = false;
          w.note = "bounded deflation search exhausted at generator " + e.generator_names()[g];
        }
        return w;
      }
    }
  }
  return w;
}

Verdict left_ext_degree(const ThreeTerms& t, const ExactSubcat& e) {
  if (e.structure() == ExactStructure::Split) {
    Verdict v = left_hom_degree(t, e);
    v.detail = "split structure (deflations split): " + v.detail;
    return v;
  }
  Verdict lh = left_hom_degree(t, e);
  if (lh.value == Tri::Yes) {
    lh.detail = "left Hom-acyclic, hence left Ext-acyclic";
    return lh;
  }
  if (e.resolving_in_module_category()) {
    if (exact_at(t)) return yes("resolving in the module category: ambient exactness holds");
    return no("resolving in the module category: ambient exactness fails");
  }
  TierCWitness w = tier_c_search(t, e);
  if (w.provably_unkillable) return no(w.note);
  if (!w.complete) return Verdict{Tri::Unknown, w.note};
  return yes("every obstruction is killed by a bounded deflation");
}

Verdict left_kind(const Complex& x, const ExactSubcat& e, int n, AcyclicityKind kind) {
  ThreeTerms t = three_terms(x, n);
  switch (kind) {
    case AcyclicityKind::SplitAcyclic:
      return split_acyclic_degree(t, e);
    case AcyclicityKind::EAcyclic:
      return e_acyclic_degree(t, e);
    case AcyclicityKind::LeftHom:
      return left_hom_degree(t, e);
    case AcyclicityKind::LeftExt:
      return left_ext_degree(t, e);
    default:
      throw std::logic_error("left_kind: not a left kind");
  }
}

}  // namespace

bool exact_at_ambient(const Complex& x, int n) { return exact_at(three_terms(x, n)); }

Module homology(const Complex& x, int n) {
  SubquotientData Z = kernel(x.diff(n));
  ImageData B = image(x.diff(n - 1));
  ModuleMap m = factor_through_mono(Z.map, B.inclusion);
  return cokernel(m).mod;
}

Verdict classify_degree(const Complex& x, const ExactSubcat& e, int n, AcyclicityKind kind) {
  require_terms_in_e(x, e, n);
  if (kind == AcyclicityKind::RightHom || kind == AcyclicityKind::RightExt) {
    Complex op = opposite_complex(x);
    AcyclicityKind lk = (kind == AcyclicityKind::RightHom) ? AcyclicityKind::LeftHom : AcyclicityKind::LeftExt;
    Verdict v = left_kind(op, e.opposite(), -n, lk);
    v.detail = "(via the opposite category) " + v.detail;
    return v;
  }
  return left_kind(x, e, n, kind);
}

DegreeReport classify_all_kinds(const Complex& x, const ExactSubcat& e, int n) {
  DegreeReport r;
  r.split_acyclic = classify_degree(x, e, n, AcyclicityKind::SplitAcyclic);
  r.e_acyclic = classify_degree(x, e, n, AcyclicityKind::EAcyclic);
  r.left_hom = classify_degree(x, e, n, AcyclicityKind::LeftHom);
  r.left_ext = classify_degree(x, e, n, AcyclicityKind::LeftExt);
  r.right_hom = classify_degree(x, e, n, AcyclicityKind::RightHom);
  r.right_ext = classify_degree(x, e, n, AcyclicityKind::RightExt);
  return r;
}

AcyclicityReport classify(const Complex& x, const ExactSubcat& e) {
  AcyclicityReport rep;
  if (x.is_zero_complex()) return rep;
  for (int n = x.lo() - 1; n <= x.hi() + 1; ++n) rep.degrees[n] = classify_all_kinds(x, e, n);
  return rep;
}

namespace {

bool implies(const Verdict& a, const Verdict& b) {
  // a == Yes must force b == Yes (Unknown does not refute)
  return a.value != Tri::Yes || b.value != Tri::No;
}

}  // namespace

bool AcyclicityReport::lattice_consistent() const {
  for (const auto& [n, r] : degrees) {
    if (!implies(r.split_acyclic, r.e_acyclic)) return false;
    if (!implies(r.split_acyclic, r.left_hom)) return false;
    if (!implies(r.split_acyclic, r.right_hom)) return false;
    if (!implies(r.e_acyclic, r.left_ext)) return false;
    if (!implies(r.e_acyclic, r.right_ext)) return false;
    if (!implies(r.left_hom, r.left_ext)) return false;
    if (!implies(r.right_hom, r.right_ext)) return false;
  }
  return true;
}

bool is_e_acyclic_complex(const Complex& x, const ExactSubcat& e) {
  if (x.is_zero_complex()) return true;
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (classify_degree(x, e, n, AcyclicityKind::EAcyclic).value != Tri::Yes) return false;
  return true;
}

bool is_quasi_iso(const ChainMap& f, const ExactSubcat& e) { return is_e_acyclic_complex(cone(f).cone, e); }

// ---------------------------------------------------------------------------
// Deflation witness provider

struct DeflationWitnessProvider::DegreeData {
  enum class Mode { Direct, AmbientExact, Stored, Unavailable };
  Mode mode = Mode::Unavailable;
  std::string note;
  ThreeTerms t;
  // Stored mode:
  std::vector<GenObstructions> per_gen;
  std::vector<std::vector<ExactSubcat::DeflationOnto>> chosen;
};

DeflationWitnessProvider::DeflationWitnessProvider(const Complex& x, const ExactSubcat& e) : x_(x), e_(e) {}

const DeflationWitnessProvider::DegreeData& DeflationWitnessProvider::degree_data(int n) const {
  auto it = cache_.find(n);
  if (it != cache_.end()) return *it->second;
  auto data = std::make_shared<DegreeData>();
  data->t = three_terms(x_, n);
  Verdict lh = left_hom_degree(data->t, e_);
  if (lh.value == Tri::Yes) {
    data->mode = DegreeData::Mode::Direct;
    data->note = "left Hom-acyclic: direct factorization";
  } else if (e_.structure() == ExactStructure::Split) {
    data->mode = DegreeData::Mode::Unavailable;
    data->note = "split structure and not left Hom-acyclic";
  } else if (e_.resolving_in_module_category() && exact_at(data->t)) {
    data->mode = DegreeData::Mode::AmbientExact;
    data->note = "resolving subcategory: pullback + trace cover";
  } else {
    TierCWitness w = tier_c_search(data->t, e_);
    if (w.complete && !w.provably_unkillable) {
      data->mode = DegreeData::Mode::Stored;
      data->note = "bounded deflation witnesses";
      for (const auto& A : e_.generators()) data->per_gen.push_back(gen_obstructions(data->t, A));
      data->chosen = w.chosen;
    } else {
      data->mode = DegreeData::Mode::Unavailable;
      data->note = w.note.empty() ? "not left Ext-acyclic" : w.note;
    }
  }
  cache_[n] = data;
  return *data;
}

std::string DeflationWitnessProvider::mode(int n) const { return degree_data(n).note; }

DeflationWitnessProvider::Factorization DeflationWitnessProvider::factor(int n, const ModuleMap& a) const {
  const DegreeData& D = degree_data(n);
  const Module& A = a.source;
  if (!compose(D.t.g, a).is_zero_map()) throw std::invalid_argument("witness factor: test map is not a cycle");

  // Every mode first tries the direct factorization.
  if (auto h = lift_through(D.t.f, a)) return Factorization{ModuleMap::identity(A), *h};
  if (D.mode == DegreeData::Mode::Direct)
    throw std::runtime_error("witness factor: direct mode failed unexpectedly");

  if (D.mode == DegreeData::Mode::AmbientExact) {
    // Pull the cycle back along f, then cover by the subcategory.
    PullbackData pb = pullback(a, D.t.f);
    if (!pb.to_a.is_surjective()) throw std::runtime_error("witness factor: pullback projection not surjective");
    std::vector<Module> parts;
    std::vector<ModuleMap> maps;
    for (const auto& g : e_.generators()) {
      for (const auto& h : hom_basis(g, pb.mod)) {
        parts.push_back(g);
        maps.push_back(h);
      }
    }
    DirectSum ds = direct_sum(e_.algebra(), parts);
    ModuleMap trace = ModuleMap::zero(ds.total, pb.mod);
    for (size_t k = 0; k < maps.size(); ++k) trace = add(trace, compose(maps[k], ds.projections[k]));
    if (!trace.is_surjective()) throw std::runtime_error("witness factor: trace cover fails (resolving violated)");
    ModuleMap p = compose(pb.to_a, trace);
    if (!e_.contains(kernel(p).mod))
      throw std::runtime_error("witness factor: kernel escapes the subcategory (resolving violated)");
    return Factorization{p, compose(pb.to_b, trace)};
  }

  if (D.mode != DegreeData::Mode::Stored) throw std::runtime_error("cannot lift: Tier-C unknown (" + D.note + ")");

  // Stored mode: decompose the test object into generator copies.
  auto w = e_.membership_witness(A);
  if (!w) throw std::invalid_argument("witness factor: test object fails membership");
  // copies in generator order
  std::vector<size_t> copy_gen;
  for (size_t g = 0; g < e_.generators().size(); ++g)
    for (int k = 0; k < w->mults[g]; ++k) copy_gen.push_back(g);
  std::vector<Module> parts;
  for (size_t c : copy_gen) parts.push_back(e_.generators()[c]);
  DirectSum ds = direct_sum(e_.algebra(), parts);

  const Field& F = e_.algebra()->field();
  std::vector<ModuleMap> leg_defl;   // per copy: q_j : B_j ->> G_j
  std::vector<ModuleMap> leg_homs;   // per copy: h_j : B_j -> L with a_j q_j = f h_j
  for (size_t j = 0; j < copy_gen.size(); ++j) {
    size_t g = copy_gen[j];
    const GenObstructions& go = D.per_gen[g];
    ModuleMap aj = compose(a, compose(w->iso, ds.inclusions[j]));
    // coordinates over [boundaries | obstructions]
    Matrix flat = flatten_map(aj);
    Matrix cols = go.boundary_cols;
    for (const auto& z : go.obstructions) cols = cols.hstack(flatten_map(z));
    auto coef = cols.solve(flat);
    if (!coef) throw std::runtime_error("witness factor: cycle not spanned by boundaries and obstructions");
    ModuleMap h0 = ModuleMap::zero(e_.generators()[g], D.t.L);
    for (size_t k = 0; k < go.hom_to_L.size(); ++k)
      h0 = add(h0, scale(coef->at(static_cast<int>(k), 0), go.hom_to_L[k]));
    // needed obstruction indices
    std::vector<size_t> needed;
    for (size_t k = 0; k < go.obstructions.size(); ++k)
      if (coef->at(static_cast<int>(go.hom_to_L.size() + k), 0) != 0) needed.push_back(k);
    if (needed.empty()) {
      leg_defl.push_back(ModuleMap::identity(e_.generators()[g]));
      leg_homs.push_back(h0);
      continue;
    }
    // fiber product of the chosen deflations over the generator
    ModuleMap q = D.chosen[g][needed[0]].p;
    std::vector<ModuleMap> legs(needed.size());  // maps from the fiber product to each B_k
    legs[0] = ModuleMap::identity(q.source);
    for (size_t idx = 1; idx < needed.size(); ++idx) {
      const ModuleMap& pk = D.chosen[g][needed[idx]].p;
      PullbackData pb = pullback(q, pk);
      if (!e_.contains(pb.mod)) throw std::runtime_error("witness factor: fiber product escapes the subcategory");
      for (size_t s = 0; s < idx; ++s) legs[s] = compose(legs[s], pb.to_a);
      legs[idx] = pb.to_b;
      q = compose(q, pb.to_a);
    }
    ModuleMap hj = compose(h0, q);
    for (size_t idx = 0; idx < needed.size(); ++idx) {
      size_t k = needed[idx];
      mpq_class ck = coef->at(static_cast<int>(go.hom_to_L.size() + k), 0);
      ModuleMap zp = compose(go.obstructions[k], D.chosen[g][k].p);
      auto hk = lift_through(D.t.f, zp);
      if (!hk) throw std::runtime_error("witness factor: stored deflation stopped working");
      hj = add(hj, scale(ck, compose(*hk, legs[idx])));
    }
    leg_defl.push_back(q);
    leg_homs.push_back(hj);
    (void)F;
  }
  // assemble p : (+) B_j ->> A and h
  std::vector<Module> bparts;
  for (const auto& q : leg_defl) bparts.push_back(q.source);
  DirectSum bds = direct_sum(e_.algebra(), bparts);
  ModuleMap sum_defl = ModuleMap::zero(bds.total, ds.total);
  ModuleMap h = ModuleMap::zero(bds.total, D.t.L);
  for (size_t j = 0; j < leg_defl.size(); ++j) {
    sum_defl = add(sum_defl, compose(ds.inclusions[j], compose(leg_defl[j], bds.projections[j])));
    h = add(h, compose(leg_homs[j], bds.projections[j]));
  }
  ModuleMap p = compose(w->iso, sum_defl);
  return Factorization{p, h};
}

// ---------------------------------------------------------------------------
// Hyper-Hom

namespace {

int chain_hom_dim_mod_homotopy(const Complex& P, const Complex& Y) {
  const Field& F = P.algebra()->field();
  int a = std::min(P.lo(), Y.lo()) - 1;
  int b = std::max(P.hi(), Y.hi()) + 1;
  // chain-map unknowns u^n in Hom(P^n, Y^n)
  std::map<int, std::vector<ModuleMap>> ub, hb;
  std::map<int, int> uoff, hoff;
  int utot = 0, htot = 0;
  for (int n = a; n <= b; ++n) {
    ub[n] = hom_basis(P.term(n), Y.term(n));
    uoff[n] = utot;
    utot += static_cast<int>(ub[n].size());
    hb[n] = hom_basis(P.term(n), Y.term(n - 1));
    hoff[n] = htot;
    htot += static_cast<int>(hb[n].size());
  }
  // constraint rows: flatten(d_Y u^n - u^{n+1} d_P) = 0
  int flat_tot = 0;
  std::map<int, int> foff;
  for (int n = a; n <= b; ++n) {
    foff[n] = flat_tot;
    flat_tot += flatten_map(ModuleMap::zero(P.term(n), Y.term(n + 1))).rows();
  }
  Matrix C(F, std::max(flat_tot, 1), std::max(utot, 1));
  for (int n = a; n <= b; ++n) {
    for (size_t k = 0; k < ub[n].size(); ++k) {
      Matrix col = flatten_map(compose(Y.diff(n), ub[n][k]));
      for (int r = 0; r < col.rows(); ++r)
        C.set(foff[n] + r, uoff[n] + static_cast<int>(k), F.add(C.at(foff[n] + r, uoff[n] + static_cast<int>(k)), col.at(r, 0)));
    }
    for (size_t k = 0; k < ub[n + 1].size(); ++k) {
      Matrix col = flatten_map(compose(ub[n + 1][k], P.diff(n)));
      for (int r = 0; r < col.rows(); ++r)
        C.set(foff[n] + r, uoff[n + 1] + static_cast<int>(k),
              F.sub(C.at(foff[n] + r, uoff[n + 1] + static_cast<int>(k)), col.at(r, 0)));
    }
  }
  int chain_dim = utot - (utot ? C.rank() : 0);
  // boundary chain maps: image of h -> dh + hd in u-coordinates
  Matrix H2U(F, std::max(utot, 1), std::max(htot, 1));
  for (int n = a; n <= b; ++n) {
    for (size_t k = 0; k < hb[n].size(); ++k) {
      ModuleMap dh = compose(Y.diff(n - 1), hb[n][k]);
      auto cu = coords_in_basis(ub[n], dh);
      if (cu)
        for (int r = 0; r < cu->rows(); ++r)
          H2U.set(uoff[n] + r, hoff[n] + static_cast<int>(k),
                  F.add(H2U.at(uoff[n] + r, hoff[n] + static_cast<int>(k)), cu->at(r, 0)));
      // the h^{n} part also contributes h d into degree n-1
      ModuleMap hd = compose(hb[n][k], P.diff(n - 1));
      auto cu2 = coords_in_basis(ub[n - 1], hd);
      if (cu2)
        for (int r = 0; r < cu2->rows(); ++r)
          H2U.set(uoff[n - 1] + r, hoff[n] + static_cast<int>(k),
                  F.add(H2U.at(uoff[n - 1] + r, hoff[n] + static_cast<int>(k)), cu2->at(r, 0)));
    }
  }
  int boundary_rank = htot ? H2U.rank() : 0;
  return chain_dim - boundary_rank;
}

struct HorseshoeRes {
  ProjectiveResolution res;
  std::vector<DirectSum> level_sums;  // res.terms[k] = resA.terms[k] (+) resC.terms[k]
};

// Classical horseshoe for a short exact sequence incl : A >-> B ->> C
// (proj) with chosen resolutions of A and C.
HorseshoeRes horseshoe_modules(const ModuleMap& incl, const ModuleMap& proj, const ProjectiveResolution& resA,
                               const ProjectiveResolution& resC) {
  const AlgebraPtr& alg = incl.source.alg;
  HorseshoeRes out;
  size_t depth = std::max(resA.terms.size(), resC.terms.size());
  auto termA = [&](size_t k) { return k < resA.terms.size() ? resA.terms[k] : Module::zero(alg); };
  auto termC = [&](size_t k) { return k < resC.terms.size() ? resC.terms[k] : Module::zero(alg); };
  auto diffA = [&](size_t k) {
    return k + 1 < resA.terms.size() && k < resA.diffs.size() ? resA.diffs[k]
                                                              : ModuleMap::zero(termA(k + 1), termA(k));
  };
  auto diffC = [&](size_t k) {
    return k + 1 < resC.terms.size() && k < resC.diffs.size() ? resC.diffs[k]
                                                              : ModuleMap::zero(termC(k + 1), termC(k));
  };
  for (size_t k = 0; k < depth; ++k) {
    DirectSum ds = direct_sum(alg, {termA(k), termC(k)});
    out.level_sums.push_back(ds);
    out.res.terms.push_back(ds.total);
  }
  // augmentation
  auto liftC0 = lift_through(proj, resC.augmentation);
  if (!liftC0) throw std::runtime_error("horseshoe: projective lift through the deflation failed");
  out.res.augmentation = add(compose(compose(incl, resA.augmentation), out.level_sums[0].projections[0]),
                             compose(*liftC0, out.level_sums[0].projections[1]));
  // connecting maps theta_k : termC(k+1) -> termA(k)
  std::vector<ModuleMap> thetas;
  for (size_t k = 0; k + 1 < depth; ++k) {
    ModuleMap theta = ModuleMap::zero(termC(k + 1), termA(k));
    if (termC(k + 1).total_dim() > 0 && termA(k).total_dim() > 0) {
      if (k == 0) {
        // incl o augA o theta_0 = -liftC0 o dC_0
        ModuleMap rhs = scale(mpq_class(-1), compose(*liftC0, diffC(0)));
        ModuleMap through_A = factor_through_mono(incl, rhs);
        auto th = lift_through(resA.augmentation, through_A);
        if (!th) throw std::runtime_error("horseshoe: theta_0 lift failed");
        theta = *th;
      } else {
        // dA_{k-1} o theta_k = -theta_{k-1} o dC_k
        ModuleMap rhs = scale(mpq_class(-1), compose(thetas[k - 1], diffC(k)));
        auto th = lift_through(diffA(k - 1), rhs);
        if (!th) throw std::runtime_error("horseshoe: theta lift failed");
        theta = *th;
      }
    }
    thetas.push_back(theta);
    ModuleMap d = add(compose(out.level_sums[k].inclusions[0],
                              add(compose(diffA(k), out.level_sums[k + 1].projections[0]),
                                  compose(theta, out.level_sums[k + 1].projections[1]))),
                      compose(out.level_sums[k].inclusions[1],
                              compose(diffC(k), out.level_sums[k + 1].projections[1])));
    out.res.diffs.push_back(d);
  }
  out.res.finite = resA.finite && resC.finite;
  return out;
}

struct Replacement {
  Complex tot;
  bool truncated = false;
  ChainMap aug;  // tot -> x
};

Replacement projective_replacement(const Complex& x, int depth) {
  const AlgebraPtr& alg = x.algebra();
  Replacement out{Complex(alg), false, {}};
  int lo = x.lo(), hi = x.hi();
  // Column data
  std::map<int, HorseshoeRes> RX;
  std::map<int, HorseshoeRes> RZ;
  std::map<int, ProjectiveResolution> RB;
  std::map<int, ModuleMap> b_incl, b_corestr, z_incl;
  for (int i = lo; i <= hi + 1; ++i) {
    ImageData B = image(x.diff(i - 1));
    RB[i] = projective_resolution(B.mod, depth);
    if (!RB[i].finite) out.truncated = true;
    b_incl[i] = B.inclusion;
    b_corestr[i] = B.corestriction;
  }
  for (int i = lo; i <= hi; ++i) {
    SubquotientData Z = kernel(x.diff(i));
    z_incl[i] = Z.map;
    ModuleMap m = factor_through_mono(Z.map, b_incl[i]);  // B_i -> Z_i
    SubquotientData H = cokernel(m);
    ProjectiveResolution RH = projective_resolution(H.mod, depth);
    if (!RH.finite) out.truncated = true;
    RZ.emplace(i, horseshoe_modules(m, H.map, RB[i], RH));
    // 0 -> Z_i -> X^i -> B_{i+1} -> 0
    RX.emplace(i, horseshoe_modules(z_incl[i], b_corestr[i + 1], RZ.at(i).res, RB[i + 1]));
  }
  // totalize: component (i, k) sits in degree i - k
  auto level_term = [&](int i, size_t k) {
    if (i < lo || i > hi) return Module::zero(alg);
    const auto& terms = RX.at(i).res.terms;
    return k < terms.size() ? terms[k] : Module::zero(alg);
  };
  std::map<int, DirectSum> tot_sums;
  int dmin = lo - static_cast<int>(depth) - 1;
  for (int n = dmin; n <= hi; ++n) {
    std::vector<Module> comps;
    for (int i = lo; i <= hi; ++i) {
      int k = i - n;
      comps.push_back(k >= 0 ? level_term(i, static_cast<size_t>(k)) : Module::zero(alg));
    }
    DirectSum ds = direct_sum(alg, comps);
    tot_sums[n] = ds;
    out.tot.set_term(n, ds.total);
  }
  auto horizontal = [&](int i, size_t k) -> ModuleMap {
    // RX_i level k -> RX_{i+1} level k
    Module src = level_term(i, k);
    Module dst = level_term(i + 1, k);
    if (src.total_dim() == 0 || dst.total_dim() == 0 || i + 1 > hi) return ModuleMap::zero(src, dst);
    const HorseshoeRes& hx = RX.at(i);
    const HorseshoeRes& hx1 = RX.at(i + 1);
    const HorseshoeRes& hz1 = RZ.at(i + 1);
    if (k >= hx.level_sums.size() || k >= hx1.level_sums.size() || k >= hz1.level_sums.size())
      return ModuleMap::zero(src, dst);
    // project onto the RB_{i+1} summand, include as first summand of RZ_{i+1}, then of RX_{i+1}
    ModuleMap projB = hx.level_sums[k].projections[1];
    ModuleMap inclZ = hz1.level_sums[k].inclusions[0];
    ModuleMap inclX = hx1.level_sums[k].inclusions[0];
    return compose(inclX, compose(inclZ, projB));
  };
  auto vertical = [&](int i, size_t k) -> ModuleMap {
    // RX_i level k -> level k-1 (the resolution differential)
    Module src = level_term(i, k);
    if (k == 0 || src.total_dim() == 0) return ModuleMap::zero(src, level_term(i, k - 1));
    const auto& res = RX.at(i).res;
    if (k - 1 < res.diffs.size()) return res.diffs[k - 1];
    return ModuleMap::zero(src, level_term(i, k - 1));
  };
  for (int n = dmin; n < hi; ++n) {
    const DirectSum& dom = tot_sums[n];
    const DirectSum& cod = tot_sums[n + 1];
    ModuleMap d = ModuleMap::zero(dom.total, cod.total);
    for (int i = lo; i <= hi; ++i) {
      int k = i - n;
      if (k < 0) continue;
      size_t dom_idx = static_cast<size_t>(i - lo);
      // horizontal to column i+1, same level
      if (i + 1 <= hi) {
        size_t cod_idx = static_cast<size_t>(i + 1 - lo);
        d = add(d, compose(cod.inclusions[cod_idx], compose(horizontal(i, static_cast<size_t>(k)), dom.projections[dom_idx])));
      }
      // vertical within column i with sign (-1)^i
      if (k >= 1) {
        size_t cod_idx = static_cast<size_t>(i - lo);
        mpq_class sign = (i % 2 == 0) ? mpq_class(1) : mpq_class(-1);
        d = add(d, compose(cod.inclusions[cod_idx],
                           compose(scale(sign, vertical(i, static_cast<size_t>(k))), dom.projections[dom_idx])));
      }
    }
    out.tot.set_diff(n, d);
  }
  // augmentation tot -> x: level-0 components only
  out.aug.source = out.tot;
  out.aug.target = x;
  for (int n = lo; n <= hi; ++n) {
    const DirectSum& ds = tot_sums[n];
    size_t idx = static_cast<size_t>(n - lo);
    out.aug.set_comp(n, compose(RX.at(n).res.augmentation, ds.projections[idx]));
  }
  return out;
}

bool single_term(const Complex& x, int& deg) {
  if (x.is_zero_complex()) return false;
  if (x.lo() != x.hi()) return false;
  deg = x.lo();
  return true;
}

}  // namespace

HyperHomResult hyper_hom(const Complex& x, const Complex& y, int window) {
  HyperHomResult out;
  if (x.is_zero_complex() || y.is_zero_complex()) {
    out.path = "zero complex";
    return out;
  }
  int dx = 0, dy = 0;
  if (single_term(x, dx) && single_term(y, dy)) {
    out.path = "stalk Ext computation";
    out.dim = ext_dim(x.term(dx), y.term(dy), dx - dy);
    return out;
  }
  if (x.algebra()->is_hereditary()) {
    out.path = "hereditary homology decomposition";
    std::map<int, Module> hx, hy;
    for (int i = x.lo(); i <= x.hi(); ++i) hx[i] = homology(x, i);
    for (int j = y.lo(); j <= y.hi(); ++j) hy[j] = homology(y, j);
    for (const auto& [i, hxm] : hx) {
      if (hxm.total_dim() == 0) continue;
      auto same = hy.find(i);
      if (same != hy.end() && same->second.total_dim() > 0) out.dim += hom_dim(hxm, same->second);
      auto below = hy.find(i - 1);
      if (below != hy.end() && below->second.total_dim() > 0) out.dim += ext1(hxm, below->second).dim;
    }
    return out;
  }
  out.path = "projective replacement";
  Replacement rep = projective_replacement(x, window);
  out.window_truncated = rep.truncated;
  out.dim = chain_hom_dim_mod_homotopy(rep.tot, y);
  return out;
}

HyperHomResult hyper_hom_via_replacement(const Complex& x, const Complex& y, int window) {
  HyperHomResult out;
  if (x.is_zero_complex() || y.is_zero_complex()) {
    out.path = "zero complex";
    return out;
  }
  out.path = "projective replacement";
  Replacement rep = projective_replacement(x, window);
  rep.tot.validate();
  rep.aug.validate();
  out.window_truncated = rep.truncated;
  out.dim = chain_hom_dim_mod_homotopy(rep.tot, y);
  return out;
}

}  // namespace excat
