#include "excat/complex.hpp"

#include <stdexcept>

namespace excat {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

}  // namespace

Complex Complex::stalk(const Module& m, int degree) {
  Complex c(m.alg);
  c.set_term(degree, m);
  return c;
}

void Complex::set_term(int n, Module m) {
  if (m.total_dim() == 0) {
    terms_.erase(n);
    return;
  }
  terms_[n] = std::move(m);
}

void Complex::set_diff(int n, ModuleMap d) {
  if (d.is_zero_map()) {
    diffs_.erase(n);
    return;
  }
  diffs_[n] = std::move(d);
}

Module Complex::term(int n) const {
  auto it = terms_.find(n);
  if (it == terms_.end()) return Module::zero(alg_);
  return it->second;
}

ModuleMap Complex::diff(int n) const {
  auto it = diffs_.find(n);
  if (it != diffs_.end()) return it->second;
  return ModuleMap::zero(term(n), term(n + 1));
}

bool Complex::has_term(int n) const { return terms_.count(n) > 0; }

int Complex::lo() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int Complex::hi() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
bool Complex::is_zero_complex() const { return terms_.empty(); }

int Complex::total_dim() const {
  int t = 0;
  for (const auto& [n, m] : terms_) t += m.total_dim();
  return t;
}

void Complex::validate() const {
  for (const auto& [n, d] : diffs_) {
    require(d.source.dims == term(n).dims, "complex: differential source mismatch at degree " + std::to_string(n));
    require(d.target.dims == term(n + 1).dims, "complex: differential target mismatch at degree " + std::to_string(n));
    d.validate();
  }
  for (int n = lo(); n <= hi(); ++n) require(compose(diff(n + 1), diff(n)).is_zero_map(), "complex: d o d != 0");
}

ModuleMap ChainMap::comp(int n) const {
  auto it = comps.find(n);
  if (it != comps.end()) return it->second;
  return ModuleMap::zero(source.term(n), target.term(n));
}

void ChainMap::set_comp(int n, ModuleMap f) {
  if (f.is_zero_map()) {
    comps.erase(n);
    return;
  }
  comps[n] = std::move(f);
}

void ChainMap::validate() const {
  int a = std::min(source.lo(), target.lo()) - 1;
  int b = std::max(source.hi(), target.hi()) + 1;
  for (int n = a; n <= b; ++n)
    require(maps_equal(compose(target.diff(n), comp(n)), compose(comp(n + 1), source.diff(n))),
            "chain map does not commute with differentials at degree " + std::to_string(n));
}

bool ChainMap::is_zero_map() const {
  for (const auto& [n, f] : comps)
    if (!f.is_zero_map()) return false;
  return true;
}

ChainMap chain_identity(const Complex& x) {
  ChainMap f;
  f.source = x;
  f.target = x;
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (x.has_term(n)) f.set_comp(n, ModuleMap::identity(x.term(n)));
  return f;
}

ChainMap chain_zero(const Complex& x, const Complex& y) {
  ChainMap f;
  f.source = x;
  f.target = y;
  return f;
}

ChainMap chain_compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h;
  h.source = f.source;
  h.target = g.target;
  int a = std::min(f.source.lo(), g.target.lo());
  int b = std::max(f.source.hi(), g.target.hi());
  for (int n = a; n <= b; ++n) h.set_comp(n, compose(g.comp(n), f.comp(n)));
  return h;
}

ChainMap chain_add(const ChainMap& f, const ChainMap& g) {
  ChainMap h = f;
  for (int n = std::min(f.source.lo(), g.source.lo()); n <= std::max(f.source.hi(), g.source.hi()); ++n)
    h.set_comp(n, add(f.comp(n), g.comp(n)));
  return h;
}

ChainMap chain_sub(const ChainMap& f, const ChainMap& g) {
  ChainMap h = f;
  for (int n = std::min(f.source.lo(), g.source.lo()); n <= std::max(f.source.hi(), g.source.hi()); ++n)
    h.set_comp(n, sub(f.comp(n), g.comp(n)));
  return h;
}

Complex shift(const Complex& x, int k) {
  Complex y(x.algebra());
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (x.has_term(n)) y.set_term(n - k, x.term(n));
  mpq_class sign = (k % 2 == 0) ? mpq_class(1) : mpq_class(-1);
  for (int n = x.lo() - 1; n <= x.hi(); ++n) {
    ModuleMap d = x.diff(n);
    if (!d.is_zero_map()) y.set_diff(n - k, scale(sign, d));
  }
  return y;
}

ChainMap shift(const ChainMap& f, int k) {
  ChainMap g;
  g.source = shift(f.source, k);
  g.target = shift(f.target, k);
  for (const auto& [n, c] : f.comps) g.set_comp(n - k, c);
  return g;
}

ConeData cone(const ChainMap& f) {
  const Complex& X = f.source;
  const Complex& Y = f.target;
  const AlgebraPtr& A = X.algebra();
  ConeData out{Complex(A), {}, {}};
  int a = std::min(X.lo() - 1, Y.lo());
  int b = std::max(X.hi() - 1, Y.hi());
  std::map<int, DirectSum> sums;
  for (int n = a; n <= b; ++n) {
    DirectSum ds = direct_sum(A, {X.term(n + 1), Y.term(n)});
    sums[n] = ds;
    out.cone.set_term(n, ds.total);
  }
  for (int n = a; n <= b; ++n) {
    if (!sums.count(n) || !sums.count(n + 1)) continue;
    const DirectSum& dom = sums[n];
    const DirectSum& cod = sums[n + 1];
    // [[-d_X, 0], [f, d_Y]]
    ModuleMap d = add(compose(cod.inclusions[0], compose(scale(mpq_class(-1), X.diff(n + 1)), dom.projections[0])),
                      add(compose(cod.inclusions[1], compose(f.comp(n + 1), dom.projections[0])),
                          compose(cod.inclusions[1], compose(Y.diff(n), dom.projections[1]))));
    out.cone.set_diff(n, d);
  }
  out.incl_target.source = Y;
  out.incl_target.target = out.cone;
  out.proj_shift_source.source = out.cone;
  out.proj_shift_source.target = shift(X, 1);
  for (int n = a; n <= b; ++n) {
    out.incl_target.set_comp(n, sums[n].inclusions[1]);
    out.proj_shift_source.set_comp(n, sums[n].projections[0]);
  }
  return out;
}

Complex cylinder(const ChainMap& f) {
  ConeData c = cone(f);
  Complex sc = shift(c.cone, -1);
  // canonical chain map shift^{-1} cone(f) -> X, projection onto X^n
  ChainMap pr;
  pr.source = sc;
  pr.target = f.source;
  for (int n = sc.lo(); n <= sc.hi(); ++n) {
    if (!sc.has_term(n)) continue;
    DirectSum ds = direct_sum(f.source.algebra(), {f.source.term(n), f.target.term(n - 1)});
    pr.set_comp(n, ds.projections[0]);
  }
  pr.validate();
  return cone(pr).cone;
}

Complex cocylinder(const ChainMap& f) {
  ConeData c = cone(f);
  Complex sc = shift(c.cone, -1);
  Complex sy = shift(f.target, -1);
  ChainMap in;
  in.source = sy;
  in.target = sc;
  for (int n = sy.lo(); n <= sy.hi(); ++n) {
    if (!sy.has_term(n)) continue;
    DirectSum ds = direct_sum(f.source.algebra(), {f.source.term(n), f.target.term(n - 1)});
    in.set_comp(n, ds.inclusions[1]);
  }
  in.validate();
  return cone(in).cone;
}

ComplexSum complex_direct_sum(const std::vector<Complex>& parts) {
  require(!parts.empty(), "complex_direct_sum: empty");
  const AlgebraPtr& A = parts[0].algebra();
  ComplexSum out{Complex(A), {}, {}};
  int a = parts[0].lo(), b = parts[0].hi();
  for (const auto& p : parts) {
    a = std::min(a, p.lo());
    b = std::max(b, p.hi());
  }
  std::map<int, DirectSum> sums;
  for (int n = a; n <= b; ++n) {
    std::vector<Module> mods;
    for (const auto& p : parts) mods.push_back(p.term(n));
    sums[n] = direct_sum(A, mods);
    out.total.set_term(n, sums[n].total);
  }
  for (int n = a; n < b; ++n) {
    ModuleMap d = ModuleMap::zero(sums[n].total, sums[n + 1].total);
    for (size_t i = 0; i < parts.size(); ++i)
      d = add(d, compose(sums[n + 1].inclusions[i], compose(parts[i].diff(n), sums[n].projections[i])));
    out.total.set_diff(n, d);
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    ChainMap incl, proj;
    incl.source = parts[i];
    incl.target = out.total;
    proj.source = out.total;
    proj.target = parts[i];
    for (int n = a; n <= b; ++n) {
      incl.set_comp(n, sums[n].inclusions[i]);
      proj.set_comp(n, sums[n].projections[i]);
    }
    out.inclusions.push_back(incl);
    out.projections.push_back(proj);
  }
  return out;
}

std::optional<std::map<int, ModuleMap>> is_null_homotopic(const ChainMap& f) {
  const Complex& X = f.source;
  const Complex& Y = f.target;
  const Field& F = X.algebra()->field();
  int a = std::min(X.lo(), Y.lo());
  int b = std::max(X.hi(), Y.hi()) + 1;

  // Unknowns: coordinates of h^n in hom(X^n, Y^{n-1}) for a <= n <= b.
  std::map<int, std::vector<ModuleMap>> hb;
  std::map<int, int> offset;
  int total = 0;
  for (int n = a; n <= b; ++n) {
    hb[n] = hom_basis(X.term(n), Y.term(n - 1));
    offset[n] = total;
    total += static_cast<int>(hb[n].size());
  }
  // Equations: flatten f^n - d h^n - h^{n+1} d = 0 for each degree.
  std::vector<Matrix> rows_lhs;  // per degree: matrix columns over unknowns
  std::vector<Matrix> rows_rhs;
  int flat_total = 0;
  std::map<int, int> flat_offset;
  for (int n = a; n <= b; ++n) {
    flat_offset[n] = flat_total;
    flat_total += flatten_map(ModuleMap::zero(X.term(n), Y.term(n))).rows();
  }
  Matrix big(F, flat_total, total);
  Matrix rhs(F, flat_total, 1);
  for (int n = a; n <= b; ++n) {
    Matrix fn = flatten_map(f.comp(n));
    for (int r = 0; r < fn.rows(); ++r) rhs.set(flat_offset[n] + r, 0, fn.at(r, 0));
    for (size_t k = 0; k < hb[n].size(); ++k) {
      Matrix col = flatten_map(compose(Y.diff(n - 1), hb[n][k]));
      for (int r = 0; r < col.rows(); ++r) big.set(flat_offset[n] + r, offset[n] + static_cast<int>(k), col.at(r, 0));
    }
    for (size_t k = 0; k < hb[n + 1].size(); ++k) {
      Matrix col = flatten_map(compose(hb[n + 1][k], X.diff(n)));
      for (int r = 0; r < col.rows(); ++r)
        big.set(flat_offset[n] + r, offset[n + 1] + static_cast<int>(k), col.at(r, 0));
    }
  }
  auto sol = big.solve(rhs);
  if (!sol) return std::nullopt;
  std::map<int, ModuleMap> h;
  for (int n = a; n <= b; ++n) {
    ModuleMap hn = ModuleMap::zero(X.term(n), Y.term(n - 1));
    for (size_t k = 0; k < hb[n].size(); ++k)
      hn = add(hn, scale(sol->at(offset[n] + static_cast<int>(k), 0), hb[n][k]));
    h[n] = hn;
  }
  return h;
}

std::vector<ChainMap> chain_map_basis(const Complex& x, const Complex& y) {
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
  std::vector<ChainMap> out;
  if (utot == 0) return out;
  int flat_tot = 0;
  std::map<int, int> foff;
  for (int n = a; n <= b; ++n) {
    foff[n] = flat_tot;
    flat_tot += flatten_map(ModuleMap::zero(x.term(n), y.term(n + 1))).rows();
  }
  Matrix C(F, std::max(flat_tot, 1), utot);
  for (int n = a; n <= b; ++n) {
    for (size_t k = 0; k < ub[n].size(); ++k) {
      Matrix col = flatten_map(compose(y.diff(n), ub[n][k]));
      for (int r = 0; r < col.rows(); ++r)
        C.set(foff[n] + r, uoff[n] + static_cast<int>(k),
              F.add(C.at(foff[n] + r, uoff[n] + static_cast<int>(k)), col.at(r, 0)));
    }
    for (size_t k = 0; k < ub[n + 1].size(); ++k) {
      Matrix col = flatten_map(compose(ub[n + 1][k], x.diff(n)));
      for (int r = 0; r < col.rows(); ++r)
        C.set(foff[n] + r, uoff[n + 1] + static_cast<int>(k),
              F.sub(C.at(foff[n] + r, uoff[n + 1] + static_cast<int>(k)), col.at(r, 0)));
    }
  }
  Matrix K = C.kernel_basis();
  for (int c = 0; c < K.cols(); ++c) {
    ChainMap f = chain_zero(x, y);
    for (int n = a; n <= b; ++n) {
      ModuleMap fn = ModuleMap::zero(x.term(n), y.term(n));
      for (size_t k = 0; k < ub[n].size(); ++k)
        fn = add(fn, scale(K.at(uoff[n] + static_cast<int>(k), c), ub[n][k]));
      f.set_comp(n, fn);
    }
    out.push_back(f);
  }
  return out;
}

bool is_homotopy_equivalence_pair(const ChainMap& f, const ChainMap& g) {
  ChainMap gf = chain_compose(g, f);
  ChainMap fg = chain_compose(f, g);
  return is_null_homotopic(chain_sub(gf, chain_identity(f.source))).has_value() &&
         is_null_homotopic(chain_sub(fg, chain_identity(g.source))).has_value();
}

Complex minimize(const Complex& x) {
  Complex cur = x;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = cur.lo(); n < cur.hi() && !changed; ++n) {
      if (!cur.has_term(n) || !cur.has_term(n + 1)) continue;
      Decomposition dn = decompose(cur.term(n));
      Decomposition dn1 = decompose(cur.term(n + 1));
      ModuleMap d = cur.diff(n);
      for (size_t i = 0; i < dn.summands.size() && !changed; ++i) {
        for (size_t j = 0; j < dn1.summands.size() && !changed; ++j) {
          ModuleMap block = compose(dn1.projections[j], compose(d, dn.inclusions[i]));
          if (!block.is_invertible()) continue;
          // Cancel summand i of X^n against summand j of X^{n+1}.
          ModuleMap binv = block.inverse();
          std::vector<Module> rest_n, rest_n1;
          std::vector<size_t> idx_n, idx_n1;
          for (size_t k = 0; k < dn.summands.size(); ++k)
            if (k != i) {
              rest_n.push_back(dn.summands[k]);
              idx_n.push_back(k);
            }
          for (size_t k = 0; k < dn1.summands.size(); ++k)
            if (k != j) {
              rest_n1.push_back(dn1.summands[k]);
              idx_n1.push_back(k);
            }
          DirectSum dsn = direct_sum(cur.algebra(), rest_n);
          DirectSum dsn1 = direct_sum(cur.algebra(), rest_n1);
          Complex next(cur.algebra());
          for (int m = cur.lo(); m <= cur.hi(); ++m) {
            if (m == n)
              next.set_term(m, dsn.total);
            else if (m == n + 1)
              next.set_term(m, dsn1.total);
            else
              next.set_term(m, cur.term(m));
          }
          // corrected differential U -> V: alpha - beta e^{-1} gamma
          ModuleMap dnew = ModuleMap::zero(dsn.total, dsn1.total);
          for (size_t aa = 0; aa < idx_n.size(); ++aa) {
            for (size_t bb = 0; bb < idx_n1.size(); ++bb) {
              ModuleMap alpha = compose(dn1.projections[idx_n1[bb]], compose(d, dn.inclusions[idx_n[aa]]));
              ModuleMap beta = compose(dn1.projections[idx_n1[bb]], compose(d, dn.inclusions[i]));
              ModuleMap gamma = compose(dn1.projections[j], compose(d, dn.inclusions[idx_n[aa]]));
              ModuleMap corr = sub(alpha, compose(beta, compose(binv, gamma)));
              dnew = add(dnew, compose(dsn1.inclusions[bb], compose(corr, dsn.projections[aa])));
            }
          }
          next.set_diff(n, dnew);
          // incoming differential: drop the A-component
          if (cur.has_term(n - 1)) {
            ModuleMap din = cur.diff(n - 1);
            ModuleMap dn_in = ModuleMap::zero(cur.term(n - 1), dsn.total);
            for (size_t aa = 0; aa < idx_n.size(); ++aa)
              dn_in = add(dn_in, compose(dsn.inclusions[aa], compose(dn.projections[idx_n[aa]], din)));
            next.set_diff(n - 1, dn_in);
          }
          // outgoing differential: restrict to V
          if (cur.has_term(n + 2)) {
            ModuleMap dout = cur.diff(n + 1);
            ModuleMap dn_out = ModuleMap::zero(dsn1.total, cur.term(n + 2));
            for (size_t bb = 0; bb < idx_n1.size(); ++bb)
              dn_out = add(dn_out, compose(compose(dout, dn1.inclusions[idx_n1[bb]]), dsn1.projections[bb]));
            next.set_diff(n + 1, dn_out);
          }
          // untouched differentials
          for (int m = cur.lo() - 1; m <= cur.hi(); ++m) {
            if (m == n - 1 || m == n || m == n + 1) continue;
            ModuleMap dm = cur.diff(m);
            if (!dm.is_zero_map()) next.set_diff(m, dm);
          }
          next.validate();
          cur = next;
          changed = true;
        }
      }
    }
  }
  return cur;
}

Complex opposite_complex(const Complex& x) {
  Complex y(x.algebra()->opposite());
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (x.has_term(n)) y.set_term(-n, dual_module(x.term(n)));
  for (int n = x.lo() - 1; n <= x.hi(); ++n) {
    ModuleMap d = x.diff(n);
    if (!d.is_zero_map()) y.set_diff(-n - 1, dual_map(d));
  }
  return y;
}

}  // namespace excat
