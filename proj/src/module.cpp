#include "excat/module.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace excat {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

}  // namespace

Module Module::zero(const AlgebraPtr& a) {
  Module m;
  m.alg = a;
  m.dims.assign(a->num_vertices(), 0);
  for (int i = 0; i < a->num_arrows(); ++i) m.arrow_maps.emplace_back(a->field(), 0, 0);
  return m;
}

int Module::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

void Module::validate() const {
  require(static_cast<int>(dims.size()) == alg->num_vertices(), "module: wrong number of vertex spaces");
  require(static_cast<int>(arrow_maps.size()) == alg->num_arrows(), "module: wrong number of arrow maps");
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const Arrow& ar = alg->quiver().arrows[a];
    require(arrow_maps[a].rows() == dims[ar.target] && arrow_maps[a].cols() == dims[ar.source],
            "module: arrow map " + ar.name + " has wrong dimensions");
  }
  for (const auto& rel : alg->relations()) {
    int s = alg->quiver().arrows[rel.terms[0].arrows[0]].source;
    int t = alg->quiver().arrows[rel.terms[0].arrows.back()].target;
    Matrix acc(alg->field(), dims[t], dims[s]);
    for (const auto& term : rel.terms) acc = acc + act_path(*this, term.arrows, s).scaled(term.coeff);
    require(acc.is_zero(), "module: a relation does not vanish");
  }
}

ModuleMap ModuleMap::zero(const Module& src, const Module& tgt) {
  ModuleMap f;
  f.source = src;
  f.target = tgt;
  for (int v = 0; v < src.alg->num_vertices(); ++v)
    f.comps.emplace_back(src.alg->field(), tgt.dims[v], src.dims[v]);
  return f;
}

ModuleMap ModuleMap::identity(const Module& m) {
  ModuleMap f;
  f.source = m;
  f.target = m;
  for (int v = 0; v < m.alg->num_vertices(); ++v) f.comps.push_back(Matrix::identity(m.alg->field(), m.dims[v]));
  return f;
}

void ModuleMap::validate() const {
  const auto& q = source.alg->quiver();
  for (int a = 0; a < source.alg->num_arrows(); ++a) {
    const Arrow& ar = q.arrows[a];
    Matrix lhs = comps[ar.target] * source.arrow_maps[a];
    Matrix rhs = target.arrow_maps[a] * comps[ar.source];
    require(lhs == rhs, "module map: intertwining fails at arrow " + ar.name);
  }
}

bool ModuleMap::is_zero_map() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

bool ModuleMap::is_injective() const {
  for (size_t v = 0; v < comps.size(); ++v)
    if (comps[v].rank() != source.dims[v]) return false;
  return true;
}

bool ModuleMap::is_surjective() const {
  for (size_t v = 0; v < comps.size(); ++v)
    if (comps[v].rank() != target.dims[v]) return false;
  return true;
}

bool ModuleMap::is_invertible() const {
  for (size_t v = 0; v < comps.size(); ++v)
    if (source.dims[v] != target.dims[v] || !comps[v].is_invertible()) return false;
  return true;
}

ModuleMap ModuleMap::inverse() const {
  ModuleMap f;
  f.source = target;
  f.target = source;
  for (const auto& c : comps) {
    auto inv = c.inverse();
    require(inv.has_value(), "module map: not invertible");
    f.comps.push_back(*inv);
  }
  return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h;
  h.source = f.source;
  h.target = g.target;
  for (size_t v = 0; v < f.comps.size(); ++v) h.comps.push_back(g.comps[v] * f.comps[v]);
  return h;
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h = f;
  for (size_t v = 0; v < f.comps.size(); ++v) h.comps[v] = f.comps[v] + g.comps[v];
  return h;
}

ModuleMap sub(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h = f;
  for (size_t v = 0; v < f.comps.size(); ++v) h.comps[v] = f.comps[v] - g.comps[v];
  return h;
}

ModuleMap scale(const mpq_class& c, const ModuleMap& f) {
  ModuleMap h = f;
  for (size_t v = 0; v < f.comps.size(); ++v) h.comps[v] = f.comps[v].scaled(c);
  return h;
}

bool maps_equal(const ModuleMap& f, const ModuleMap& g) {
  if (f.comps.size() != g.comps.size()) return false;
  for (size_t v = 0; v < f.comps.size(); ++v)
    if (f.comps[v] != g.comps[v]) return false;
  return true;
}

Matrix act_path(const Module& m, const std::vector<int>& arrows, int source_vertex) {
  const Field& F = m.alg->field();
  Matrix acc = Matrix::identity(F, m.dims[source_vertex]);
  for (int a : arrows) acc = m.arrow_maps[a] * acc;
  return acc;
}

DirectSum direct_sum(const AlgebraPtr& alg, const std::vector<Module>& parts) {
  const Field& F = alg->field();
  DirectSum ds;
  ds.total.alg = alg;
  ds.total.dims.assign(alg->num_vertices(), 0);
  for (const auto& p : parts)
    for (int v = 0; v < alg->num_vertices(); ++v) ds.total.dims[v] += p.dims[v];
  for (int a = 0; a < alg->num_arrows(); ++a) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.arrow_maps[a]);
    ds.total.arrow_maps.push_back(Matrix::block_diag(F, blocks));
  }
  std::vector<int> offset(alg->num_vertices(), 0);
  for (const auto& p : parts) {
    ModuleMap incl = ModuleMap::zero(p, ds.total);
    ModuleMap proj = ModuleMap::zero(ds.total, p);
    for (int v = 0; v < alg->num_vertices(); ++v) {
      for (int i = 0; i < p.dims[v]; ++i) {
        incl.comps[v].set(offset[v] + i, i, mpq_class(1));
        proj.comps[v].set(i, offset[v] + i, mpq_class(1));
      }
    }
    ds.inclusions.push_back(incl);
    ds.projections.push_back(proj);
    for (int v = 0; v < alg->num_vertices(); ++v) offset[v] += p.dims[v];
  }
  return ds;
}

ModuleMap direct_sum_map(const DirectSum& src, const DirectSum& tgt,
                         const std::vector<std::vector<ModuleMap>>& blocks) {
  ModuleMap f = ModuleMap::zero(src.total, tgt.total);
  for (size_t i = 0; i < tgt.inclusions.size(); ++i)
    for (size_t j = 0; j < src.projections.size(); ++j)
      f = add(f, compose(tgt.inclusions[i], compose(blocks[i][j], src.projections[j])));
  return f;
}

namespace {

struct HomLayout {
  std::vector<int> offset;  // per vertex
  int total = 0;
};

HomLayout hom_layout(const Module& x, const Module& y) {
  HomLayout L;
  L.offset.resize(x.alg->num_vertices());
  for (int v = 0; v < x.alg->num_vertices(); ++v) {
    L.offset[v] = L.total;
    L.total += x.dims[v] * y.dims[v];
  }
  return L;
}

}  // namespace

std::vector<ModuleMap> hom_basis(const Module& x, const Module& y) {
  require(x.alg == y.alg, "hom_basis: different algebras");
  const Field& F = x.alg->field();
  const Quiver& q = x.alg->quiver();
  HomLayout L = hom_layout(x, y);

  int n_constraints = 0;
  for (int a = 0; a < x.alg->num_arrows(); ++a)
    n_constraints += y.dims[q.arrows[a].target] * x.dims[q.arrows[a].source];

  Matrix C(F, n_constraints, L.total);
  int row = 0;
  for (int a = 0; a < x.alg->num_arrows(); ++a) {
    int s = q.arrows[a].source, t = q.arrows[a].target;
    const Matrix& Xa = x.arrow_maps[a];
    const Matrix& Ya = y.arrow_maps[a];
    for (int i = 0; i < y.dims[t]; ++i) {
      for (int j = 0; j < x.dims[s]; ++j) {
        // (phi_t * Xa - Ya * phi_s)[i,j] = 0
        for (int k = 0; k < x.dims[t]; ++k) {
          int idx = L.offset[t] + i * x.dims[t] + k;
          C.set(row, idx, F.add(C.at(row, idx), Xa.at(k, j)));
        }
        for (int k = 0; k < y.dims[s]; ++k) {
          int idx = L.offset[s] + k * x.dims[s] + j;
          C.set(row, idx, F.sub(C.at(row, idx), Ya.at(i, k)));
        }
        ++row;
      }
    }
  }
  Matrix K = C.kernel_basis();
  std::vector<ModuleMap> out;
  for (int c = 0; c < K.cols(); ++c) out.push_back(map_from_flat(x, y, K.column(c)));
  return out;
}

int hom_dim(const Module& x, const Module& y) { return static_cast<int>(hom_basis(x, y).size()); }

Matrix flatten_map(const ModuleMap& f) {
  const Field& F = f.source.alg->field();
  HomLayout L = hom_layout(f.source, f.target);
  Matrix flat(F, L.total, 1);
  for (int v = 0; v < f.source.alg->num_vertices(); ++v)
    for (int i = 0; i < f.target.dims[v]; ++i)
      for (int j = 0; j < f.source.dims[v]; ++j) flat.set(L.offset[v] + i * f.source.dims[v] + j, 0, f.comps[v].at(i, j));
  return flat;
}

ModuleMap map_from_flat(const Module& src, const Module& tgt, const Matrix& flat) {
  HomLayout L = hom_layout(src, tgt);
  ModuleMap f = ModuleMap::zero(src, tgt);
  for (int v = 0; v < src.alg->num_vertices(); ++v)
    for (int i = 0; i < tgt.dims[v]; ++i)
      for (int j = 0; j < src.dims[v]; ++j) f.comps[v].set(i, j, flat.at(L.offset[v] + i * src.dims[v] + j, 0));
  return f;
}

std::optional<Matrix> coords_in_basis(const std::vector<ModuleMap>& basis, const ModuleMap& f) {
  const Field& F = f.source.alg->field();
  Matrix flat = flatten_map(f);
  Matrix B(F, flat.rows(), static_cast<int>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) {
    Matrix col = flatten_map(basis[k]);
    for (int i = 0; i < flat.rows(); ++i) B.set(i, static_cast<int>(k), col.at(i, 0));
  }
  return B.solve(flat);
}

ModuleMap combine_basis(const std::vector<ModuleMap>& basis, const Matrix& coords) {
  require(!basis.empty(), "combine_basis: empty basis");
  ModuleMap f = ModuleMap::zero(basis[0].source, basis[0].target);
  for (size_t k = 0; k < basis.size(); ++k) f = add(f, scale(coords.at(static_cast<int>(k), 0), basis[k]));
  return f;
}

SubquotientData kernel(const ModuleMap& f) {
  const AlgebraPtr& A = f.source.alg;
  const Field& F = A->field();
  const Quiver& q = A->quiver();
  SubquotientData out;
  out.mod.alg = A;
  std::vector<Matrix> incls;
  for (int v = 0; v < A->num_vertices(); ++v) {
    Matrix K = f.comps[v].kernel_basis();
    out.mod.dims.push_back(K.cols());
    incls.push_back(K);
  }
  for (int a = 0; a < A->num_arrows(); ++a) {
    int s = q.arrows[a].source, t = q.arrows[a].target;
    // incl_t * k_a = X_a * incl_s
    Matrix rhs = f.source.arrow_maps[a] * incls[s];
    auto ka = incls[t].solve(rhs);
    require(ka.has_value(), "kernel: induced arrow map does not exist");
    out.mod.arrow_maps.push_back(*ka);
  }
  out.map.source = out.mod;
  out.map.target = f.source;
  out.map.comps = incls;
  return out;
}

ImageData image(const ModuleMap& f) {
  const AlgebraPtr& A = f.source.alg;
  const Quiver& q = A->quiver();
  ImageData out;
  out.mod.alg = A;
  std::vector<Matrix> incls;
  for (int v = 0; v < A->num_vertices(); ++v) {
    Matrix B = f.comps[v].column_space_basis();
    out.mod.dims.push_back(B.cols());
    incls.push_back(B);
  }
  for (int a = 0; a < A->num_arrows(); ++a) {
    int s = q.arrows[a].source, t = q.arrows[a].target;
    Matrix rhs = f.target.arrow_maps[a] * incls[s];
    auto ia = incls[t].solve(rhs);
    require(ia.has_value(), "image: induced arrow map does not exist");
    out.mod.arrow_maps.push_back(*ia);
  }
  out.inclusion.source = out.mod;
  out.inclusion.target = f.target;
  out.inclusion.comps = incls;
  out.corestriction.source = f.source;
  out.corestriction.target = out.mod;
  for (int v = 0; v < A->num_vertices(); ++v) {
    auto c = incls[v].solve(f.comps[v]);
    require(c.has_value(), "image: corestriction does not exist");
    out.corestriction.comps.push_back(*c);
  }
  return out;
}

SubquotientData cokernel(const ModuleMap& f) {
  const AlgebraPtr& A = f.target.alg;
  const Quiver& q = A->quiver();
  SubquotientData out;
  out.mod.alg = A;
  std::vector<Matrix> projs;
  for (int v = 0; v < A->num_vertices(); ++v) {
    // Rows of P span the annihilator of im(f_v): ker(P) = im(f_v).
    Matrix P = f.comps[v].transpose().kernel_basis().transpose();
    out.mod.dims.push_back(P.rows());
    projs.push_back(P);
  }
  for (int a = 0; a < A->num_arrows(); ++a) {
    int s = q.arrows[a].source, t = q.arrows[a].target;
    // c_a * proj_s = proj_t * Y_a
    Matrix rhs = (projs[t] * f.target.arrow_maps[a]).transpose();
    auto cat = projs[s].transpose().solve(rhs);
    require(cat.has_value(), "cokernel: induced arrow map does not exist");
    out.mod.arrow_maps.push_back(cat->transpose());
  }
  out.map.source = f.target;
  out.map.target = out.mod;
  out.map.comps = projs;
  return out;
}

std::optional<ModuleMap> lift_through(const ModuleMap& g, const ModuleMap& f) {
  // find h : f.source -> g.source with g h = f
  std::vector<ModuleMap> H = hom_basis(f.source, g.source);
  if (H.empty()) {
    if (f.is_zero_map()) return ModuleMap::zero(f.source, g.source);
    return std::nullopt;
  }
  const Field& F = f.source.alg->field();
  Matrix flat_f = flatten_map(f);
  Matrix B(F, flat_f.rows(), static_cast<int>(H.size()));
  for (size_t k = 0; k < H.size(); ++k) {
    Matrix col = flatten_map(compose(g, H[k]));
    for (int i = 0; i < flat_f.rows(); ++i) B.set(i, static_cast<int>(k), col.at(i, 0));
  }
  auto c = B.solve(flat_f);
  if (!c) return std::nullopt;
  return combine_basis(H, *c);
}

std::optional<ModuleMap> extend_through(const ModuleMap& g, const ModuleMap& f) {
  // find h : g.target -> f.target with h g = f
  std::vector<ModuleMap> H = hom_basis(g.target, f.target);
  if (H.empty()) {
    if (f.is_zero_map()) return ModuleMap::zero(g.target, f.target);
    return std::nullopt;
  }
  const Field& F = f.source.alg->field();
  Matrix flat_f = flatten_map(f);
  Matrix B(F, flat_f.rows(), static_cast<int>(H.size()));
  for (size_t k = 0; k < H.size(); ++k) {
    Matrix col = flatten_map(compose(H[k], g));
    for (int i = 0; i < flat_f.rows(); ++i) B.set(i, static_cast<int>(k), col.at(i, 0));
  }
  auto c = B.solve(flat_f);
  if (!c) return std::nullopt;
  return combine_basis(H, *c);
}

ModuleMap factor_through_mono(const ModuleMap& incl, const ModuleMap& f) {
  ModuleMap h;
  h.source = f.source;
  h.target = incl.source;
  for (size_t v = 0; v < f.comps.size(); ++v) {
    auto x = incl.comps[v].solve(f.comps[v]);
    require(x.has_value(), "factor_through_mono: does not factor");
    h.comps.push_back(*x);
  }
  return h;
}

ModuleMap factor_through_epi(const ModuleMap& proj, const ModuleMap& f) {
  ModuleMap h;
  h.source = proj.target;
  h.target = f.target;
  for (size_t v = 0; v < f.comps.size(); ++v) {
    auto x = proj.comps[v].transpose().solve(f.comps[v].transpose());
    require(x.has_value(), "factor_through_epi: does not factor");
    h.comps.push_back(x->transpose());
  }
  return h;
}

PullbackData pullback(const ModuleMap& f, const ModuleMap& g) {
  const AlgebraPtr& A = f.source.alg;
  DirectSum ds = direct_sum(A, {f.source, g.source});
  ModuleMap diff = sub(compose(f, ds.projections[0]), compose(g, ds.projections[1]));
  SubquotientData k = kernel(diff);
  PullbackData out;
  out.mod = k.mod;
  out.to_a = compose(ds.projections[0], k.map);
  out.to_b = compose(ds.projections[1], k.map);
  return out;
}

ModuleMap into_pullback(const PullbackData& pb, const ModuleMap& u, const ModuleMap& v) {
  // (u, v) lands in the kernel defining the pullback; factor through it.
  const AlgebraPtr& A = u.target.alg;
  DirectSum ds = direct_sum(A, {u.target, v.target});
  ModuleMap uv = add(compose(ds.inclusions[0], u), compose(ds.inclusions[1], v));
  // The pullback inclusion into A (+) B is recoverable from to_a, to_b.
  ModuleMap incl = add(compose(ds.inclusions[0], pb.to_a), compose(ds.inclusions[1], pb.to_b));
  return factor_through_mono(incl, uv);
}

PushoutData pushout(const ModuleMap& f, const ModuleMap& g) {
  const AlgebraPtr& A = f.target.alg;
  DirectSum ds = direct_sum(A, {f.target, g.target});
  ModuleMap diff = sub(compose(ds.inclusions[0], f), compose(ds.inclusions[1], g));
  SubquotientData c = cokernel(diff);
  PushoutData out;
  out.mod = c.mod;
  out.from_a = compose(c.map, ds.inclusions[0]);
  out.from_b = compose(c.map, ds.inclusions[1]);
  return out;
}

Module simple_module(const AlgebraPtr& alg, int vertex) {
  Module m = Module::zero(alg);
  m.dims[vertex] = 1;
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const Arrow& ar = alg->quiver().arrows[a];
    m.arrow_maps[a] = Matrix(alg->field(), m.dims[ar.target], m.dims[ar.source]);
  }
  return m;
}

Module indecomposable_projective(const AlgebraPtr& alg, int vertex) {
  const Field& F = alg->field();
  // Basis: residue paths starting at `vertex`, graded by their endpoint.
  std::vector<std::vector<int>> paths_at(alg->num_vertices());  // basis indices
  std::map<int, std::pair<int, int>> slot;                      // basis index -> (vertex, local)
  for (int b = 0; b < alg->dim(); ++b) {
    const BasisPath& p = alg->basis()[b];
    if (p.source != vertex) continue;
    slot[b] = {p.target, static_cast<int>(paths_at[p.target].size())};
    paths_at[p.target].push_back(b);
  }
  Module m;
  m.alg = alg;
  for (int v = 0; v < alg->num_vertices(); ++v) m.dims.push_back(static_cast<int>(paths_at[v].size()));
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const Arrow& ar = alg->quiver().arrows[a];
    Matrix M(F, m.dims[ar.target], m.dims[ar.source]);
    for (int j = 0; j < m.dims[ar.source]; ++j) {
      const BasisPath& p = alg->basis()[paths_at[ar.source][j]];
      std::vector<int> comp = p.arrows;
      comp.push_back(a);
      std::vector<mpq_class> red = alg->reduce_path(comp);
      for (int b = 0; b < alg->dim(); ++b) {
        if (red[b] == 0) continue;
        auto it = slot.find(b);
        require(it != slot.end() && it->second.first == ar.target, "projective: reduction left the span");
        M.set(it->second.second, j, red[b]);
      }
    }
    m.arrow_maps.push_back(M);
  }
  return m;
}

Module indecomposable_injective(const AlgebraPtr& alg, int vertex) {
  return dual_module(indecomposable_projective(alg->opposite(), vertex));
}

Module regular_module(const AlgebraPtr& alg) {
  std::vector<Module> parts;
  for (int v = 0; v < alg->num_vertices(); ++v) parts.push_back(indecomposable_projective(alg, v));
  return direct_sum(alg, parts).total;
}

Module dual_module(const Module& m) {
  AlgebraPtr op = m.alg->opposite();
  Module d;
  d.alg = op;
  d.dims = m.dims;
  for (int a = 0; a < op->num_arrows(); ++a) d.arrow_maps.push_back(m.arrow_maps[a].transpose());
  return d;
}

ModuleMap dual_map(const ModuleMap& f) {
  ModuleMap d;
  d.source = dual_module(f.target);
  d.target = dual_module(f.source);
  for (const auto& c : f.comps) d.comps.push_back(c.transpose());
  return d;
}

Module opposite_module(const Module& m) { return dual_module(m); }
ModuleMap opposite_map(const ModuleMap& f) { return dual_map(f); }

std::vector<int> radical_dims(const Module& m) {
  const Field& F = m.alg->field();
  std::vector<int> out;
  for (int v = 0; v < m.alg->num_vertices(); ++v) {
    Matrix stack(F, m.dims[v], 0);
    for (int a = 0; a < m.alg->num_arrows(); ++a)
      if (m.alg->quiver().arrows[a].target == v) stack = stack.hstack(m.arrow_maps[a]);
    out.push_back(stack.rank());
  }
  return out;
}

std::vector<int> top_dims(const Module& m) {
  std::vector<int> rad = radical_dims(m);
  std::vector<int> out;
  for (int v = 0; v < m.alg->num_vertices(); ++v) out.push_back(m.dims[v] - rad[v]);
  return out;
}

CoverData projective_cover(const Module& m) {
  const AlgebraPtr& A = m.alg;
  const Field& F = A->field();
  // Radical representatives per vertex, then greedy lifts of a top basis.
  std::vector<Module> parts;
  std::vector<std::pair<int, Matrix>> generators;  // (vertex, column in m.dims[v])
  for (int v = 0; v < A->num_vertices(); ++v) {
    Matrix rad(F, m.dims[v], 0);
    for (int a = 0; a < A->num_arrows(); ++a)
      if (A->quiver().arrows[a].target == v) rad = rad.hstack(m.arrow_maps[a]);
    Matrix span = rad.column_space_basis();
    for (int i = 0; i < m.dims[v]; ++i) {
      Matrix e(F, m.dims[v], 1);
      e.set(i, 0, mpq_class(1));
      if (span.contains_columns(e)) continue;
      span = span.hstack(e);
      parts.push_back(indecomposable_projective(A, v));
      generators.emplace_back(v, e);
    }
  }
  DirectSum ds = direct_sum(A, parts);
  CoverData out;
  out.proj = ds.total;
  ModuleMap onto = ModuleMap::zero(ds.total, m);
  for (size_t g = 0; g < generators.size(); ++g) {
    int v = generators[g].first;
    const Matrix& gen = generators[g].second;
    // Map P(v) -> m sending the idempotent path to gen.
    ModuleMap piece = ModuleMap::zero(parts[g], m);
    // Recover the path grading of P(v) the same way it was built.
    std::vector<std::vector<int>> paths_at(A->num_vertices());
    for (int b = 0; b < A->dim(); ++b) {
      const BasisPath& p = A->basis()[b];
      if (p.source == v) paths_at[p.target].push_back(b);
    }
    for (int w = 0; w < A->num_vertices(); ++w) {
      for (size_t j = 0; j < paths_at[w].size(); ++j) {
        const BasisPath& p = A->basis()[paths_at[w][j]];
        Matrix col = act_path(m, p.arrows, v) * gen;
        for (int i = 0; i < m.dims[w]; ++i) piece.comps[w].set(i, static_cast<int>(j), col.at(i, 0));
      }
    }
    onto = add(onto, compose(piece, ds.projections[g]));
  }
  require(onto.is_surjective(), "projective_cover: top lift is not surjective");
  out.onto = onto;
  return out;
}

ProjectiveResolution projective_resolution(const Module& m, int length) {
  ProjectiveResolution res;
  CoverData c0 = projective_cover(m);
  res.terms.push_back(c0.proj);
  res.augmentation = c0.onto;
  SubquotientData syz = kernel(c0.onto);
  for (int k = 0; k < length; ++k) {
    if (syz.mod.is_zero()) {
      res.finite = true;
      return res;
    }
    CoverData ck = projective_cover(syz.mod);
    res.diffs.push_back(compose(syz.map, ck.onto));
    res.terms.push_back(ck.proj);
    syz = kernel(ck.onto);
  }
  res.finite = syz.mod.is_zero();
  return res;
}

int ext_dim(const Module& x, const Module& y, int k) {
  if (k < 0) return 0;
  if (k == 0) return hom_dim(x, y);
  ProjectiveResolution res = projective_resolution(x, k + 1);
  if (static_cast<int>(res.terms.size()) <= k) return 0;  // resolution stopped early
  auto delta_rank_and_ker = [&](int i) -> std::pair<int, int> {
    // delta^i : Hom(P^{-i}, y) -> Hom(P^{-i+1}... careful: precompose with diffs[i]
    // delta^i(phi) = phi o d where d = diffs[i] : P^{-i-1} -> P^{-i}
    std::vector<ModuleMap> Bi = hom_basis(res.terms[i], y);
    if (static_cast<int>(res.terms.size()) <= i + 1) {
      return {0, static_cast<int>(Bi.size())};  // next term zero: delta = 0
    }
    std::vector<ModuleMap> Bn = hom_basis(res.terms[i + 1], y);
    const Field& F = x.alg->field();
    int flat_rows = Bn.empty() ? 0 : flatten_map(Bn[0]).rows();
    Matrix M(F, flat_rows == 0 ? 1 : flat_rows, static_cast<int>(Bi.size()));
    for (size_t c = 0; c < Bi.size(); ++c) {
      ModuleMap comp = compose(Bi[c], res.diffs[i]);
      Matrix col = flatten_map(comp);
      for (int r = 0; r < col.rows(); ++r) M.set(r, static_cast<int>(c), col.at(r, 0));
    }
    int rk = M.rank();
    return {rk, static_cast<int>(Bi.size()) - rk};
  };
  auto [rank_k, ker_k] = delta_rank_and_ker(k);
  auto [rank_km1, ker_km1] = delta_rank_and_ker(k - 1);
  (void)ker_km1;
  return ker_k - rank_km1;
}

Ext1Machine ext1_machine(const Module& x, const Module& y) {
  Ext1Machine m;
  m.x = x;
  m.y = y;
  m.cover = projective_cover(x);
  m.omega = kernel(m.cover.onto);
  std::vector<ModuleMap> BP = hom_basis(m.cover.proj, y);
  std::vector<ModuleMap> BO = hom_basis(m.omega.mod, y);
  const Field& F = x.alg->field();
  if (BO.empty()) return m;
  int rows = flatten_map(BO[0]).rows();
  Matrix R(F, rows, static_cast<int>(BP.size()));
  for (size_t c = 0; c < BP.size(); ++c) {
    Matrix col = flatten_map(compose(BP[c], m.omega.map));
    for (int r = 0; r < rows; ++r) R.set(r, static_cast<int>(c), col.at(r, 0));
  }
  // Greedy complement of im(R) inside the span of flattened BO elements.
  Matrix span = R.column_space_basis();
  for (size_t k = 0; k < BO.size(); ++k) {
    Matrix col = flatten_map(BO[k]);
    if (span.contains_columns(col)) continue;
    span = span.hstack(col);
    m.cocycles.push_back(BO[k]);
  }
  return m;
}

Extension Ext1Machine::realize(const Matrix& coeffs) const {
  const AlgebraPtr& A = x.alg;
  ModuleMap phi = ModuleMap::zero(omega.mod, y);
  for (size_t k = 0; k < cocycles.size(); ++k) phi = add(phi, scale(coeffs.at(static_cast<int>(k), 0), cocycles[k]));
  DirectSum ds = direct_sum(A, {y, cover.proj});
  ModuleMap u = sub(compose(ds.inclusions[0], phi), compose(ds.inclusions[1], omega.map));
  SubquotientData cok = cokernel(u);
  Extension e;
  e.middle = cok.mod;
  e.incl = compose(cok.map, ds.inclusions[0]);
  ModuleMap zero_pi = add(compose(ModuleMap::zero(y, x), ds.projections[0]), compose(cover.onto, ds.projections[1]));
  e.proj = factor_through_epi(cok.map, zero_pi);
  return e;
}

Ext1Data ext1(const Module& x, const Module& y) {
  Ext1Machine m = ext1_machine(x, y);
  Ext1Data d;
  d.dim = static_cast<int>(m.cocycles.size());
  const Field& F = x.alg->field();
  for (int k = 0; k < d.dim; ++k) {
    Matrix c(F, d.dim, 1);
    c.set(k, 0, mpq_class(1));
    d.basis.push_back(m.realize(c));
  }
  return d;
}

namespace {

Matrix total_matrix(const ModuleMap& f) {
  std::vector<Matrix> blocks;
  for (const auto& c : f.comps) blocks.push_back(c);
  return Matrix::block_diag(f.source.alg->field(), blocks);
}

// Characteristic polynomial coefficients (monic, c[0] = constant term)
// via Faddeev-LeVerrier; rationals only.
std::vector<mpq_class> charpoly_rationals(const Matrix& A) {
  int n = A.rows();
  const Field F = Field::rationals();
  std::vector<mpq_class> c(n + 1, mpq_class(0));
  c[n] = 1;
  Matrix M = Matrix::zero(F, n, n);
  mpq_class ck(1);
  for (int k = 1; k <= n; ++k) {
    Matrix shifted = M;
    for (int i = 0; i < n; ++i) shifted.set(i, i, shifted.at(i, i) + ck);
    M = A * shifted;
    mpq_class tr(0);
    for (int i = 0; i < n; ++i) tr += M.at(i, i);
    ck = -tr / k;
    c[n - k] = ck;
  }
  return c;
}

std::vector<mpq_class> rational_root_candidates(const std::vector<mpq_class>& poly) {
  // Strip zero roots, clear denominators, then the rational root theorem.
  size_t lo = 0;
  while (lo < poly.size() && poly[lo] == 0) ++lo;
  if (lo >= poly.size()) return {mpq_class(0)};
  mpz_class den_lcm(1);
  for (size_t i = lo; i < poly.size(); ++i) {
    mpz_class d = poly[i].get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  mpz_class a0 = mpq_class(poly[lo] * den_lcm).get_num();
  mpz_class an = mpq_class(poly.back() * den_lcm).get_num();
  if (a0 < 0) a0 = -a0;
  if (an < 0) an = -an;
  auto small_divisors = [](const mpz_class& n) {
    std::vector<mpz_class> out;
    mpz_class limit(1000);
    for (mpz_class d = 1; d * d <= n && d <= limit; ++d) {
      if (n % d == 0) {
        out.push_back(d);
        out.push_back(n / d);
      }
      if (out.size() > 100) break;
    }
    if (out.empty()) out.push_back(mpz_class(1));
    return out;
  };
  std::vector<mpq_class> cands{mpq_class(0)};
  auto ps = small_divisors(a0);
  auto qs = small_divisors(an);
  auto eval = [&](const mpq_class& x) {
    mpq_class acc(0);
    for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
    return acc;
  };
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      mpq_class r(p, q);
      r.canonicalize();
      for (int sign = 0; sign < 2; ++sign) {
        mpq_class cand = sign ? mpq_class(-r) : r;
        if (eval(cand) == 0 && std::find(cands.begin(), cands.end(), cand) == cands.end()) cands.push_back(cand);
      }
    }
  }
  return cands;
}

ModuleMap power_map(const ModuleMap& f, int n) {
  ModuleMap acc = ModuleMap::identity(f.source);
  ModuleMap base = f;
  while (n > 0) {
    if (n & 1) acc = compose(base, acc);
    base = compose(base, base);
    n >>= 1;
  }
  return acc;
}

struct FittingSplit {
  bool split = false;
  SubquotientData ker;
  ImageData img;
};

FittingSplit try_fitting(const Module& m, const ModuleMap& f) {
  FittingSplit out;
  int N = m.total_dim();
  ModuleMap fN = power_map(f, std::max(1, N));
  SubquotientData K = kernel(fN);
  if (K.mod.total_dim() == 0 || K.mod.total_dim() == m.total_dim()) return out;
  ImageData I = image(fN);
  if (K.mod.total_dim() + I.mod.total_dim() != m.total_dim()) return out;
  // Internal directness: [i_K | i_I] invertible per vertex.
  for (int v = 0; v < m.alg->num_vertices(); ++v) {
    Matrix J = K.map.comps[v].hstack(I.inclusion.comps[v]);
    if (J.rows() != J.cols() || !J.is_invertible()) return out;
  }
  out.split = true;
  out.ker = K;
  out.img = I;
  return out;
}

void decompose_rec(const Module& m, const ModuleMap& incl, const ModuleMap& proj, Decomposition& out);

void split_and_recurse(const Module& m, const ModuleMap& incl, const ModuleMap& proj, const FittingSplit& fs,
                       Decomposition& out) {
  DirectSum ds = direct_sum(m.alg, {fs.ker.mod, fs.img.mod});
  ModuleMap iso = add(compose(fs.ker.map, ds.projections[0]), compose(fs.img.inclusion, ds.projections[1]));
  ModuleMap iso_inv = iso.inverse();
  ModuleMap pK = compose(ds.projections[0], iso_inv);
  ModuleMap pI = compose(ds.projections[1], iso_inv);
  decompose_rec(fs.ker.mod, compose(incl, fs.ker.map), compose(pK, proj), out);
  decompose_rec(fs.img.mod, compose(incl, fs.img.inclusion), compose(pI, proj), out);
}

void decompose_rec(const Module& m, const ModuleMap& incl, const ModuleMap& proj, Decomposition& out) {
  if (m.total_dim() == 0) return;
  std::vector<ModuleMap> end = hom_basis(m, m);
  if (end.size() == 1) {
    out.summands.push_back(m);
    out.inclusions.push_back(incl);
    out.projections.push_back(proj);
    return;
  }
  const Field& F = m.alg->field();
  ModuleMap idm = ModuleMap::identity(m);

  std::vector<ModuleMap> candidates;
  for (const auto& f : end) candidates.push_back(f);
  for (size_t i = 0; i < end.size(); ++i)
    for (size_t j = i + 1; j < end.size() && candidates.size() < 64; ++j) {
      candidates.push_back(add(end[i], end[j]));
      candidates.push_back(compose(end[i], end[j]));
    }

  auto shifted_candidates = [&](const ModuleMap& f) {
    std::vector<ModuleMap> shifts{f};
    if (F.is_prime_field()) {
      for (const auto& lam : F.enumerate())
        if (lam != 0) shifts.push_back(sub(f, scale(lam, idm)));
    } else {
      Matrix big = total_matrix(f);
      for (const auto& lam : rational_root_candidates(charpoly_rationals(big)))
        if (lam != 0) shifts.push_back(sub(f, scale(lam, idm)));
    }
    return shifts;
  };

  for (const auto& cand : candidates) {
    for (const auto& f : shifted_candidates(cand)) {
      FittingSplit fs = try_fitting(m, f);
      if (fs.split) {
        split_and_recurse(m, incl, proj, fs, out);
        return;
      }
    }
  }

  // Exhaustive fallback over a small prime field.
  if (F.is_prime_field()) {
    long p = F.characteristic();
    double count = 1;
    for (size_t i = 0; i < end.size(); ++i) count *= static_cast<double>(p);
    if (count <= 65536.0) {
      std::vector<long> digits(end.size(), 0);
      while (true) {
        size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
        if (pos == digits.size()) break;
        ModuleMap f = ModuleMap::zero(m, m);
        for (size_t i = 0; i < end.size(); ++i)
          if (digits[i]) f = add(f, scale(mpq_class(digits[i]), end[i]));
        FittingSplit fs = try_fitting(m, f);
        if (fs.split) {
          split_and_recurse(m, incl, proj, fs, out);
          return;
        }
      }
      // Every endomorphism is nilpotent or invertible: local ring.
      out.summands.push_back(m);
      out.inclusions.push_back(incl);
      out.projections.push_back(proj);
      return;
    }
  }

  // No splitting endomorphism found among the candidates. Accept the module
  // as indecomposable only if every candidate was nilpotent or invertible.
  for (const auto& cand : candidates) {
    ModuleMap fN = power_map(cand, std::max(1, m.total_dim()));
    bool nilpotent = fN.is_zero_map();
    bool invertible = cand.is_invertible();
    if (!nilpotent && !invertible) throw std::runtime_error("splitting field insufficient");
  }
  out.summands.push_back(m);
  out.inclusions.push_back(incl);
  out.projections.push_back(proj);
}

}  // namespace

Decomposition decompose(const Module& m) {
  Decomposition out;
  decompose_rec(m, ModuleMap::identity(m), ModuleMap::identity(m), out);
  return out;
}

bool is_indecomposable(const Module& m) {
  if (m.total_dim() == 0) return false;
  return decompose(m).summands.size() == 1;
}

namespace {

std::optional<ModuleMap> indec_isomorphism(const Module& x, const Module& y) {
  if (x.dims != y.dims) return std::nullopt;
  // For indecomposables the non-isomorphisms form a subspace, so some
  // basis element of Hom(x, y) is invertible whenever x and y are
  // isomorphic at all.
  for (const auto& f : hom_basis(x, y))
    if (f.is_invertible()) return f;
  return std::nullopt;
}

}  // namespace

std::optional<ModuleMap> find_isomorphism(const Module& x, const Module& y) {
  if (x.dims != y.dims) return std::nullopt;
  if (x.total_dim() == 0) return ModuleMap::zero(x, y);
  Decomposition dx = decompose(x);
  Decomposition dy = decompose(y);
  if (dx.summands.size() != dy.summands.size()) return std::nullopt;
  std::vector<bool> used(dy.summands.size(), false);
  ModuleMap iso = ModuleMap::zero(x, y);
  for (size_t i = 0; i < dx.summands.size(); ++i) {
    bool matched = false;
    for (size_t j = 0; j < dy.summands.size(); ++j) {
      if (used[j]) continue;
      auto phi = indec_isomorphism(dx.summands[i], dy.summands[j]);
      if (phi) {
        used[j] = true;
        matched = true;
        iso = add(iso, compose(dy.inclusions[j], compose(*phi, dx.projections[i])));
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (!iso.is_invertible()) return std::nullopt;
  return iso;
}

bool is_isomorphic(const Module& x, const Module& y) { return find_isomorphism(x, y).has_value(); }

std::string module_signature(const Module& m) {
  std::string s;
  for (int d : m.dims) s += std::to_string(d) + ",";
  s += "|";
  for (const auto& a : m.arrow_maps) s += a.to_string() + ";";
  return s;
}

}  // namespace excat
