#include "excat/quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace excat {

int Quiver::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Quiver::is_acyclic() const {
  // Kahn topological sort on vertices.
  int n = static_cast<int>(vertices.size());
  std::vector<int> indeg(n, 0);
  for (const auto& a : arrows) ++indeg[a.target];
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (const auto& a : arrows)
      if (a.source == v && --indeg[a.target] == 0) stack.push_back(a.target);
  }
  return seen == n;
}

Quiver Quiver::opposite() const {
  Quiver q;
  q.vertices = vertices;
  for (const auto& a : arrows) q.arrows.push_back(Arrow{a.name, a.target, a.source});
  return q;
}

namespace {

struct PathEndpoints {
  int source = -1, target = -1;
  bool ok = false;
};

PathEndpoints endpoints(const Quiver& q, const std::vector<int>& arrows) {
  PathEndpoints e;
  if (arrows.empty()) return e;
  e.source = q.arrows[arrows[0]].source;
  int cur = q.arrows[arrows[0]].target;
  for (size_t i = 1; i < arrows.size(); ++i) {
    if (q.arrows[arrows[i]].source != cur) return e;
    cur = q.arrows[arrows[i]].target;
  }
  e.target = cur;
  e.ok = true;
  return e;
}

}  // namespace

std::shared_ptr<const PathAlgebra> PathAlgebra::build(const Quiver& q, const std::vector<Relation>& relations,
                                                      const Field& field, int max_path_length) {
  {
    std::set<std::string> names;
    for (const auto& v : q.vertices)
      if (!names.insert("v:" + v).second) throw std::invalid_argument("duplicate vertex label " + v);
    for (const auto& a : q.arrows) {
      if (!names.insert("a:" + a.name).second) throw std::invalid_argument("duplicate arrow label " + a.name);
      if (a.source < 0 || a.source >= static_cast<int>(q.vertices.size()) || a.target < 0 ||
          a.target >= static_cast<int>(q.vertices.size()))
        throw std::invalid_argument("arrow " + a.name + " references a missing vertex");
    }
  }
  for (const auto& rel : relations) {
    if (rel.terms.empty()) throw std::invalid_argument("empty relation");
    PathEndpoints e0 = endpoints(q, rel.terms[0].arrows);
    size_t len0 = rel.terms[0].arrows.size();
    for (const auto& t : rel.terms) {
      if (t.arrows.size() < 2) throw std::invalid_argument("relation term shorter than length 2");
      PathEndpoints e = endpoints(q, t.arrows);
      if (!e.ok) throw std::invalid_argument("relation term is not a composable path");
      if (e.source != e0.source || e.target != e0.target)
        throw std::invalid_argument("relation terms are not parallel paths");
      if (t.arrows.size() != len0)
        throw std::invalid_argument("relation terms of different lengths are not supported");
    }
  }

  const int L = max_path_length;
  // Enumerate all composable paths of length 0..L.
  std::vector<BasisPath> all;
  std::map<std::vector<int>, int> index_of;
  for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) {
    BasisPath p{v, v, {}};
    index_of[{}];  // placeholder, fixed below
    all.push_back(p);
  }
  // The empty arrow list is ambiguous between vertices; index paths by
  // (first entry = -1-v for idempotents) to keep the map usable.
  index_of.clear();
  std::vector<std::vector<int>> keys;
  auto key_of = [](const BasisPath& p) {
    if (p.arrows.empty()) return std::vector<int>{-1 - p.source};
    return p.arrows;
  };
  for (size_t i = 0; i < all.size(); ++i) {
    index_of[key_of(all[i])] = static_cast<int>(i);
  }
  size_t frontier_begin = 0;
  for (int len = 1; len <= L; ++len) {
    size_t frontier_end = all.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      if (static_cast<int>(all[i].arrows.size()) != len - 1) continue;
      for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
        if (q.arrows[a].source != all[i].target) continue;
        BasisPath p;
        p.source = all[i].source;
        p.target = q.arrows[a].target;
        p.arrows = all[i].arrows;
        p.arrows.push_back(a);
        index_of[p.arrows] = static_cast<int>(all.size());
        all.push_back(p);
      }
    }
    frontier_begin = frontier_end;
  }

  const int N = static_cast<int>(all.size());
  // Span of the two-sided ideal restricted to paths of length <= L.
  std::vector<std::vector<mpq_class>> gen_rows;
  for (const auto& rel : relations) {
    PathEndpoints re = endpoints(q, rel.terms[0].arrows);
    size_t rel_len = rel.terms[0].arrows.size();
    for (int u = 0; u < N; ++u) {
      if (all[u].target != re.source) continue;
      for (int w = 0; w < N; ++w) {
        if (all[w].source != re.target) continue;
        size_t total = all[u].arrows.size() + rel_len + all[w].arrows.size();
        if (total > static_cast<size_t>(L)) continue;
        std::vector<mpq_class> row(N, mpq_class(0));
        for (const auto& t : rel.terms) {
          std::vector<int> comp = all[u].arrows;
          comp.insert(comp.end(), t.arrows.begin(), t.arrows.end());
          comp.insert(comp.end(), all[w].arrows.begin(), all[w].arrows.end());
          auto it = index_of.find(comp);
          if (it == index_of.end()) throw std::logic_error("path enumeration is incomplete");
          row[it->second] = field.add(row[it->second], t.coeff);
        }
        gen_rows.push_back(std::move(row));
      }
    }
  }

  Matrix span(field, static_cast<int>(gen_rows.size()), N);
  for (size_t i = 0; i < gen_rows.size(); ++i)
    for (int j = 0; j < N; ++j) span.set(static_cast<int>(i), j, gen_rows[i][j]);
  RrefResult red = span.rref();

  std::set<int> pivot_paths(red.pivot_columns.begin(), red.pivot_columns.end());

  auto reduce_vec = [&](std::vector<mpq_class> v) {
    for (int r = 0; r < red.rank; ++r) {
      int pc = red.pivot_columns[r];
      if (v[pc] == 0) continue;
      mpq_class c = v[pc];
      for (int j = 0; j < N; ++j) v[j] = field.sub(v[j], field.mul(c, red.reduced.at(r, j)));
    }
    return v;
  };

  // Every residue path of length L must vanish, otherwise finiteness of
  // the quotient is not certified.
  for (int i = 0; i < N; ++i) {
    if (static_cast<int>(all[i].arrows.size()) != L) continue;
    std::vector<mpq_class> unit(N, mpq_class(0));
    unit[i] = 1;
    auto r = reduce_vec(unit);
    for (const auto& c : r)
      if (c != 0) throw std::runtime_error("possibly infinite-dimensional: nonzero residue path of length " +
                                           std::to_string(L));
  }

  auto alg = std::shared_ptr<PathAlgebra>(new PathAlgebra());
  alg->quiver_ = q;
  alg->field_ = field;
  alg->relations_ = relations;
  alg->max_path_length_ = L;
  alg->idempotent_index_.assign(q.vertices.size(), -1);

  std::vector<int> basis_pos(N, -1);
  for (int i = 0; i < N; ++i) {
    if (pivot_paths.count(i)) continue;
    if (static_cast<int>(all[i].arrows.size()) >= L) continue;
    basis_pos[i] = static_cast<int>(alg->basis_.size());
    alg->basis_.push_back(all[i]);
    if (all[i].arrows.empty()) alg->idempotent_index_[all[i].source] = basis_pos[i];
  }
  const int D = alg->dim();
  for (int i = 0; i < N; ++i) {
    std::vector<mpq_class> unit(N, mpq_class(0));
    unit[i] = 1;
    auto r = reduce_vec(unit);
    std::vector<mpq_class> coords(D, mpq_class(0));
    for (int j = 0; j < N; ++j)
      if (r[j] != 0) coords[basis_pos[j]] = r[j];
    alg->reduction_[key_of(all[i])] = std::move(coords);
  }
  return alg;
}

std::vector<mpq_class> PathAlgebra::reduce_path(const std::vector<int>& arrows) const {
  std::vector<mpq_class> zero(dim(), mpq_class(0));
  if (static_cast<int>(arrows.size()) > max_path_length_) return zero;  // certified zero beyond L
  auto it = reduction_.find(arrows);
  if (it == reduction_.end()) return zero;  // non-composable
  return it->second;
}

std::vector<mpq_class> PathAlgebra::multiply(int i, int j) const {
  std::vector<mpq_class> out(dim(), mpq_class(0));
  const BasisPath& p = basis_[i];
  const BasisPath& r = basis_[j];
  if (p.target != r.source) return out;
  if (p.arrows.empty() && r.arrows.empty()) {
    out[j] = 1;
    return out;
  }
  std::vector<int> comp = p.arrows;
  comp.insert(comp.end(), r.arrows.begin(), r.arrows.end());
  if (comp.empty()) {
    out[idempotent_index_[p.source]] = 1;
    return out;
  }
  return reduce_path(comp);
}

std::shared_ptr<const PathAlgebra> PathAlgebra::opposite() const {
  if (opposite_) return opposite_;
  Quiver qop = quiver_.opposite();
  std::vector<Relation> rops;
  for (const auto& rel : relations_) {
    Relation r;
    for (const auto& t : rel.terms) {
      RelationTerm to;
      to.coeff = t.coeff;
      to.arrows.assign(t.arrows.rbegin(), t.arrows.rend());
      r.terms.push_back(to);
    }
    rops.push_back(r);
  }
  auto op = build(qop, rops, field_, max_path_length_);
  const_cast<PathAlgebra*>(op.get())->opposite_ = shared_from_this();
  opposite_ = op;
  return opposite_;
}

std::string PathAlgebra::path_name(int basis_index) const {
  const BasisPath& p = basis_[basis_index];
  if (p.arrows.empty()) return "e_" + quiver_.vertices[p.source];
  std::ostringstream os;
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) os << "*";
    os << quiver_.arrows[p.arrows[i]].name;
  }
  return os.str();
}

}  // namespace excat
