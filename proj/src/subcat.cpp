#include "excat/subcat.hpp"

#include <sstream>
#include <stdexcept>

namespace excat {

ExactSubcat::ExactSubcat(AlgebraPtr alg, std::vector<Module> generators, std::vector<std::string> names,
                         ExactStructure structure, SearchBounds bounds)
    : alg_(std::move(alg)), gens_(std::move(generators)), names_(std::move(names)), structure_(structure),
      bounds_(bounds), T_(direct_sum(alg_, gens_)) {
  if (gens_.empty()) throw std::invalid_argument("subcategory needs at least one generator");
  if (names_.size() != gens_.size()) throw std::invalid_argument("generator names do not match generators");
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].alg != alg_) throw std::invalid_argument("generator " + names_[i] + " lives over another algebra");
    gens_[i].validate();
    if (gens_[i].total_dim() == 0) throw std::invalid_argument("generator " + names_[i] + " is zero");
    if (decompose(gens_[i]).summands.size() != 1)
      throw std::invalid_argument("generator " + names_[i] + " is not indecomposable");
  }
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (is_isomorphic(gens_[i], gens_[j]))
        throw std::invalid_argument("generators " + names_[i] + " and " + names_[j] + " are isomorphic");
}

bool ExactSubcat::dim_vector_feasible(const std::vector<int>& dims) const {
  // Can dims be a nonnegative integer combination of generator dims?
  std::function<bool(std::vector<int>, size_t)> rec = [&](std::vector<int> rest, size_t g) -> bool {
    bool all_zero = true;
    for (int d : rest)
      if (d != 0) all_zero = false;
    if (all_zero) return true;
    if (g >= gens_.size()) return false;
    // multiplicity of generator g bounded by componentwise quotients
    int cap = 1 << 20;
    for (int v = 0; v < alg_->num_vertices(); ++v) {
      if (gens_[g].dims[v] == 0) continue;
      cap = std::min(cap, rest[v] / gens_[g].dims[v]);
    }
    for (int m = cap; m >= 0; --m) {
      std::vector<int> next = rest;
      bool ok = true;
      for (int v = 0; v < alg_->num_vertices(); ++v) {
        next[v] -= m * gens_[g].dims[v];
        if (next[v] < 0) ok = false;
      }
      if (ok && rec(next, g + 1)) return true;
    }
    return false;
  };
  return rec(dims, 0);
}

std::optional<std::vector<int>> ExactSubcat::membership(const Module& x) const {
  if (x.alg != alg_) return std::nullopt;
  if (x.total_dim() == 0) return std::vector<int>(gens_.size(), 0);
  std::string key = module_signature(x);
  auto it = membership_cache_.find(key);
  if (it != membership_cache_.end()) return it->second;
  std::optional<std::vector<int>> result;
  if (dim_vector_feasible(x.dims)) {
    Decomposition d = decompose(x);
    std::vector<int> mults(gens_.size(), 0);
    bool all_matched = true;
    for (const auto& s : d.summands) {
      bool found = false;
      for (size_t g = 0; g < gens_.size() && !found; ++g) {
        if (gens_[g].dims != s.dims) continue;
        for (const auto& f : hom_basis(gens_[g], s)) {
          if (f.is_invertible()) {
            ++mults[g];
            found = true;
            break;
          }
        }
      }
      if (!found) {
        all_matched = false;
        break;
      }
    }
    if (all_matched) result = mults;
  }
  membership_cache_[key] = result;
  return result;
}

std::optional<MembershipWitness> ExactSubcat::membership_witness(const Module& x) const {
  if (x.alg != alg_) return std::nullopt;
  if (x.total_dim() == 0) {
    MembershipWitness w;
    w.mults.assign(gens_.size(), 0);
    w.iso = ModuleMap::zero(Module::zero(alg_), x);
    return w;
  }
  if (!dim_vector_feasible(x.dims)) return std::nullopt;
  Decomposition d = decompose(x);
  std::vector<int> mults(gens_.size(), 0);
  // match each summand against some generator
  std::vector<std::pair<size_t, ModuleMap>> matches;  // (generator, iso gen -> summand)
  for (size_t s = 0; s < d.summands.size(); ++s) {
    bool found = false;
    for (size_t g = 0; g < gens_.size(); ++g) {
      if (gens_[g].dims != d.summands[s].dims) continue;
      for (const auto& f : hom_basis(gens_[g], d.summands[s])) {
        if (f.is_invertible()) {
          ++mults[g];
          matches.emplace_back(g, f);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  // assemble (+) gens^mults -> x following generator order
  std::vector<Module> parts;
  std::vector<size_t> part_summand;  // which summand each part maps to
  for (size_t g = 0; g < gens_.size(); ++g) {
    for (size_t s = 0; s < matches.size(); ++s) {
      if (matches[s].first != g) continue;
      parts.push_back(gens_[g]);
      part_summand.push_back(s);
    }
  }
  DirectSum ds = direct_sum(alg_, parts);
  ModuleMap iso = ModuleMap::zero(ds.total, x);
  for (size_t k = 0; k < parts.size(); ++k) {
    size_t s = part_summand[k];
    iso = add(iso, compose(d.inclusions[s], compose(matches[s].second, ds.projections[k])));
  }
  if (!iso.is_invertible()) return std::nullopt;
  MembershipWitness w;
  w.mults = mults;
  w.iso = iso;
  return w;
}

ConflationCertificate ExactSubcat::is_conflation(const ModuleMap& i, const ModuleMap& p) const {
  ConflationCertificate out;
  if (i.target.dims != p.source.dims) throw std::invalid_argument("is_conflation: target(i) != source(p)");
  if (!contains(i.source) || !contains(i.target) || !contains(p.target))
    throw std::invalid_argument("is_conflation: an endpoint fails membership");
  if (!compose(p, i).is_zero_map()) {
    out.reason = "p o i is nonzero";
    return out;
  }
  if (!i.is_injective()) {
    out.reason = "i is not injective";
    return out;
  }
  if (!p.is_surjective()) {
    out.reason = "p is not surjective";
    return out;
  }
  // exactness in the middle via dimension counts
  for (int v = 0; v < alg_->num_vertices(); ++v) {
    if (i.source.dims[v] + p.target.dims[v] != i.target.dims[v]) {
      out.reason = "im(i) != ker(p) at vertex " + alg_->quiver().vertices[v];
      return out;
    }
  }
  if (structure_ == ExactStructure::Split) {
    auto r = extend_through(i, ModuleMap::identity(i.source));
    if (!r) {
      out.reason = "the mono does not split";
      return out;
    }
    auto s = lift_through(p, ModuleMap::identity(p.target));
    if (!s) {
      out.reason = "the epi does not split";
      return out;
    }
    out.retraction = *r;
    out.section = *s;
  }
  out.conflation = true;
  out.reason = "kernel-cokernel pair verified";
  return out;
}

const std::vector<ModuleMap>& ExactSubcat::hom_from_T(const Module& x) const {
  std::string key = module_signature(x);
  auto it = hom_from_T_cache_.find(key);
  if (it != hom_from_T_cache_.end()) return it->second;
  return hom_from_T_cache_[key] = hom_basis(T_.total, x);
}

const std::vector<ModuleMap>& ExactSubcat::hom_to_T(const Module& x) const {
  std::string key = module_signature(x);
  auto it = hom_to_T_cache_.find(key);
  if (it != hom_to_T_cache_.end()) return it->second;
  return hom_to_T_cache_[key] = hom_basis(x, T_.total);
}

bool ExactSubcat::is_mono(const ModuleMap& f) const {
  // Hom(T, f) injective
  const std::vector<ModuleMap>& B = hom_from_T(f.source);
  if (B.empty()) return true;
  const Field& F = alg_->field();
  int rows = flatten_map(compose(f, B[0])).rows();
  Matrix M(F, rows, static_cast<int>(B.size()));
  for (size_t k = 0; k < B.size(); ++k) {
    Matrix col = flatten_map(compose(f, B[k]));
    for (int r = 0; r < rows; ++r) M.set(r, static_cast<int>(k), col.at(r, 0));
  }
  return M.rank() == static_cast<int>(B.size());
}

bool ExactSubcat::is_epi(const ModuleMap& f) const {
  const std::vector<ModuleMap>& B = hom_to_T(f.target);
  if (B.empty()) return true;
  const Field& F = alg_->field();
  int rows = flatten_map(compose(B[0], f)).rows();
  Matrix M(F, rows, static_cast<int>(B.size()));
  for (size_t k = 0; k < B.size(); ++k) {
    Matrix col = flatten_map(compose(B[k], f));
    for (int r = 0; r < rows; ++r) M.set(r, static_cast<int>(k), col.at(r, 0));
  }
  return M.rank() == static_cast<int>(B.size());
}

InflationResult ExactSubcat::is_inflation(const ModuleMap& f) const {
  InflationResult out;
  if (!contains(f.source) || !contains(f.target))
    throw std::invalid_argument("is_inflation: an endpoint fails membership");
  if (!f.is_injective()) {
    out.reason = "not injective";
    return out;
  }
  SubquotientData c = cokernel(f);
  if (!contains(c.mod)) {
    out.reason = "cokernel leaves the subcategory";
    return out;
  }
  if (structure_ == ExactStructure::Split) {
    if (!extend_through(f, ModuleMap::identity(f.source))) {
      out.reason = "injection does not split";
      return out;
    }
  }
  out.yes = true;
  out.reason = "inflation with cokernel in the subcategory";
  out.complement = c.map;
  return out;
}

InflationResult ExactSubcat::is_deflation(const ModuleMap& f) const {
  InflationResult out;
  if (!contains(f.source) || !contains(f.target))
    throw std::invalid_argument("is_deflation: an endpoint fails membership");
  if (!f.is_surjective()) {
    out.reason = "not surjective";
    return out;
  }
  SubquotientData k = kernel(f);
  if (!contains(k.mod)) {
    out.reason = "kernel leaves the subcategory";
    return out;
  }
  if (structure_ == ExactStructure::Split) {
    if (!lift_through(f, ModuleMap::identity(f.target))) {
      out.reason = "surjection does not split";
      return out;
    }
  }
  out.yes = true;
  out.reason = "deflation with kernel in the subcategory";
  out.complement = k.map;
  return out;
}

std::vector<std::vector<int>> ExactSubcat::bounded_multiplicities(int bound) const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(gens_.size(), 0);
  while (true) {
    size_t pos = 0;
    while (pos < cur.size() && ++cur[pos] > bound) cur[pos++] = 0;
    if (pos == cur.size()) break;
    out.push_back(cur);
  }
  return out;
}

DirectSum ExactSubcat::sum_of(const std::vector<int>& mults) const {
  std::vector<Module> parts;
  for (size_t g = 0; g < gens_.size(); ++g)
    for (int k = 0; k < mults[g]; ++k) parts.push_back(gens_[g]);
  return direct_sum(alg_, parts);
}

std::string ExactSubcat::for_each_bounded_map(const Module& x, const Module& y,
                                              const std::function<bool(const ModuleMap&)>& visit) const {
  std::vector<ModuleMap> B = hom_basis(x, y);
  const Field& F = alg_->field();
  size_t d = B.size();
  if (d == 0) {
    visit(ModuleMap::zero(x, y));
    return "zero hom space";
  }
  std::vector<mpq_class> coeff_set;
  std::string scheme;
  if (F.is_prime_field()) {
    double count = 1;
    for (size_t i = 0; i < d; ++i) count *= static_cast<double>(F.characteristic());
    if (count <= static_cast<double>(bounds_.coeff_budget)) {
      coeff_set = F.enumerate();
      scheme = "exhaustive over " + F.describe();
    }
  }
  if (coeff_set.empty()) {
    double count = 1;
    for (size_t i = 0; i < d; ++i) count *= 3.0;
    if (count <= static_cast<double>(bounds_.coeff_budget)) {
      coeff_set = {mpq_class(0), mpq_class(1), mpq_class(-1)};
      scheme = "coefficients in {-1,0,1}";
    } else {
      scheme = "basis elements and pairwise sums (hom space too large)";
      for (const auto& b : B)
        if (!visit(b)) return scheme;
      for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j) {
          if (!visit(add(B[i], B[j]))) return scheme;
          if (!visit(sub(B[i], B[j]))) return scheme;
        }
      return scheme;
    }
  }
  std::vector<size_t> digit(d, 0);
  while (true) {
    ModuleMap f = ModuleMap::zero(x, y);
    for (size_t i = 0; i < d; ++i)
      if (coeff_set[digit[i]] != 0) f = add(f, scale(coeff_set[digit[i]], B[i]));
    if (!visit(f)) return scheme;
    size_t pos = 0;
    while (pos < d && ++digit[pos] == coeff_set.size()) digit[pos++] = 0;
    if (pos == d) break;
  }
  return scheme;
}

bool ExactSubcat::all_conflations_split() const {
  if (all_split_.has_value()) return *all_split_;
  bool ok = true;
  if (structure_ == ExactStructure::Induced) {
    for (const auto& x : gens_) {
      for (const auto& y : gens_) {
        if (ext1(x, y).dim != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
  }
  all_split_ = ok;
  return ok;
}

std::vector<ExactSubcat::DeflationOnto> ExactSubcat::enumerate_deflations_onto(const Module& a,
                                                                               int kernel_dim_bound) const {
  std::vector<DeflationOnto> out;
  if (structure_ == ExactStructure::Split) return out;  // only split deflations exist
  if (kernel_dim_bound <= 0) kernel_dim_bound = bounds_.kernel_dim_bound;
  if (kernel_dim_bound <= 0) kernel_dim_bound = 4 * std::max(1, a.total_dim());
  const Field& F = alg_->field();
  int max_mult = std::max(1, bounds_.multiplicity_bound);
  for (const auto& mults : bounded_multiplicities(max_mult)) {
    DirectSum kd = sum_of(mults);
    if (kd.total.total_dim() == 0 || kd.total.total_dim() > kernel_dim_bound) continue;
    Ext1Machine em = ext1_machine(a, kd.total);
    if (em.cocycles.empty()) continue;
    size_t d = em.cocycles.size();
    std::vector<mpq_class> coeff_set;
    if (F.is_prime_field()) {
      double count = 1;
      for (size_t i = 0; i < d; ++i) count *= static_cast<double>(F.characteristic());
      if (count <= static_cast<double>(bounds_.coeff_budget)) coeff_set = F.enumerate();
    }
    if (coeff_set.empty()) coeff_set = {mpq_class(0), mpq_class(1)};
    std::vector<size_t> digit(d, 0);
    while (true) {
      size_t pos = 0;
      while (pos < d && ++digit[pos] == coeff_set.size()) digit[pos++] = 0;
      if (pos == d) break;  // the all-zero (split) class is skipped
      Matrix coeffs(F, static_cast<int>(d), 1);
      for (size_t i = 0; i < d; ++i) coeffs.set(static_cast<int>(i), 0, coeff_set[digit[i]]);
      Extension e = em.realize(coeffs);
      if (!contains(e.middle)) continue;  // middle term escapes add(T)
      DeflationOnto dd;
      dd.p = e.proj;
      dd.kernel_mod = kd.total;
      out.push_back(dd);
    }
  }
  return out;
}

ResolvingReport ExactSubcat::check_resolving(const ExactSubcat& ambient, int bound) const {
  ResolvingReport rep;
  rep.bound = bound > 0 ? bound : bounds_.multiplicity_bound;
  for (const auto& g : gens_)
    if (!ambient.contains(g)) throw std::invalid_argument("check_resolving: generator outside the ambient category");

  // (R1): the trace map onto each ambient generator must be an ambient
  // deflation. Any surjection from a sum of generators factors through
  // the trace map, and kernels of two such deflations differ by summands
  // in add(T), so this single test decides (R1).
  rep.r1 = true;
  for (size_t m = 0; m < ambient.generators().size(); ++m) {
    const Module& M = ambient.generators()[m];
    std::vector<Module> parts;
    std::vector<ModuleMap> maps;
    for (const auto& g : gens_) {
      for (const auto& h : hom_basis(g, M)) {
        parts.push_back(g);
        maps.push_back(h);
      }
    }
    DirectSum ds = direct_sum(alg_, parts);
    ModuleMap trace = ModuleMap::zero(ds.total, M);
    for (size_t k = 0; k < maps.size(); ++k) trace = add(trace, compose(maps[k], ds.projections[k]));
    InflationResult defl = ambient.is_deflation(trace);
    if (!defl.yes) {
      rep.r1 = false;
      rep.r1_detail = "no deflation onto " + ambient.generator_names()[m] + " (" + defl.reason + ")";
      break;
    }
  }
  if (rep.r1) rep.r1_detail = "trace maps are deflations onto every ambient generator";

  // (R2): deflation-closure over bounded pairs.
  rep.r2 = true;
  rep.r2_detail = "verified up to multiplicity bound " + std::to_string(rep.bound);
  auto mult_lists = bounded_multiplicities(rep.bound);
  for (const auto& mm : mult_lists) {
    DirectSum M = sum_of(mm);
    for (const auto& nn : mult_lists) {
      DirectSum N = sum_of(nn);
      bool stop = false;
      for_each_bounded_map(M.total, N.total, [&](const ModuleMap& f) {
        if (!f.is_surjective()) return true;
        InflationResult defl = ambient.is_deflation(f);
        if (!defl.yes) return true;
        if (!contains(kernel(f).mod)) {
          rep.r2 = false;
          rep.r2_detail =
              "counterexample: an ambient deflation between objects of the subcategory has kernel outside it";
          stop = true;
          return false;
        }
        return true;
      });
      if (stop) return rep;
    }
    if (!rep.r2) break;
  }
  return rep;
}

MaxNonnegReport ExactSubcat::check_maximally_nonnegative(int bound) const {
  MaxNonnegReport rep;
  rep.bound = bound > 0 ? bound : bounds_.multiplicity_bound;
  auto mult_lists = bounded_multiplicities(rep.bound);
  for (const auto& mm : mult_lists) {
    DirectSum M = sum_of(mm);
    for (const auto& nn : mult_lists) {
      DirectSum N = sum_of(nn);
      bool stop = false;
      rep.scheme = for_each_bounded_map(M.total, N.total, [&](const ModuleMap& f) {
        if (is_mono(f) && !is_inflation(f).yes) {
          std::ostringstream os;
          os << "mono that is not an inflation (source dims";
          for (int dd : f.source.dims) os << " " << dd;
          os << ", target dims";
          for (int dd : f.target.dims) os << " " << dd;
          os << ")";
          rep.counterexample = os.str();
          stop = true;
          return false;
        }
        if (is_epi(f) && !is_deflation(f).yes) {
          rep.counterexample = "epi that is not a deflation";
          stop = true;
          return false;
        }
        return true;
      });
      if (stop) return rep;
    }
  }
  rep.verified = true;
  return rep;
}

bool ExactSubcat::resolving_in_module_category() const {
  if (resolving_ambient_.has_value()) return *resolving_ambient_;
  bool ok = true;
  if (structure_ == ExactStructure::Split) ok = false;  // the split structure is not ambient-exact
  if (ok) {
    // (R1): every module receives a surjection from add(T); it is enough
    // to cover the regular module (free covers then compose).
    Module reg = regular_module(alg_);
    std::vector<Module> parts;
    std::vector<ModuleMap> maps;
    for (const auto& g : gens_) {
      for (const auto& h : hom_basis(g, reg)) {
        parts.push_back(g);
        maps.push_back(h);
      }
    }
    DirectSum ds = direct_sum(alg_, parts);
    ModuleMap trace = ModuleMap::zero(ds.total, reg);
    for (size_t k = 0; k < maps.size(); ++k) trace = add(trace, compose(maps[k], ds.projections[k]));
    ok = trace.is_surjective();
  }
  if (ok) {
    // (R2): kernels of surjections between bounded sums stay in add(T).
    auto mult_lists = bounded_multiplicities(bounds_.multiplicity_bound);
    for (const auto& mm : mult_lists) {
      DirectSum M = sum_of(mm);
      for (const auto& nn : mult_lists) {
        DirectSum N = sum_of(nn);
        bool bad = false;
        for_each_bounded_map(M.total, N.total, [&](const ModuleMap& f) {
          if (!f.is_surjective()) return true;
          if (!contains(kernel(f).mod)) {
            bad = true;
            return false;
          }
          return true;
        });
        if (bad) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
  }
  resolving_ambient_ = ok;
  return ok;
}

const ExactSubcat& ExactSubcat::opposite() const {
  if (opposite_) return *opposite_;
  std::vector<Module> dgens;
  std::vector<std::string> dnames;
  for (size_t i = 0; i < gens_.size(); ++i) {
    dgens.push_back(dual_module(gens_[i]));
    dnames.push_back("D(" + names_[i] + ")");
  }
  opposite_ = std::make_shared<ExactSubcat>(alg_->opposite(), dgens, dnames, structure_, bounds_);
  return *opposite_;
}

}  // namespace excat
