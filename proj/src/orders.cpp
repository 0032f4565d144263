#include "hallwb/orders.hpp"

#include <algorithm>
#include <functional>

#include "hallwb/budget.hpp"

namespace hallwb {

namespace {

// All sub-degrees 0 <= b <= d, endpoints excluded.
std::vector<Dim> proper_subdegrees(const Dim& d) {
  std::vector<Dim> out;
  Dim b(d.size(), 0);
  for (;;) {
    int i = 0;
    while (i < int(d.size()) && b[i] == d[i]) b[i++] = 0;
    if (i == int(d.size())) break;
    ++b[i];
    if (!dim_is_zero(b) && b != d) out.push_back(b);
  }
  return out;
}

Decomp merged(const Decomp& a, const Decomp& b) {
  Decomp m = a;
  for (const auto& [l, k] : b) m[l] += k;
  return m;
}

// Degrees of freedom of the homogeneous points in a class: each distinct
// point of degree d sweeps a d-dimensional family over the closure of F_q.
long family_dim(Catalog& C, int cls) {
  std::set<std::string> pts;
  long fam = 0;
  for (const auto& [l, m] : C.decomp(cls)) {
    (void)m;
    if (l.kind == PartKind::Homog && pts.insert(l.point).second)
      fam += C.res_degree(C.indec_id(l));
  }
  return fam;
}

// All classes obtained by reassigning the distinct homogeneous points of cls
// to available points of the same degree, injectively; cls itself included.
std::vector<int> point_renamings(Catalog& C, int cls) {
  std::vector<std::string> pts;  // distinct points, in decomp order
  for (const auto& [l, m] : C.decomp(cls)) {
    (void)m;
    if (l.kind == PartKind::Homog &&
        std::find(pts.begin(), pts.end(), l.point) == pts.end())
      pts.push_back(l.point);
  }
  if (pts.empty()) return {cls};
  std::map<std::string, int> deg;
  for (const auto& [id, d] : C.homog_points()) deg[id] = d;
  std::vector<int> out;
  std::map<std::string, std::string> assign;
  std::set<std::string> used;
  std::function<void(size_t)> dfs = [&](size_t i) {
    if (i == pts.size()) {
      Decomp r;
      for (const auto& [l, m] : C.decomp(cls)) {
        IndecLabel nl = l;
        if (l.kind == PartKind::Homog) nl.point = assign[l.point];
        r[nl] += m;
      }
      out.push_back(C.class_of(r));
      return;
    }
    for (const auto& [id, d] : C.homog_points()) {
      if (d != deg[pts[i]] || used.count(id)) continue;
      used.insert(id);
      assign[pts[i]] = id;
      dfs(i + 1);
      used.erase(id);
    }
  };
  dfs(0);
  return out;
}

}  // namespace

const std::vector<int>& Orders::ext_successors(int cls) {
  auto it = succ_.find(cls);
  if (it != succ_.end()) return it->second;
  Catalog& C = cat();
  const Dim d = C.dim_of(cls);
  std::set<int> out;
  for (const Dim& beta : proper_subdegrees(d)) {
    const Dim alpha = dim_sub(d, beta);
    for (int sub : C.classes_of_dim(beta))
      for (int quot : C.classes_of_dim(alpha)) {
        if (eng_.hall_sub(quot, sub, cls) == 0) continue;
        int split = C.class_of(merged(C.decomp(sub), C.decomp(quot)));
        if (split != cls) out.insert(split);
      }
  }
  auto& v = succ_[cls];
  v.assign(out.begin(), out.end());
  return v;
}

std::pair<std::set<int>, bool> Orders::ext_down_set(int cls, int chain_bound) {
  std::set<int> seen{cls};
  std::vector<int> frontier{cls};
  for (int depth = 0; depth < chain_bound && !frontier.empty(); ++depth) {
    std::vector<int> next;
    for (int c : frontier)
      for (int s : ext_successors(c))
        if (seen.insert(s).second) next.push_back(s);
    frontier = std::move(next);
  }
  return {std::move(seen), frontier.empty()};
}

TriBool Orders::ext_order_leq(int Ncls, int Mcls, int chain_bound) {
  if (cat().dim_of(Ncls) != cat().dim_of(Mcls))
    throw UsageError("ext order compares classes of equal dimension vector");
  if (Ncls == Mcls) return TriBool::True;  // empty chain
  auto [down, saturated] = ext_down_set(Mcls, chain_bound);
  if (down.count(Ncls)) return TriBool::True;
  return saturated ? TriBool::False : TriBool::Unknown;
}

bool Orders::hom_order_leq(int Ncls, int Mcls, int test_bound) {
  Catalog& C = cat();
  if (C.dim_of(Ncls) != C.dim_of(Mcls))
    throw UsageError("hom order compares classes of equal dimension vector");
  if (test_bound < 0) test_bound = C.bound();
  auto hom_to = [&](int x, int cls) {
    long h = 0;
    for (const auto& [l, m] : C.decomp(cls))
      h += long(m) * C.hom_indec(x, C.indec_id(l));
    return h;
  };
  for (int x = 0; x < C.indec_count(); ++x) {
    if (C.indec_rep(x).total_dim() > test_bound) continue;
    if (hom_to(x, Ncls) < hom_to(x, Mcls)) return false;
  }
  return true;
}

long Orders::codim(int cls) {
  Catalog& C = cat();
  return variety_dim(C.quiver(), C.dim_of(cls)) - eng_.orbit_dim(cls);
}

StarCodimReport Orders::star_codim_check(int Mcls, int Ncls, int chain_bound) {
  Catalog& C = cat();
  StarCodimReport rep;
  auto [downM, satM] = ext_down_set(Mcls, chain_bound);
  auto [downN, satN] = ext_down_set(Ncls, chain_bound);
  rep.saturated = satM && satN;

  const Dim alpha = C.dim_of(Mcls);  // quotient side
  const Dim beta = C.dim_of(Ncls);   // submodule side
  rep.lower = codim(Mcls) + codim(Ncls) - C.quiver().euler(beta, alpha);

  long rmin = -1;
  std::set<int> members;
  for (int m : downM) {
    for (int n : downN) {
      long h = hom_cls(C, n, m);
      if (rmin < 0 || h < rmin) rmin = h;
      for (const auto& [L, mem] : eng_.ext_set(m, n).members) {
        (void)mem;
        members.insert(L);
      }
    }
  }
  rep.upper = rep.lower + rmin;

  // dim of the member union: families of homogeneous points credited only
  // when membership is invariant under renaming the points.
  long best = -1;
  for (int L : members) {
    long fam = family_dim(C, L);
    if (fam > 0) {
      for (int R : point_renamings(C, L))
        if (!members.count(R)) {
          rep.point_uniform = false;
          fam = 0;
          break;
        }
    }
    long d = eng_.orbit_dim(L) + fam;
    if (d > best) best = d;
  }
  rep.codim_star = variety_dim(C.quiver(), dim_add(alpha, beta)) - best;
  rep.ok = rep.lower <= rep.codim_star && rep.codim_star <= rep.upper;
  return rep;
}

CoherenceReport Orders::coherence_scan(int total_dim_bound, int chain_bound) {
  Catalog& C = cat();
  CoherenceReport out;
  const int n = C.quiver().n();
  Dim d(n, 0);
  for (;;) {  // odometer over dimension vectors of total <= bound
    int i = 0;
    while (i < n && d[i] == total_dim_bound) d[i++] = 0;
    if (i == n) break;
    ++d[i];
    if (dim_is_zero(d) || dim_total(d) > total_dim_bound) continue;
    const auto& classes = C.classes_of_dim(d);
    for (int N : classes)
      for (int M : classes) {
        if (N == M) continue;
        ++out.pairs_checked;
        TriBool e = ext_order_leq(N, M, chain_bound);
        bool h = hom_order_leq(N, M);
        if (e == TriBool::True && !h)
          out.ext_not_hom.push_back({N, M, e, h});
        if (h && e != TriBool::True) out.hom_not_ext.push_back({N, M, e, h});
      }
  }
  return out;
}

}  // namespace hallwb
