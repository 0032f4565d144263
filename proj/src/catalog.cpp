#include "hallwb/catalog.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

#include "hallwb/budget.hpp"
#include "hallwb/gfpoly.hpp"

namespace hallwb {

std::string IndecLabel::to_string(const Quiver& Q) const {
  std::string s;
  switch (kind) {
    case PartKind::Preproj:
      if (shift) s = "tau^-" + std::to_string(shift) + " ";
      return s + "P(" + Q.vlabels[vertex] + ")";
    case PartKind::Preinj:
      if (shift) s = "tau^" + std::to_string(shift) + " ";
      return s + "I(" + Q.vlabels[vertex] + ")";
    case PartKind::Tube:
      return "T" + std::to_string(tube + 1) + "[" + std::to_string(pos) +
             "," + std::to_string(len) + "]";
    case PartKind::Homog:
      return "H[" + point + "," + std::to_string(len) + "]";
  }
  return "?";
}

const TameData& Catalog::tame() const {
  if (!td_) throw UsageError("quiver is representation-finite; no tubes");
  return *td_;
}

Catalog::Catalog(QuiverPtr Q, unsigned q, int bound)
    : Q_(Q), F_(&GF::get(q)), bound_(bound) {
  if (bound_ < 1) throw UsageError("catalogue bound must be positive");
  rtype_ = classify_quiver(*Q_);
  if (rtype_ == ReprType::Wild)
    throw UsageError("quiver '" + Q_->name +
                     "' is wild; only finite and tame types are supported");
  if (rtype_ == ReprType::Tame) td_ = TameData::compute(Q_);
  build_preprojectives();
  if (rtype_ == ReprType::Tame) {
    build_preinjectives();
    build_tubes();
    build_homogeneous();
  }
  class_of({});  // reserve the zero class
}

int Catalog::add_indec(const IndecLabel& l, Rep r) {
  rep_validate(r);
  assert(!label_index_.count(l));
  int iid = int(labels_.size());
  labels_.push_back(l);
  label_index_[l] = iid;
  by_dim_[r.d].push_back(iid);
  reps_.push_back(std::move(r));
  return iid;
}

void Catalog::build_preprojectives() {
  int slack = td_ ? 2 * dim_total(td_->delta) : 0;
  for (int j = 0; j < Q_->n(); ++j) {
    Rep M = rep_proj(Q_, F_, j);
    int k = 0;
    for (;;) {
      int tot = M.total_dim();
      if (tot == 0) break;
      if (tot <= bound_) {
        IndecLabel l;
        l.kind = PartKind::Preproj;
        l.vertex = j;
        l.shift = k;
        add_indec(l, M);
      }
      if (tot > bound_ + slack) break;
      M = tau_minus(M);
      ++k;
    }
  }
}

void Catalog::build_preinjectives() {
  int slack = 2 * dim_total(td_->delta);
  for (int j = 0; j < Q_->n(); ++j) {
    Rep M = rep_inj(Q_, F_, j);
    int k = 0;
    for (;;) {
      int tot = M.total_dim();
      if (tot == 0) break;
      if (tot <= bound_) {
        IndecLabel l;
        l.kind = PartKind::Preinj;
        l.vertex = j;
        l.shift = k;
        add_indec(l, M);
      }
      if (tot > bound_ + slack) break;
      M = tau_plus(M);
      ++k;
    }
  }
}

namespace {
using OKey = std::vector<std::pair<int, int>>;

OKey okey_of(const Quiver& Q) {
  OKey k;
  for (const Arrow& a : Q.arrows) k.push_back({a.s, a.t});
  return k;
}

Quiver quiver_from_okey(const Quiver& base, const OKey& k) {
  Quiver Q = base;
  for (size_t i = 0; i < k.size(); ++i) {
    Q.arrows[i].s = k[i].first;
    Q.arrows[i].t = k[i].second;
  }
  return Q;
}

bool okey_is_sink(const OKey& k, int v) {
  for (auto& [s, t] : k)
    if (s == v) return false;
  return true;
}

OKey okey_reverse_at(OKey k, int v) {
  for (auto& [s, t] : k)
    if (s == v || t == v) std::swap(s, t);
  return k;
}
}  // namespace

Rep Catalog::quasi_simple_rep(const Dim& root) const {
  int n = Q_->n();
  // Immediate win: the root is already a simple root.
  for (int j = 0; j < n; ++j) {
    Dim e(n, 0);
    e[j] = 1;
    if (root == e) return rep_simple(Q_, F_, j);
  }
  using State = std::pair<OKey, Dim>;
  State start{okey_of(*Q_), root};
  int htcap = 2 * (dim_total(root) + dim_total(td_->delta));
  std::map<State, std::pair<State, int>> parent;  // state -> (prev, vertex)
  std::deque<State> queue{start};
  parent[start] = {start, -1};
  std::optional<State> goal;
  while (!queue.empty() && !goal) {
    State cur = queue.front();
    queue.pop_front();
    for (int v = 0; v < n && !goal; ++v) {
      if (!okey_is_sink(cur.first, v)) continue;
      Dim beta = reflect_dim(*Q_, v, cur.second);
      bool pos = true;
      int ht = 0;
      for (int x : beta) {
        if (x < 0) pos = false;
        ht += x;
      }
      if (!pos || ht > htcap || ht == 0) continue;
      State nxt{okey_reverse_at(cur.first, v), beta};
      if (parent.count(nxt)) continue;
      parent[nxt] = {cur, v};
      Budget::charge();
      if (dim_total(beta) == 1) goal = nxt;
      queue.push_back(nxt);
    }
  }
  if (!goal)
    throw UsageError("reflection search failed for root " +
                     dim_to_string(root));
  // Build S_j over the goal orientation, then replay the path with
  // source reflections back to our orientation.
  int j = -1;
  for (int x = 0; x < n; ++x)
    if (goal->second[x] == 1) j = x;
  auto Qgoal = std::make_shared<Quiver>(quiver_from_okey(*Q_, goal->first));
  Rep M = rep_simple(Qgoal, F_, j);
  State cur = *goal;
  while (!(cur == start)) {
    auto [prev, v] = parent[cur];
    M = reflect_source(M, v);
    cur = prev;
  }
  assert(M.d == root);
  for (size_t a = 0; a < Q_->arrows.size(); ++a)
    assert(M.Q->arrows[a].s == Q_->arrows[a].s &&
           M.Q->arrows[a].t == Q_->arrows[a].t);
  M.Q = Q_;
  return M;
}

void Catalog::build_tubes() {
  for (int t = 0; t < td_->ell(); ++t) {
    const Tube& tube = td_->tubes[t];
    int r = tube.period();
    std::vector<Rep> E;
    E.push_back(quasi_simple_rep(tube.simples[0]));
    for (int jj = 1; jj < r; ++jj) {
      E.push_back(tau_minus(E.back()));
      assert(E.back().d == tube.simples[jj] &&
             "tau orbit of quasi-simples disagrees with root data");
    }
    std::vector<Rep> prev = E;  // quasi-length m-1, indexed by socle pos
    for (int jj = 0; jj < r; ++jj) {
      if (E[jj].total_dim() > bound_) continue;
      IndecLabel l;
      l.kind = PartKind::Tube;
      l.tube = t;
      l.pos = jj + 1;
      l.len = 1;
      add_indec(l, E[jj]);
    }
    for (int m = 2; m <= bound_; ++m) {
      bool any = false;
      std::vector<Rep> cur(r);
      for (int jj = 0; jj < r; ++jj) {
        const Rep& top = E[(jj + m - 1) % r];
        Mat A = ext_presentation_matrix(top, prev[jj]);
        int extd = A.r - rank(A);
        assert(extd == 1 && "tube extension space is not a line");
        // pick a cocycle outside the coboundaries
        Mat im = column_space(A);
        std::vector<GF::El> z(A.r, 0);
        bool picked = false;
        for (int row = 0; row < A.r && !picked; ++row) {
          Mat e = Mat::zero(*F_, A.r, 1);
          e.at(row, 0) = 1;
          if (rank(hstack(im, e)) > im.c) {
            z[row] = 1;
            picked = true;
          }
        }
        assert(picked);
        cur[jj] = middle_term(top, prev[jj], z);
        if (cur[jj].total_dim() <= bound_) {
          any = true;
          IndecLabel l;
          l.kind = PartKind::Tube;
          l.tube = t;
          l.pos = jj + 1;
          l.len = m;
          add_indec(l, cur[jj]);
        }
      }
      prev = cur;
      if (!any) break;
    }
  }
}

void Catalog::build_homogeneous() {
  int htd = dim_total(td_->delta);
  emb_ = KroneckerEmbedding::build(Q_, F_, *td_);
  QuiverPtr K = builtin_quiver("K");
  // Collect the quasi-simple reps once for special-point detection.
  std::vector<std::pair<int, const Rep*>> qsimples;  // (tube, rep)
  for (int iid = 0; iid < indec_count(); ++iid)
    if (labels_[iid].kind == PartKind::Tube && labels_[iid].len == 1)
      qsimples.push_back({labels_[iid].tube, &reps_[iid]});

  int maxdeg = std::max(1, bound_ / htd);
  for (auto& [pt, deg] : closed_points(*F_, maxdeg)) {
    if (deg == 1) {
      Rep R = kron_regular(K, F_, pt, 1);
      Rep X = emb_->image(R.maps[0], R.maps[1]);
      assert(X.d == td_->delta);
      int tube = -1;
      for (auto& [t, E] : qsimples)
        if (tube < 0 && hom_dim(*E, X) > 0) tube = t;
      if (tube >= 0) {
        special_points_.push_back({pt, tube});
        continue;
      }
    }
    homog_points_.push_back({pt, deg});
  }
  assert(int(special_points_.size()) == td_->ell() &&
         "special point count must match the tube count");

  for (auto& [pt, deg] : homog_points_) {
    for (int m = 1; m * deg * htd <= bound_; ++m) {
      Rep R = kron_regular(K, F_, pt, m);
      Rep X = emb_->image(R.maps[0], R.maps[1]);
      Dim want(Q_->n());
      for (int i = 0; i < Q_->n(); ++i) want[i] = m * deg * td_->delta[i];
      assert(X.d == want && "homogeneous image has wrong dimension");
      IndecLabel l;
      l.kind = PartKind::Homog;
      l.point = pt;
      l.len = m;
      add_indec(l, std::move(X));
    }
  }
}

int Catalog::indec_id(const IndecLabel& l) const {
  auto it = label_index_.find(l);
  if (it == label_index_.end())
    throw CatalogMiss("not in catalogue: " + l.to_string(*Q_));
  return it->second;
}

std::optional<int> Catalog::find_indec(const IndecLabel& l) const {
  auto it = label_index_.find(l);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

int Catalog::hom_indec(int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = hom_cache_.find(key);
  if (it != hom_cache_.end()) return it->second;
  int h = hom_dim(reps_[i], reps_[j]);
  hom_cache_[key] = h;
  return h;
}

int Catalog::res_degree(int iid) {
  auto it = resdeg_cache_.find(iid);
  if (it != resdeg_cache_.end()) return it->second;
  int d = residue_degree_local(reps_[iid]);
  resdeg_cache_[iid] = d;
  return d;
}

int Catalog::indec_end_dim(int iid) { return hom_indec(iid, iid); }

std::optional<IndecLabel> Catalog::ar_translate(const IndecLabel& l,
                                                int dir) const {
  IndecLabel r = l;
  switch (l.kind) {
    case PartKind::Preproj:
      r.shift = l.shift - dir;
      if (r.shift < 0) return std::nullopt;
      return r;
    case PartKind::Preinj:
      r.shift = l.shift + dir;
      if (r.shift < 0) return std::nullopt;
      return r;
    case PartKind::Tube: {
      int per = td_->tubes[l.tube].period();
      r.pos = ((l.pos - 1 - dir) % per + per) % per + 1;
      return r;
    }
    case PartKind::Homog:
      return r;
  }
  return std::nullopt;
}

int Catalog::class_of(const Decomp& d) {
  for (auto& [l, m] : d) {
    if (m <= 0) throw UsageError("class multiplicities must be positive");
    indec_id(l);  // existence check
  }
  auto it = class_index_.find(d);
  if (it != class_index_.end()) return it->second;
  int cls = int(class_decomp_.size());
  class_decomp_.push_back(d);
  class_index_[d] = cls;
  return cls;
}

int Catalog::zero_class() { return class_of({}); }

Dim Catalog::dim_of(int cls) const {
  Dim d(Q_->n(), 0);
  for (auto& [l, m] : class_decomp_[cls]) {
    const Rep& r = reps_[label_index_.at(l)];
    for (int i = 0; i < Q_->n(); ++i) d[i] += m * r.d[i];
  }
  return d;
}

Rep Catalog::rep_of(int cls) const {
  Rep out = rep_zero(Q_, F_, Dim(Q_->n(), 0));
  for (auto& [l, m] : class_decomp_[cls]) {
    const Rep& r = reps_[label_index_.at(l)];
    for (int i = 0; i < m; ++i) out = direct_sum(out, r);
  }
  return out;
}

int Catalog::end_dim(int cls) {
  auto it = enddim_cache_.find(cls);
  if (it != enddim_cache_.end()) return it->second;
  const Decomp& D = class_decomp_[cls];
  int h = 0;
  for (auto& [la, ma] : D)
    for (auto& [lb, mb] : D)
      h += ma * mb * hom_indec(label_index_.at(la), label_index_.at(lb));
  enddim_cache_[cls] = h;
  return h;
}

BigInt Catalog::aut_order(int cls) {
  auto it = aut_cache_.find(cls);
  if (it != aut_cache_.end()) return it->second;
  std::vector<std::pair<int, int>> parts;
  for (auto& [l, m] : class_decomp_[cls])
    parts.push_back({m, res_degree(label_index_.at(l))});
  BigInt a = aut_order_formula(F_->q, end_dim(cls), parts);
  aut_cache_[cls] = a;
  return a;
}

std::vector<int> Catalog::classes_of_dim(const Dim& d) {
  auto it = classes_by_dim_.find(d);
  if (it != classes_by_dim_.end()) return it->second;
  std::vector<int> fits;
  for (int iid = 0; iid < indec_count(); ++iid)
    if (dim_leq(reps_[iid].d, d) && reps_[iid].total_dim() > 0)
      fits.push_back(iid);
  std::vector<int> out;
  Decomp cur;
  std::function<void(size_t, Dim)> dfs = [&](size_t idx, Dim rem) {
    Budget::charge();
    if (dim_is_zero(rem)) {
      out.push_back(class_of(cur));
      return;
    }
    if (idx == fits.size()) return;
    dfs(idx + 1, rem);  // skip this indec
    Dim r = rem;
    int iid = fits[idx];
    int cnt = 0;
    while (dim_leq(reps_[iid].d, r)) {
      r = dim_sub(r, reps_[iid].d);
      cur[labels_[iid]] = ++cnt;
      dfs(idx + 1, r);
    }
    cur.erase(labels_[iid]);
  };
  dfs(0, d);
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    return class_decomp_[a] < class_decomp_[b];
  });
  classes_by_dim_[d] = out;
  return out;
}

int Catalog::classify(const Rep& M) {
  if (M.total_dim() == 0) return zero_class();
  auto cands = classes_of_dim(M.d);
  if (cands.empty())
    throw CatalogMiss("no catalogued class of dimension " +
                      dim_to_string(M.d));
  // A module outside the catalogue (e.g. an indecomposable beyond the bound)
  // can shadow a catalogued Hom-profile; End-dimension unmasks it.
  auto confirmed = [&](int cls) {
    if (end_dim(cls) != hom_dim(M, M))
      throw CatalogMiss("module of dimension " + dim_to_string(M.d) +
                        " is not in the catalogue (End mismatch)");
    return cls;
  };
  if (cands.size() == 1) return confirmed(cands[0]);
  // Probe Hom(X, M) against the predicted profile of each candidate, in
  // increasing probe cost, skipping probes that cannot split the field.
  std::vector<int> probes(indec_count());
  for (int i = 0; i < indec_count(); ++i) probes[i] = i;
  std::sort(probes.begin(), probes.end(), [&](int a, int b) {
    int ta = reps_[a].total_dim(), tb = reps_[b].total_dim();
    return std::tie(ta, a) < std::tie(tb, b);
  });
  for (int x : probes) {
    std::vector<long> pred(cands.size());
    for (size_t ci = 0; ci < cands.size(); ++ci) {
      long p = 0;
      for (auto& [l, m] : class_decomp_[cands[ci]])
        p += long(m) * hom_indec(x, label_index_.at(l));
      pred[ci] = p;
    }
    if (std::adjacent_find(pred.begin(), pred.end(),
                           std::not_equal_to<>()) == pred.end())
      continue;  // probe does not separate the remaining candidates
    long h = hom_dim(reps_[x], M);
    std::vector<int> keep;
    for (size_t ci = 0; ci < cands.size(); ++ci)
      if (pred[ci] == h) keep.push_back(cands[ci]);
    cands = keep;
    if (cands.size() <= 1) break;
  }
  if (cands.size() != 1)
    throw CatalogMiss("classification failed for dimension " +
                      dim_to_string(M.d));
  return confirmed(cands[0]);
}

namespace {
std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}
}  // namespace

IndecLabel Catalog::parse_label(const std::string& tok0) const {
  std::string tok = strip(tok0);
  auto fail = [&]() -> IndecLabel {
    throw UsageError("cannot parse module label: " + tok);
  };
  int taupow = 0;
  if (tok.rfind("tau^", 0) == 0) {
    size_t sp = tok.find(' ');
    if (sp == std::string::npos) return fail();
    taupow = std::stoi(tok.substr(4, sp - 4));
    tok = strip(tok.substr(sp + 1));
  }
  if (tok.size() > 2 && (tok[0] == 'P' || tok[0] == 'I') && tok[1] == '(') {
    if (tok.back() != ')') return fail();
    std::string vl = tok.substr(2, tok.size() - 3);
    int v = Q_->vertex_index(vl);
    if (v < 0) throw UsageError("unknown vertex label: " + vl);
    bool proj = tok[0] == 'P';
    if ((proj && taupow > 0) || (!proj && taupow < 0))
      throw UsageError("label denotes the zero module: " + tok0);
    int shift = proj ? -taupow : taupow;
    if (rtype_ == ReprType::Finite && !proj) {
      // resolve injectives through their dimension vector
      Rep M = rep_inj(Q_, F_, v);
      for (int k = 0; k < shift && M.total_dim(); ++k) M = tau_plus(M);
      if (M.total_dim() == 0)
        throw UsageError("label denotes the zero module: " + tok0);
      auto it = by_dim_.find(M.d);
      if (it == by_dim_.end() || it->second.size() != 1)
        throw CatalogMiss("not in catalogue: " + tok0);
      return labels_[it->second[0]];
    }
    IndecLabel l;
    l.kind = proj ? PartKind::Preproj : PartKind::Preinj;
    l.vertex = v;
    l.shift = shift;
    return l;
  }
  if (taupow != 0) return fail();
  if (tok[0] == 'S') {
    std::string vl = tok.substr(1);
    if (vl.size() > 2 && vl.front() == '(' && vl.back() == ')')
      vl = vl.substr(1, vl.size() - 2);
    int v = Q_->vertex_index(vl);
    if (v < 0) throw UsageError("unknown vertex label: " + vl);
    Dim e(Q_->n(), 0);
    e[v] = 1;
    auto it = by_dim_.find(e);
    if (it == by_dim_.end() || it->second.size() != 1)
      throw CatalogMiss("simple module not in catalogue: " + tok);
    return labels_[it->second[0]];
  }
  if (tok[0] == 'T') {
    size_t br = tok.find('[');
    if (br == std::string::npos || tok.back() != ']') return fail();
    int t = std::stoi(tok.substr(1, br - 1));
    std::string inner = tok.substr(br + 1, tok.size() - br - 2);
    size_t comma = inner.find(',');
    if (comma == std::string::npos) return fail();
    IndecLabel l;
    l.kind = PartKind::Tube;
    l.tube = t - 1;
    l.pos = std::stoi(inner.substr(0, comma));
    l.len = std::stoi(inner.substr(comma + 1));
    if (!td_ || l.tube < 0 || l.tube >= td_->ell())
      throw UsageError("no such tube: " + tok);
    int per = td_->tubes[l.tube].period();
    if (l.pos < 1 || l.pos > per || l.len < 1)
      throw UsageError("tube position out of range: " + tok);
    return l;
  }
  if (tok[0] == 'H') {
    size_t br = tok.find('[');
    if (br != 1 || tok.back() != ']') return fail();
    std::string inner = tok.substr(2, tok.size() - 3);
    size_t comma = inner.rfind(',');
    if (comma == std::string::npos) return fail();
    IndecLabel l;
    l.kind = PartKind::Homog;
    l.point = strip(inner.substr(0, comma));
    l.len = std::stoi(inner.substr(comma + 1));
    if (l.len < 1) return fail();
    if (l.point != "inf" && l.point.find('x') != std::string::npos) {
      GFPoly p = poly_parse(*F_, l.point);
      if (!poly_irreducible(p))
        throw UsageError("homogeneous point is not irreducible: " + l.point);
      l.point = poly_make_monic(p).to_string();
    }
    for (auto& [pt, tube] : special_points_)
      if (pt == l.point)
        throw CatalogMiss("point " + pt + " is special; use tube T" +
                          std::to_string(tube + 1));
    return l;
  }
  return fail();
}

Decomp Catalog::parse_class(const std::string& s) const {
  Decomp d;
  std::string str = strip(s);
  if (str.empty() || str == "0") return d;
  size_t pos = 0;
  while (pos < str.size()) {
    size_t plus = str.find(" + ", pos);
    std::string part = (plus == std::string::npos)
                           ? str.substr(pos)
                           : str.substr(pos, plus - pos);
    pos = (plus == std::string::npos) ? str.size() : plus + 3;
    part = strip(part);
    int mult = 1;
    size_t star = part.find('*');
    // A '*' introduces a multiplicity only when preceded by digits alone
    // (tube labels contain no '*'; "2*P(1)" does).
    if (star != std::string::npos &&
        part.find_first_not_of("0123456789") == star) {
      mult = std::stoi(part.substr(0, star));
      part = strip(part.substr(star + 1));
      if (mult < 1) throw UsageError("bad multiplicity in: " + s);
    }
    IndecLabel l = parse_label(part);
    d[l] += mult;
  }
  return d;
}

int Catalog::parse_class_id(const std::string& s) {
  return class_of(parse_class(s));
}

std::string Catalog::class_to_string(int cls) const {
  const Decomp& d = class_decomp_[cls];
  if (d.empty()) return "0";
  std::string s;
  for (auto& [l, m] : d) {
    if (!s.empty()) s += " + ";
    if (m > 1) s += std::to_string(m) + "*";
    s += l.to_string(*Q_);
  }
  return s;
}

}  // namespace hallwb
