#include "hallwb/pbw.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hallwb/budget.hpp"

namespace hallwb {

namespace {

// All degrees 0 <= e <= cap componentwise.
std::vector<Dim> degrees_upto(const Dim& cap) {
  std::vector<Dim> out;
  Dim e(cap.size(), 0);
  for (;;) {
    out.push_back(e);
    int i = 0;
    while (i < int(cap.size()) && e[i] == cap[i]) e[i++] = 0;
    if (i == int(cap.size())) break;
    ++e[i];
  }
  return out;
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

bool all_kind(const Decomp& d, PartKind k) {
  for (const auto& [l, m] : d) {
    (void)m;
    if (l.kind != k) return false;
  }
  return true;
}

}  // namespace

PBW::PBW(HallAlg& alg) : alg_(alg) {
  Catalog& C = cat();
  if (!C.is_tame())
    throw UsageError("PBW machinery is defined for tame quivers only");
  emb_ = KroneckerEmbedding::build(C.quiver_ptr(), C.field(), C.tame());
  kq_ = builtin_quiver("K");
}

Catalog& PBW::kron_catalog(int min_bound) {
  if (!kcat_ || kcat_->bound() < min_bound)
    kcat_ = std::make_unique<Catalog>(kq_, cat().q(), min_bound);
  return *kcat_;
}

Rep PBW::transport(const Rep& MK) const {
  if (MK.Q->n() != 2 || MK.Q->arrows.size() != 2)
    throw UsageError("transport expects a Kronecker representation");
  return emb_->image(MK.maps[0], MK.maps[1]);
}

int PBW::embed_kronecker(int kron_cls) {
  Catalog& K = kron_catalog();
  return cat().classify(transport(K.rep_of(kron_cls)));
}

int PBW::embed_kronecker(const std::string& kron_cls) {
  return embed_kronecker(kron_catalog().parse_class_id(kron_cls));
}

int PBW::image_indec_class(const std::string& point, int m) {
  auto key = std::make_pair(point, m);
  auto it = img_cache_.find(key);
  if (it != img_cache_.end()) return it->second;
  Catalog& C = cat();
  Rep R = kron_regular(kq_, C.field(), point, m);
  int cls = C.classify(transport(R));
  const Decomp& d = C.decomp(cls);
  bool indec_regular =
      d.size() == 1 && d.begin()->second == 1 &&
      (d.begin()->first.kind == PartKind::Tube ||
       d.begin()->first.kind == PartKind::Homog);
  const Dim& delta = C.tame().delta;
  Dim want(delta.size());
  for (size_t i = 0; i < delta.size(); ++i) want[i] = R.d[0] * delta[i];
  if (!indec_regular || C.dim_of(cls) != want)
    throw UsageError("presentation transport failure at " + point);
  img_cache_[key] = cls;
  return cls;
}

EDeltaParts PBW::e_delta_parts(int n) {
  if (n < 1) throw UsageError("e_delta_parts needs n >= 1");
  auto it = parts_cache_.find(n);
  if (it != parts_cache_.end()) return it->second;
  Catalog& C = cat();
  const Dim& delta = C.tame().delta;

  // Regular Kronecker indecomposables of weight deg(point) * m <= n.
  struct Obj {
    std::string point;
    int weight;
    int m;
  };
  std::vector<Obj> objs;
  for (const auto& [pt, deg] : closed_points(*C.field(), n))
    for (int m = 1; m * deg <= n; ++m) objs.push_back({pt, deg * m, m});

  EDeltaParts out{alg_.zero(), alg_.zero(), alg_.zero()};
  const Coeff norm = alg_.cv(-long(n) * dim_total(delta));
  Decomp acc;
  std::function<void(size_t, int, int, int)> rec = [&](size_t i, int left,
                                                       int tubes, int homogs) {
    if (left == 0) {
      int cls = cat().class_of(acc);
      HallElement term = HallAlg::scale(norm, alg_.u(cls));
      if (homogs == 0)
        out.e1 = HallAlg::add(out.e1, term);
      else if (tubes == 0)
        out.e3 = HallAlg::add(out.e3, term);
      else
        out.e2 = HallAlg::add(out.e2, term);
      return;
    }
    if (i == objs.size()) return;
    rec(i + 1, left, tubes, homogs);
    const Obj& o = objs[i];
    int img = image_indec_class(o.point, o.m);
    const Decomp& part = cat().decomp(img);
    bool tube = part.begin()->first.kind == PartKind::Tube;
    Decomp saved = acc;
    for (int c = 1; c * o.weight <= left; ++c) {
      for (const auto& [l, k] : part) acc[l] += k;
      rec(i + 1, left - c * o.weight, tubes + (tube ? c : 0),
          homogs + (tube ? 0 : c));
    }
    acc = saved;
  };
  rec(0, n, 0, 0);
  parts_cache_[n] = out;
  return out;
}

HallElement PBW::e_delta(int n) {
  EDeltaParts p = e_delta_parts(n);
  return HallAlg::add(HallAlg::add(p.e1, p.e2), p.e3);
}

HallElement PBW::e_w3(const std::vector<int>& w) {
  HallElement acc = alg_.one();
  for (int part : w) acc = alg_.multiply(acc, e_delta_parts(part).e3);
  return acc;
}

Lemma412Report PBW::lemma412_check(int n, int nprime) {
  Lemma412Report rep;
  EDeltaParts a = e_delta_parts(n), b = e_delta_parts(nprime);
  rep.a = HallAlg::eq(alg_.multiply(a.e1, b.e3), alg_.multiply(b.e3, a.e1));
  rep.c = HallAlg::eq(alg_.multiply(a.e3, b.e3), alg_.multiply(b.e3, a.e3));
  HallElement mix = alg_.zero();
  for (int m = 1; m <= n - 1; ++m)
    mix = HallAlg::add(
        mix, alg_.multiply(e_delta_parts(m).e1, e_delta_parts(n - m).e3));
  rep.b = HallAlg::eq(a.e2, mix);
  return rep;
}

std::vector<PBWElement> PBW::pbw_basis(const Dim& gamma) {
  Catalog& C = cat();
  const Dim& delta = C.tame().delta;
  auto classes_with_kind = [&](const Dim& d, PartKind k) {
    std::vector<int> out;
    if (dim_is_zero(d)) return std::vector<int>{C.zero_class()};
    for (int c : C.classes_of_dim(d))
      if (all_kind(C.decomp(c), k)) out.push_back(c);
    return out;
  };
  std::vector<PBWElement> out;
  for (const Dim& dp : degrees_upto(gamma)) {
    Dim rest1 = dim_sub(gamma, dp);
    std::vector<int> Ps = classes_with_kind(dp, PartKind::Preproj);
    if (Ps.empty()) continue;
    for (const Dim& dm : degrees_upto(rest1)) {
      Dim rest2 = dim_sub(rest1, dm);
      std::vector<int> Ms = classes_with_kind(dm, PartKind::Tube);
      if (Ms.empty()) continue;
      // choose the number of delta's consumed by the partition
      for (int nw = 0;; ++nw) {
        Dim wdim(delta.size(), 0);
        for (int i = 0; i < int(delta.size()); ++i) wdim[i] = nw * delta[i];
        if (!dim_leq(wdim, rest2)) break;
        Dim di = dim_sub(rest2, wdim);
        std::vector<int> Is = classes_with_kind(di, PartKind::Preinj);
        if (Is.empty()) continue;
        for (const auto& w : partitions_of(nw))
          for (int P : Ps)
            for (int M : Ms)
              for (int I : Is) {
                PBWElement el;
                el.Pcls = P;
                el.Mcls = M;
                el.Icls = I;
                el.w = w;
                HallElement v =
                    alg_.multiply(alg_.angle_basis(P), alg_.angle_basis(M));
                v = alg_.multiply(v, e_w3(w));
                v = alg_.multiply(v, alg_.angle_basis(I));
                el.value = std::move(v);
                std::string ws = "w=(";
                for (size_t t = 0; t < w.size(); ++t)
                  ws += (t ? "," : "") + std::to_string(w[t]);
                ws += ")";
                el.label = C.class_to_string(P) + " | " + C.class_to_string(M) +
                           " | " + ws + " | " + C.class_to_string(I);
                out.push_back(std::move(el));
              }
      }
    }
  }
  return out;
}

PbwRankReport PBW::pbw_rank_check(const Dim& gamma) {
  if (alg_.mode() != CoeffMode::FixedQ)
    throw UsageError("rank checks run in fixed-q mode");
  return rank_core(gamma, alg_.singular_span(gamma));
}

std::map<Dim, PbwRankReport> PBW::pbw_rank_sweep(const Dim& cap) {
  if (alg_.mode() != CoeffMode::FixedQ)
    throw UsageError("rank checks run in fixed-q mode");
  std::map<Dim, PbwRankReport> out;
  for (auto& [deg, hs] : alg_.singular_span_all(cap)) {
    if (dim_is_zero(deg)) continue;
    out.emplace(deg, rank_core(deg, hs));
  }
  return out;
}

PbwRankReport PBW::rank_core(const Dim& gamma, const GradedSubspace& hs) {
  Catalog& C = cat();
  PbwRankReport rep;
  std::vector<PBWElement> B = pbw_basis(gamma);
  rep.b_count = long(B.size());

  const std::vector<int>& classes = C.classes_of_dim(gamma);
  std::map<int, int> col;
  for (int i = 0; i < int(classes.size()); ++i) col[classes[i]] = i;
  const int ncols = int(classes.size());

  std::vector<std::vector<Coeff>> rows;  // echelon rows, pivot-normalized
  std::vector<int> pivots;
  auto insert_row = [&](std::vector<Coeff> r) {
    for (size_t k = 0; k < rows.size(); ++k) {
      const Coeff c = r[pivots[k]];  // copy: the loop writes r[pivots[k]]
      if (c.is_zero()) continue;
      for (int j = 0; j < ncols; ++j)
        r[j] = r[j] - c * rows[k][j];
    }
    int p = -1;
    for (int j = 0; j < ncols; ++j)
      if (!r[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) return false;
    Coeff inv = alg_.cone() / r[p];
    for (int j = 0; j < ncols; ++j) r[j] = r[j] * inv;
    rows.push_back(std::move(r));
    pivots.push_back(p);
    return true;
  };
  auto to_row = [&](const HallElement& e) {
    std::vector<Coeff> r(ncols, alg_.czero());
    for (const auto& [t, c] : e.terms) {
      if (!dim_is_zero(t.mu))
        throw UsageError("rank check expects torus-free elements");
      r[col.at(t.cls)] = c;
    }
    return r;
  };

  for (const auto& el : B) {
    if (!el.value.is_zero()) ++rep.nonzero;
    if (insert_row(to_row(el.value))) ++rep.rank;
  }
  rep.hs_rank = hs.rank;
  rep.combined = rep.rank;
  for (const auto& e : hs.basis)
    if (insert_row(to_row(e))) ++rep.combined;
  rep.independent = rep.rank == rep.b_count;
  rep.spans = rep.rank == rep.hs_rank && rep.combined == rep.hs_rank;
  return rep;
}

}  // namespace hallwb
