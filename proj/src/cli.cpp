#include "hallwb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hallwb/hallalg.hpp"
#include "hallwb/hallpoly.hpp"
#include "hallwb/orders.hpp"
#include "hallwb/pbw.hpp"

namespace hallwb {

namespace {

using Json = nlohmann::ordered_json;

Dim parse_dim(const std::string& s, int n) {
  Dim d;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    d.push_back(std::stoi(tok));
  if (int(d.size()) != n)
    throw UsageError("dimension vector '" + s + "' needs " +
                     std::to_string(n) + " components");
  return d;
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stol(tok));
  return out;
}

Json dim_json(const Dim& d) {
  Json a = Json::array();
  for (int x : d) a.push_back(x);
  return a;
}

// Shared per-command configuration.
struct Opts {
  std::string quiver;
  long q = 2;
  int bound = 10;
  std::uint64_t budget = Budget::kDefaultOps;
  std::uint64_t seed = 0;  // reserved for randomized searches; recorded only
  std::string format = "json";
  std::string coeff = "numeric";
  std::string green = "graded";

  CoeffMode mode() const {
    if (coeff == "numeric") return CoeffMode::FixedQ;
    if (coeff == "generic") return CoeffMode::Generic;
    throw UsageError("--coeff must be numeric or generic");
  }
  GreenNorm norm() const {
    if (green == "graded") return GreenNorm::GradedSpace;
    if (green == "variety") return GreenNorm::RepVariety;
    throw UsageError("--green must be graded or variety");
  }
};

void add_common(CLI::App* c, Opts& o, bool wants_q = true) {
  c->add_option("--quiver", o.quiver, "builtin name, inline text, or file")
      ->required();
  if (wants_q) c->add_option("--q", o.q, "field size (prime power)");
  c->add_option("--bound", o.bound, "catalogue total-dimension bound");
  c->add_option("--budget-ops", o.budget, "cap on field-element operations");
  c->add_option("--seed", o.seed, "seed for randomized searches");
  c->add_option("--format", o.format, "json|csv|pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  c->add_option("--coeff", o.coeff, "numeric (at q) or generic (in v)")
      ->check(CLI::IsMember({"numeric", "generic"}));
  c->add_option("--green", o.green, "Green-form normalization")
      ->check(CLI::IsMember({"graded", "variety"}));
}

void emit_pretty(std::ostream& out, const Json& j, int indent) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_object())) {
        out << pad << k << ":\n";
        emit_pretty(out, v, indent + 2);
      } else {
        out << pad << k << ": " << (v.is_string() ? v.get<std::string>()
                                                  : v.dump())
            << "\n";
      }
    }
  } else if (j.is_array()) {
    for (auto& v : j) {
      out << pad << "-\n";
      emit_pretty(out, v, indent + 2);
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string esc = "\"";
  for (char c : s) {
    if (c == '"') esc += '"';
    esc += c;
  }
  return esc + "\"";
}

void emit(std::ostream& out, const Json& j, const std::string& format) {
  if (format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  if (format == "pretty") {
    emit_pretty(out, j, 0);
    return;
  }
  // csv: a "rows" array of flat objects becomes a table; everything else
  // flattens to key,value lines.
  if (j.is_object() && j.contains("rows") && j["rows"].is_array() &&
      !j["rows"].empty()) {
    const Json& rows = j["rows"];
    bool first = true;
    for (auto& [k, v] : rows[0].items()) {
      if (!first) out << ",";
      out << csv_cell(Json(k));
      first = false;
      (void)v;
    }
    out << "\n";
    for (auto& r : rows) {
      first = true;
      for (auto& [k, v] : r.items()) {
        if (!first) out << ",";
        out << csv_cell(v);
        first = false;
        (void)k;
      }
      out << "\n";
    }
    return;
  }
  for (auto& [k, v] : j.items()) out << csv_cell(Json(k)) << ","
                                     << csv_cell(v) << "\n";
}

Json element_json(const HallAlg& alg, const HallElement& a) {
  Json terms = Json::array();
  for (const auto& [t, c] : a.terms) {
    Json one;
    one["K"] = dim_json(t.mu);
    one["class"] = alg.cat().class_to_string(t.cls);
    one["coeff"] = c.to_string();
    terms.push_back(one);
  }
  Json j;
  j["terms"] = terms;
  j["pretty"] = alg.to_string(a);
  return j;
}

struct Ctx {
  Catalog cat;
  HallEngine eng;
  Ctx(const Opts& o)
      : cat(resolve_quiver(o.quiver), unsigned(o.q), o.bound), eng(cat) {}
};

// --- subcommand bodies; each returns the document to emit ---

Json cmd_quiver_show(const Opts& o) {
  QuiverPtr Q = resolve_quiver(o.quiver);
  Json j;
  j["name"] = Q->name;
  j["vertices"] = Q->vlabels;
  Json ar = Json::array();
  for (const Arrow& a : Q->arrows) {
    Json e;
    e["name"] = a.name;
    e["from"] = Q->vlabels[a.s];
    e["to"] = Q->vlabels[a.t];
    ar.push_back(e);
  }
  j["arrows"] = ar;
  ReprType rt = classify_quiver(*Q);
  j["type"] = rt == ReprType::Finite  ? "finite"
              : rt == ReprType::Tame ? "tame"
                                      : "wild";
  if (rt == ReprType::Tame) {
    TameData td = TameData::compute(Q);
    j["delta"] = dim_json(td.delta);
    std::vector<int> per;
    for (const auto& t : td.tubes) per.push_back(t.period());
    std::sort(per.begin(), per.end());  // table order, not tube-index order
    j["periods"] = per;
  }
  return j;
}

Json cmd_catalog_list(const Opts& o) {
  Ctx cx(o);
  Json rows = Json::array();
  for (int i = 0; i < cx.cat.indec_count(); ++i) {
    Json r;
    r["label"] = cx.cat.label_to_string(cx.cat.label(i));
    r["dim"] = dim_to_string(cx.cat.indec_rep(i).d);
    r["end"] = cx.cat.indec_end_dim(i);
    r["resdeg"] = cx.cat.res_degree(i);
    rows.push_back(r);
  }
  Json j;
  j["count"] = cx.cat.indec_count();
  j["rows"] = rows;
  Json hp = Json::array();
  for (auto& [id, deg] : cx.cat.homog_points()) {
    Json p;
    p["id"] = id;
    p["degree"] = deg;
    hp.push_back(p);
  }
  j["homog_points"] = hp;
  Json sp = Json::array();
  for (auto& [id, tube] : cx.cat.special_points()) {
    Json p;
    p["id"] = id;
    p["tube"] = "T" + std::to_string(tube + 1);
    sp.push_back(p);
  }
  j["special_points"] = sp;
  return j;
}

Json cmd_hall_g(const Opts& o, const std::string& M, const std::string& N,
                const std::string& L, const std::string& route) {
  Ctx cx(o);
  int r = route == "sub"         ? 1
          : route == "sequences" ? 2
          : route == "riedtmann" ? 3
                                 : throw UsageError("unknown route " + route);
  BigInt g = cx.eng.hall_number(cx.cat.parse_class_id(M),
                                cx.cat.parse_class_id(N),
                                cx.cat.parse_class_id(L), r);
  Json j;
  j["g"] = g.str();
  return j;
}

Json cmd_hall_extset(const Opts& o, const std::string& M,
                     const std::string& N) {
  Ctx cx(o);
  ExtSet es = cx.eng.ext_set(cx.cat.parse_class_id(M),
                             cx.cat.parse_class_id(N));
  Json rows = Json::array();
  for (auto& [cls, mem] : es.members) {
    Json r;
    r["class"] = cx.cat.class_to_string(cls);
    r["g"] = mem.g.str();
    r["orbit_dim"] = mem.orbit_dim;
    rows.push_back(r);
  }
  Json j;
  j["degree"] = dim_json(es.degree);
  j["rows"] = rows;
  return j;
}

Json cmd_alg_mul(const Opts& o, const std::string& A, const std::string& B) {
  Ctx cx(o);
  HallAlg alg(cx.eng, o.mode(), o.norm());
  HallElement p = alg.multiply(alg.u(cx.cat.parse_class_id(A)),
                               alg.u(cx.cat.parse_class_id(B)));
  Json j;
  j["product"] = element_json(alg, p);
  return j;
}

Json cmd_alg_delta(const Opts& o, const std::string& A, int guard) {
  Ctx cx(o);
  HallAlg alg(cx.eng, o.mode(), o.norm());
  TensorElement t = alg.comultiply(alg.u(cx.cat.parse_class_id(A)), guard);
  Json rows = Json::array();
  for (const auto& [k, c] : t) {
    Json r;
    r["left_K"] = dim_json(k.first.mu);
    r["left_class"] = cx.cat.class_to_string(k.first.cls);
    r["right_K"] = dim_json(k.second.mu);
    r["right_class"] = cx.cat.class_to_string(k.second.cls);
    r["coeff"] = c.to_string();
    rows.push_back(r);
  }
  Json j;
  j["note"] = "terms are K-left normal words: K_mu u_A (x) K_nu u_B";
  j["rows"] = rows;
  return j;
}

Json cmd_alg_antipode(const Opts& o, const std::string& A, int method,
                      int guard) {
  Ctx cx(o);
  HallAlg alg(cx.eng, o.mode(), o.norm());
  HallElement s =
      alg.antipode(alg.u(cx.cat.parse_class_id(A)), method, guard);
  Json j;
  j["antipode"] = element_json(alg, s);
  return j;
}

Json cmd_check_serre(const Opts& o) {
  Ctx cx(o);
  HallAlg alg(cx.eng, o.mode(), o.norm());
  bool ok = true;
  int n = cx.cat.quiver().n();
  for (int i = 0; i < n && ok; ++i)
    for (int j = 0; j < n && ok; ++j)
      if (i != j) ok = alg.serre_check(i, j).is_zero();
  Json j;
  j["ok"] = ok;
  return j;
}

Json cmd_check_hopf(const Opts& o, int dim_bound) {
  Ctx cx(o);
  HallAlg alg(cx.eng, o.mode(), o.norm());
  HopfReport rep = hopf_suite(alg, dim_bound);
  Json j;
  j["ok"] = rep.ok();
  j["classes"] = rep.classes;
  j["pairs"] = rep.pairs;
  j["delta_multiplicative"] = rep.delta_mult;
  j["counit"] = rep.counit_ok;
  j["antipode_axioms"] = rep.antipode_ax;
  j["antipode_methods_agree"] = rep.methods_agree;
  return j;
}

Json cmd_check_lemma412(const Opts& o, int n, int nprime) {
  Ctx cx(o);
  HallAlg alg(cx.eng, o.mode(), o.norm());
  PBW pbw(alg);
  Lemma412Report rep = pbw.lemma412_check(n, nprime);
  Json j;
  j["ok"] = rep.ok();
  j["a_commute_e1"] = rep.a;
  j["b_mixed_expansion"] = rep.b;
  j["c_commute_e3"] = rep.c;
  return j;
}

Json pbw_report_json(const Dim& deg, const PbwRankReport& r) {
  Json j;
  j["degree"] = dim_to_string(deg);
  j["b_count"] = r.b_count;
  j["nonzero"] = r.nonzero;
  j["rank"] = r.rank;
  j["hs_rank"] = r.hs_rank;
  j["combined"] = r.combined;
  j["independent"] = r.independent;
  j["spans"] = r.spans;
  j["ok"] = r.ok();
  return j;
}

Json cmd_check_pbw(const Opts& o, const std::string& gamma,
                   const std::string& cap) {
  Ctx cx(o);
  HallAlg alg(cx.eng, o.mode(), o.norm());
  PBW pbw(alg);
  int n = cx.cat.quiver().n();
  Json j;
  if (!gamma.empty()) {
    Dim g = parse_dim(gamma, n);
    PbwRankReport r = pbw.pbw_rank_check(g);
    j = pbw_report_json(g, r);
  } else {
    Dim c = cap.empty() ? cx.cat.tame().delta : parse_dim(cap, n);
    Json rows = Json::array();
    bool ok = true;
    for (auto& [deg, r] : pbw.pbw_rank_sweep(c)) {
      rows.push_back(pbw_report_json(deg, r));
      ok = ok && r.ok();
    }
    j["ok"] = ok;
    j["rows"] = rows;
  }
  return j;
}

Json cmd_check_ldelta(const Opts& o, int n) {
  Ctx cx(o);
  if (o.mode() != CoeffMode::FixedQ)
    throw UsageError("ldelta needs --coeff numeric");
  HallAlg alg(cx.eng, o.mode(), o.norm());
  const TameData& td = cx.cat.tame();
  Dim nd(td.delta.size(), 0);
  for (size_t i = 0; i < td.delta.size(); ++i) nd[i] = n * td.delta[i];
  LDeltaResult ld = alg.l_delta(n);
  int c = alg.composition_span(nd).rank;
  int hs = alg.singular_span(nd).rank;
  Json j;
  j["n"] = n;
  j["dim_Hs"] = hs;
  j["dim_C"] = c;
  j["dim_L"] = ld.space.rank;
  j["rank_identity"] = (hs == c + ld.space.rank);
  Json xs = Json::array();
  for (const HallElement& x : ld.x) xs.push_back(alg.to_string(x));
  j["x_basis"] = xs;
  return j;
}

Json cmd_check_orders(const Opts& o, int total_bound, int chain_bound) {
  Ctx cx(o);
  Orders ord(cx.eng);
  CoherenceReport rep = ord.coherence_scan(total_bound, chain_bound);
  Json j;
  j["ok"] = rep.ext_not_hom.empty();
  j["pairs"] = rep.pairs_checked;
  j["ext_not_hom"] = int(rep.ext_not_hom.size());
  j["hom_not_ext"] = int(rep.hom_not_ext.size());
  j["note"] =
      "hom_order is the implemented necessary-condition proxy for the "
      "geometric degeneration order (which is not computed directly)";
  return j;
}

Json cmd_poly_fit(const Opts& o, std::string X1, std::string X2,
                  std::string X3, const std::string& file,
                  const std::string& samples, const std::string& verify) {
  std::string qname = o.quiver;
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f.good()) throw UsageError("cannot open triple file: " + file);
    try {
      Json spec = Json::parse(f);
      if (spec.contains("quiver")) qname = spec["quiver"].get<std::string>();
      X1 = spec.at("X1").get<std::string>();
      X2 = spec.at("X2").get<std::string>();
      X3 = spec.at("X3").get<std::string>();
    } catch (const Json::exception& e) {
      throw UsageError("bad triple file " + file + ": " + e.what());
    }
  }
  if (qname.empty() || X1.empty() || X2.empty() || X3.empty())
    throw UsageError("poly fit needs --quiver and --X1 --X2 --X3 (or --file)");
  HallPoly hp(resolve_quiver(qname), o.bound);
  FittedPolynomial fp = hp.fit(
      parse_decomp_class(X1), parse_decomp_class(X2), parse_decomp_class(X3),
      samples.empty() ? std::vector<long>{} : parse_longs(samples),
      verify.empty() ? std::vector<long>{} : parse_longs(verify));
  Json j;
  j["quiver"] = qname;
  j["X1"] = X1;
  j["X2"] = X2;
  j["X3"] = X3;
  j["status"] = fp.status_string();
  j["polynomial"] = fp.poly_string();
  j["degree"] = fp.degree();
  Json cs = Json::array();
  for (const BigRat& c : fp.coeffs) cs.push_back(rat_to_string(c));
  j["coefficients"] = cs;  // coefficients[k] multiplies x^k
  Json ss = Json::array();
  for (auto& [q, g] : fp.samples) {
    Json r;
    r["q"] = q;
    r["g"] = g.str();
    ss.push_back(r);
  }
  j["samples"] = ss;
  Json vs = Json::array();
  for (auto& r : fp.verification) {
    Json v;
    v["q"] = r.q;
    v["predicted"] = rat_to_string(r.predicted);
    v["counted"] = r.counted.str();
    v["ok"] = r.ok;
    vs.push_back(v);
  }
  j["verification"] = vs;
  j["d_exponent"] = fp.d_exponent;
  j["d_constant"] = fp.d_constant;
  j["slot_checked"] = fp.slot_checked;
  j["note"] =
      "homogeneous slots instantiate at distinct degree-1 points; modules "
      "supported at higher-degree closed points have no decomposition class";
  return j;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact Ringel-Hall algebra workbench"};
  app.require_subcommand(1);
  Opts o;
  std::function<Json()> body;

  // quiver show
  auto* quiver = app.add_subcommand("quiver", "quiver inspection");
  quiver->require_subcommand(1);
  auto* qshow = quiver->add_subcommand("show", "vertices, arrows, type,"
                                               " delta, tube periods");
  add_common(qshow, o, /*wants_q=*/false);
  qshow->callback([&] { body = [&] { return cmd_quiver_show(o); }; });

  // catalog list
  auto* catc = app.add_subcommand("catalog", "indecomposable catalogue");
  catc->require_subcommand(1);
  auto* clist = catc->add_subcommand("list", "indecomposables up to bound");
  add_common(clist, o);
  clist->callback([&] { body = [&] { return cmd_catalog_list(o); }; });

  // hall g / hall extset
  std::string sM, sN, sL, route = "sub";
  auto* hall = app.add_subcommand("hall", "Hall numbers");
  hall->require_subcommand(1);
  auto* hg = hall->add_subcommand("g", "g^L_{M,N}");
  add_common(hg, o);
  hg->add_option("--M", sM, "quotient class")->required();
  hg->add_option("--N", sN, "sub class")->required();
  hg->add_option("--L", sL, "total class")->required();
  hg->add_option("--route", route, "sub|sequences|riedtmann")
      ->check(CLI::IsMember({"sub", "sequences", "riedtmann"}));
  hg->callback([&] { body = [&] { return cmd_hall_g(o, sM, sN, sL, route); }; });
  auto* hx = hall->add_subcommand("extset", "middle terms of Ext^1(M,N)");
  add_common(hx, o);
  hx->add_option("--M", sM, "quotient class")->required();
  hx->add_option("--N", sN, "sub class")->required();
  hx->callback([&] { body = [&] { return cmd_hall_extset(o, sM, sN); }; });

  // alg mul / delta / antipode
  std::string sA, sB;
  int method = 1, guard = 8;
  auto* alg = app.add_subcommand("alg", "twisted Hall algebra operations");
  alg->require_subcommand(1);
  auto* amul = alg->add_subcommand("mul", "u_[A] * u_[B]");
  add_common(amul, o);
  amul->add_option("--A", sA)->required();
  amul->add_option("--B", sB)->required();
  amul->callback([&] { body = [&] { return cmd_alg_mul(o, sA, sB); }; });
  auto* adel = alg->add_subcommand("delta", "comultiplication of u_[A]");
  add_common(adel, o);
  adel->add_option("--A", sA)->required();
  adel->add_option("--guard", guard, "max total dim admitted");
  adel->callback([&] { body = [&] { return cmd_alg_delta(o, sA, guard); }; });
  auto* aant = alg->add_subcommand("antipode", "antipode of u_[A]");
  add_common(aant, o);
  aant->add_option("--A", sA)->required();
  aant->add_option("--method", method, "1 closed form, 2 recursion")
      ->check(CLI::IsMember({1, 2}));
  aant->add_option("--guard", guard, "max total dim admitted");
  aant->callback(
      [&] { body = [&] { return cmd_alg_antipode(o, sA, method, guard); }; });

  // check ...
  int dim_bound = 3, ln = 1, lnp = 1, total_bound = 4, chain_bound = 4;
  std::string gamma, cap;
  auto* check = app.add_subcommand("check", "property checks");
  check->require_subcommand(1);
  auto* cserre = check->add_subcommand("serre", "quantum Serre relations");
  add_common(cserre, o);
  cserre->callback([&] { body = [&] { return cmd_check_serre(o); }; });
  auto* chopf = check->add_subcommand("hopf", "Hopf axiom sweep");
  add_common(chopf, o);
  chopf->add_option("--dim-bound", dim_bound, "class total-dim bound");
  chopf->callback(
      [&] { body = [&] { return cmd_check_hopf(o, dim_bound); }; });
  auto* c412 = check->add_subcommand("lemma412", "E_delta part identities");
  add_common(c412, o);
  c412->add_option("--n", ln, "first degree");
  c412->add_option("--nprime", lnp, "second degree");
  c412->callback(
      [&] { body = [&] { return cmd_check_lemma412(o, ln, lnp); }; });
  auto* cpbw = check->add_subcommand("pbw", "PBW rank checks");
  add_common(cpbw, o);
  cpbw->add_option("--gamma", gamma, "single degree a,b,c");
  cpbw->add_option("--cap", cap, "sweep cap a,b,c (default delta)");
  cpbw->callback([&] { body = [&] { return cmd_check_pbw(o, gamma, cap); }; });
  auto* cld = check->add_subcommand("ldelta", "L_{n delta} dimensions");
  add_common(cld, o);
  cld->add_option("--n", ln, "delta multiple");
  cld->callback([&] { body = [&] { return cmd_check_ldelta(o, ln); }; });
  auto* cord = check->add_subcommand("orders", "ext-order => hom-order scan");
  add_common(cord, o);
  cord->add_option("--total-bound", total_bound, "total dim bound");
  cord->add_option("--chain-bound", chain_bound, "ext chain depth");
  cord->callback([&] {
    body = [&] { return cmd_check_orders(o, total_bound, chain_bound); };
  });

  // poly fit
  std::string X1, X2, X3, file, samples, verify;
  auto* poly = app.add_subcommand("poly", "Hall polynomials");
  poly->require_subcommand(1);
  auto* pfit = poly->add_subcommand("fit", "fit and verify g as poly in q");
  add_common(pfit, o, /*wants_q=*/false);
  pfit->add_option("--X1", X1, "quotient-side decomposition class");
  pfit->add_option("--X2", X2, "sub-side decomposition class");
  pfit->add_option("--X3", X3, "total decomposition class");
  pfit->add_option("--file", file, "triple-specification JSON file");
  pfit->add_option("--samples", samples, "comma list of sample primes");
  pfit->add_option("--verify", verify, "comma list of held-out primes");
  pfit->callback([&] {
    body = [&] { return cmd_poly_fit(o, X1, X2, X3, file, samples, verify); };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    Json ej;
    ej["error"]["code"] = "usage";
    ej["error"]["message"] = e.what();
    err << ej.dump(2) << "\n";
    return 2;
  }

  try {
    BudgetScope scope(o.budget);
    Json j = body();
    emit(out, j, o.format);
    return 0;
  } catch (const UsageError& e) {
    Json ej;
    ej["error"]["code"] = "usage";
    ej["error"]["message"] = e.what();
    err << ej.dump(2) << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    Json ej;
    ej["error"]["code"] = "budget";
    ej["error"]["message"] = e.what();
    err << ej.dump(2) << "\n";
    return 3;
  } catch (const CatalogMiss& e) {
    Json ej;
    ej["error"]["code"] = "catalog-miss";
    ej["error"]["message"] = e.what();
    err << ej.dump(2) << "\n";
    return 4;
  }
}

int cli_run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace hallwb
