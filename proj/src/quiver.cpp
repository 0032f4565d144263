#include "hallwb/quiver.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <sstream>

#include "hallwb/budget.hpp"

namespace hallwb {

Dim dim_add(const Dim& a, const Dim& b) {
  assert(a.size() == b.size());
  Dim r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
Dim dim_sub(const Dim& a, const Dim& b) {
  assert(a.size() == b.size());
  Dim r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
bool dim_leq(const Dim& a, const Dim& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
bool dim_is_zero(const Dim& a) {
  for (int x : a)
    if (x) return false;
  return true;
}
int dim_total(const Dim& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}
std::string dim_to_string(const Dim& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

long Quiver::euler(const Dim& a, const Dim& b) const {
  assert(int(a.size()) == n() && int(b.size()) == n());
  long r = 0;
  for (int i = 0; i < n(); ++i) r += long(a[i]) * b[i];
  for (const Arrow& ar : arrows) r -= long(a[ar.s]) * b[ar.t];
  return r;
}

long Quiver::sym(const Dim& a, const Dim& b) const {
  return euler(a, b) + euler(b, a);
}

std::vector<std::vector<int>> Quiver::cartan() const {
  std::vector<std::vector<int>> C(n(), std::vector<int>(n(), 0));
  for (int i = 0; i < n(); ++i) C[i][i] = 2;
  for (const Arrow& ar : arrows) {
    C[ar.s][ar.t] -= 1;
    C[ar.t][ar.s] -= 1;
  }
  return C;
}

std::vector<int> Quiver::admissible_sink_order() const {
  std::vector<int> outdeg(n(), 0), order;
  std::vector<std::vector<int>> pred(n());
  for (const Arrow& ar : arrows) {
    if (ar.s == ar.t) throw UsageError("quiver has a loop at vertex " +
                                       vlabels[ar.s]);
    outdeg[ar.s]++;
    pred[ar.t].push_back(ar.s);
  }
  std::vector<bool> used(n(), false);
  for (int step = 0; step < n(); ++step) {
    int pick = -1;
    for (int v = 0; v < n(); ++v)
      if (!used[v] && outdeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick < 0) throw UsageError("quiver has an oriented cycle");
    used[pick] = true;
    order.push_back(pick);
    for (int u : pred[pick]) --outdeg[u];
  }
  return order;
}

Dim reflect_dim(const Quiver& Q, int v, const Dim& d) {
  // s_v(d) = d - (d, theta_v) theta_v
  Dim theta(Q.n(), 0);
  theta[v] = 1;
  long pairing = Q.sym(d, theta);
  Dim r = d;
  r[v] -= int(pairing);
  return r;
}

std::vector<std::vector<long>> Quiver::coxeter() const {
  auto order = admissible_sink_order();
  int m = n();
  std::vector<std::vector<long>> M(m, std::vector<long>(m, 0));
  for (int i = 0; i < m; ++i) M[i][i] = 1;
  // c = S_{i_m} ... S_{i_1}, applied to columns: build by acting on basis
  // vectors with the reflections in order.
  for (int j = 0; j < m; ++j) {
    Dim col(m, 0);
    for (int i = 0; i < m; ++i) col[i] = int(M[i][j]);
    for (int v : order) col = reflect_dim(*this, v, col);
    for (int i = 0; i < m; ++i) M[i][j] = col[i];
  }
  return M;
}

std::vector<std::vector<long>> Quiver::coxeter_inverse() const {
  auto order = admissible_sink_order();
  int m = n();
  std::vector<std::vector<long>> M(m, std::vector<long>(m, 0));
  for (int i = 0; i < m; ++i) M[i][i] = 1;
  for (int j = 0; j < m; ++j) {
    Dim col(m, 0);
    for (int i = 0; i < m; ++i) col[i] = int(M[i][j]);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      col = reflect_dim(*this, *it, col);
    for (int i = 0; i < m; ++i) M[i][j] = col[i];
  }
  return M;
}

int Quiver::vertex_index(const std::string& label) const {
  for (int i = 0; i < n(); ++i)
    if (vlabels[i] == label) return i;
  return -1;
}

bool Quiver::is_sink(int v) const {
  for (const Arrow& ar : arrows)
    if (ar.s == v) return false;
  return true;
}
bool Quiver::is_source(int v) const {
  for (const Arrow& ar : arrows)
    if (ar.t == v) return false;
  return true;
}

Quiver Quiver::reversed_at(int v) const {
  Quiver R = *this;
  R.name = name;
  for (Arrow& ar : R.arrows)
    if (ar.s == v || ar.t == v) std::swap(ar.s, ar.t);
  return R;
}

std::string Quiver::to_text() const {
  std::string s = "vertices:";
  for (const auto& v : vlabels) s += " " + v;
  s += "\narrows:";
  for (const Arrow& ar : arrows)
    s += " " + ar.name + ":" + vlabels[ar.s] + "->" + vlabels[ar.t];
  return s + "\n";
}

namespace {

QuiverPtr make(std::string name, int n, std::vector<std::pair<int, int>> ars) {
  auto Q = std::make_shared<Quiver>();
  Q->name = std::move(name);
  for (int i = 1; i <= n; ++i) Q->vlabels.push_back(std::to_string(i));
  int k = 0;
  for (auto& [s, t] : ars) {
    Arrow a;
    a.s = s - 1;
    a.t = t - 1;
    a.name = "a" + std::to_string(++k);
    Q->arrows.push_back(a);
  }
  Q->admissible_sink_order();  // validates acyclicity
  return Q;
}

}  // namespace

QuiverPtr builtin_quiver(const std::string& name) {
  if (name == "A2") return make("A2", 2, {{1, 2}});
  if (name == "A3") return make("A3", 3, {{1, 2}, {2, 3}});
  if (name == "K") return make("K", 2, {{1, 2}, {1, 2}});
  if (name.rfind("A~", 0) == 0) {
    // A~p,q: cycle with p arrows 1->2->...->p+1 and q arrows
    // 1->p+q->p+q-1->...->p+1 (q = 1 gives the single bypass arrow 1->p+1).
    auto comma = name.find(',');
    if (comma == std::string::npos)
      throw UsageError("builtin A~ needs the form A~p,q");
    int p = std::stoi(name.substr(2, comma - 2));
    int q = std::stoi(name.substr(comma + 1));
    if (p < 1 || q < 1 || p + q < 3)
      throw UsageError("A~p,q requires p,q >= 1 and p+q >= 3");
    std::vector<std::pair<int, int>> ars;
    for (int i = 1; i <= p; ++i) ars.push_back({i, i + 1});
    if (q == 1) {
      ars.push_back({1, p + 1});
    } else {
      ars.push_back({1, p + q});
      for (int i = p + q; i > p + 1; --i) ars.push_back({i, i - 1});
    }
    return make(name, p + q, ars);
  }
  if (name.rfind("D~", 0) == 0) {
    int nn = std::stoi(name.substr(2));
    if (nn < 4) throw UsageError("D~n requires n >= 4");
    // vertices 1..n+1; arms 1->3, 2->3; chain (n-1)->(n-2)->...->3;
    // tails n->(n-1), (n+1)->(n-1).
    std::vector<std::pair<int, int>> ars = {{1, 3}, {2, 3}};
    for (int i = 4; i <= nn - 1; ++i) ars.push_back({i, i - 1});
    ars.push_back({nn, nn - 1});
    ars.push_back({nn + 1, nn - 1});
    return make(name, nn + 1, ars);
  }
  if (name == "E~6")
    return make("E~6", 7, {{1, 2}, {2, 3}, {4, 3}, {5, 4}, {6, 3}, {7, 6}});
  if (name == "E~7")
    return make("E~7", 8,
                {{1, 2}, {2, 3}, {3, 4}, {5, 4}, {6, 5}, {7, 6}, {8, 4}});
  if (name == "E~8")
    return make("E~8", 9,
                {{1, 2}, {2, 3}, {4, 3}, {5, 4}, {6, 5}, {7, 6}, {8, 7},
                 {9, 3}});
  throw UsageError("unknown builtin quiver: " + name);
}

QuiverPtr parse_quiver(const std::string& text) {
  auto Q = std::make_shared<Quiver>();
  Q->name = "custom";
  std::istringstream in(text);
  std::string line;
  bool have_v = false, have_a = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "vertices:") {
      std::string v;
      while (ls >> v) Q->vlabels.push_back(v);
      have_v = true;
    } else if (head == "arrows:") {
      std::string tok;
      while (ls >> tok) {
        auto colon = tok.find(':');
        auto dash = tok.find("->");
        if (colon == std::string::npos || dash == std::string::npos ||
            dash < colon)
          throw UsageError("bad arrow token: " + tok);
        Arrow a;
        a.name = tok.substr(0, colon);
        std::string s = tok.substr(colon + 1, dash - colon - 1);
        std::string t = tok.substr(dash + 2);
        a.s = Q->vertex_index(s);
        a.t = Q->vertex_index(t);
        if (a.s < 0 || a.t < 0)
          throw UsageError("arrow references unknown vertex: " + tok);
        Q->arrows.push_back(a);
      }
      have_a = true;
    } else {
      throw UsageError("unrecognized quiver line: " + line);
    }
  }
  if (!have_v) throw UsageError("quiver text needs a 'vertices:' line");
  if (!have_a && Q->arrows.empty() && Q->n() > 1) {
    // allow arrowless quivers only when stated explicitly
    throw UsageError("quiver text needs an 'arrows:' line");
  }
  Q->admissible_sink_order();  // validates acyclicity
  return Q;
}

QuiverPtr resolve_quiver(const std::string& name_or_text) {
  try {
    return builtin_quiver(name_or_text);
  } catch (const UsageError&) {
  }
  if (name_or_text.find("vertices:") != std::string::npos)
    return parse_quiver(name_or_text);
  std::ifstream f(name_or_text);
  if (f.good()) {
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_quiver(ss.str());
  }
  throw UsageError("cannot resolve quiver: " + name_or_text);
}

}  // namespace hallwb
