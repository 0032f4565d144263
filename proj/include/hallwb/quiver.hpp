#pragma once
// Acyclic quivers, dimension vectors, and the associated bilinear forms.
//
// Euler form  <a,b> = sum_i a_i b_i - sum_{arrows s->t} a_s b_t.
// Symmetric form (a,b) = <a,b> + <b,a>; its matrix is the (generalized)
// Cartan matrix. The Coxeter matrix is the product of simple reflections
// along an admissible sink ordering and tracks the AR translate on
// dimension vectors of non-projective modules.

#include <memory>
#include <string>
#include <vector>

namespace hallwb {

using Dim = std::vector<int>;

Dim dim_add(const Dim& a, const Dim& b);
Dim dim_sub(const Dim& a, const Dim& b);
bool dim_leq(const Dim& a, const Dim& b);  // componentwise
bool dim_is_zero(const Dim& a);
int dim_total(const Dim& a);
std::string dim_to_string(const Dim& a);  // "(1,0,2)"

struct Arrow {
  int s = 0, t = 0;
  std::string name;
};

struct Quiver {
  std::string name;                   // builtin name or "custom"
  std::vector<std::string> vlabels;   // user-facing vertex labels
  std::vector<Arrow> arrows;
  int n() const { return int(vlabels.size()); }

  long euler(const Dim& a, const Dim& b) const;
  long sym(const Dim& a, const Dim& b) const;
  // Tits form q(a) = <a,a>.
  long tits(const Dim& a) const { return euler(a, a); }
  std::vector<std::vector<int>> cartan() const;

  // Vertices in an order where each is a sink after removing its
  // predecessors (reverse topological order). Throws UsageError on cycles.
  std::vector<int> admissible_sink_order() const;
  // Coxeter matrix c with dim(tau M) = c * dim(M) for non-projective M.
  std::vector<std::vector<long>> coxeter() const;
  std::vector<std::vector<long>> coxeter_inverse() const;

  int vertex_index(const std::string& label) const;  // -1 if absent
  bool is_sink(int v) const;
  bool is_source(int v) const;
  Quiver reversed_at(int v) const;  // flip all arrows at v
  std::string to_text() const;      // the two-line text format
};

using QuiverPtr = std::shared_ptr<const Quiver>;

// Built-in quivers: A2, A3, K, A~2,1 (general A~p,q), D~4 (general D~n),
// E~6, E~7, E~8.  Throws UsageError for unknown names.
QuiverPtr builtin_quiver(const std::string& name);
// Parse the two-line text format:
//   vertices: 1 2 3
//   arrows: a:1->2 b:2->3 c:1->3
QuiverPtr parse_quiver(const std::string& text);
// Name lookup, falling back to parsing a file path or inline text.
QuiverPtr resolve_quiver(const std::string& name_or_text);

// Apply the simple reflection s_v to a dimension vector (uses sym form).
Dim reflect_dim(const Quiver& Q, int v, const Dim& d);

}  // namespace hallwb
