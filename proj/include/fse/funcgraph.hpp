#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "fse/core.hpp"

namespace fse {

// Digraph of an endofunction: edges x -> f(x). Every weakly connected
// component has exactly one cycle, with trees hanging off the cycle vertices.
struct FuncDigraph {
  EndoMap f;
  int ncomp = 0;
  std::vector<int> comp_id;                      // vertex -> component
  std::vector<std::vector<int>> comp_vertices;   // sorted; components ordered by least vertex
  std::vector<char> on_cycle;                    // vertex -> on its component cycle
  std::vector<std::vector<int>> cycles;          // per component, f-order from least cycle vertex
  std::vector<std::vector<int>> tree_children;   // vertex -> non-cycle preimages, ascending
};

FuncDigraph rho_decomposition(const EndoMap& f);
std::vector<std::vector<int>> components(const EndoMap& f);

// Weak connectivity, computed independently by union-find, by pairwise
// intersection of forward orbits (n <= 64), and by absence of a nontrivial
// invariant bipartition (n <= 12). The paths must agree.
bool is_connected(const EndoMap& f);

// Code of the hanging tree rooted at v: "()" for a leaf, otherwise the sorted
// concatenation of child codes in parentheses.
std::string ahu_code(const FuncDigraph& g, int v);

// Conjugacy-invariant code: the table of the canonical relabeling, joined by
// commas. Equal codes iff the functions are conjugate.
std::string canonical_code(const EndoMap& f);
// Relabeling p with conjugate(p, f) equal for all members of the class.
Perm canonical_perm(const EndoMap& f);
std::optional<Perm> are_conjugate(const EndoMap& f, const EndoMap& g);

mpz_class aut_order_tree(const FuncDigraph& g, int v);

// One entry per conjugacy type of component.
struct WreathComponent {
  int multiplicity = 0;
  int cycle_len = 0;
  int rotations = 0;    // code-preserving rotations of the cycle
  int tree_period = 0;  // cycle_len = rotations * tree_period
  std::vector<std::string> tree_codes;  // around the cycle, canonical rotation
  std::vector<mpz_class> tree_orders;
  mpz_class component_order;  // rotations * product of tree_orders
};
struct WreathDescriptor {
  std::vector<WreathComponent> classes;  // sorted by component code
  mpz_class total;                       // product over classes of order^mult * mult!
};
WreathDescriptor wreath_descriptor(const EndoMap& f);
mpz_class aut_order(const EndoMap& f);

// All permutations commuting with f; n <= 8.
std::vector<Perm> aut_brute(const EndoMap& f);

// Single function g whose centralizer should realize the joint centralizer of
// an idempotent h and an f with f.h = h.f = f. Two gluings are candidates:
// f on the image of h (falling back to h off it), or the reverse. Neither is
// correct for every input, so for n <= 8 the centralizers are compared
// element-by-element and the matching candidate returned.
struct GlueResult {
  EndoMap g;
  bool f_branch_on_image = true;  // which candidate was returned
  enum class Validation { confirmed, failed, skipped } validation = Validation::skipped;
};
GlueResult glue_fh(const EndoMap& h, const EndoMap& f);

// Graphviz output; fixed-point loops are omitted, every vertex is listed.
std::string export_dot(const EndoMap& f);

}  // namespace fse
