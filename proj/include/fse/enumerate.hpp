#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "fse/core.hpp"
#include "fse/kimura.hpp"
#include "fse/solution.hpp"

namespace fse {

// Conjugacy-class representatives of all n^n endofunctions, each in canonical
// relabeling, sorted by canonical code. 1 <= n <= 7.
std::vector<EndoMap> endo_classes(int n);
std::vector<EndoMap> connected_classes(int n);
std::vector<EndoMap> idempotent_classes(int n);

// Kimura operation tables up to semigroup isomorphism.
std::vector<OpTable> kimura_classes_filter(int n);     // scan of all n^(n^2) tables, n <= 3
std::vector<OpTable> kimura_classes_structure(int n);  // h x (a,b) x labeling, n <= 4
std::vector<OpTable> kimura_classes(int n);            // filter for n <= 3, structure at n = 4

enum class SolveMethod { brute, via_refqm, via_quadruple };

struct SolutionClass {
  std::string code;  // canonical_form of rep
  PairMap rep;       // representative in canonical relabeling
  ClassFlags flags;
  mpz_class aut_order;
};

struct ClassTable {
  int n = 0;
  std::vector<SolutionClass> classes;  // sorted by code
  std::map<std::string, long> counts;  // per-flag aggregates, plus "total"
};

// One representative per isomorphism class of solutions.
//   brute:         all (n^2)^(n^2) pair maps, n <= 2
//   via_refqm:     Kimura class reps x quasi-endomorphisms, n <= 3
//   via_quadruple: idempotent class reps x (a,b) x labelings x theta', n <= 5
// The methods agree on the class set wherever more than one applies.
ClassTable solution_classes(int n, SolveMethod m);

// Enumerated per-flag counts, each compared against its closed formula
// (divisor count, partition number, Davis, Harary, the divisor sums, the
// unitary count and the finite-order count). A mismatch throws.
std::map<std::string, mpz_class> class_count_table(int n);

}  // namespace fse
