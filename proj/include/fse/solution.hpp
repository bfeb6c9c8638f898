#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fse/core.hpp"
#include "fse/kimura.hpp"

namespace fse {

// R(x,y) = (x.y, x*y) solves
//   R12 R23 = R23 R13 = R13 R12
// on triples. verify_fs checks that law directly and, independently, the
// three equivalent table conditions:
//   x.(y.z) = (x.y).z = x.z
//   x*(y.z) = y.(x*z) = x*y
//   (x.y)*z = y*(x*z)  = y*z
// The two verdicts must agree; a mismatch is an internal error.
struct FsReport {
  bool valid = false;
  bool direct_ok = false;
  bool conditions_ok = false;
  bool path_agreement = false;
  std::optional<std::array<int, 3>> witness;  // first failing triple
};
FsReport verify_fs(const PairMap& p);

struct BraidReport {
  bool valid = false;
  std::optional<std::array<int, 3>> witness;
};
// R12 R23 R12 = R23 R12 R23
BraidReport verify_braid(const PairMap& p);

// A verified solution, carrying the structure of its left table (a Kimura
// operation) and the map theta(x) = x*0 with x*y = y.theta(x).
struct Solution {
  PairMap pm;
  KimuraStructure ks;
  EndoMap theta;

  int n() const { return pm.n; }
  int lv(int x, int y) const { return pm.lv(x, y); }
  int rv(int x, int y) const { return pm.rv(x, y); }

  // Throws std::invalid_argument (with the witness triple) if pm is invalid.
  static Solution from_pairmap(const PairMap& pm);
};

// Solution presented as (h, A, B, theta'): h is the squaring map, its image
// carries A x B coordinates, theta' acts on the B side.
struct Quadruple {
  EndoMap h;
  int a = 0, b = 0;
  std::vector<int> coord_a, coord_b;  // size n; -1 off the image of h
  EndoMap theta_prime;                // on {0..b-1}
};

Solution from_pointed(const OpTable& t, const EndoMap& theta);
std::pair<OpTable, EndoMap> to_pointed(const Solution& s);
Solution from_quadruple(const Quadruple& q);
Quadruple to_quadruple(const Solution& s);

// Builders; every one re-verifies the produced map.
Solution build_constant(int n, int a);                          // (x,y) -> (a,a)
Solution build_r_f(const EndoMap& f);                           // (x,y) -> (y, f(x))
Solution build_r_upper_f(const EndoMap& f);                     // (x,y) -> (f(x), f(y))
Solution build_r_hf(const EndoMap& h, const EndoMap& f);        // (x,y) -> (h(y), f(x))
Solution build_r_omega(int a, int b, const EndoMap& omega);     // on A x B
Solution build_f_r_omega(const EndoMap& f, int b, const EndoMap& omega);
Solution build_product(const Solution& s1, const Solution& s2);

struct ClassFlags {
  bool fs_valid = false;
  bool braid_valid = false;
  bool involutive = false;
  bool diagonal = false;
  bool idempotent = false;
  bool commutative = false;
  bool cocommutative = false;
  bool unitary = false;
  bool symmetric = false;
  bool left_nondeg = false;
  bool right_nondeg = false;
  bool pi1_surjective = false;
  bool pi2_surjective = false;
  bool bijective = false;
  bool decomposable = false;
  std::optional<mpz_class> finite_order;  // absent when R is not bijective
};
ClassFlags classify(const Solution& s);

// R^k, k >= 0; evaluated from the closed form in theta and by explicit
// composition, which must agree.
PairMap solution_power(const Solution& s, long long k);
std::optional<mpz_class> solution_order(const Solution& s);
// True iff every positive power of R is again a solution, decided by the
// criterion x.theta^2(y) = x.theta(y) and cross-checked on R^2, R^3.
bool powers_all_solutions(const Solution& s);

// Nontrivial split X = Y + Z with both blocks closed under R. Y contains 0;
// candidates are scanned by block size, then numerically. For n = 1 there is
// no nontrivial split: the solution is trivially indecomposable.
struct Decomposition {
  std::vector<int> y, z;
};
std::optional<Decomposition> is_decomposable(const Solution& s);

std::optional<Perm> are_isomorphic(const Solution& s1, const Solution& s2);
// Minimal joint (l,r) serialization over relabelings; equal iff isomorphic.
std::string canonical_form(const PairMap& pm, Perm* argmin = nullptr);
std::string canonical_form(const Solution& s);

// Order computed from the quadruple presentation (label permutations of the
// coordinates compatible with theta' and the fiber sizes, times the free
// shuffles inside fibers); elements from the n <= 8 brute filter. The two
// counts must agree.
struct AutGroup {
  mpz_class order;
  std::vector<Perm> elements;
};
AutGroup aut_group(const Solution& s);

PairMap relabel(const PairMap& p, const Perm& s);
// R as a table on X^2, entries encoded u*n + v.
std::vector<int> pair_table(const PairMap& p);
PairMap pair_from_table(int n, const std::vector<int>& t);

}  // namespace fse
