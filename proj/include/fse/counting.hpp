#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace fse {

// Non-increasing positive parts.
using IntPartition = std::vector<int>;
std::vector<IntPartition> partitions_of(int n);

// Exact integer sequence. Index 0 is a placeholder slot so that values can be
// addressed by their natural index starting at 1; series identities that need
// a constant term keep it there.
struct BigSeries {
  std::string label;
  std::vector<mpz_class> c;

  int upto() const { return (int)c.size() - 1; }
  const mpz_class& at(int i) const;
};

BigSeries partition_p(int upto);  // pentagonal-number recurrence, c[0] = 1
std::vector<long long> divisors(long long n);
long long divisor_count(long long n);
int mobius(long long n);

// Rooted trees on n unlabeled vertices, c[0] = 0.
BigSeries rooted_trees(int upto);

// Conjugacy classes of endofunctions on n points, two independent routes:
// a cycle-index sum over partitions, and the coefficient extraction from
// prod_m 1/(1 - T(x^m)) with T the rooted tree series.
enum class DavisMethod { bruijn_sum, euler_product };
BigSeries davis_d(int upto, DavisMethod m);

// Connected classes: inverse Euler transform of the endofunction counts.
BigSeries harary_c(int upto);
// Forward transform, for round trips: prod_j (1-x^j)^(-c_j).
BigSeries euler_transform(const BigSeries& c);

BigSeries fs1_series(int upto);  // sum of d(m) over m | n
BigSeries fsb_series(int upto);  // sum of p(m) over m | n
// d and p recovered from fs1/fsb by Moebius inversion over divisors.
bool mobius_invert_check(int upto);

mpz_class unitary_count(int n);   // tau(n) + sum over d|n of floor(d/2)
mpz_class idempotent_total(int n);  // labeled idempotents: sum C(n,k) k^(n-k)
mpz_class landau_g(int n);          // max order of a permutation; prime-power DP
mpz_class landau_g_brute(int n);    // max lcm over explicit partitions
// Partitions of n whose parts have lcm exactly k.
mpz_class order_class_count(int n, const mpz_class& k);
// Classes of solutions of finite order >= 2 on n points: for every d | n all
// permutation classes of a d-point block contribute, except the single
// (d = 1, order 1) entry, which is the identity solution of order 1.
mpz_class finite_order_count(int n);

}  // namespace fse
