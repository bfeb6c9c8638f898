#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fse/core.hpp"

namespace fse {

// Binary operation table on {0..n-1}.
struct OpTable {
  int n = 0;
  std::vector<int> m;  // row-major n*n

  OpTable() = default;
  OpTable(int n_, std::vector<int> m_);

  int at(int x, int y) const { return m[x * n + y]; }
  auto operator<=>(const OpTable&) const = default;
};

bool is_associative(const OpTable& t);
// (x*y)*z = x*z and x*(y*z) = x*z for all x,y,z; implies associativity
bool is_kimura(const OpTable& t);
// (x*y)*x = x and x*(y*x) = x for all x,y
bool is_rectangular(const OpTable& t);

// Coordinates of a rectangular table: x is determined by its row class
// {x*s : s} and column class {s*x : s}, and x*y sits at (row of x, col of y).
struct RectFactorization {
  int a = 0, b = 0;
  std::vector<int> coord_a, coord_b;  // size n
  std::vector<int> elem;              // a*b -> element, elem[i*b+j]

  int combine(int i, int j) const { return elem[i * b + j]; }
};

// Throws std::invalid_argument if t is not rectangular (total, xyx = x).
RectFactorization rect_factorize(const OpTable& t);

// Structure of a Kimura table: the squaring map h(x) = x*x is idempotent,
// its image is a rectangular subtable, and x*y = combine(row(h(x)), col(h(y))).
struct KimuraStructure {
  int n = 0;
  EndoMap h;
  std::vector<int> im;  // sorted image of h
  int a = 0, b = 0;
  std::vector<int> coord_a, coord_b;       // size n; -1 off im
  std::vector<int> elem;                   // a*b -> element of X
  std::vector<std::vector<int>> fibers;    // fibers[i] = h^-1(im[i]), sorted

  int combine(int i, int j) const { return elem[i * b + j]; }
  int ca(int x) const { return coord_a[h.f[x]]; }
  int cb(int x) const { return coord_b[h.f[x]]; }
};

// Throws std::invalid_argument if t is not Kimura.
KimuraStructure kimura_structure(const OpTable& t);

// theta is a quasi-endomorphism of t when y*theta(x*y) = y*theta(y) for all
// x,y. When that holds, z*theta(x*y) = z*theta(y) holds for every z as well;
// this is re-checked and a violation reported as an internal error.
struct QuasiEndoReport {
  bool ok = false;
  std::optional<std::pair<int, int>> witness;  // first (x,y) violating the law
};
QuasiEndoReport is_quasi_endo(const OpTable& t, const EndoMap& theta);

// Builders. Each validates its parameters and checks the result is Kimura.
OpTable left_zero_table(int n);
OpTable right_zero_table(int n);
OpTable f_left_table(const EndoMap& f);   // x*y = f(x), f idempotent
OpTable f_right_table(const EndoMap& f);  // x*y = f(y), f idempotent
OpTable rect_band_table(int a, int b);    // (i1,j1)*(i2,j2) = (i1,j2)
OpTable product_table(const OpTable& s, const OpTable& t);
// (s,t)*(s',t') = (s * act[t](s'), t*t'). Requires each act[t] to be an
// endomorphism of s's table, act to be a morphism from t's table, and the
// product to be independent of the middle factor; violations are reported
// with a witness.
OpTable semidirect_table(const OpTable& s, const OpTable& t, const std::vector<EndoMap>& act);
// Free Kimura semigroup on k generators: k + k^2 elements. Generators come
// first; the word (x,y) has index k + x*k + y. Product keeps the first letter
// of the left factor and the last letter of the right factor.
OpTable free_kimura(int k);

// Lexicographically smallest row-major serialization over all relabelings.
// Equal strings iff the tables are isomorphic. Supported for n <= 8.
std::string canonical_table(const OpTable& t);
// Joint form over several tables of the same size (relabeled simultaneously).
// argmin, if non-null, receives a relabeling that attains the minimum.
std::string canonical_tables(int n, const std::vector<const std::vector<int>*>& tables,
                             std::vector<int>* argmin);
OpTable relabel(const OpTable& t, const Perm& s);
// A relabeling carrying t1 to t2, if one exists.
std::optional<Perm> table_isomorphism(const OpTable& t1, const OpTable& t2);

}  // namespace fse
