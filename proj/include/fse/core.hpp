#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fse {

// Total map f : {0..n-1} -> {0..n-1}, dense table.
struct EndoMap {
  int n = 0;
  std::vector<int> f;

  EndoMap() = default;
  EndoMap(int n_, std::vector<int> f_);
  static EndoMap identity(int n);
  static EndoMap constant(int n, int c);

  int operator()(int x) const { return f[x]; }
  auto operator<=>(const EndoMap&) const = default;
};

// Permutation with cached inverse.
struct Perm {
  int n = 0;
  std::vector<int> fwd, inv;

  Perm() = default;
  explicit Perm(std::vector<int> images);  // throws if not a bijection
  static Perm identity(int n);

  int operator()(int x) const { return fwd[x]; }
  Perm inverse() const;
  EndoMap as_endo() const { return EndoMap(n, fwd); }
  bool operator==(const Perm& o) const { return fwd == o.fwd; }
  bool operator<(const Perm& o) const { return fwd < o.fwd; }
};

// Pair of tables on X x X; R(x,y) = (l(x,y), r(x,y)).
struct PairMap {
  int n = 0;
  std::vector<int> l, r;  // row-major n*n

  PairMap() = default;
  PairMap(int n_, std::vector<int> l_, std::vector<int> r_);

  int lv(int x, int y) const { return l[x * n + y]; }
  int rv(int x, int y) const { return r[x * n + y]; }
  auto operator<=>(const PairMap&) const = default;
};

// x -> f(g(x))
EndoMap compose(const EndoMap& f, const EndoMap& g);
// x -> a(b(x))
Perm compose(const Perm& a, const Perm& b);
// s . f . s^-1
EndoMap conjugate(const Perm& s, const EndoMap& f);
bool is_idempotent(const EndoMap& f);
// f^k(x) for k >= 0; uses the eventual cycle, so k may be large
int iterate(const EndoMap& f, long long k, int x);
EndoMap endo_power(const EndoMap& f, long long k);

std::vector<int> image_of(const EndoMap& f);  // sorted, deduplicated

// Calls fn for every permutation of {0..n-1}, in lexicographic order of the
// image vector. fn may return void, or bool (false stops the scan).
void for_each_perm(int n, const std::function<void(const std::vector<int>&)>& fn);
std::vector<Perm> all_perms(int n);

}  // namespace fse
