#include "fse/core.hpp"

#include <algorithm>

#include "fse/util.hpp"

namespace fse {

static void check_entries(int n, const std::vector<int>& v, const char* what) {
  if (n <= 0) throw std::invalid_argument(std::string(what) + ": n must be positive");
  for (int x : v)
    if (x < 0 || x >= n) throw std::invalid_argument(std::string(what) + ": entry out of range");
}

EndoMap::EndoMap(int n_, std::vector<int> f_) : n(n_), f(std::move(f_)) {
  if ((int)f.size() != n) throw std::invalid_argument("EndoMap: table size != n");
  check_entries(n, f, "EndoMap");
}

EndoMap EndoMap::identity(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return EndoMap(n, std::move(v));
}

EndoMap EndoMap::constant(int n, int c) { return EndoMap(n, std::vector<int>(n, c)); }

Perm::Perm(std::vector<int> images) : n((int)images.size()), fwd(std::move(images)) {
  check_entries(n, fwd, "Perm");
  inv.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (inv[fwd[x]] != -1) throw std::invalid_argument("Perm: not a bijection");
    inv[fwd[x]] = x;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return Perm(std::move(v));
}

Perm Perm::inverse() const { return Perm(inv); }

PairMap::PairMap(int n_, std::vector<int> l_, std::vector<int> r_)
    : n(n_), l(std::move(l_)), r(std::move(r_)) {
  if ((int)l.size() != n * n || (int)r.size() != n * n)
    throw std::invalid_argument("PairMap: table size != n*n");
  check_entries(n, l, "PairMap");
  check_entries(n, r, "PairMap");
}

EndoMap compose(const EndoMap& f, const EndoMap& g) {
  if (f.n != g.n) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> out(f.n);
  for (int x = 0; x < f.n; ++x) out[x] = f.f[g.f[x]];
  return EndoMap(f.n, std::move(out));
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.n != b.n) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> out(a.n);
  for (int x = 0; x < a.n; ++x) out[x] = a.fwd[b.fwd[x]];
  return Perm(std::move(out));
}

EndoMap conjugate(const Perm& s, const EndoMap& f) {
  if (s.n != f.n) throw std::invalid_argument("conjugate: size mismatch");
  std::vector<int> out(f.n);
  for (int x = 0; x < f.n; ++x) out[s.fwd[x]] = s.fwd[f.f[x]];
  return EndoMap(f.n, std::move(out));
}

bool is_idempotent(const EndoMap& f) {
  for (int x = 0; x < f.n; ++x)
    if (f.f[f.f[x]] != f.f[x]) return false;
  return true;
}

int iterate(const EndoMap& f, long long k, int x) {
  if (k < 0) throw std::invalid_argument("iterate: negative exponent");
  // walk until the orbit of x repeats, then reduce k modulo the cycle length
  std::vector<int> seen_at(f.n, -1);
  std::vector<int> path;
  int cur = x;
  long long step = 0;
  while (step < k) {
    if (seen_at[cur] != -1) {
      long long cyc = (long long)path.size() - seen_at[cur];
      long long rem = (k - seen_at[cur]) % cyc;
      return path[seen_at[cur] + rem];
    }
    seen_at[cur] = (int)path.size();
    path.push_back(cur);
    cur = f.f[cur];
    ++step;
  }
  return cur;
}

EndoMap endo_power(const EndoMap& f, long long k) {
  std::vector<int> out(f.n);
  for (int x = 0; x < f.n; ++x) out[x] = iterate(f, k, x);
  return EndoMap(f.n, std::move(out));
}

std::vector<int> image_of(const EndoMap& f) {
  std::vector<int> im(f.f);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

void for_each_perm(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  for_each_perm(n, [&](const std::vector<int>& p) { out.emplace_back(p); });
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("FSE_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return (int)v;
    throw std::invalid_argument("FSE_WORKERS: expected a positive integer");
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : (int)hc;
}

}  // namespace fse
