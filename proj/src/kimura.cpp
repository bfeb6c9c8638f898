#include "fse/kimura.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace fse {

OpTable::OpTable(int n_, std::vector<int> m_) : n(n_), m(std::move(m_)) {
  if (n <= 0) throw std::invalid_argument("OpTable: n must be positive");
  if ((int)m.size() != n * n) throw std::invalid_argument("OpTable: table size != n*n");
  for (int x : m)
    if (x < 0 || x >= n) throw std::invalid_argument("OpTable: entry out of range");
}

bool is_associative(const OpTable& t) {
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y)
      for (int z = 0; z < t.n; ++z)
        if (t.at(t.at(x, y), z) != t.at(x, t.at(y, z))) return false;
  return true;
}

bool is_kimura(const OpTable& t) {
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y) {
      int xy = t.at(x, y);
      for (int z = 0; z < t.n; ++z) {
        int xz = t.at(x, z);
        if (t.at(xy, z) != xz) return false;
        if (t.at(x, t.at(y, z)) != xz) return false;
      }
    }
  return true;
}

bool is_rectangular(const OpTable& t) {
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y) {
      int xy = t.at(x, y);
      int yx = t.at(y, x);
      if (t.at(xy, x) != x || t.at(x, yx) != x) return false;
    }
  return true;
}

RectFactorization rect_factorize(const OpTable& t) {
  if (!is_rectangular(t))
    throw std::invalid_argument("rect_factorize: table is not rectangular");
  int n = t.n;
  RectFactorization rf;
  rf.coord_a.assign(n, -1);
  rf.coord_b.assign(n, -1);
  std::map<std::vector<int>, int> rows, cols;
  for (int x = 0; x < n; ++x) {
    std::vector<int> rs(n), cs(n);
    for (int s = 0; s < n; ++s) {
      rs[s] = t.at(x, s);
      cs[s] = t.at(s, x);
    }
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    auto ra = rows.emplace(rs, (int)rows.size());
    auto cb = cols.emplace(cs, (int)cols.size());
    rf.coord_a[x] = ra.first->second;
    rf.coord_b[x] = cb.first->second;
  }
  rf.a = (int)rows.size();
  rf.b = (int)cols.size();
  if (rf.a * rf.b != n)
    throw std::invalid_argument("rect_factorize: row/column classes do not factor the set");
  rf.elem.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    int c = rf.coord_a[x] * rf.b + rf.coord_b[x];
    if (rf.elem[c] != -1)
      throw std::invalid_argument("rect_factorize: coordinates are not injective");
    rf.elem[c] = x;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (t.at(x, y) != rf.combine(rf.coord_a[x], rf.coord_b[y]))
        throw std::invalid_argument("rect_factorize: table is not a rectangular band");
  return rf;
}

KimuraStructure kimura_structure(const OpTable& t) {
  if (!is_kimura(t)) throw std::invalid_argument("kimura_structure: table is not Kimura");
  int n = t.n;
  KimuraStructure ks;
  ks.n = n;
  std::vector<int> h(n);
  for (int x = 0; x < n; ++x) h[x] = t.at(x, x);
  ks.h = EndoMap(n, h);
  if (!is_idempotent(ks.h)) throw std::logic_error("kimura_structure: squaring map not idempotent");
  ks.im = image_of(ks.h);
  int k = (int)ks.im.size();
  std::vector<int> pos(n, -1);
  for (int i = 0; i < k; ++i) pos[ks.im[i]] = i;
  std::vector<int> rest(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int v = t.at(ks.im[i], ks.im[j]);
      if (pos[v] == -1) throw std::logic_error("kimura_structure: image not closed");
      rest[i * k + j] = pos[v];
    }
  RectFactorization rf = rect_factorize(OpTable(k, rest));
  ks.a = rf.a;
  ks.b = rf.b;
  ks.coord_a.assign(n, -1);
  ks.coord_b.assign(n, -1);
  for (int i = 0; i < k; ++i) {
    ks.coord_a[ks.im[i]] = rf.coord_a[i];
    ks.coord_b[ks.im[i]] = rf.coord_b[i];
  }
  ks.elem.assign(k, -1);
  for (int c = 0; c < k; ++c) ks.elem[c] = ks.im[rf.elem[c]];
  ks.fibers.assign(k, {});
  for (int x = 0; x < n; ++x) ks.fibers[pos[h[x]]].push_back(x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (t.at(x, y) != ks.combine(ks.ca(x), ks.cb(y)))
        throw std::logic_error("kimura_structure: product law failed");
  return ks;
}

QuasiEndoReport is_quasi_endo(const OpTable& t, const EndoMap& theta) {
  if (t.n != theta.n) throw std::invalid_argument("is_quasi_endo: size mismatch");
  if (!is_kimura(t)) throw std::invalid_argument("is_quasi_endo: table is not Kimura");
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y)
      if (t.at(y, theta(t.at(x, y))) != t.at(y, theta(y))) return {false, {{x, y}}};
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y)
      for (int z = 0; z < t.n; ++z)
        if (t.at(z, theta(t.at(x, y))) != t.at(z, theta(y)))
          throw std::logic_error("is_quasi_endo: derived substitution law failed");
  return {true, std::nullopt};
}

static OpTable checked_kimura(OpTable t, const char* what) {
  if (!is_kimura(t)) throw std::logic_error(std::string(what) + ": result is not Kimura");
  return t;
}

OpTable left_zero_table(int n) {
  std::vector<int> m(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m[x * n + y] = x;
  return checked_kimura(OpTable(n, std::move(m)), "left_zero_table");
}

OpTable right_zero_table(int n) {
  std::vector<int> m(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m[x * n + y] = y;
  return checked_kimura(OpTable(n, std::move(m)), "right_zero_table");
}

static void require_idempotent(const EndoMap& f, const char* what) {
  for (int x = 0; x < f.n; ++x)
    if (f.f[f.f[x]] != f.f[x])
      throw std::invalid_argument(std::string(what) + ": map not idempotent at " +
                                  std::to_string(x));
}

OpTable f_left_table(const EndoMap& f) {
  require_idempotent(f, "f_left_table");
  int n = f.n;
  std::vector<int> m(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m[x * n + y] = f.f[x];
  return checked_kimura(OpTable(n, std::move(m)), "f_left_table");
}

OpTable f_right_table(const EndoMap& f) {
  require_idempotent(f, "f_right_table");
  int n = f.n;
  std::vector<int> m(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m[x * n + y] = f.f[y];
  return checked_kimura(OpTable(n, std::move(m)), "f_right_table");
}

OpTable rect_band_table(int a, int b) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("rect_band_table: sides must be positive");
  int n = a * b;
  std::vector<int> m(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m[x * n + y] = (x / b) * b + (y % b);
  return checked_kimura(OpTable(n, std::move(m)), "rect_band_table");
}

OpTable product_table(const OpTable& s, const OpTable& t) {
  if (!is_kimura(s) || !is_kimura(t))
    throw std::invalid_argument("product_table: factors must be Kimura");
  int n1 = s.n, n2 = t.n, n = n1 * n2;
  std::vector<int> m(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      m[x * n + y] = s.at(x / n2, y / n2) * n2 + t.at(x % n2, y % n2);
  return checked_kimura(OpTable(n, std::move(m)), "product_table");
}

OpTable semidirect_table(const OpTable& s, const OpTable& t, const std::vector<EndoMap>& act) {
  if (!is_kimura(s) || !is_kimura(t))
    throw std::invalid_argument("semidirect_table: factors must be Kimura");
  if ((int)act.size() != t.n)
    throw std::invalid_argument("semidirect_table: one action map per element of the right factor");
  for (int u = 0; u < t.n; ++u) {
    if (act[u].n != s.n) throw std::invalid_argument("semidirect_table: action size mismatch");
    for (int x = 0; x < s.n; ++x)
      for (int y = 0; y < s.n; ++y)
        if (act[u](s.at(x, y)) != s.at(act[u](x), act[u](y)))
          throw std::invalid_argument("semidirect_table: act[" + std::to_string(u) +
                                      "] is not an endomorphism, witness (" + std::to_string(x) +
                                      "," + std::to_string(y) + ")");
  }
  for (int u = 0; u < t.n; ++u)
    for (int v = 0; v < t.n; ++v)
      if (compose(act[u], act[v]) != act[t.at(u, v)])
        throw std::invalid_argument("semidirect_table: action is not a morphism at (" +
                                    std::to_string(u) + "," + std::to_string(v) + ")");
  // the twisted product is Kimura iff x * act[uv](y) never depends on v
  for (int u = 0; u < t.n; ++u)
    for (int v = 0; v < t.n; ++v) {
      int uv = t.at(u, v);
      for (int x = 0; x < s.n; ++x)
        for (int y = 0; y < s.n; ++y)
          if (s.at(x, act[uv](y)) != s.at(x, act[u](y)))
            throw std::invalid_argument(
                "semidirect_table: twisted product is not Kimura, witness (x=" +
                std::to_string(x) + ", u=" + std::to_string(u) + ", v=" + std::to_string(v) +
                ", y=" + std::to_string(y) + ")");
    }
  int n2 = t.n, n = s.n * n2;
  std::vector<int> m(n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      int x = p / n2, u = p % n2, y = q / n2, v = q % n2;
      m[p * n + q] = s.at(x, act[u](y)) * n2 + t.at(u, v);
    }
  return checked_kimura(OpTable(n, std::move(m)), "semidirect_table");
}

OpTable free_kimura(int k) {
  if (k <= 0) throw std::invalid_argument("free_kimura: need at least one generator");
  int n = k + k * k;
  auto first = [k](int w) { return w < k ? w : (w - k) / k; };
  auto last = [k](int w) { return w < k ? w : (w - k) % k; };
  std::vector<int> m(n * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m[u * n + v] = k + first(u) * k + last(v);
  return checked_kimura(OpTable(n, std::move(m)), "free_kimura");
}

// Shared minimizer: lexicographically smallest joint serialization of the
// given row-major tables over all relabelings, with early abort per candidate.
std::string canonical_tables(int n, const std::vector<const std::vector<int>*>& tables,
                             std::vector<int>* argmin) {
  if (n > 8) throw std::invalid_argument("canonical form: supported for n <= 8");
  size_t len = tables.size() * (size_t)n * n;
  std::string best, cur(len, '\0');
  std::vector<int> bestp;
  std::vector<int> p(n), pinv(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (int i = 0; i < n; ++i) pinv[p[i]] = i;
    int cmp = 0;  // -1 strictly smaller than best, +1 pruned
    size_t k = 0;
    for (const auto* tp : tables) {
      const std::vector<int>& t = *tp;
      for (int x = 0; x < n && cmp != 1; ++x)
        for (int y = 0; y < n; ++y) {
          char v = (char)(33 + p[t[pinv[x] * n + pinv[y]]]);
          cur[k] = v;
          if (cmp == 0 && !best.empty()) {
            if (v < best[k])
              cmp = -1;
            else if (v > best[k]) {
              cmp = 1;
              break;
            }
          }
          ++k;
        }
      if (cmp == 1) break;
    }
    if (best.empty() || cmp == -1) {
      best = cur;
      bestp = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  if (argmin) *argmin = bestp;
  return best;
}

OpTable relabel(const OpTable& t, const Perm& s) {
  if (t.n != s.n) throw std::invalid_argument("relabel: size mismatch");
  std::vector<int> m(t.n * t.n);
  for (int x = 0; x < t.n; ++x)
    for (int y = 0; y < t.n; ++y) m[s(x) * t.n + s(y)] = s(t.at(x, y));
  return OpTable(t.n, std::move(m));
}

std::string canonical_table(const OpTable& t) {
  return canonical_tables(t.n, {&t.m}, nullptr);
}

std::optional<Perm> table_isomorphism(const OpTable& t1, const OpTable& t2) {
  if (t1.n != t2.n) return std::nullopt;
  std::vector<int> p1, p2;
  std::string c1 = canonical_tables(t1.n, {&t1.m}, &p1);
  std::string c2 = canonical_tables(t2.n, {&t2.m}, &p2);
  if (c1 != c2) return std::nullopt;
  Perm s = compose(Perm(p2).inverse(), Perm(p1));
  if (relabel(t1, s) != t2) throw std::logic_error("table_isomorphism: witness check failed");
  return s;
}

}  // namespace fse
