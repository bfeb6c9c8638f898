#include "fse/counting.hpp"

#include <numeric>
#include <stdexcept>

namespace fse {

const mpz_class& BigSeries::at(int i) const {
  if (i < 0 || i >= (int)c.size()) throw std::out_of_range("BigSeries: index " + std::to_string(i));
  return c[i];
}

static void descend(int rest, int maxpart, IntPartition& cur, std::vector<IntPartition>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(rest, maxpart); p >= 1; --p) {
    cur.push_back(p);
    descend(rest - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<IntPartition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  std::vector<IntPartition> out;
  IntPartition cur;
  descend(n, n, cur, out);
  return out;
}

BigSeries partition_p(int upto) {
  if (upto < 0) throw std::invalid_argument("partition_p: negative bound");
  BigSeries s{"p", std::vector<mpz_class>(upto + 1)};
  s.c[0] = 1;
  for (int n = 1; n <= upto; ++n) {
    mpz_class acc = 0;
    for (int k = 1;; ++k) {
      long long g1 = (long long)k * (3 * k - 1) / 2;
      long long g2 = (long long)k * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      mpz_class term = 0;
      if (g1 <= n) term += s.c[n - g1];
      if (g2 <= n) term += s.c[n - g2];
      if (k % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    s.c[n] = acc;
  }
  return s;
}

std::vector<long long> divisors(long long n) {
  if (n <= 0) throw std::invalid_argument("divisors: need n >= 1");
  std::vector<long long> small, large;
  for (long long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

long long divisor_count(long long n) { return (long long)divisors(n).size(); }

int mobius(long long n) {
  if (n <= 0) throw std::invalid_argument("mobius: need n >= 1");
  int primes = 0;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++primes;
    }
  if (n > 1) ++primes;
  return primes % 2 == 0 ? 1 : -1;
}

BigSeries rooted_trees(int upto) {
  if (upto < 1) throw std::invalid_argument("rooted_trees: need upto >= 1");
  BigSeries t{"T", std::vector<mpz_class>(upto + 1)};
  t.c[0] = 0;
  t.c[1] = 1;
  for (int n = 1; n + 1 <= upto; ++n) {
    mpz_class acc = 0;
    for (int k = 1; k <= n; ++k) {
      mpz_class s = 0;
      for (long long d : divisors(k)) s += t.c[d] * (long)d;
      acc += s * t.c[n - k + 1];
    }
    if (acc % n != 0) throw std::logic_error("rooted_trees: recurrence not divisible");
    t.c[n + 1] = acc / n;
  }
  return t;
}

// --- truncated power series over mpz ---

static std::vector<mpz_class> mul_trunc(const std::vector<mpz_class>& a,
                                        const std::vector<mpz_class>& b, int upto) {
  std::vector<mpz_class> out(upto + 1);
  for (int i = 0; i <= upto && i < (int)a.size(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= upto && j < (int)b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

static std::vector<mpz_class> inv_trunc(const std::vector<mpz_class>& a, int upto) {
  if (a.empty() || a[0] != 1) throw std::invalid_argument("inv_trunc: constant term must be 1");
  std::vector<mpz_class> b(upto + 1);
  b[0] = 1;
  for (int k = 1; k <= upto; ++k) {
    mpz_class acc = 0;
    for (int i = 1; i <= k && i < (int)a.size(); ++i) acc += a[i] * b[k - i];
    b[k] = -acc;
  }
  return b;
}

BigSeries davis_d(int upto, DavisMethod m) {
  if (upto < 1) throw std::invalid_argument("davis_d: need upto >= 1");
  BigSeries s{"d", std::vector<mpz_class>(upto + 1)};
  s.c[0] = 1;  // empty-structure convention, needed by the product identity
  if (m == DavisMethod::bruijn_sum) {
    std::vector<mpz_class> fact(upto + 1);
    fact[0] = 1;
    for (int i = 1; i <= upto; ++i) fact[i] = fact[i - 1] * i;
    for (int n = 1; n <= upto; ++n) {
      mpz_class total = 0;
      for (const IntPartition& lam : partitions_of(n)) {
        std::vector<int> mult(n + 1, 0);
        for (int part : lam) ++mult[part];
        mpz_class num = 1, z = 1;
        for (int i = 1; i <= n; ++i) {
          if (mult[i] == 0) continue;
          mpz_class fixed = 0;  // points of f commuting data on an i-cycle
          for (long long j : divisors(i)) fixed += (long)(j * mult[j]);
          mpz_class pw;
          mpz_pow_ui(pw.get_mpz_t(), fixed.get_mpz_t(), mult[i]);
          num *= pw;
          mpz_class ip;
          mpz_ui_pow_ui(ip.get_mpz_t(), i, mult[i]);
          mpz_class mf;
          mpz_fac_ui(mf.get_mpz_t(), mult[i]);
          z *= ip * mf;
        }
        // number of permutations of this cycle type, times fixed functions
        if (fact[n] % z != 0) throw std::logic_error("davis_d: centralizer size not divisible");
        total += (fact[n] / z) * num;
      }
      if (total % fact[n] != 0) throw std::logic_error("davis_d: Burnside sum not divisible");
      s.c[n] = total / fact[n];
    }
    return s;
  }
  // euler_product
  BigSeries t = rooted_trees(upto);
  std::vector<mpz_class> prod(upto + 1);
  prod[0] = 1;
  for (int m2 = 1; m2 <= upto; ++m2) {
    std::vector<mpz_class> factor(upto + 1);
    factor[0] = 1;
    for (int k = 1; k * m2 <= upto; ++k) factor[k * m2] = -t.c[k];
    prod = mul_trunc(prod, inv_trunc(factor, upto), upto);
  }
  if (prod[0] != 1) throw std::logic_error("davis_d: constant term drifted");
  for (int n = 0; n <= upto; ++n) s.c[n] = prod[n];
  return s;
}

BigSeries harary_c(int upto) {
  BigSeries d = davis_d(upto, DavisMethod::euler_product);
  BigSeries out{"c", std::vector<mpz_class>(upto + 1)};
  std::vector<mpz_class> rem(d.c);
  for (int j = 1; j <= upto; ++j) {
    out.c[j] = rem[j];
    // divide by (1-x^j)^(-c_j), i.e. multiply by (1-x^j)^(c_j)
    std::vector<mpz_class> factor(upto + 1);
    for (int i = 0; i * j <= upto; ++i) {
      mpz_class bin;
      mpz_bin_ui(bin.get_mpz_t(), out.c[j].get_mpz_t(), i);
      factor[i * j] = (i % 2 == 0) ? bin : mpz_class(-bin);
    }
    rem = mul_trunc(rem, factor, upto);
  }
  for (int k = 1; k <= upto; ++k)
    if (rem[k] != 0) throw std::logic_error("harary_c: residue after peeling all factors");
  return out;
}

BigSeries euler_transform(const BigSeries& c) {
  int upto = c.upto();
  std::vector<mpz_class> prod(upto + 1);
  prod[0] = 1;
  for (int j = 1; j <= upto; ++j) {
    if (c.c[j] == 0) continue;
    std::vector<mpz_class> factor(upto + 1);
    for (int i = 0; i * j <= upto; ++i) {
      mpz_class top = c.c[j] + i - 1;
      mpz_class bin;
      mpz_bin_ui(bin.get_mpz_t(), top.get_mpz_t(), i);
      factor[i * j] = bin;
    }
    prod = mul_trunc(prod, factor, upto);
  }
  return BigSeries{"E(" + c.label + ")", std::move(prod)};
}

BigSeries fs1_series(int upto) {
  BigSeries d = davis_d(upto, DavisMethod::bruijn_sum);
  BigSeries out{"fs1", std::vector<mpz_class>(upto + 1)};
  for (int n = 1; n <= upto; ++n)
    for (long long m : divisors(n)) out.c[n] += d.c[m];
  return out;
}

BigSeries fsb_series(int upto) {
  BigSeries p = partition_p(upto);
  BigSeries out{"fsb", std::vector<mpz_class>(upto + 1)};
  for (int n = 1; n <= upto; ++n)
    for (long long m : divisors(n)) out.c[n] += p.c[m];
  return out;
}

bool mobius_invert_check(int upto) {
  BigSeries d = davis_d(upto, DavisMethod::bruijn_sum);
  BigSeries p = partition_p(upto);
  BigSeries f1 = fs1_series(upto), fb = fsb_series(upto);
  for (int n = 1; n <= upto; ++n) {
    mpz_class d_back = 0, p_back = 0;
    for (long long m : divisors(n)) {
      d_back += mobius(m) * f1.c[n / m];
      p_back += mobius(m) * fb.c[n / m];
    }
    if (d_back != d.c[n] || p_back != p.c[n]) return false;
  }
  return true;
}

mpz_class unitary_count(int n) {
  if (n < 1) throw std::invalid_argument("unitary_count: need n >= 1");
  mpz_class out = 0;
  for (long long d : divisors(n)) out += (long)(1 + d / 2);
  return out;
}

mpz_class idempotent_total(int n) {
  if (n < 1) throw std::invalid_argument("idempotent_total: need n >= 1");
  mpz_class out = 0;
  for (int k = 1; k <= n; ++k) {
    mpz_class bin, pw;
    mpz_bin_uiui(bin.get_mpz_t(), n, k);
    mpz_ui_pow_ui(pw.get_mpz_t(), k, n - k);
    out += bin * pw;
  }
  return out;
}

mpz_class landau_g(int n) {
  if (n < 1) throw std::invalid_argument("landau_g: need n >= 1");
  std::vector<char> sieve(n + 1, 1);
  std::vector<int> primes;
  for (int p = 2; p <= n; ++p)
    if (sieve[p]) {
      primes.push_back(p);
      for (int q = 2 * p; q <= n; q += p) sieve[q] = 0;
    }
  std::vector<mpz_class> dp(n + 1, 1);  // best lcm with the given budget
  for (int p : primes) {
    std::vector<mpz_class> next(dp);
    for (long long pe = p; pe <= n; pe *= p)
      for (int budget = (int)pe; budget <= n; ++budget) {
        mpz_class cand = dp[budget - pe] * (long)pe;
        if (cand > next[budget]) next[budget] = cand;
      }
    dp = std::move(next);
  }
  return dp[n];
}

static mpz_class lcm_of(const IntPartition& parts) {
  mpz_class l = 1;
  for (int p : parts) {
    mpz_class g = gcd(l, mpz_class(p));
    l = l / g * p;
  }
  return l;
}

mpz_class landau_g_brute(int n) {
  mpz_class best = 0;
  for (const IntPartition& lam : partitions_of(n)) best = std::max(best, lcm_of(lam));
  return best;
}

mpz_class order_class_count(int n, const mpz_class& k) {
  mpz_class cnt = 0;
  for (const IntPartition& lam : partitions_of(n))
    if (lcm_of(lam) == k) ++cnt;
  return cnt;
}

mpz_class finite_order_count(int n) {
  if (n < 1) throw std::invalid_argument("finite_order_count: need n >= 1");
  BigSeries p = partition_p(n);
  mpz_class total = 0;
  for (long long d : divisors(n)) total += p.c[d];  // all orders k, i.e. all classes
  return total - 1;  // drop (d,k) = (1,1): the identity solution has order 1
}

}  // namespace fse
