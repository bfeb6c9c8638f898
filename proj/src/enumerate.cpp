#include "fse/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "fse/counting.hpp"
#include "fse/funcgraph.hpp"
#include "fse/util.hpp"

namespace fse {

namespace {

using EndoSet = std::map<std::string, EndoMap>;
using TableSet = std::map<std::string, OpTable>;
using RepSet = std::map<std::string, PairMap>;

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void canon_insert(RepSet& set, const PairMap& pm) {
  Perm arg;
  std::string code = canonical_form(pm, &arg);
  set.emplace(std::move(code), relabel(pm, arg));
}

}  // namespace

std::vector<EndoMap> endo_classes(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("endo_classes: supported for 1 <= n <= 7");
  long long total = ipow(n, n);
  std::function<EndoSet(long long, long long)> work = [n](long long lo, long long hi) {
    EndoSet out;
    std::vector<int> f(n);
    for (long long idx = lo; idx < hi; ++idx) {
      long long t = idx;
      for (int i = 0; i < n; ++i) {
        f[i] = (int)(t % n);
        t /= n;
      }
      EndoMap e(n, f);
      EndoMap rep = conjugate(canonical_perm(e), e);
      std::string code;
      for (int x = 0; x < n; ++x) {
        if (x) code += ',';
        code += std::to_string(rep.f[x]);
      }
      out.emplace(std::move(code), std::move(rep));
    }
    return out;
  };
  std::function<void(EndoSet&, EndoSet&&)> merge = [](EndoSet& a, EndoSet&& b) { a.merge(b); };
  EndoSet set = parallel_chunks<EndoSet>(total, work, merge);
  std::vector<EndoMap> out;
  out.reserve(set.size());
  for (auto& [code, e] : set) out.push_back(std::move(e));
  return out;
}

std::vector<EndoMap> connected_classes(int n) {
  std::vector<EndoMap> out;
  for (EndoMap& e : endo_classes(n))
    if (is_connected(e)) out.push_back(std::move(e));
  return out;
}

std::vector<EndoMap> idempotent_classes(int n) {
  std::vector<EndoMap> out;
  for (EndoMap& e : endo_classes(n))
    if (is_idempotent(e)) out.push_back(std::move(e));
  return out;
}

std::vector<OpTable> kimura_classes_filter(int n) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("kimura_classes_filter: supported for 1 <= n <= 3");
  long long total = ipow(n, n * n);
  std::function<TableSet(long long, long long)> work = [n](long long lo, long long hi) {
    TableSet out;
    std::vector<int> m(n * n);
    for (long long idx = lo; idx < hi; ++idx) {
      long long t = idx;
      for (int i = 0; i < n * n; ++i) {
        m[i] = (int)(t % n);
        t /= n;
      }
      OpTable tab(n, m);
      if (!is_kimura(tab)) continue;
      std::vector<int> arg;
      std::string code = canonical_tables(n, {&tab.m}, &arg);
      out.emplace(std::move(code), relabel(tab, Perm(arg)));
    }
    return out;
  };
  std::function<void(TableSet&, TableSet&&)> merge = [](TableSet& a, TableSet&& b) { a.merge(b); };
  TableSet set = parallel_chunks<TableSet>(total, work, merge);
  std::vector<OpTable> out;
  for (auto& [code, tab] : set) out.push_back(std::move(tab));
  return out;
}

std::vector<OpTable> kimura_classes_structure(int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("kimura_classes_structure: supported for 1 <= n <= 4");
  TableSet set;
  for (const EndoMap& h : idempotent_classes(n)) {
    std::vector<int> im = image_of(h);
    int m = (int)im.size();
    for (int a = 1; a <= m; ++a) {
      if (m % a) continue;
      int b = m / a;
      std::vector<int> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<int> ca(n, -1), cb(n, -1), elem(m);
        for (int g = 0; g < m; ++g) {
          int e = im[perm[g]];
          elem[g] = e;
          ca[e] = g / b;
          cb[e] = g % b;
        }
        std::vector<int> tab(n * n);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) tab[x * n + y] = elem[ca[h.f[x]] * b + cb[h.f[y]]];
        OpTable t(n, std::move(tab));
        for (int x = 0; x < n; ++x)
          if (t.at(x, x) != h.f[x])
            throw std::logic_error("kimura_classes_structure: squaring map drifted from h");
        if (!is_kimura(t))
          throw std::logic_error("kimura_classes_structure: generated table is not Kimura");
        std::vector<int> arg;
        std::string code = canonical_tables(n, {&t.m}, &arg);
        set.emplace(std::move(code), relabel(t, Perm(arg)));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  std::vector<OpTable> out;
  for (auto& [code, tab] : set) out.push_back(std::move(tab));
  return out;
}

std::vector<OpTable> kimura_classes(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("kimura_classes: supported for 1 <= n <= 4");
  return n <= 3 ? kimura_classes_filter(n) : kimura_classes_structure(n);
}

namespace {

RepSet classes_brute(int n) {
  int nn = n * n;
  long long total = ipow(nn, nn);
  RepSet set;
  std::vector<int> l(nn), r(nn);
  for (long long idx = 0; idx < total; ++idx) {
    long long t = idx;
    for (int i = 0; i < nn; ++i) {
      int v = (int)(t % nn);
      t /= nn;
      l[i] = v / n;
      r[i] = v % n;
    }
    PairMap pm(n, l, r);
    if (!verify_fs(pm).valid) continue;
    canon_insert(set, pm);
  }
  return set;
}

RepSet classes_refqm(int n) {
  RepSet set;
  long long tcount = ipow(n, n);
  for (const OpTable& t : kimura_classes(n)) {
    for (long long ti = 0; ti < tcount; ++ti) {
      std::vector<int> f(n);
      long long v = ti;
      for (int i = 0; i < n; ++i) {
        f[i] = (int)(v % n);
        v /= n;
      }
      EndoMap theta(n, std::move(f));
      if (!is_quasi_endo(t, theta).ok) continue;
      canon_insert(set, from_pointed(t, theta).pm);
    }
  }
  return set;
}

RepSet classes_quadruple(int n) {
  RepSet set;
  for (const EndoMap& h : idempotent_classes(n)) {
    std::vector<int> im = image_of(h);
    int m = (int)im.size();
    std::vector<std::vector<int>> perms;
    {
      std::vector<int> p(m);
      std::iota(p.begin(), p.end(), 0);
      do perms.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    for (int a = 1; a <= m; ++a) {
      if (m % a) continue;
      int b = m / a;
      long long tcount = ipow(b, b);
      long long total = (long long)perms.size() * tcount;
      std::function<RepSet(long long, long long)> work = [&](long long lo, long long hi) {
        RepSet out;
        for (long long idx = lo; idx < hi; ++idx) {
          const std::vector<int>& perm = perms[idx / tcount];
          Quadruple q;
          q.h = h;
          q.a = a;
          q.b = b;
          q.coord_a.assign(n, -1);
          q.coord_b.assign(n, -1);
          for (int g = 0; g < m; ++g) {
            int e = im[perm[g]];
            q.coord_a[e] = g / b;
            q.coord_b[e] = g % b;
          }
          std::vector<int> tp(b);
          long long v = idx % tcount;
          for (int j = 0; j < b; ++j) {
            tp[j] = (int)(v % b);
            v /= b;
          }
          q.theta_prime = EndoMap(b, std::move(tp));
          canon_insert(out, from_quadruple(q).pm);
        }
        return out;
      };
      std::function<void(RepSet&, RepSet&&)> merge = [](RepSet& x, RepSet&& y) { x.merge(y); };
      RepSet part = parallel_chunks<RepSet>(total, work, merge);
      set.merge(part);
    }
  }
  return set;
}

const char* const kFlagKeys[] = {
    "involutive",     "diagonal",       "idempotent",        "commutative",
    "cocommutative",  "unitary",        "symmetric",         "left_nondeg",
    "right_nondeg",   "pi1_surjective", "pi2_surjective",    "bijective",
    "decomposable",   "indecomposable", "indec_left_nondeg", "indec_right_nondeg",
    "indec_idempotent", "finite_order_ge2"};

ClassTable finalize(int n, RepSet&& reps) {
  ClassTable out;
  out.n = n;
  out.counts["total"] = 0;
  for (const char* k : kFlagKeys) out.counts[k] = 0;
  for (auto& [code, rep] : reps) {
    Solution s = Solution::from_pairmap(rep);
    SolutionClass c;
    c.code = code;
    c.rep = rep;
    c.flags = classify(s);
    c.aut_order = aut_group(s).order;
    out.classes.push_back(std::move(c));
  }
  auto add = [&](const char* k, bool v) {
    if (v) out.counts[k] += 1;
  };
  for (const SolutionClass& c : out.classes) {
    const ClassFlags& fl = c.flags;
    out.counts["total"] += 1;
    add("involutive", fl.involutive);
    add("diagonal", fl.diagonal);
    add("idempotent", fl.idempotent);
    add("commutative", fl.commutative);
    add("cocommutative", fl.cocommutative);
    add("unitary", fl.unitary);
    add("symmetric", fl.symmetric);
    add("left_nondeg", fl.left_nondeg);
    add("right_nondeg", fl.right_nondeg);
    add("pi1_surjective", fl.pi1_surjective);
    add("pi2_surjective", fl.pi2_surjective);
    add("bijective", fl.bijective);
    add("decomposable", fl.decomposable);
    add("indecomposable", !fl.decomposable);
    add("indec_left_nondeg", !fl.decomposable && fl.left_nondeg);
    add("indec_right_nondeg", !fl.decomposable && fl.right_nondeg);
    add("indec_idempotent", !fl.decomposable && fl.idempotent);
    add("finite_order_ge2", fl.finite_order.has_value() && *fl.finite_order >= 2);
  }
  return out;
}

}  // namespace

ClassTable solution_classes(int n, SolveMethod m) {
  if (n < 1) throw std::invalid_argument("solution_classes: n must be positive");
  RepSet reps;
  switch (m) {
    case SolveMethod::brute:
      if (n > 2) throw std::invalid_argument("solution_classes: brute supports n <= 2");
      reps = classes_brute(n);
      break;
    case SolveMethod::via_refqm:
      if (n > 3) throw std::invalid_argument("solution_classes: via_refqm supports n <= 3");
      reps = classes_refqm(n);
      break;
    case SolveMethod::via_quadruple:
      if (n > 5) throw std::invalid_argument("solution_classes: via_quadruple supports n <= 5");
      reps = classes_quadruple(n);
      break;
  }
  return finalize(n, std::move(reps));
}

std::map<std::string, mpz_class> class_count_table(int n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("class_count_table: supported for 1 <= n <= 5");
  ClassTable ct = solution_classes(n, SolveMethod::via_quadruple);
  BigSeries p = partition_p(n);
  BigSeries d = davis_d(n, DavisMethod::bruijn_sum);
  BigSeries c = harary_c(n);
  BigSeries f1 = fs1_series(n);
  BigSeries fb = fsb_series(n);
  std::map<std::string, mpz_class> want{
      {"involutive", mpz_class((long)divisor_count(n))},
      {"idempotent", p.at(n)},
      {"left_nondeg", d.at(n)},
      {"right_nondeg", p.at(n)},
      {"bijective", fb.at(n)},
      {"pi1_surjective", f1.at(n)},
      {"unitary", unitary_count(n)},
      {"indec_left_nondeg", c.at(n)},
      {"indec_right_nondeg", 1},
      {"indec_idempotent", 1},
      {"finite_order_ge2", finite_order_count(n)},
  };
  std::map<std::string, mpz_class> out;
  for (const auto& [k, v] : ct.counts) out[k] = v;
  for (const auto& [k, v] : want)
    if (out.at(k) != v)
      throw std::logic_error("class_count_table: enumerated " + k + " count " +
                             out.at(k).get_str() + " differs from formula value " + v.get_str() +
                             " at n = " + std::to_string(n));
  return out;
}

}  // namespace fse
