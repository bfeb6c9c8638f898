#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fse/enumerate.hpp"
#include "fse/funcgraph.hpp"
#include "fse/solution.hpp"

using namespace fse;

namespace {

Perm random_perm(int n, std::mt19937& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

// naive composition (R x id) etc. on triples, for power cross-checks
std::vector<int> apply_pow_naive(const Solution& s, int k) {
  int n = s.n();
  std::vector<int> cur(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) cur[x * n + y] = x * n + y;
  for (int step = 0; step < k; ++step) {
    std::vector<int> nxt(n * n);
    for (int i = 0; i < n * n; ++i) {
      int u = cur[i] / n, v = cur[i] % n;
      nxt[i] = s.lv(u, v) * n + s.rv(u, v);
    }
    cur = nxt;
  }
  return cur;
}

}  // namespace

TEST_CASE("verify_fs agrees with its condition path on every two-point map") {
  // all 256 pairs of tables on two points; count the valid ones
  long valid = 0;
  for (int lc = 0; lc < 16; ++lc)
    for (int rc = 0; rc < 16; ++rc) {
      std::vector<int> l(4), r(4);
      for (int i = 0; i < 4; ++i) {
        l[i] = (lc >> i) & 1;
        r[i] = (rc >> i) & 1;
      }
      PairMap pm(2, l, r);
      FsReport rep = verify_fs(pm);
      CHECK(rep.path_agreement);
      CHECK(rep.valid == (rep.direct_ok && rep.conditions_ok));
      if (!rep.valid) CHECK(rep.witness.has_value());
      valid += rep.valid;
    }
  // 7 = identity + two constants + the four maps (x,y) -> (y, f(x))
  CHECK(valid == 7);
}

TEST_CASE("solutions satisfy the braid relation") {
  for (int n = 2; n <= 3; ++n) {
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    for (const SolutionClass& sc : t.classes) {
      CHECK(verify_braid(sc.rep).valid);
      CHECK(sc.flags.braid_valid);
    }
  }
  // braid alone is weaker: (x,y) -> (s(y), s(x)) braids for every permutation
  // s, but solves the equation only when s is the identity
  std::vector<int> l(9), r(9);
  int s3[] = {1, 2, 0};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      l[x * 3 + y] = s3[y];
      r[x * 3 + y] = s3[x];
    }
  PairMap twist(3, l, r);
  CHECK(verify_braid(twist).valid);
  CHECK_FALSE(verify_fs(twist).valid);
}

TEST_CASE("from_pairmap rejects invalid maps with a witness") {
  // (x,y) -> (x,y) twisted so the left table is not Kimura
  PairMap bad(2, {0, 0, 1, 0}, {0, 1, 0, 1});
  CHECK_THROWS_AS(Solution::from_pairmap(bad), std::invalid_argument);
  Solution id2 = Solution::from_pairmap(PairMap(2, {0, 0, 1, 1}, {0, 1, 0, 1}));
  // base point 0: theta(x) = r[x][0]; over the left-zero table every theta
  // induces the same right table, and the deterministic pick is constant 0
  CHECK(id2.theta == EndoMap(2, {0, 0}));
  CHECK(from_pointed(OpTable(2, {0, 0, 1, 1}), EndoMap::identity(2)).pm == id2.pm);
}

TEST_CASE("pointed presentation round trips and ignores the base point") {
  for (int n = 2; n <= 3; ++n) {
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    for (const SolutionClass& sc : t.classes) {
      Solution s = Solution::from_pairmap(sc.rep);
      auto [tab, theta] = to_pointed(s);
      Solution back = from_pointed(tab, theta);
      CHECK(back.pm == sc.rep);
      // any base point induces the same right table: y . theta_z(x) is
      // independent of z
      for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) CHECK(s.rv(x, y) == tab.at(y, s.rv(x, z)));
    }
  }
}

TEST_CASE("quadruple presentation round trips") {
  for (int n = 2; n <= 4; ++n) {
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    for (const SolutionClass& sc : t.classes) {
      Solution s = Solution::from_pairmap(sc.rep);
      Quadruple q = to_quadruple(s);
      CHECK(q.a * q.b == (int)image_of(q.h).size());
      Solution back = from_quadruple(q);
      CHECK(back.pm == sc.rep);
    }
  }
}

TEST_CASE("builders produce the documented maps") {
  Solution c = build_constant(3, 1);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      CHECK(c.lv(x, y) == 1);
      CHECK(c.rv(x, y) == 1);
    }
  EndoMap f(3, {1, 1, 2});
  Solution rf = build_r_f(f);
  Solution ruf = build_r_upper_f(f);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      CHECK(rf.lv(x, y) == y);
      CHECK(rf.rv(x, y) == f(x));
      CHECK(ruf.lv(x, y) == f(x));
      CHECK(ruf.rv(x, y) == f(y));
    }
  // R_hf needs h idempotent and f compatible
  EndoMap h(3, {0, 0, 2});
  EndoMap g(3, {0, 0, 0});
  Solution rhf = build_r_hf(h, g);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      CHECK(rhf.lv(x, y) == h(y));
      CHECK(rhf.rv(x, y) == g(x));
    }
  CHECK_THROWS_AS(build_r_hf(EndoMap(2, {1, 0}), EndoMap::identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(build_r_hf(h, EndoMap(3, {1, 1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(build_r_upper_f(EndoMap(2, {1, 0})), std::invalid_argument);

  // product acts blockwise
  Solution flip = build_r_f(EndoMap::identity(2));
  Solution prod = build_product(flip, flip);
  CHECK(prod.n() == 4);
  CHECK(classify(prod).fs_valid);
}

TEST_CASE("r_omega worked examples") {
  // a = 1, b = 2, omega the swap: R(x,y) = (y, omega(x)) on two points
  Solution s = build_r_omega(1, 2, EndoMap(2, {1, 0}));
  CHECK(s.n() == 2);
  ClassFlags fl = classify(s);
  CHECK(fl.bijective);
  REQUIRE(fl.finite_order.has_value());
  CHECK(*fl.finite_order == 4);
  // a = 2, b = 1: the identity solution on two points
  Solution id2 = build_r_omega(2, 1, EndoMap::identity(1));
  CHECK(solution_order(id2).value() == 1);
  ClassFlags fid = classify(id2);
  CHECK(fid.involutive);
  CHECK(fid.diagonal);

  // f_r_omega: blocks of size 2 with a swap inside each
  Solution fro = build_f_r_omega(EndoMap(4, {0, 0, 2, 2}), 1, EndoMap::identity(1));
  CHECK(classify(fro).idempotent);
  CHECK_THROWS_AS(build_f_r_omega(EndoMap(2, {1, 0}), 1, EndoMap::identity(1)),
                  std::invalid_argument);
}

TEST_CASE("classification flags on the canonical small examples") {
  // the flip (x,y) -> (y,x)
  Solution flip = build_r_f(EndoMap::identity(2));
  ClassFlags fl = classify(flip);
  CHECK(fl.fs_valid);
  CHECK(fl.involutive);
  CHECK(fl.diagonal);
  CHECK(fl.unitary);
  CHECK(fl.left_nondeg);
  CHECK(fl.right_nondeg);
  CHECK(fl.bijective);
  CHECK(fl.pi1_surjective);
  CHECK(fl.pi2_surjective);
  CHECK_FALSE(fl.idempotent);
  CHECK_FALSE(fl.symmetric);
  CHECK(fl.decomposable);
  CHECK(*fl.finite_order == 2);

  // a constant map is idempotent and symmetric but degenerate
  ClassFlags fc = classify(build_constant(3, 0));
  CHECK(fc.idempotent);
  CHECK(fc.symmetric);
  CHECK(fc.commutative);
  CHECK(fc.cocommutative);
  CHECK_FALSE(fc.left_nondeg);
  CHECK_FALSE(fc.bijective);
  CHECK_FALSE(fc.finite_order.has_value());

  // R^f with f idempotent of rank 2
  ClassFlags fu = classify(build_r_upper_f(EndoMap(3, {0, 0, 2})));
  CHECK(fu.idempotent);
  CHECK_FALSE(fu.pi1_surjective);
  CHECK_FALSE(fu.unitary);
}

TEST_CASE("classification equivalences over every class on up to four points") {
  for (int n = 1; n <= 4; ++n) {
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    for (const SolutionClass& sc : t.classes) {
      Solution s = Solution::from_pairmap(sc.rep);
      const ClassFlags& fl = sc.flags;
      // symmetric means R(x,y) = R(y,x), which forces a constant
      bool is_const = true;
      for (int x = 0; x < n && is_const; ++x)
        for (int y = 0; y < n && is_const; ++y)
          is_const = s.lv(x, y) == s.lv(0, 0) && s.rv(x, y) == s.lv(0, 0);
      CHECK(fl.symmetric == (is_const || n == 1));
      // involutive iff diagonal; idempotent iff commutative iff cocommutative
      CHECK(fl.involutive == fl.diagonal);
      CHECK(fl.idempotent == fl.commutative);
      CHECK(fl.idempotent == fl.cocommutative);
      if (fl.right_nondeg) CHECK(fl.left_nondeg);
      if (fl.bijective) CHECK(fl.pi1_surjective);
      // pi1-surjective iff the squaring map is a permutation
      Quadruple q = to_quadruple(s);
      std::vector<int> im = image_of(q.h);
      CHECK(fl.pi1_surjective == ((int)im.size() == n));
      // idempotent iff R = R^f for f the squaring map restricted
      if (fl.idempotent) {
        Solution rf = build_r_upper_f(q.h);
        CHECK(are_isomorphic(s, rf).has_value());
        CHECK(rf.pm == s.pm);
      }
      // involutive iff R^2 = id
      PairMap sq = solution_power(s, 2);
      bool sq_id = true;
      for (int x = 0; x < n && sq_id; ++x)
        for (int y = 0; y < n && sq_id; ++y)
          sq_id = sq.lv(x, y) == x && sq.rv(x, y) == y;
      CHECK(fl.involutive == sq_id);
    }
  }
}

TEST_CASE("left nondegeneracy is exactly the R_f shape") {
  for (int n = 1; n <= 4; ++n) {
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    long lnd = 0;
    for (const SolutionClass& sc : t.classes) {
      Solution s = Solution::from_pairmap(sc.rep);
      bool rf_shape = true;
      for (int x = 0; x < n && rf_shape; ++x)
        for (int y = 0; y < n && rf_shape; ++y) rf_shape = s.lv(x, y) == y;
      // left-nondegenerate solutions are those with x.y = y up to nothing:
      // the left table itself must be right-zero
      CHECK(sc.flags.left_nondeg == rf_shape);
      lnd += sc.flags.left_nondeg;
      // and right nondegeneracy further forces theta bijective
      if (sc.flags.right_nondeg) {
        CHECK(rf_shape);
        std::vector<int> im = image_of(s.theta);
        CHECK((int)im.size() == n);
      }
    }
    CHECK(lnd == t.counts.at("left_nondeg"));
  }
}

TEST_CASE("powers: closed form, naive composition, and period") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + (int)(rng() % 3);
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    const SolutionClass& sc = t.classes[rng() % t.classes.size()];
    Solution s = Solution::from_pairmap(sc.rep);
    for (int k = 0; k <= 10; ++k) {
      PairMap pk = solution_power(s, k);
      CHECK(pair_table(pk) == apply_pow_naive(s, k));
    }
    auto ord = solution_order(s);
    if (ord) {
      long o = (long)ord->get_si();
      CHECK(pair_table(solution_power(s, o)) == apply_pow_naive(s, 0));
      // minimality
      for (long k = 1; k < o; ++k) CHECK(pair_table(solution_power(s, k)) != apply_pow_naive(s, 0));
      // big exponents reduce mod the order
      long long big = 1000000000000007LL;
      CHECK(pair_table(solution_power(s, big)) == pair_table(solution_power(s, big % o)));
    }
  }
}

TEST_CASE("solution_order known values") {
  CHECK(solution_order(build_r_f(EndoMap::identity(3))).value() == 2);
  CHECK(solution_order(build_r_f(EndoMap(3, {1, 2, 0}))).value() == 6);
  CHECK(solution_order(build_r_omega(1, 2, EndoMap(2, {1, 0}))).value() == 4);
  CHECK_FALSE(solution_order(build_constant(3, 0)).has_value());
  CHECK_FALSE(solution_order(build_r_upper_f(EndoMap(3, {0, 0, 2}))).has_value());
}

TEST_CASE("powers_all_solutions criterion") {
  // idempotent f: R_f has all powers solutions
  CHECK(powers_all_solutions(build_r_f(EndoMap(3, {0, 0, 2}))));
  // constant solutions stabilize immediately
  CHECK(powers_all_solutions(build_constant(3, 1)));
  // a 3-cycle theta fails: R^2 is not a solution
  Solution s3 = build_r_f(EndoMap(3, {1, 2, 0}));
  CHECK_FALSE(powers_all_solutions(s3));
  FsReport r2 = verify_fs(solution_power(s3, 2));
  CHECK_FALSE(r2.valid);
  // the flip has all powers solutions (they alternate R, id)
  CHECK(powers_all_solutions(build_r_f(EndoMap::identity(2))));
}

TEST_CASE("decomposability") {
  // n = 1: trivially indecomposable
  CHECK_FALSE(is_decomposable(build_constant(1, 0)).has_value());
  // constants never decompose
  CHECK_FALSE(is_decomposable(build_constant(3, 0)).has_value());
  // on n >= 2 every bijective class decomposes except one: the cycle
  // solution R_f with f an n-cycle (it is right nondegenerate and has a
  // connected digraph, so no block split exists)
  for (int n = 2; n <= 4; ++n) {
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    std::string cycle_code = canonical_form(build_r_f(EndoMap(n, cyc)));
    int bijective_indec = 0;
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    for (const SolutionClass& sc : t.classes) {
      Solution s = Solution::from_pairmap(sc.rep);
      if (sc.flags.bijective && !sc.flags.decomposable) {
        ++bijective_indec;
        CHECK(canonical_form(s) == cycle_code);
      }
      if (sc.flags.involutive) CHECK(sc.flags.decomposable);
      auto dec = is_decomposable(s);
      CHECK(dec.has_value() == sc.flags.decomposable);
      if (dec) {
        // blocks partition X, Y holds 0, both closed under both tables
        CHECK(!dec->y.empty());
        CHECK(!dec->z.empty());
        CHECK(dec->y.front() == 0);
        std::set<int> all(dec->y.begin(), dec->y.end());
        all.insert(dec->z.begin(), dec->z.end());
        CHECK((int)all.size() == n);
        for (const std::vector<int>& blk : {dec->y, dec->z}) {
          std::set<int> b(blk.begin(), blk.end());
          for (int x : blk)
            for (int y : blk) {
              CHECK(b.count(s.lv(x, y)));
              CHECK(b.count(s.rv(x, y)));
            }
        }
      }
    }
    CHECK(bijective_indec == 1);
  }
}

TEST_CASE("R_f decomposes exactly when the digraph of f disconnects") {
  for (int n = 2; n <= 5; ++n) {
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= n;
    std::vector<int> v(n);
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < n; ++i) {
        v[i] = (int)(c % n);
        c /= n;
      }
      EndoMap f(n, v);
      CHECK(is_decomposable(build_r_f(f)).has_value() == !is_connected(f));
    }
  }
}

TEST_CASE("isomorphism and canonical forms") {
  std::mt19937 rng(53);
  // conjugating f conjugates R_f
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + (int)(rng() % 4);
    std::vector<int> fv(n);
    for (int& x : fv) x = (int)(rng() % n);
    EndoMap f(n, fv);
    Perm s = random_perm(n, rng);
    Solution a = build_r_f(f);
    Solution b = build_r_f(conjugate(s, f));
    auto w = are_isomorphic(a, b);
    REQUIRE(w.has_value());
    CHECK(relabel(a.pm, *w) == b.pm);
    CHECK(canonical_form(a) == canonical_form(b));
  }
  // identity vs flip on two points are distinct classes
  Solution id2 = build_r_omega(2, 1, EndoMap::identity(1));
  Solution flip = build_r_f(EndoMap::identity(2));
  CHECK_FALSE(are_isomorphic(id2, flip).has_value());
  CHECK(canonical_form(id2) != canonical_form(flip));
  // two constants are isomorphic
  CHECK(are_isomorphic(build_constant(3, 0), build_constant(3, 2)).has_value());
  // canonical_form's argmin realizes the form
  Solution s5 = build_r_f(EndoMap(5, {1, 0, 3, 3, 2}));
  Perm arg(std::vector<int>{0, 1, 2, 3, 4});
  std::string code = canonical_form(s5.pm, &arg);
  CHECK(canonical_form(relabel(s5.pm, arg), nullptr) == code);
}

TEST_CASE("canonical_form is invariant under relabeling") {
  std::mt19937 rng(59);
  for (int n = 2; n <= 4; ++n) {
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    for (const SolutionClass& sc : t.classes) {
      std::string code = canonical_form(sc.rep);
      CHECK(code == sc.code);
      for (int trial = 0; trial < 5; ++trial) {
        Perm s = random_perm(n, rng);
        CHECK(canonical_form(relabel(sc.rep, s)) == code);
      }
    }
  }
}

TEST_CASE("aut_group structural order equals the brute element count") {
  // the implementation cross-checks internally for n <= 8; exercise both a
  // sweep over classes and targeted examples
  for (int n = 2; n <= 4; ++n) {
    ClassTable t = solution_classes(n, SolveMethod::via_quadruple);
    for (const SolutionClass& sc : t.classes) {
      Solution s = Solution::from_pairmap(sc.rep);
      AutGroup g = aut_group(s);
      CHECK(g.order == (long)g.elements.size());
      CHECK(g.order == sc.aut_order);
      for (const Perm& p : g.elements) CHECK(relabel(s.pm, p) == s.pm);
    }
  }
  CHECK(aut_group(build_constant(4, 0)).order == 6);       // perms fixing the target
  CHECK(aut_group(build_r_f(EndoMap::identity(3))).order == 6);  // flip: all of S_3
  CHECK(aut_group(build_r_omega(2, 2, EndoMap(2, {1, 0}))).order == 4);
}

TEST_CASE("pair_table round trips") {
  Solution s = build_r_f(EndoMap(3, {1, 1, 2}));
  std::vector<int> t = pair_table(s.pm);
  CHECK(pair_from_table(3, t) == s.pm);
}
