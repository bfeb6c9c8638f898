#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fse/counting.hpp"
#include "fse/funcgraph.hpp"

using namespace fse;

namespace {

template <typename Fn>
void for_each_endo(int n, Fn fn) {
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= n;
  std::vector<int> v(n);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      v[i] = (int)(c % n);
      c /= n;
    }
    fn(EndoMap(n, v));
  }
}

EndoMap random_endo(int n, std::mt19937& rng) {
  std::vector<int> v(n);
  for (int& x : v) x = (int)(rng() % n);
  return EndoMap(n, v);
}

Perm random_perm(int n, std::mt19937& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

}  // namespace

TEST_CASE("rho_decomposition splits a worked example") {
  // 0 -> 1 -> 2 -> 1 (2-cycle with tail), 3 -> 3 (loop), 4 -> 5 <-> 6 with 5's tail
  EndoMap f(7, {1, 2, 1, 3, 5, 6, 5});
  FuncDigraph g = rho_decomposition(f);
  CHECK(g.ncomp == 3);
  CHECK(g.comp_vertices[0] == std::vector<int>{0, 1, 2});
  CHECK(g.comp_vertices[1] == std::vector<int>{3});
  CHECK(g.comp_vertices[2] == std::vector<int>{4, 5, 6});
  CHECK(g.cycles[0] == std::vector<int>{1, 2});
  CHECK(g.cycles[1] == std::vector<int>{3});
  CHECK(g.cycles[2] == std::vector<int>{5, 6});
  CHECK(g.on_cycle == std::vector<char>{0, 1, 1, 1, 0, 1, 1});
  CHECK(g.tree_children[1] == std::vector<int>{0});
  CHECK(g.tree_children[5] == std::vector<int>{4});
  CHECK(g.tree_children[6].empty());
}

TEST_CASE("components agree with a reachability closure") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + (int)(rng() % 9);
    EndoMap f = random_endo(n, rng);
    auto comps = components(f);
    // brute closure: x ~ y when forward orbits meet
    auto orbit = [&](int x) {
      std::set<int> s;
      while (!s.count(x)) {
        s.insert(x);
        x = f(x);
      }
      return s;
    };
    std::vector<std::set<int>> orb(n);
    for (int x = 0; x < n; ++x) orb[x] = orbit(x);
    std::vector<int> label(n, -1);
    int nl = 0;
    for (int x = 0; x < n; ++x) {
      if (label[x] != -1) continue;
      label[x] = nl;
      bool grew = true;
      while (grew) {
        grew = false;
        for (int y = 0; y < n; ++y) {
          if (label[y] != -1) continue;
          for (int z = 0; z < n; ++z) {
            if (label[z] != nl) continue;
            std::set<int> inter;
            std::set_intersection(orb[y].begin(), orb[y].end(), orb[z].begin(), orb[z].end(),
                                  std::inserter(inter, inter.begin()));
            if (!inter.empty()) {
              label[y] = nl;
              grew = true;
              break;
            }
          }
        }
      }
      ++nl;
    }
    CHECK((int)comps.size() == nl);
    std::set<int> covered;
    for (auto& c : comps) {
      CHECK(std::is_sorted(c.begin(), c.end()));
      for (int v : c) covered.insert(v);
    }
    CHECK((int)covered.size() == n);
  }
}

TEST_CASE("is_connected runs its three internal paths on every small function") {
  // the implementation cross-checks union-find, orbit intersection and
  // bipartition absence, raising on any disagreement
  long connected = 0;
  for_each_endo(4, [&](const EndoMap& f) { connected += is_connected(f); });
  // labeled connected functions on 4 points: 4^4 total minus split ones
  // (A001865: 1, 3, 17, 142, 1569 for n = 1..5)
  CHECK(connected == 142);
  long c3 = 0;
  for_each_endo(3, [&](const EndoMap& f) { c3 += is_connected(f); });
  CHECK(c3 == 17);
}

TEST_CASE("ahu_code follows the bracket grammar") {
  // star with three leaves into a fixed point
  EndoMap star(4, {3, 3, 3, 3});
  FuncDigraph g = rho_decomposition(star);
  CHECK(ahu_code(g, 0) == "()");
  CHECK(ahu_code(g, 3) == "(()()())");
  // path 0 -> 1 -> 2 -> 2
  EndoMap path(3, {1, 2, 2});
  FuncDigraph gp = rho_decomposition(path);
  CHECK(ahu_code(gp, 2) == "((()))");
  // child codes are sorted, so sibling order cannot matter
  EndoMap t1(5, {2, 2, 4, 2, 4});  // 4 <- 2 <- {0, 1, 3}
  FuncDigraph gt = rho_decomposition(t1);
  CHECK(ahu_code(gt, 4) == "((()()()))");
  EndoMap t2(5, {2, 2, 4, 4, 4});  // siblings permuted: same code shape classes
  FuncDigraph gu = rho_decomposition(t2);
  CHECK(ahu_code(gu, 4) == "((()())())");
}

TEST_CASE("aut_order_tree matches orbit counting on shaped trees") {
  // star of k leaves: k! symmetries at the root tree
  EndoMap star(5, {4, 4, 4, 4, 4});
  FuncDigraph g = rho_decomposition(star);
  CHECK(aut_order_tree(g, 4) == 24);
  // two identical chains into the root: swap them
  EndoMap twin(5, {1, 4, 3, 4, 4});  // 0->1->4, 2->3->4
  FuncDigraph gt = rho_decomposition(twin);
  CHECK(aut_order_tree(gt, 4) == 2);
  // bare path: rigid
  EndoMap path(4, {1, 2, 3, 3});
  FuncDigraph gp = rho_decomposition(path);
  CHECK(aut_order_tree(gp, 3) == 1);
}

TEST_CASE("canonical_code classifies conjugacy exactly on three points") {
  std::vector<EndoMap> all;
  for_each_endo(3, [&](const EndoMap& f) { all.push_back(f); });
  auto conj_brute = [&](const EndoMap& f, const EndoMap& g) {
    for (const Perm& s : all_perms(3))
      if (conjugate(s, f) == g) return true;
    return false;
  };
  for (const EndoMap& f : all)
    for (const EndoMap& g : all) {
      bool same = canonical_code(f) == canonical_code(g);
      CHECK(same == conj_brute(f, g));
      auto w = are_conjugate(f, g);
      CHECK(w.has_value() == same);
      if (w) CHECK(conjugate(*w, f) == g);
    }
  std::set<std::string> codes;
  for (const EndoMap& f : all) codes.insert(canonical_code(f));
  CHECK(codes.size() == 7);  // d(3)
}

TEST_CASE("canonical_perm realizes the canonical form") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + (int)(rng() % 8);
    EndoMap f = random_endo(n, rng);
    Perm p = canonical_perm(f);
    EndoMap canon = conjugate(p, f);
    std::string code = canonical_code(f);
    CHECK(canonical_code(canon) == code);
    Perm s = random_perm(n, rng);
    EndoMap g = conjugate(s, f);
    CHECK(canonical_code(g) == code);
    CHECK(conjugate(canonical_perm(g), g) == canon);
  }
}

TEST_CASE("aut_order equals the brute centralizer on every five-point function") {
  for_each_endo(5, [&](const EndoMap& f) {
    CHECK(aut_order(f) == (long)aut_brute(f).size());
  });
}

TEST_CASE("aut_order matches brute counting on random larger functions") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    EndoMap f = random_endo(7, rng);
    CHECK(aut_order(f) == (long)aut_brute(f).size());
  }
}

TEST_CASE("wreath_descriptor worked examples") {
  // two disjoint 2-cycles: each rotates (2) and the pair swaps (2!)
  EndoMap f(4, {1, 0, 3, 2});
  WreathDescriptor w = wreath_descriptor(f);
  REQUIRE(w.classes.size() == 1);
  CHECK(w.classes[0].multiplicity == 2);
  CHECK(w.classes[0].cycle_len == 2);
  CHECK(w.classes[0].component_order == 2);
  CHECK(w.total == 8);
  CHECK(aut_order(f) == 8);

  // 3-cycle with one leaf: the leaf pins the rotation
  EndoMap g(4, {1, 2, 0, 0});
  WreathDescriptor wg = wreath_descriptor(g);
  REQUIRE(wg.classes.size() == 1);
  CHECK(wg.classes[0].rotations == 1);
  CHECK(wg.total == 1);

  // identical leaves on every vertex of a 2-cycle: rotation survives
  EndoMap h(4, {1, 0, 0, 1});
  WreathDescriptor wh = wreath_descriptor(h);
  CHECK(wh.classes[0].rotations == 2);
  CHECK(wh.classes[0].tree_period == 1);
  CHECK(wh.total == 2);

  mpz_class prod = 1;
  for (auto& wc : wh.classes) {
    mpz_class m;
    mpz_fac_ui(m.get_mpz_t(), wc.multiplicity);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), wc.component_order.get_mpz_t(), wc.multiplicity);
    prod *= m * pw;
  }
  CHECK(prod == wh.total);
}

TEST_CASE("glue_fh survey over all admissible small pairs") {
  // f must be constant on h-fibers with image inside the image of h; glue_fh
  // validates per input and reports which branch realized the joint
  // centralizer, or that neither did
  std::map<std::string, long> tally;
  for (int n = 1; n <= 4; ++n) {
    for_each_endo(n, [&](const EndoMap& h) {
      if (!is_idempotent(h)) return;
      for_each_endo(n, [&](const EndoMap& f) {
        if (compose(f, h) != f || compose(h, f) != f) return;
        GlueResult gr = glue_fh(h, f);
        if (n <= 3) CHECK(gr.validation == GlueResult::Validation::confirmed);
        if (gr.validation == GlueResult::Validation::failed)
          tally["failed"]++;
        else
          tally[gr.f_branch_on_image ? "image" : "complement"]++;
      });
    });
  }
  // frozen survey: neither branch is universal, and from four points on some
  // pairs admit no single-function gluing at all
  CHECK(tally["image"] == 55 + 536);
  CHECK(tally["complement"] == 6 + 24);
  CHECK(tally["failed"] == 120);
}

TEST_CASE("glue_fh known branch witnesses") {
  // h fixes {0,2}, f constant 0: writing f on the image gives the constant,
  // whose centralizer is strictly bigger than the joint one
  GlueResult a = glue_fh(EndoMap(3, {0, 0, 2}), EndoMap::constant(3, 0));
  CHECK(a.validation == GlueResult::Validation::confirmed);
  CHECK_FALSE(a.f_branch_on_image);
  // h identity: the image branch is forced
  GlueResult b = glue_fh(EndoMap::identity(3), EndoMap::constant(3, 0));
  CHECK(b.validation == GlueResult::Validation::confirmed);
  CHECK(b.f_branch_on_image);
  // genuine obstruction: both candidates degenerate to f and h themselves,
  // each with centralizer of order two, while the joint centralizer is trivial
  GlueResult c = glue_fh(EndoMap(4, {0, 1, 2, 0}), EndoMap(4, {0, 1, 0, 0}));
  CHECK(c.validation == GlueResult::Validation::failed);
}

TEST_CASE("export_dot lists vertices and skips fixed-point loops") {
  EndoMap f(4, {1, 2, 2, 3});
  std::string dot = export_dot(f);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("0 -> 1") != std::string::npos);
  CHECK(dot.find("1 -> 2") != std::string::npos);
  CHECK(dot.find("2 -> 2") == std::string::npos);
  CHECK(dot.find("3 -> 3") == std::string::npos);
  CHECK(dot.find("3") != std::string::npos);
}
