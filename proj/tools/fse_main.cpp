#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fse/counting.hpp"
#include "fse/enumerate.hpp"
#include "fse/funcgraph.hpp"
#include "fse/io.hpp"
#include "fse/solution.hpp"

namespace {

using namespace fse;

const char* yn(bool v) { return v ? "yes" : "no"; }

void print_witness(const std::optional<std::array<int, 3>>& w) {
  if (!w) return;
  std::cout << " witness (" << (*w)[0] << "," << (*w)[1] << "," << (*w)[2] << ")";
}

int cmd_verify(const std::string& file) {
  PairMap pm = load_solution_file(file);
  FsReport rep = verify_fs(pm);
  BraidReport br = verify_braid(pm);
  std::cout << "fs: " << (rep.valid ? "valid" : "invalid");
  if (!rep.valid) print_witness(rep.witness);
  std::cout << "\n";
  std::cout << "braid: " << (br.valid ? "valid" : "invalid");
  if (!br.valid) print_witness(br.witness);
  std::cout << "\n";
  return rep.valid ? 0 : 1;
}

int cmd_classify(const std::string& file) {
  PairMap pm = load_solution_file(file);
  FsReport rep = verify_fs(pm);
  if (!rep.valid) {
    std::cout << "fs: invalid";
    print_witness(rep.witness);
    std::cout << "\n";
    return 1;
  }
  Solution s = Solution::from_pairmap(pm);
  ClassFlags fl = classify(s);
  std::cout << "fs: valid\n";
  std::cout << "braid: " << yn(fl.braid_valid) << "\n";
  std::cout << "involutive: " << yn(fl.involutive) << "\n";
  std::cout << "diagonal: " << yn(fl.diagonal) << "\n";
  std::cout << "idempotent: " << yn(fl.idempotent) << "\n";
  std::cout << "commutative: " << yn(fl.commutative) << "\n";
  std::cout << "cocommutative: " << yn(fl.cocommutative) << "\n";
  std::cout << "unitary: " << yn(fl.unitary) << "\n";
  std::cout << "symmetric: " << yn(fl.symmetric) << "\n";
  std::cout << "left_nondeg: " << yn(fl.left_nondeg) << "\n";
  std::cout << "right_nondeg: " << yn(fl.right_nondeg) << "\n";
  std::cout << "pi1_surjective: " << yn(fl.pi1_surjective) << "\n";
  std::cout << "pi2_surjective: " << yn(fl.pi2_surjective) << "\n";
  std::cout << "bijective: " << yn(fl.bijective) << "\n";
  if (s.n() == 1)
    std::cout << "decomposable: trivially indecomposable\n";
  else
    std::cout << "decomposable: " << yn(fl.decomposable) << "\n";
  std::cout << "finite_order: "
            << (fl.finite_order ? fl.finite_order->get_str() : std::string("none")) << "\n";
  Quadruple q = to_quadruple(s);
  std::cout << "shape: " << q.a << " x " << q.b << "\n";
  std::cout << "theta_prime: " << canonical_code(q.theta_prime) << "\n";
  return 0;
}

bool flag_value(const ClassFlags& fl, const std::string& name) {
  if (name == "involutive") return fl.involutive;
  if (name == "diagonal") return fl.diagonal;
  if (name == "idempotent") return fl.idempotent;
  if (name == "commutative") return fl.commutative;
  if (name == "cocommutative") return fl.cocommutative;
  if (name == "unitary") return fl.unitary;
  if (name == "symmetric") return fl.symmetric;
  if (name == "left_nondeg") return fl.left_nondeg;
  if (name == "right_nondeg") return fl.right_nondeg;
  if (name == "pi1_surjective") return fl.pi1_surjective;
  if (name == "pi2_surjective") return fl.pi2_surjective;
  if (name == "bijective") return fl.bijective;
  if (name == "decomposable") return fl.decomposable;
  if (name == "indecomposable") return !fl.decomposable;
  if (name == "finite_order_ge2") return fl.finite_order && *fl.finite_order >= 2;
  throw std::invalid_argument("unknown class flag \"" + name + "\"");
}

SolveMethod parse_method(const std::string& m) {
  if (m == "brute") return SolveMethod::brute;
  if (m == "refqm") return SolveMethod::via_refqm;
  if (m == "quadruple") return SolveMethod::via_quadruple;
  throw std::invalid_argument("unknown method \"" + m + "\"");
}

int cmd_enumerate(int n, const std::string& method, const std::string& flag,
                  const std::string& outdir) {
  ClassTable ct = solution_classes(n, parse_method(method));
  std::vector<const SolutionClass*> picked;
  for (const SolutionClass& c : ct.classes)
    if (flag.empty() || flag_value(c.flags, flag)) picked.push_back(&c);
  std::cout << "classes: " << picked.size() << "\n";
  if (!outdir.empty()) {
    std::filesystem::create_directories(outdir);
    int idx = 0;
    for (const SolutionClass* c : picked) {
      std::ostringstream name;
      name << "sol_" << std::setw(4) << std::setfill('0') << idx++ << ".json";
      save_solution_file((std::filesystem::path(outdir) / name.str()).string(), c->rep);
    }
    std::cout << "wrote " << picked.size() << " files to " << outdir << "\n";
  }
  return 0;
}

int cmd_count(const std::string& series, int upto, const std::string& method) {
  if (upto < 1) throw std::invalid_argument("--upto must be positive");
  auto print_series = [&](const BigSeries& s) {
    for (int i = 1; i <= upto; ++i) std::cout << i << "\t" << s.at(i).get_str() << "\n";
  };
  auto print_each = [&](const std::function<mpz_class(int)>& f) {
    for (int i = 1; i <= upto; ++i) std::cout << i << "\t" << f(i).get_str() << "\n";
  };
  if (series == "p") {
    if (upto > 100000) throw std::invalid_argument("--upto too large for series p (max 100000)");
    print_series(partition_p(upto));
  } else if (series == "d") {
    bool want_bruijn = method.empty() || method == "both" || method == "bruijn";
    bool want_euler = method.empty() || method == "both" || method == "euler";
    if (!want_bruijn && !want_euler) throw std::invalid_argument("method must be bruijn|euler|both");
    if (want_bruijn && upto > 50)
      throw std::invalid_argument("--upto too large for the bruijn sum (max 50)");
    if (upto > 2000) throw std::invalid_argument("--upto too large for series d (max 2000)");
    if (want_bruijn && want_euler) {
      BigSeries a = davis_d(upto, DavisMethod::bruijn_sum);
      BigSeries b = davis_d(upto, DavisMethod::euler_product);
      for (int i = 1; i <= upto; ++i)
        if (a.at(i) != b.at(i)) throw std::logic_error("davis_d: methods disagree");
      print_series(a);
    } else {
      print_series(davis_d(upto, want_bruijn ? DavisMethod::bruijn_sum
                                             : DavisMethod::euler_product));
    }
  } else if (series == "c") {
    if (upto > 2000) throw std::invalid_argument("--upto too large for series c (max 2000)");
    print_series(harary_c(upto));
  } else if (series == "T") {
    if (upto > 2000) throw std::invalid_argument("--upto too large for series T (max 2000)");
    print_series(rooted_trees(upto));
  } else if (series == "fs1") {
    if (upto > 50) throw std::invalid_argument("--upto too large for series fs1 (max 50)");
    print_series(fs1_series(upto));
  } else if (series == "fsb") {
    if (upto > 2000) throw std::invalid_argument("--upto too large for series fsb (max 2000)");
    print_series(fsb_series(upto));
  } else if (series == "unitary") {
    print_each([](int i) { return unitary_count(i); });
  } else if (series == "idempotent-total") {
    if (upto > 2000) throw std::invalid_argument("--upto too large (max 2000)");
    print_each([](int i) { return idempotent_total(i); });
  } else if (series == "finite-order") {
    if (upto > 2000) throw std::invalid_argument("--upto too large (max 2000)");
    print_each([](int i) { return finite_order_count(i); });
  } else if (series == "landau") {
    if (upto > 4000) throw std::invalid_argument("--upto too large for series landau (max 4000)");
    print_each([](int i) { return landau_g(i); });
  } else {
    throw std::invalid_argument("unknown series \"" + series + "\"");
  }
  return 0;
}

int cmd_autf(const std::string& file, bool brute) {
  EndoMap f = load_endo_file(file);
  WreathDescriptor wd = wreath_descriptor(f);
  std::cout << "aut order: " << wd.total.get_str() << "\n";
  for (const WreathComponent& c : wd.classes) {
    std::cout << "component: mult=" << c.multiplicity << " cycle=" << c.cycle_len
              << " rotations=" << c.rotations << " tree_period=" << c.tree_period
              << " order=" << c.component_order.get_str() << " trees=";
    for (std::size_t i = 0; i < c.tree_codes.size(); ++i) {
      if (i) std::cout << " ";
      std::cout << c.tree_codes[i];
    }
    std::cout << "\n";
  }
  if (brute) {
    if (f.n > 8) throw std::invalid_argument("--brute supports n <= 8");
    std::vector<Perm> elems = aut_brute(f);
    if (wd.total != (long)elems.size())
      throw std::logic_error("autf: structural order disagrees with the brute count");
    std::cout << "generators:\n";
    for (const Perm& p : elems) {
      for (int x = 0; x < p.n; ++x) {
        if (x) std::cout << " ";
        std::cout << p.fwd[x];
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_canon(const std::string& file) {
  if (probe_file(file) == FileKind::endo)
    std::cout << canonical_code(load_endo_file(file)) << "\n";
  else
    std::cout << canonical_form(load_solution_file(file)) << "\n";
  return 0;
}

int cmd_conjugate(const std::string& f1, const std::string& f2) {
  std::optional<Perm> s = are_conjugate(load_endo_file(f1), load_endo_file(f2));
  if (!s) {
    std::cout << "none\n";
    return 1;
  }
  for (int x = 0; x < s->n; ++x) {
    if (x) std::cout << " ";
    std::cout << s->fwd[x];
  }
  std::cout << "\n";
  return 0;
}

int cmd_export_dot(const std::string& file, const std::string& out) {
  EndoMap f = load_endo_file(file);
  std::ofstream o(out, std::ios::binary);
  if (!o) throw std::runtime_error("cannot write " + out);
  o << export_dot(f);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_selftest(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("selftest supports 1 <= n <= 5");
  bool all_ok = true;
  for (int k = 1; k <= n; ++k) {
    std::vector<std::pair<std::string, std::set<std::string>>> sets;
    auto codes_of = [](const ClassTable& ct) {
      std::set<std::string> s;
      for (const SolutionClass& c : ct.classes) s.insert(c.code);
      return s;
    };
    if (k <= 2) sets.emplace_back("brute", codes_of(solution_classes(k, SolveMethod::brute)));
    if (k <= 3) sets.emplace_back("refqm", codes_of(solution_classes(k, SolveMethod::via_refqm)));
    sets.emplace_back("quadruple", codes_of(solution_classes(k, SolveMethod::via_quadruple)));
    bool agree = true;
    for (std::size_t i = 1; i < sets.size(); ++i) agree = agree && sets[i].second == sets[0].second;
    std::cout << "n=" << k << " path-agreement: " << (agree ? "PASS" : "FAIL") << " (";
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (i) std::cout << " ";
      std::cout << sets[i].first << "=" << sets[i].second.size();
    }
    std::cout << ")\n";
    all_ok = all_ok && agree;
    try {
      std::map<std::string, mpz_class> counts = class_count_table(k);
      std::cout << "n=" << k << " formula-table: PASS (classes=" << counts.at("total").get_str()
                << ")\n";
    } catch (const std::logic_error& e) {
      std::cout << "n=" << k << " formula-table: FAIL (" << e.what() << ")\n";
      all_ok = false;
    }
  }
  std::cout << (all_ok ? "selftest: PASS" : "selftest: FAIL") << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifier, classifier, enumerator and counting engine for set-theoretic "
               "solutions of the Frobenius-Separability equation"};
  app.require_subcommand(1);

  std::string file, file2, method_enum, method_count, flag, outdir, series;
  int n = 0, upto = 0;
  bool brute = false;

  CLI::App* verify = app.add_subcommand("verify", "Check a solution file against the FS law");
  verify->add_option("file", file, "solution file")->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "Print classification flags");
  classify_cmd->add_option("file", file, "solution file")->required();

  CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate solution classes");
  enumerate_cmd->add_option("--n", n, "set size")->required();
  enumerate_cmd->add_option("--method", method_enum, "brute|refqm|quadruple")
      ->default_val("quadruple");
  enumerate_cmd->add_option("--class", flag, "keep only classes with this flag");
  enumerate_cmd->add_option("--out", outdir, "write representatives to this directory");

  CLI::App* count = app.add_subcommand("count", "Print an exact integer sequence table");
  count->add_option("--series", series,
                    "p|d|c|T|fs1|fsb|unitary|idempotent-total|finite-order|landau")
      ->required();
  count->add_option("--upto", upto, "last index")->required();
  count->add_option("--method", method_count, "for d: bruijn|euler|both");

  CLI::App* autf = app.add_subcommand("autf", "Automorphism group of an endofunction");
  autf->add_option("file", file, "endofunction file")->required();
  autf->add_flag("--brute", brute, "also list the group elements (n <= 8)");

  CLI::App* canon = app.add_subcommand("canon", "Print the canonical code of a file");
  canon->add_option("file", file, "solution or endofunction file")->required();

  CLI::App* conj = app.add_subcommand("conjugate", "Find a conjugating permutation");
  conj->add_option("first", file, "endofunction file")->required();
  conj->add_option("second", file2, "endofunction file")->required();

  CLI::App* dot = app.add_subcommand("export-dot", "Write the functional digraph as Graphviz");
  dot->add_option("file", file, "endofunction file")->required();
  dot->add_option("-o,--out", outdir, "output path")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "Cross-check enumeration and formulas");
  selftest->add_option("--n", n, "largest set size")->default_val(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(file);
    if (classify_cmd->parsed()) return cmd_classify(file);
    if (enumerate_cmd->parsed()) return cmd_enumerate(n, method_enum, flag, outdir);
    if (count->parsed()) return cmd_count(series, upto, method_count);
    if (autf->parsed()) return cmd_autf(file, brute);
    if (canon->parsed()) return cmd_canon(file);
    if (conj->parsed()) return cmd_conjugate(file, file2);
    if (dot->parsed()) return cmd_export_dot(file, outdir);
    if (selftest->parsed()) return cmd_selftest(n);
  } catch (const IoError& e) {
    std::cerr << "error [" << e.tag() << "]";
    if (e.kind == IoError::Kind::parse) std::cerr << " line " << e.line << " col " << e.col;
    std::cerr << ": " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error [usage]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error [io]: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
