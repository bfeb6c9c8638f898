#include "fse/funcgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace fse {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

FuncDigraph rho_decomposition(const EndoMap& f) {
  int n = f.n;
  FuncDigraph g;
  g.f = f;
  UnionFind uf(n);
  for (int x = 0; x < n; ++x) uf.join(x, f.f[x]);
  g.comp_id.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    int root = uf.find(x);
    if (g.comp_id[root] == -1) {
      g.comp_id[root] = g.ncomp++;
      g.comp_vertices.emplace_back();
    }
    g.comp_id[x] = g.comp_id[root];
    g.comp_vertices[g.comp_id[x]].push_back(x);
  }
  // peel vertices of in-degree zero; what survives lies on a cycle
  std::vector<int> indeg(n, 0);
  for (int x = 0; x < n; ++x) ++indeg[f.f[x]];
  std::queue<int> q;
  for (int x = 0; x < n; ++x)
    if (indeg[x] == 0) q.push(x);
  g.on_cycle.assign(n, 1);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    g.on_cycle[x] = 0;
    if (--indeg[f.f[x]] == 0) q.push(f.f[x]);
  }
  g.cycles.assign(g.ncomp, {});
  for (int c = 0; c < g.ncomp; ++c) {
    int start = -1;
    for (int v : g.comp_vertices[c])
      if (g.on_cycle[v]) {
        start = v;
        break;
      }
    int cur = start;
    do {
      g.cycles[c].push_back(cur);
      cur = f.f[cur];
    } while (cur != start);
  }
  g.tree_children.assign(n, {});
  for (int x = 0; x < n; ++x)
    if (!g.on_cycle[x]) g.tree_children[f.f[x]].push_back(x);
  return g;
}

std::vector<std::vector<int>> components(const EndoMap& f) {
  return rho_decomposition(f).comp_vertices;
}

bool is_connected(const EndoMap& f) {
  int n = f.n;
  bool by_components = rho_decomposition(f).ncomp == 1;
  if (n <= 64) {
    // forward orbits of x and y meet iff x and y share a component
    std::vector<unsigned long long> orbit(n, 0);
    for (int x = 0; x < n; ++x) {
      int cur = x;
      while (!(orbit[x] >> cur & 1)) {
        orbit[x] |= 1ULL << cur;
        cur = f.f[cur];
      }
    }
    bool by_orbits = true;
    for (int x = 0; x < n && by_orbits; ++x)
      for (int y = x + 1; y < n; ++y)
        if (!(orbit[x] & orbit[y])) {
          by_orbits = false;
          break;
        }
    if (by_orbits != by_components) throw std::logic_error("is_connected: orbit path disagrees");
  }
  if (n <= 12 && n >= 2) {
    bool split_exists = false;
    for (unsigned mask = 0; mask + 1 < (1u << (n - 1)) && !split_exists; ++mask) {
      // Y = {0} + subset of {1..n-1}, never the whole set
      auto in_y = [&](int v) { return v == 0 || (v > 0 && (mask >> (v - 1) & 1)); };
      bool ok = true;
      for (int v = 0; v < n && ok; ++v) ok = in_y(v) == in_y(f.f[v]);
      split_exists = ok;
    }
    if (split_exists == by_components)
      throw std::logic_error("is_connected: bipartition path disagrees");
  }
  return by_components;
}

std::string ahu_code(const FuncDigraph& g, int v) {
  std::vector<std::string> kids;
  kids.reserve(g.tree_children[v].size());
  for (int u : g.tree_children[v]) kids.push_back(ahu_code(g, u));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (auto& k : kids) out += k;
  out += ")";
  return out;
}

namespace {

struct CompCanon {
  int comp = 0;
  int rot = 0;                      // canonical starting position in cycles[comp]
  std::vector<std::string> codes;   // tree codes from that rotation
  std::string code;                 // joined component code
};

std::vector<CompCanon> component_canons(const FuncDigraph& g) {
  std::vector<CompCanon> out;
  for (int c = 0; c < g.ncomp; ++c) {
    const auto& cyc = g.cycles[c];
    int len = (int)cyc.size();
    std::vector<std::string> codes(len);
    for (int p = 0; p < len; ++p) codes[p] = ahu_code(g, cyc[p]);
    int best = 0;
    for (int r = 1; r < len; ++r) {
      for (int p = 0; p < len; ++p) {
        const auto& a = codes[(r + p) % len];
        const auto& b = codes[(best + p) % len];
        if (a != b) {
          if (a < b) best = r;
          break;
        }
      }
    }
    CompCanon cc;
    cc.comp = c;
    cc.rot = best;
    cc.codes.resize(len);
    for (int p = 0; p < len; ++p) cc.codes[p] = codes[(best + p) % len];
    std::string joined = "[";
    for (int p = 0; p < len; ++p) {
      if (p) joined += "|";
      joined += cc.codes[p];
    }
    joined += "]";
    cc.code = std::move(joined);
    out.push_back(std::move(cc));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CompCanon& a, const CompCanon& b) { return a.code < b.code; });
  return out;
}

void label_tree(const FuncDigraph& g, int v, int& next, std::vector<int>& label) {
  label[v] = next++;
  std::vector<std::pair<std::string, int>> kids;
  for (int u : g.tree_children[v]) kids.emplace_back(ahu_code(g, u), u);
  std::sort(kids.begin(), kids.end());
  for (auto& [code, u] : kids) label_tree(g, u, next, label);
}

}  // namespace

Perm canonical_perm(const EndoMap& f) {
  FuncDigraph g = rho_decomposition(f);
  std::vector<int> label(f.n, -1);
  int next = 0;
  for (const CompCanon& cc : component_canons(g)) {
    const auto& cyc = g.cycles[cc.comp];
    int len = (int)cyc.size();
    for (int p = 0; p < len; ++p) label_tree(g, cyc[(cc.rot + p) % len], next, label);
  }
  return Perm(std::move(label));
}

std::string canonical_code(const EndoMap& f) {
  EndoMap canon = conjugate(canonical_perm(f), f);
  std::string out;
  for (int x = 0; x < canon.n; ++x) {
    if (x) out += ',';
    out += std::to_string(canon.f[x]);
  }
  return out;
}

std::optional<Perm> are_conjugate(const EndoMap& f, const EndoMap& g) {
  if (f.n != g.n) return std::nullopt;
  Perm pf = canonical_perm(f), pg = canonical_perm(g);
  if (conjugate(pf, f) != conjugate(pg, g)) return std::nullopt;
  Perm s = compose(pg.inverse(), pf);
  if (conjugate(s, f) != g) throw std::logic_error("are_conjugate: witness check failed");
  return s;
}

mpz_class aut_order_tree(const FuncDigraph& g, int v) {
  std::map<std::string, std::pair<int, mpz_class>> classes;  // code -> (mult, child order)
  for (int u : g.tree_children[v]) {
    auto [it, fresh] = classes.emplace(ahu_code(g, u), std::make_pair(0, mpz_class(1)));
    if (fresh) it->second.second = aut_order_tree(g, u);
    it->second.first += 1;
  }
  mpz_class order = 1;
  for (auto& [code, mc] : classes) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), mc.first);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), mc.second.get_mpz_t(), mc.first);
    order *= fact * pw;
  }
  return order;
}

WreathDescriptor wreath_descriptor(const EndoMap& f) {
  FuncDigraph g = rho_decomposition(f);
  WreathDescriptor wd;
  wd.total = 1;
  std::map<std::string, WreathComponent> classes;
  for (const CompCanon& cc : component_canons(g)) {
    auto it = classes.find(cc.code);
    if (it != classes.end()) {
      it->second.multiplicity += 1;
      continue;
    }
    const auto& cyc = g.cycles[cc.comp];
    int len = (int)cyc.size();
    WreathComponent wc;
    wc.multiplicity = 1;
    wc.cycle_len = len;
    wc.tree_codes = cc.codes;
    int period = len;
    for (int t = 1; t < len; ++t) {
      if (len % t != 0) continue;
      bool ok = true;
      for (int p = 0; p < len && ok; ++p) ok = cc.codes[p] == cc.codes[(p + t) % len];
      if (ok) {
        period = t;
        break;
      }
    }
    wc.tree_period = period;
    wc.rotations = len / period;
    wc.component_order = wc.rotations;
    wc.tree_orders.resize(len);
    for (int p = 0; p < len; ++p) {
      wc.tree_orders[p] = aut_order_tree(g, cyc[(cc.rot + p) % len]);
      wc.component_order *= wc.tree_orders[p];
    }
    classes.emplace(cc.code, std::move(wc));
  }
  for (auto& [code, wc] : classes) {
    mpz_class pw, fact;
    mpz_pow_ui(pw.get_mpz_t(), wc.component_order.get_mpz_t(), wc.multiplicity);
    mpz_fac_ui(fact.get_mpz_t(), wc.multiplicity);
    wd.total *= pw * fact;
    wd.classes.push_back(wc);
  }
  return wd;
}

mpz_class aut_order(const EndoMap& f) { return wreath_descriptor(f).total; }

std::vector<Perm> aut_brute(const EndoMap& f) {
  if (f.n > 8) throw std::invalid_argument("aut_brute: supported for n <= 8");
  std::vector<Perm> out;
  for_each_perm(f.n, [&](const std::vector<int>& p) {
    for (int x = 0; x < f.n; ++x)
      if (p[f.f[x]] != f.f[p[x]]) return;
    out.emplace_back(p);
  });
  return out;
}

namespace {

std::vector<std::vector<int>> joint_centralizer(const EndoMap& h, const EndoMap& f) {
  std::vector<std::vector<int>> out;
  for_each_perm(h.n, [&](const std::vector<int>& p) {
    for (int x = 0; x < h.n; ++x)
      if (p[h.f[x]] != h.f[p[x]] || p[f.f[x]] != f.f[p[x]]) return;
    out.push_back(p);
  });
  return out;
}

std::vector<std::vector<int>> centralizer_of(const EndoMap& g) {
  std::vector<std::vector<int>> out;
  for (const Perm& p : aut_brute(g)) out.push_back(p.fwd);
  return out;
}

}  // namespace

GlueResult glue_fh(const EndoMap& h, const EndoMap& f) {
  if (h.n != f.n) throw std::invalid_argument("glue_fh: size mismatch");
  if (!is_idempotent(h)) throw std::invalid_argument("glue_fh: h not idempotent");
  if (compose(f, h) != f || compose(h, f) != f)
    throw std::invalid_argument("glue_fh: need f.h = h.f = f");
  int n = h.n;
  std::vector<char> in_im(n, 0);
  for (int x = 0; x < n; ++x) in_im[h.f[x]] = 1;
  std::vector<int> ga(n), gb(n);
  for (int x = 0; x < n; ++x) {
    ga[x] = in_im[x] ? f.f[x] : h.f[x];
    gb[x] = in_im[x] ? h.f[x] : f.f[x];
  }
  GlueResult res;
  res.g = EndoMap(n, ga);
  res.f_branch_on_image = true;
  if (n > 8) return res;
  auto target = joint_centralizer(h, f);
  if (centralizer_of(res.g) == target) {
    res.validation = GlueResult::Validation::confirmed;
    return res;
  }
  EndoMap alt(n, gb);
  if (centralizer_of(alt) == target) {
    res.g = alt;
    res.f_branch_on_image = false;
    res.validation = GlueResult::Validation::confirmed;
    return res;
  }
  res.validation = GlueResult::Validation::failed;
  return res;
}

std::string export_dot(const EndoMap& f) {
  std::ostringstream os;
  os << "digraph f {\n";
  for (int x = 0; x < f.n; ++x) os << "  " << x << ";\n";
  for (int x = 0; x < f.n; ++x)
    if (f.f[x] != x) os << "  " << x << " -> " << f.f[x] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace fse
