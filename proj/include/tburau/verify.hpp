#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "tburau/json_io.hpp"

namespace tburau {

struct PropertyResult {
  std::string suite;
  std::string property;
  bool pass = true;
  long long cases = 0;
  json witness;  // replayable failing inputs, null when passing

  json to_json_line() const {
    json j{{"suite", suite}, {"property", property}, {"pass", pass}, {"cases", cases}};
    if (!witness.is_null()) j["witness"] = witness;
    return j;
  }
};

namespace verify_detail {

// independent dense determinant oracle: Leibniz sum over permutations
inline LaurentPoly leibniz_det(const std::vector<std::vector<LaurentPoly>>& m) {
  size_t n = m.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  LaurentPoly acc;
  do {
    int inv = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    LaurentPoly term(1);
    for (size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    acc += (inv % 2 == 0) ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

inline LaurentPoly random_poly(std::mt19937_64& rng, int max_terms = 2, int max_exp = 2,
                               int max_coef = 4) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<long long> expd(-max_exp, max_exp), coefd(-max_coef, max_coef);
  LaurentPoly p;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term(expd(rng), BigInt(coefd(rng)));
  return p;
}

inline bool share_one_endpoint(const TreeEdge& e, const TreeEdge& f) {
  int shared = 0;
  if (e.near == f.near || e.near == f.far) ++shared;
  if (e.far == f.near || e.far == f.far) ++shared;
  return shared == 1;
}
inline bool edges_disjoint(const TreeEdge& e, const TreeEdge& f) {
  return !(e.near == f.near || e.near == f.far || e.far == f.near || e.far == f.far);
}

}  // namespace verify_detail

// ---- suites -----------------------------------------------------------------

inline std::vector<PropertyResult> suite_thompson_laws(uint64_t seed, long long cases) {
  std::mt19937_64 rng(seed ^ 0x7011u);
  PropertyResult assoc{"thompson-laws", "associativity"}, ident{"thompson-laws", "identity"},
      inv{"thompson-laws", "inverses"}, homo{"thompson-laws", "plmap-homomorphism"},
      uniq{"thompson-laws", "reduced-equality-is-map-equality"};
  for (long long i = 0; i < cases; ++i) {
    TElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
    json w{{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}};
    ++assoc.cases, ++ident.cases, ++inv.cases, ++homo.cases, ++uniq.cases;
    if (!(compose(compose(a, b), c) == compose(a, compose(b, c))) && assoc.pass) {
      assoc.pass = false;
      assoc.witness = w;
    }
    if (!(compose(a, TElement::identity()) == a && compose(TElement::identity(), a) == a) &&
        ident.pass) {
      ident.pass = false;
      ident.witness = w;
    }
    if (!compose(a, inverse(a)).is_identity() && inv.pass) {
      inv.pass = false;
      inv.witness = w;
    }
    if (!(to_plmap(compose(a, b)) == compose(to_plmap(a), to_plmap(b))) && homo.pass) {
      homo.pass = false;
      homo.witness = w;
    }
    bool same_map = to_plmap(a) == to_plmap(b);
    if (same_map != (a == b) && uniq.pass) {
      uniq.pass = false;
      uniq.witness = w;
    }
  }
  return {assoc, ident, inv, homo, uniq};
}

inline std::vector<PropertyResult> suite_gv_cocycle(uint64_t seed, long long cases) {
  std::mt19937_64 rng(seed ^ 0x6700u);
  PropertyResult defect{"gv-cocycle", "cocycle-defect"}, jumps{"gv-cocycle", "jump-sum-zero"},
      chain{"gv-cocycle", "chain-rule"};
  for (long long i = 0; i < cases; ++i) {
    TElement g = random_element(rng), h = random_element(rng), k = random_element(rng);
    json w{{"g", to_json(g)}, {"h", to_json(h)}, {"k", to_json(k)}};
    ++defect.cases;
    if (gv_defect(g, h, k) != 0 && defect.pass) {
      defect.pass = false;
      defect.witness = w;
    }
    ++jumps.cases;
    long long total = 0;
    for (const auto& [v, j] : second_derivative_support(g)) total += j;
    if (total != 0 && jumps.pass) {
      jumps.pass = false;
      jumps.witness = w;
    }
    ++chain.cases;
    auto sg = second_derivative_support(g), sh = second_derivative_support(h);
    auto sgh = second_derivative_support(compose(g, h));
    auto get = [](const std::map<VertexAddress, int>& m, const VertexAddress& key) {
      auto it = m.find(key);
      return it == m.end() ? 0 : it->second;
    };
    std::set<VertexAddress> vs;
    for (const auto& [v, j] : sh) vs.insert(v);
    for (const auto& [v, j] : sgh) vs.insert(v);
    for (const auto& [v, j] : sg) vs.insert(vertex_image(inverse(h), v));
    for (const auto& v : vs)
      if (get(sgh, v) != get(sg, vertex_image(h, v)) + get(sh, v) && chain.pass) {
        chain.pass = false;
        chain.witness = w;
      }
  }
  return {defect, jumps, chain};
}

inline std::vector<PropertyResult> suite_determinant_oracle(uint64_t seed, long long cases) {
  std::mt19937_64 rng(seed ^ 0xde70u);
  PropertyResult oracle{"determinant-oracle", "principal-minor-sum-vs-dense"},
      mult{"determinant-oracle", "multiplicativity"};
  std::uniform_int_distribution<int> szd(0, 6), dens(0, 2);
  for (long long iter = 0; iter < cases; ++iter) {
    int n = szd(rng);
    std::map<std::pair<int, int>, LaurentPoly> e;
    std::vector<int> core;
    for (int i = 0; i < n; ++i) core.push_back(i);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dens(rng) != 0) e[{i, j}] = verify_detail::random_poly(rng);
    Correction<int> f(core, e);
    std::vector<std::vector<LaurentPoly>> dense(n, std::vector<LaurentPoly>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto it = e.find({i, j});
        dense[i][j] = (it == e.end() ? LaurentPoly() : it->second) +
                      (i == j ? LaurentPoly(1) : LaurentPoly());
      }
    ++oracle.cases;
    if (!(f.determinant() == verify_detail::leibniz_det(dense)) && oracle.pass) {
      oracle.pass = false;
      json we = json::array();
      for (const auto& [rc, v] : e)
        we.push_back(json::array({rc.first, rc.second, to_json(v)}));
      oracle.witness = json{{"core", n}, {"entries", we}};
    }
  }
  long long pairs = std::max<long long>(1, (cases * 2) / 5);
  for (long long iter = 0; iter < pairs; ++iter) {
    auto rand_corr = [&rng](int lo, int hi) {
      std::vector<int> core;
      for (int i = lo; i < hi; ++i) core.push_back(i);
      std::map<std::pair<int, int>, LaurentPoly> e;
      for (int i = lo; i < hi; ++i)
        for (int j = lo - 1; j < hi + 1; ++j)
          if ((i + j) % 2 == 0) e[{i, j}] = verify_detail::random_poly(rng);
      return Correction<int>(core, e);
    };
    Correction<int> f = rand_corr(0, 3), g = rand_corr(1, 4);
    ++mult.cases;
    if (!(compose(f, g).determinant() == f.determinant() * g.determinant()) && mult.pass) {
      mult.pass = false;
      mult.witness = json{{"note", "multiplicativity failure"}, {"iter", iter}};
    }
  }
  return {oracle, mult};
}

inline std::vector<PropertyResult> suite_burau_relations(uint64_t seed, long long cases,
                                                         int gate_radius = 5) {
  (void)seed;
  std::vector<PropertyResult> out;

  // generator matrices match the defining formulas entrywise for n <= 8
  PropertyResult fix{"burau-relations", "generator-matrix-entries"};
  LaurentPoly one(1), t = LaurentPoly::t();
  for (int n = 2; n <= 8; ++n)
    for (int i = 1; i < n; ++i) {
      ++fix.cases;
      LaurentMatrix m = burau_unreduced({{i, 1}}, n);
      bool ok = true;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          LaurentPoly want;
          if (r == c && r != i - 1 && r != i) want = one;
          if (r == i - 1 && c == i - 1) want = one - t;
          if (r == i && c == i - 1) want = t;
          if (r == i - 1 && c == i) want = one;
          ok = ok && m.at(static_cast<size_t>(r), static_cast<size_t>(c)) == want;
        }
      if (!ok && fix.pass) {
        fix.pass = false;
        fix.witness = json{{"n", n}, {"i", i}};
      }
    }
  out.push_back(fix);

  // braid and far-commutation relations for all generator pairs in B_8
  PropertyResult rel{"burau-relations", "b8-relations"};
  for (int i = 1; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      ++rel.cases;
      bool ok;
      if (j == i + 1)
        ok = burau_unreduced({{i, 1}, {j, 1}, {i, 1}}, 8) ==
             burau_unreduced({{j, 1}, {i, 1}, {j, 1}}, 8);
      else
        ok = burau_unreduced({{i, 1}, {j, 1}}, 8) == burau_unreduced({{j, 1}, {i, 1}}, 8);
      if (!ok && rel.pass) {
        rel.pass = false;
        rel.witness = json{{"i", i}, {"j", j}};
      }
    }
  out.push_back(rel);

  // det of the unreduced generator is -t (2x2 principal block in B_2 and the
  // correction determinant of the corresponding half-twist operator)
  PropertyResult det{"burau-relations", "generator-determinant"};
  det.cases = 2;
  LaurentMatrix m2 = burau_unreduced({{1, 1}}, 2);
  bool d1 = (m2.at(0, 0) * m2.at(1, 1) - m2.at(0, 1) * m2.at(1, 0)) == -t;
  TreeEdge e0 = make_edge(puncture(VertexAddress::root()), puncture(VertexAddress::of("R")));
  bool d2 = magnus_matrix(halftwist_aut(e0, 1)).determinant() == -t;
  det.pass = d1 && d2;
  out.push_back(det);

  // crossing gate: all adjacency and commutation relations within the radius
  PropertyResult gate{"burau-relations", "crossing-rule-gate"};
  auto edges = edges_within(gate_radius);
  std::map<std::string, AutFInd> twist;
  auto tw = [&twist](const TreeEdge& e) -> const AutFInd& {
    auto it = twist.find(e.to_string());
    if (it == twist.end()) it = twist.emplace(e.to_string(), halftwist_aut(e, 1)).first;
    return it->second;
  };
  for (size_t i = 0; i < edges.size() && gate.pass; ++i)
    for (size_t j = i + 1; j < edges.size(); ++j) {
      const TreeEdge &e = edges[i], &f = edges[j];
      bool ok = true;
      if (verify_detail::share_one_endpoint(e, f)) {
        ++gate.cases;
        ok = equal(compose(tw(e), compose(tw(f), tw(e))),
                   compose(tw(f), compose(tw(e), tw(f))));
      } else if (verify_detail::edges_disjoint(e, f)) {
        ++gate.cases;
        ok = equal(compose(tw(e), tw(f)), compose(tw(f), tw(e)));
      }
      if (!ok) {
        gate.pass = false;
        gate.witness = json{{"e", e.to_string()}, {"f", f.to_string()}};
        break;
      }
    }
  out.push_back(gate);

  // fibre restriction reproduces the unreduced Burau matrices for n <= 6
  PropertyResult fib{"burau-relations", "fibre-restriction"};
  std::mt19937_64 rng(seed ^ 0xf1b3u);
  long long reps = std::max<long long>(4, cases / 10);
  for (int n = 2; n <= 6; ++n) {
    VertexAddress v = VertexAddress::of("R");
    int base = 1;
    auto strand = [&](int i) { return puncture(v, base + n - i); };
    for (long long iter = 0; iter < reps; ++iter) {
      std::uniform_int_distribution<int> gi(1, n - 1), ei(0, 1);
      std::vector<std::pair<int, int>> word;
      for (int k = 0; k < 4; ++k) word.push_back({gi(rng), ei(rng) ? 1 : -1});
      AutFInd a = AutFInd::identity();
      for (const auto& [i, e] : word)
        a = simplify(compose(a, halftwist_aut(make_edge(strand(i), strand(i + 1)), e)));
      StructuredOperator op = magnus_matrix(a);
      LaurentMatrix m = burau_unreduced(word, n);
      ++fib.cases;
      bool ok = true;
      for (int col = 1; col <= n && ok; ++col) {
        SparseVec oc = op.column(strand(col));
        for (int row = 1; row <= n; ++row) {
          auto it = oc.find(strand(row));
          LaurentPoly got = it == oc.end() ? LaurentPoly() : it->second;
          ok = ok && got == m.at(static_cast<size_t>(row - 1), static_cast<size_t>(col - 1));
        }
      }
      if (!ok && fib.pass) {
        fib.pass = false;
        json ww = json::array();
        for (const auto& [i, e] : word) ww.push_back(json::array({i, e}));
        fib.witness = json{{"n", n}, {"word", ww}};
      }
    }
  }
  out.push_back(fib);
  return out;
}

inline std::vector<PropertyResult> suite_rho_homomorphism(uint64_t seed, long long cases) {
  std::mt19937_64 rng(seed ^ 0x4400u);
  PropertyResult homo{"rho-homomorphism", "rho-multiplicative"},
      kernel{"rho-homomorphism", "kernel-characterisation"},
      shape{"rho-homomorphism", "block-shape"},
      magh{"rho-homomorphism", "magnus-multiplicative"},
      idx{"rho-homomorphism", "index-preservation"};
  auto edges = edges_within(5);
  std::uniform_int_distribution<int> ed(0, static_cast<int>(edges.size()) - 1);
  std::uniform_int_distribution<int> si(0, 1), kind(0, 2), wl(1, 4);

  auto random_letter = [&]() -> ATElement {
    if (kind(rng) == 0) return ATElement::section(random_element(rng, 5));
    return ATElement::halftwist(edges[ed(rng)], si(rng) ? 1 : -1);
  };
  auto random_word = [&](int len) {
    ATElement a = ATElement::identity();
    for (int i = 0; i < len; ++i) a = at_multiply(a, random_letter());
    return a;
  };

  for (long long iter = 0; iter < cases; ++iter) {
    ATElement a = random_word(wl(rng)), b = random_word(wl(rng));
    ATElement ab = at_multiply(a, b);
    json w{{"a", to_json(a)}, {"b", to_json(b)}};
    ++homo.cases;
    StructuredOperator oa = rho(a), ob = rho(b), oab = rho(ab);
    if (!equal(oab, multiply(oa, ob)) && homo.pass) {
      homo.pass = false;
      homo.witness = w;
    }
    ++kernel.cases;
    bool proj_id = ab.projection().is_identity();
    if ((proj_id != oab.trivial_background()) && kernel.pass) {
      kernel.pass = false;
      kernel.witness = w;
    }
    ++shape.cases;
    bool shape_ok = true;
    for (const auto& c : oab.components()) {
      shape_ok = shape_ok && (c.weight.sign == 1 || c.weight.sign == -1);
      for (const auto& [p, v] : c.correction) shape_ok = shape_ok && !v.is_zero();
    }
    shape_ok = shape_ok && oab.core().size() < 100000;
    if (!shape_ok && shape.pass) {
      shape.pass = false;
      shape.witness = w;
    }
    // magnus multiplicativity and index preservation on the automorphisms
    ++magh.cases;
    const AutFInd &fa = a.action(), &fb = b.action();
    if (!equal(magnus_matrix(compose(fa, fb)), multiply(magnus_matrix(fa), magnus_matrix(fb))) &&
        magh.pass) {
      magh.pass = false;
      magh.witness = w;
    }
    ++idx.cases;
    FWord probe;
    auto ps = punctures_within(4);
    std::uniform_int_distribution<size_t> pi(0, ps.size() - 1);
    for (int k = 0; k < 5; ++k) probe.push(ps[pi(rng)], si(rng) ? 1 : -1);
    if (fa.apply(probe).index() != probe.index() && idx.pass) {
      idx.pass = false;
      idx.witness = json{{"a", to_json(a)}, {"word", to_json(probe)}};
    }
  }
  return {homo, kernel, shape, magh, idx};
}

inline std::vector<PropertyResult> suite_extension_cocycle(uint64_t seed, long long cases) {
  (void)seed;
  (void)cases;
  std::vector<PropertyResult> out;

  PropertyResult triv{"extension-cocycle", "identity-arguments"};
  triv.cases = 2;
  triv.pass = extension_cocycle(TElement::rotation(3), TElement::identity()) == 0 &&
              extension_cocycle(TElement::identity(), TElement::rotation(3)) == 0;
  out.push_back(triv);

  // torsion residues: Sum_i ext(r_n, r_n^i) and Sum_i gv(r_n, r_n^i)
  std::map<int, long long> ext_sum, gv_sum;
  for (int n = 2; n <= 4; ++n) {
    TElement r = TElement::rotation(n);
    long long se = 0, sg = 0;
    TElement p = TElement::identity();
    for (int i = 0; i < n; ++i) {
      se += extension_cocycle(r, p);
      sg += gv(r, p);
      p = compose(r, p);
    }
    ext_sum[n] = se;
    gv_sum[n] = sg;
  }

  // class form of [gv] = 2 alpha restricted to the torsion subgroups:
  // Sum gv == eps * 2 * Sum ext (mod n) for one global sign
  PropertyResult cls{"extension-cocycle", "class-form-gv-equals-2ext"};
  cls.cases = 3;
  bool plus = true, minus = true;
  for (int n = 2; n <= 4; ++n) {
    auto md = [n](long long x) { return ((x % n) + n) % n; };
    plus = plus && md(gv_sum[n] - 2 * ext_sum[n]) == 0;
    minus = minus && md(gv_sum[n] + 2 * ext_sum[n]) == 0;
  }
  cls.pass = plus || minus;
  cls.witness = json{{"ext_sums", {{"2", ext_sum[2]}, {"3", ext_sum[3]}, {"4", ext_sum[4]}}},
                     {"gv_sums", {{"2", gv_sum[2]}, {"3", gv_sum[3]}, {"4", gv_sum[4]}}}};
  out.push_back(cls);

  // literal form: halve the gv sums and compare directly (reported openly;
  // unattainable as stated: the n=3 sum is odd and the n=4 comparison is
  // blind to the coboundary term, see the project notes)
  PropertyResult lit{"extension-cocycle", "literal-form-ext-equals-half-gv"};
  lit.cases = 3;
  bool lplus = true, lminus = true;
  json detail = json::object();
  for (int n = 2; n <= 4; ++n) {
    auto md = [n](long long x) { return ((x % n) + n) % n; };
    long long half = 0;
    bool defined = gv_sum[n] % 2 == 0;  // the asserted evenness
    if (defined) half = gv_sum[n] / 2;
    detail[std::to_string(n)] =
        json{{"ext", md(ext_sum[n])},
             {"gv", gv_sum[n]},
             {"half_gv", defined ? json(md(half)) : json("undefined: odd gv sum")}};
    if (!defined) {
      lplus = lminus = false;
      continue;
    }
    lplus = lplus && md(ext_sum[n] - half) == 0;
    lminus = lminus && md(ext_sum[n] + half) == 0;
  }
  lit.pass = lplus || lminus;
  lit.witness = detail;
  out.push_back(lit);

  // telescoping consistency: the residue equals the degree of det rho(s(r)^n)
  PropertyResult tel{"extension-cocycle", "residue-telescoping"};
  tel.cases = 3;
  tel.pass = true;
  for (int n = 2; n <= 4; ++n) {
    TElement r = TElement::rotation(n);
    ATElement s = ATElement::section(r), acc = ATElement::identity();
    for (int i = 0; i < n; ++i) acc = at_multiply(acc, s);
    StructuredOperator op = rho(acc);
    auto mono = op.determinant().as_monomial();
    long long ab = mono ? mono->exponent : -999999;
    if (((ext_sum[n] - ab) % n) != 0) {
      tel.pass = false;
      tel.witness = json{{"n", n}, {"sum", ext_sum[n]}, {"power_degree", ab}};
    }
  }
  out.push_back(tel);
  return out;
}

inline std::vector<PropertyResult> suite_neretin_cocycle(uint64_t seed, long long cases) {
  std::mt19937_64 rng(seed ^ 0x2e7eu);
  PropertyResult defect{"neretin-cocycle", "signature-defect"},
      pert{"neretin-cocycle", "even-perturbation-invariance"},
      pdet{"neretin-cocycle", "permutation-determinant-is-sign"};
  for (long long iter = 0; iter < cases; ++iter) {
    Spheromorphism g = random_spheromorphism(rng, 3, 3), h = random_spheromorphism(rng, 3, 3),
                   k = random_spheromorphism(rng, 3, 3);
    ++defect.cases;
    int d = signature_cocycle(h, k) ^ signature_cocycle(sphero_compose(g, h), k) ^
            signature_cocycle(g, sphero_compose(h, k)) ^ signature_cocycle(g, h);
    if (d != 0 && defect.pass) {
      defect.pass = false;
      defect.witness = json{{"g", to_json(g)}, {"h", to_json(h)}, {"k", to_json(k)}};
    }
  }
  long long perts = std::max<long long>(1, (cases * 2) / 5);
  for (long long iter = 0; iter < perts; ++iter) {
    Spheromorphism g = random_spheromorphism(rng, 2, 2), h = random_spheromorphism(rng, 2, 2);
    auto pg = random_finite_permutation(rng, 4, true);
    auto ph = random_finite_permutation(rng, 4, true);
    auto pgh = random_finite_permutation(rng, 4, true);
    ++pert.cases;
    if (signature_cocycle_perturbed(g, h, pg, ph, pgh) != signature_cocycle(g, h) && pert.pass) {
      pert.pass = false;
      pert.witness = json{{"g", to_json(g)}, {"h", to_json(h)}};
    }
  }
  for (long long iter = 0; iter < cases; ++iter) {
    auto p = random_finite_permutation(rng, 5);
    ++pdet.cases;
    long long det = perm_operator_determinant(p);
    if (det != (permutation_parity(p) == 0 ? 1 : -1) && pdet.pass) {
      pdet.pass = false;
      json jp = json::array();
      for (const auto& [k, v] : p) jp.push_back(json::array({k, v}));
      pdet.witness = jp;
    }
  }
  return {defect, pert, pdet};
}

inline std::vector<PropertyResult> run_suite(const std::string& name, uint64_t seed,
                                             long long cases) {
  if (name == "thompson-laws") return suite_thompson_laws(seed, cases);
  if (name == "gv-cocycle") return suite_gv_cocycle(seed, cases);
  if (name == "burau-relations") return suite_burau_relations(seed, cases);
  if (name == "rho-homomorphism") return suite_rho_homomorphism(seed, cases);
  if (name == "extension-cocycle") return suite_extension_cocycle(seed, cases);
  if (name == "neretin-cocycle") return suite_neretin_cocycle(seed, cases);
  if (name == "determinant-oracle") return suite_determinant_oracle(seed, cases);
  if (name == "all") {
    std::vector<PropertyResult> out;
    for (const char* s : {"thompson-laws", "gv-cocycle", "burau-relations", "rho-homomorphism",
                          "extension-cocycle", "neretin-cocycle", "determinant-oracle"}) {
      auto r = run_suite(s, seed, cases);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  throw ParseError("unknown suite: " + name);
}

}  // namespace tburau
