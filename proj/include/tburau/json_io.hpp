#pragma once

#include <json.hpp>

#include "tburau/atgroup.hpp"
#include "tburau/gv.hpp"
#include "tburau/neretin.hpp"

namespace tburau {

using nlohmann::json;

// ---- Laurent polynomials: {"exponent": coefficient, ...} -------------------

inline json to_json(const LaurentPoly& p) {
  json j = json::object();
  for (const auto& [e, c] : p.terms()) {
    if (c.fits_int64()) j[std::to_string(e)] = c.to_int64();
    else j[std::to_string(e)] = c.to_string();  // beyond 64 bits: decimal string
  }
  return j;
}

inline LaurentPoly laurent_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("laurent polynomial must be an object");
  LaurentPoly p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    long long e = std::stoll(it.key());
    if (it.value().is_number_integer())
      p.add_term(e, BigInt(it.value().get<long long>()));
    else if (it.value().is_string())
      p.add_term(e, BigInt::from_string(it.value().get<std::string>()));
    else
      throw ParseError("laurent coefficient must be an integer");
  }
  return p;
}

inline json to_json(const LaurentMatrix& m) {
  json entries = json::array();
  for (const auto& [rc, v] : m.entries())
    entries.push_back(json::array({m.rows()[rc.first], m.cols()[rc.second], to_json(v)}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

// ---- dyadics and PL maps ----------------------------------------------------

inline json to_json(const Dyadic& d) {
  json j;
  j["num"] = d.num().fits_int64() ? json(d.num().to_int64()) : json(d.num().to_string());
  j["level"] = d.level();
  return j;
}

inline Dyadic dyadic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("level"))
    throw ParseError("dyadic must be {num, level}");
  BigInt num = j["num"].is_string() ? BigInt::from_string(j["num"].get<std::string>())
                                    : BigInt(j["num"].get<long long>());
  return Dyadic(num, j["level"].get<int>());
}

inline json to_json(const PLMap& m) {
  json j = json::array();
  for (size_t i = 0; i < m.pieces().size(); ++i) {
    const auto& p = m.pieces()[i];
    Dyadic shift = p.shift;
    j.push_back(json{{"left", to_json(p.left)},
                     {"right", to_json(m.piece_right(i))},
                     {"slope_log2", p.slope_log2},
                     {"shift_num", shift.num().fits_int64() ? json(shift.num().to_int64())
                                                            : json(shift.num().to_string())},
                     {"shift_level", shift.level()}});
  }
  return j;
}

// ---- Thompson symbols -------------------------------------------------------

inline json to_json(const Symbol& s) {
  return json{{"t1", s.t1.bits()}, {"t0", s.t0.bits()}, {"rot", s.rot}};
}
inline json to_json(const TElement& g) { return to_json(g.symbol()); }

inline TElement telement_from_json(const json& j) {
  if (!j.is_object() || !j.contains("t1") || !j.contains("t0") || !j.contains("rot"))
    throw ParseError("element must be {t1, t0, rot}");
  return TElement(Symbol(BinTree(j["t1"].get<std::string>()),
                         BinTree(j["t0"].get<std::string>()), j["rot"].get<int>()));
}

// ---- punctures, words, braid letters ---------------------------------------

inline json to_json(const PunctureId& p) {
  return json{{"v", p.v.is_v0 ? "v0" : p.v.path}, {"d", p.depth}};
}

inline PunctureId puncture_from_json(const json& j) {
  if (!j.is_object() || !j.contains("v") || !j.contains("d"))
    throw ParseError("puncture must be {v, d}");
  std::string v = j["v"].get<std::string>();
  int d = j["d"].get<int>();
  if (d < 0) throw ParseError("puncture depth must be nonnegative");
  if (v == "v0") return puncture(VertexAddress::v0(), d);
  for (char c : v)
    if (c != 'L' && c != 'R') throw ParseError("vertex path must be over {L,R}");
  return puncture(VertexAddress::of(v), d);
}

inline json to_json(const FWord& w) {
  json j = json::array();
  for (const auto& [p, e] : w.letters()) j.push_back(json::array({to_json(p), e}));
  return j;
}

inline FWord fword_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("word must be an array of [puncture, exp]");
  FWord w;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2) throw ParseError("word letter must be [puncture, exp]");
    int e = l[1].get<int>();
    if (e != 1 && e != -1) throw ParseError("word letter exponent must be +-1");
    w.push(puncture_from_json(l[0]), e);
  }
  return w;
}

// braid letters {edge: [p, q], exp} and section letters {section: element}
inline const char* atom_name(GenAtom a) {
  switch (a) {
    case GenAtom::Q: return "Q";
    case GenAtom::Qi: return "Qi";
    case GenAtom::T3: return "T3";
    case GenAtom::T3i: return "T3i";
  }
  return "Q";
}

inline json to_json(const ATLetter& l) {
  if (l.kind == ATLetter::Kind::twist)
    return json{{"edge", json::array({to_json(l.edge.near), to_json(l.edge.far)})},
                {"exp", l.exp}};
  return json{{"atom", atom_name(l.atom)}};
}

inline json to_json(const ATElement& a) {
  json j = json::array();
  for (const auto& l : a.word()) j.push_back(to_json(l));
  return j;
}

inline ATElement atelement_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("braided word must be an array of letters");
  ATElement a = ATElement::identity();
  for (const auto& l : j) {
    if (l.contains("edge")) {
      const json& e = l["edge"];
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be [puncture, puncture]");
      PunctureId p = puncture_from_json(e[0]), q = puncture_from_json(e[1]);
      if (!adjacent(p, q)) throw ParseError("edge endpoints are not adjacent");
      int exp = l.value("exp", 1);
      if (exp != 1 && exp != -1) throw ParseError("edge exponent must be +-1");
      a = at_multiply(a, ATElement::halftwist(make_edge(p, q), exp));
    } else if (l.contains("section")) {
      a = at_multiply(a, ATElement::section(telement_from_json(l["section"])));
    } else if (l.contains("atom")) {
      std::string nm = l["atom"].get<std::string>();
      GenAtom g;
      if (nm == "Q") g = GenAtom::Q;
      else if (nm == "Qi") g = GenAtom::Qi;
      else if (nm == "T3") g = GenAtom::T3;
      else if (nm == "T3i") g = GenAtom::T3i;
      else throw ParseError("unknown atom letter: " + nm);
      a = at_multiply(a, ATElement::from_word({ATLetter::gen(g)}));
    } else {
      throw ParseError("letter must be an edge twist, a section, or an atom");
    }
  }
  return a;
}

// ---- structured operators ---------------------------------------------------

inline json to_json(const StructuredOperator& op) {
  json background = json::array();
  for (const auto& c : op.components()) {
    json corr = json::array();
    for (const auto& [p, v] : c.correction)
      corr.push_back(json::array({to_json(p), to_json(v)}));
    background.push_back(
        json{{"kind", c.src.kind == BranchKind::full_subtree ? "subtree" : "fibre"},
             {"src", to_json(c.src.root)},
             {"tgt", to_json(c.tgt.root)},
             {"weight_sign", c.weight.sign},
             {"weight_exp", c.weight.exponent},
             {"correction", corr}});
  }
  json cols = json::array();
  for (const auto& [q, col] : op.exceptional_cols()) {
    json entries = json::array();
    for (const auto& [p, v] : col) entries.push_back(json::array({to_json(p), to_json(v)}));
    cols.push_back(json{{"col", to_json(q)}, {"entries", entries}});
  }
  json core = json::array();
  for (const auto& p : op.core()) core.push_back(to_json(p));
  return json{{"background", background}, {"core", core}, {"exceptional_cols", cols}};
}

// dense rendering of the operator on the punctures within a geodesic window
inline json window_render(const StructuredOperator& op, int radius) {
  auto ps = punctures_within(radius);
  json rows = json::array();
  for (const auto& p : ps) rows.push_back(p.to_string());
  json entries = json::array();
  for (size_t c = 0; c < ps.size(); ++c) {
    SparseVec col = op.column(ps[c]);
    for (const auto& [r, v] : col) {
      if (r.geodesic_length() > radius) continue;
      entries.push_back(json::array({r.to_string(), ps[c].to_string(), to_json(v)}));
    }
  }
  return json{{"punctures", rows}, {"entries", entries}};
}

// ---- spheromorphisms --------------------------------------------------------

inline json to_json(const Spheromorphism& s) {
  json t0 = json::array(), t1 = json::array(), beta = json::array(), comps = json::array();
  for (const auto& v : s.source_tree()) t0.push_back(v);
  for (const auto& v : s.target_tree()) t1.push_back(v);
  for (const auto& [r, w] : s.beta()) beta.push_back(json::array({r, w}));
  for (const auto& [r, iso] : s.comps()) {
    json swaps = json::array();
    for (const auto& a : iso.swaps) swaps.push_back(a);
    comps.push_back(json::array({r, swaps}));
  }
  return json{{"t0", t0}, {"t1", t1}, {"beta", beta}, {"comps", comps}};
}

inline Spheromorphism sphero_from_json(const json& j) {
  if (!j.is_object() || !j.contains("t0") || !j.contains("t1") || !j.contains("beta"))
    throw ParseError("spheromorphism must be {t0, t1, beta, comps}");
  Subtree t0, t1;
  for (const auto& v : j["t0"]) t0.insert(v.get<std::string>());
  for (const auto& v : j["t1"]) t1.insert(v.get<std::string>());
  std::map<TAddr, TAddr> beta;
  for (const auto& p : j["beta"]) beta[p[0].get<std::string>()] = p[1].get<std::string>();
  std::map<TAddr, CompIso> comps;
  if (j.contains("comps"))
    for (const auto& c : j["comps"]) {
      CompIso iso;
      for (const auto& a : c[1]) iso.swaps.insert(a.get<std::string>());
      comps[c[0].get<std::string>()] = iso;
    }
  return Spheromorphism(std::move(t0), std::move(t1), std::move(beta), std::move(comps));
}

// DOT export of the decorated tree truncated to a geodesic radius
inline std::string tree_dot(int radius) {
  std::string out = "graph decorated_tree {\n  node [shape=point];\n";
  for (const auto& p : punctures_within(radius)) {
    out += "  \"" + p.to_string() + "\";\n";
    for (const auto& q : planar_order_around(p))
      if (q.geodesic_length() <= radius && p < q)
        out += "  \"" + p.to_string() + "\" -- \"" + q.to_string() + "\";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace tburau
