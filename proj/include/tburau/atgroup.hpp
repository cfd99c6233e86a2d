#pragma once

#include <vector>

#include "tburau/section.hpp"

namespace tburau {

// Letter of the braided Thompson group: a half-twist along a tree edge, or a
// lift atom coming from a section letter.
struct ATLetter {
  enum class Kind { twist, atom };
  Kind kind = Kind::atom;
  TreeEdge edge;
  int exp = 1;
  GenAtom atom = GenAtom::Q;

  static ATLetter twist(const TreeEdge& e, int exponent) {
    ATLetter l;
    l.kind = Kind::twist;
    l.edge = e;
    l.exp = exponent;
    return l;
  }
  static ATLetter gen(GenAtom a) {
    ATLetter l;
    l.kind = Kind::atom;
    l.atom = a;
    return l;
  }

  ATLetter inverse() const {
    ATLetter l = *this;
    if (kind == Kind::twist) l.exp = -l.exp;
    else l.atom = atom_inverse(l.atom);
    return l;
  }
  const AutFInd& action() const {
    if (kind == Kind::twist) {
      // half-twist automorphisms are cheap; cache the common ones
      static std::map<std::pair<TreeEdge, int>, AutFInd> cache;
      static std::mutex mu;
      std::lock_guard<std::mutex> lock(mu);
      auto key = std::make_pair(edge, exp);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, halftwist_aut(edge, exp)).first;
      return it->second;
    }
    return atom_autf(atom);
  }
  TElement projection() const {
    return kind == Kind::twist ? TElement::identity() : atom_element(atom);
  }
};

// Element of the braided Thompson group: a word over half-twists and lift
// atoms, with its projection to T and its induced free-group automorphism
// cached eagerly. Equality is germ-level: equal projections and equal
// automorphisms.
class ATElement {
public:
  ATElement() : proj_(TElement::identity()), act_(AutFInd::identity()) {}

  static ATElement identity() { return ATElement(); }

  static ATElement halftwist(const TreeEdge& e, int exponent) {
    ATElement a;
    int step = exponent > 0 ? 1 : -1;
    for (int i = 0; i != exponent; i += step) a.word_.push_back(ATLetter::twist(e, step));
    a.refold();
    return a;
  }

  static ATElement section(const TElement& g) {
    ATElement a;
    for (GenAtom atom : decompose(g)) a.word_.push_back(ATLetter::gen(atom));
    a.proj_ = g;
    a.act_ = section_aut(g);
    return a;
  }

  static ATElement from_word(std::vector<ATLetter> word) {
    ATElement a;
    a.word_ = std::move(word);
    a.refold();
    return a;
  }

  const std::vector<ATLetter>& word() const { return word_; }
  const TElement& projection() const { return proj_; }
  const AutFInd& action() const { return act_; }

  ATElement inverse() const {
    ATElement a;
    for (auto it = word_.rbegin(); it != word_.rend(); ++it)
      a.word_.push_back(it->inverse());
    a.refold();
    return a;
  }

  friend ATElement at_multiply(const ATElement& x, const ATElement& y) {
    ATElement a;
    a.word_ = x.word_;
    a.word_.insert(a.word_.end(), y.word_.begin(), y.word_.end());
    a.proj_ = compose(x.proj_, y.proj_);
    a.act_ = simplify(compose(x.act_, y.act_));
    return a;
  }

  friend bool operator==(const ATElement& x, const ATElement& y) {
    return x.proj_ == y.proj_ && equal(x.act_, y.act_);
  }

private:
  void refold() {
    proj_ = TElement::identity();
    act_ = AutFInd::identity();
    for (const auto& l : word_) {
      proj_ = compose(proj_, l.projection());
      act_ = simplify(compose(act_, l.action()));
    }
  }

  std::vector<ATLetter> word_;
  TElement proj_;
  AutFInd act_;
};

inline StructuredOperator rho(const ATElement& a) { return magnus_matrix(a.action()); }

// Integer e with det rho(s(g) s(h) s(gh)^-1) = (-t)^e. The defect lies over
// the identity of T, so its operator is identity plus a finite-image
// correction whose determinant must be a signed monomial; anything else
// signals broken lift data.
inline long long extension_cocycle(const TElement& g, const TElement& h) {
  ATElement defect = at_multiply(at_multiply(ATElement::section(g), ATElement::section(h)),
                                 ATElement::section(compose(g, h)).inverse());
  if (!defect.projection().is_identity())
    throw InvariantViolation("section defect does not project to the identity");
  StructuredOperator op = rho(defect);
  if (!op.trivial_background())
    throw InvariantViolation("section defect operator has nontrivial background");
  LaurentPoly det = op.determinant();
  auto mono = det.as_monomial();
  if (!mono) throw InvariantViolation("section defect determinant is not a monomial: " +
                                      det.to_string());
  long long e = mono->exponent;
  int want_sign = (e % 2 == 0) ? 1 : -1;
  if (mono->sign != want_sign)
    throw InvariantViolation("section defect determinant is not a power of -t: " +
                             det.to_string());
  return e;
}

}  // namespace tburau
