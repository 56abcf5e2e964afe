#include <algorithm>
#include <stdexcept>

#include "odfkit/normalform.hpp"
#include "odfkit/semantics.hpp"
#include "odfkit/syntax.hpp"

namespace odfkit {

std::optional<NFShape> parseNormalFormShape(const FormulaPtr& f) {
  NFShape shape;
  for (auto& c : conjuncts(f)) {
    if (c->kind != FKind::Forall) return std::nullopt;
    FormulaPtr body = c->kids[0];
    NFConjunct nc;
    if (quantifierFree(body)) {
      nc.forallExists = false;
      nc.vars = c->vars;
      nc.matrix = body;
    } else if (c->vars.size() == 1 && body->kind == FKind::Exists &&
               quantifierFree(body->kids[0])) {
      nc.forallExists = true;
      nc.vars = c->vars;
      nc.vars.insert(nc.vars.end(), body->vars.begin(), body->vars.end());
      nc.matrix = body->kids[0];
    } else {
      return std::nullopt;
    }
    shape.widthValue = std::max(shape.widthValue, (unsigned)nc.vars.size());
    shape.conjuncts.push_back(std::move(nc));
  }
  return shape;
}

namespace {

struct Normalizer {
  const Signature& sig;
  std::vector<FormulaPtr> axioms;
  std::map<std::string, FormulaPtr> fresh;
  unsigned counter = 0;
  unsigned varCounter = 0;
  // Placeholder anchor for blocks with no free variable and no scope.
  const std::string wild = "_w";

  std::string freshPred() { return "NF" + std::to_string(++counter); }

  // Returns the block body with all quantifier blocks replaced by fresh
  // unary atoms. scope: innermost enclosing bound variable, if any.
  FormulaPtr replace(const FormulaPtr& f, const std::string& scope) {
    switch (f->kind) {
      case FKind::True:
      case FKind::False:
      case FKind::UnaryAtom:
      case FKind::NavAtom:
      case FKind::Eq:
        return f;
      case FKind::Not:
        return fNot(replace(f->kids[0], scope));
      case FKind::And:
        return fAnd(replace(f->kids[0], scope), replace(f->kids[1], scope));
      case FKind::Or:
        return fOr(replace(f->kids[0], scope), replace(f->kids[1], scope));
      case FKind::Exists:
      case FKind::Forall: {
        // Inner blocks first; the innermost bound variable of this block is
        // the scope for any closed blocks inside.
        FormulaPtr body = replace(f->kids[0], f->vars.back());
        bool ex = f->kind == FKind::Exists;
        std::set<std::string> fv = freeVars(f);
        if (fv.size() > 1)
          throw std::runtime_error("formula is not one-dimensional");
        std::string anchor = fv.empty() ? scope : *fv.begin();
        std::string name = freshPred();
        fresh[name] = ex ? fExists(f->vars, body) : fForall(f->vars, body);
        FormulaPtr p = fAtom(name, anchor);
        FormulaPtr notBody = pushNegationsInward(fNot(body));
        std::string a = "_v" + std::to_string(++varCounter);
        FormulaPtr pa = fAtom(name, a);
        FormulaPtr bodyA = renameFree(body, anchor, a);
        FormulaPtr notBodyA = renameFree(notBody, anchor, a);
        if (ex) {
          // pred -> exists body ; body -> pred
          axioms.push_back(
              fForall({a}, fExists(f->vars, fOr(fNot(pa), bodyA))));
          std::vector<std::string> all{a};
          all.insert(all.end(), f->vars.begin(), f->vars.end());
          axioms.push_back(fForall(all, fOr(notBodyA, pa)));
        } else {
          // pred -> forall body ; forall body -> pred
          std::vector<std::string> all{a};
          all.insert(all.end(), f->vars.begin(), f->vars.end());
          axioms.push_back(fForall(all, fOr(fNot(pa), bodyA)));
          axioms.push_back(
              fForall({a}, fExists(f->vars, fOr(pa, notBodyA))));
        }
        return p;
      }
      case FKind::CountGe:
      case FKind::CountLe:
        throw std::runtime_error("counting quantifiers are outside the fragment");
    }
    return f;
  }
};

}  // namespace

NormalFormResult toNormalForm(const FormulaPtr& input, const Signature& sig) {
  if (!freeVars(input).empty())
    throw std::runtime_error("normal form requires a closed formula");
  if (!classify(input, sig).count(FragmentTag::ODF))
    throw std::runtime_error("normal form requires a one-dimensional formula");

  FormulaPtr f = pushNegationsInward(input);
  Normalizer nz{sig};
  FormulaPtr core = nz.replace(f, nz.wild);

  std::string w = "nfv0";
  FormulaPtr top = fForall({w}, renameFree(core, nz.wild, w));
  std::vector<FormulaPtr> all{top};
  all.insert(all.end(), nz.axioms.begin(), nz.axioms.end());

  NormalFormResult res;
  res.formula = fConj(all);
  res.freshPredicates = nz.fresh;
  std::vector<std::string> extra;
  for (auto& [name, def] : nz.fresh) extra.push_back(name);
  res.extendedSig = sig.withUnary(extra);
  auto shape = parseNormalFormShape(res.formula);
  if (!shape)
    throw std::runtime_error("internal error: output is not in normal shape");
  res.shape = *shape;
  res.widthValue = shape->widthValue;
  return res;
}

Structure expandCanonical(const Structure& base, const NormalFormResult& nf) {
  // Definitions may reference earlier fresh predicates; evaluate in creation
  // order (numeric suffix of the generated names).
  std::vector<std::pair<std::string, FormulaPtr>> defs(
      nf.freshPredicates.begin(), nf.freshPredicates.end());
  std::sort(defs.begin(), defs.end(), [](auto& a, auto& b) {
    return std::stoul(a.first.substr(2)) < std::stoul(b.first.substr(2));
  });
  Structure s = base;
  for (auto& [name, def] : defs) {
    std::set<std::string> fv = freeVars(def);
    if (fv.empty()) {
      if (evalFO(s, def))
        for (auto& ls : s.labels) ls.insert(name);
      continue;
    }
    std::string anchor = *fv.begin();
    for (size_t e = 0; e < s.size(); ++e)
      if (evalFO(s, def, {{anchor, (int)e}})) s.labels[e].insert(name);
  }
  return s;
}

}  // namespace odfkit
