#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "odfkit/normalform.hpp"
#include "odfkit/syntax.hpp"

namespace odfkit {

namespace {

constexpr const char* kHole = "_hole";

// A quantified subformula with at most one free variable, used as a unary
// (or nullary) atom of a diagram vocabulary.
struct RelativePattern {
  FormulaPtr abstracted;  // free variable renamed to _hole (if any)
  bool closed = false;
};

struct Vocabulary {
  std::vector<std::string> preds;          // unary predicates occurring
  std::vector<Rel> rels;                   // binary relations occurring
  std::vector<RelativePattern> patterns;   // quantified one-variable atoms
  bool usesEq = false;

  int patternIndex(const FormulaPtr& f) const {
    std::set<std::string> fv = freeVars(f);
    FormulaPtr abs = fv.empty() ? f : renameFree(f, *fv.begin(), kHole);
    for (size_t i = 0; i < patterns.size(); ++i)
      if (patterns[i].closed == fv.empty() &&
          alphaEqual(patterns[i].abstracted, abs))
        return (int)i;
    return -1;
  }
};

bool isBlockNode(const FormulaPtr& f) {
  return f->kind == FKind::Exists || f->kind == FKind::Forall ||
         f->kind == FKind::CountGe || f->kind == FKind::CountLe;
}

void collectVocab(const FormulaPtr& f, Vocabulary& v) {
  switch (f->kind) {
    case FKind::UnaryAtom:
      if (std::find(v.preds.begin(), v.preds.end(), f->pred) == v.preds.end())
        v.preds.push_back(f->pred);
      return;
    case FKind::NavAtom:
      if (std::find(v.rels.begin(), v.rels.end(), f->rel) == v.rels.end())
        v.rels.push_back(f->rel);
      return;
    case FKind::Eq:
      v.usesEq = true;
      return;
    case FKind::True:
    case FKind::False:
      return;
    default:
      if (isBlockNode(f)) {
        if (v.patternIndex(f) < 0) {
          std::set<std::string> fv = freeVars(f);
          if (fv.size() > 1)
            throw std::runtime_error("matrix block with two free variables");
          RelativePattern p;
          p.closed = fv.empty();
          p.abstracted = p.closed ? f : renameFree(f, *fv.begin(), kHole);
          v.patterns.push_back(std::move(p));
        }
        return;
      }
      for (auto& k : f->kids) collectVocab(k, v);
  }
}

// Literal view of a conjunct list.
struct Lit {
  FormulaPtr atom;
  bool positive;
};

bool splitLiterals(const FormulaPtr& f, std::vector<Lit>& out) {
  for (auto& c : conjuncts(f)) {
    if (c->kind == FKind::True) continue;
    if (c->kind == FKind::Not) {
      FormulaPtr a = c->kids[0];
      if (a->kind == FKind::UnaryAtom || a->kind == FKind::NavAtom ||
          a->kind == FKind::Eq || isBlockNode(a)) {
        out.push_back({a, false});
        continue;
      }
      return false;
    }
    if (c->kind == FKind::UnaryAtom || c->kind == FKind::NavAtom ||
        c->kind == FKind::Eq || isBlockNode(c)) {
      out.push_back({c, true});
      continue;
    }
    return false;
  }
  return true;
}

std::vector<std::string> orderedVars(const FormulaPtr& matrix,
                                     const std::vector<std::string>& blockVars) {
  std::vector<std::string> vars = blockVars;
  for (auto& v : freeVars(matrix))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      vars.insert(vars.begin(), v);  // outer free variable first
  return vars;
}

}  // namespace

bool isDiagramDisjunction(const FormulaPtr& matrix,
                          const std::vector<std::string>& blockVars) {
  Vocabulary vocab;
  try {
    collectVocab(matrix, vocab);
  } catch (const std::exception&) {
    return false;
  }
  for (auto& d : disjuncts(matrix)) {
    std::vector<Lit> lits;
    if (!splitLiterals(d, lits)) return false;
    // Variables used in this disjunct.
    std::set<std::string> used;
    for (auto& l : lits)
      for (auto& v : freeVars(l.atom)) used.insert(v);
    // Distinctness for every pair, exactly one polarity per vocabulary atom.
    auto countLit = [&](const std::function<bool(const Lit&)>& pred) {
      int pos = 0, neg = 0;
      for (auto& l : lits)
        if (pred(l)) (l.positive ? pos : neg)++;
      return std::pair<int, int>(pos, neg);
    };
    std::vector<std::string> uv(used.begin(), used.end());
    for (size_t i = 0; i < uv.size(); ++i)
      for (size_t j = i + 1; j < uv.size(); ++j) {
        auto [pos, neg] = countLit([&](const Lit& l) {
          return l.atom->kind == FKind::Eq &&
                 ((l.atom->v1 == uv[i] && l.atom->v2 == uv[j]) ||
                  (l.atom->v1 == uv[j] && l.atom->v2 == uv[i]));
        });
        if (pos != 0 || neg == 0) return false;
      }
    for (auto& p : vocab.preds)
      for (auto& v : uv) {
        auto [pos, neg] = countLit([&](const Lit& l) {
          return l.atom->kind == FKind::UnaryAtom && l.atom->pred == p &&
                 l.atom->v1 == v;
        });
        if (pos + neg == 0 || (pos > 0 && neg > 0)) return false;
      }
    for (auto& r : vocab.rels)
      for (auto& v : uv)
        for (auto& w : uv) {
          auto [pos, neg] = countLit([&](const Lit& l) {
            return l.atom->kind == FKind::NavAtom && l.atom->rel == r &&
                   l.atom->v1 == v && l.atom->v2 == w;
          });
          if (pos + neg == 0 || (pos > 0 && neg > 0)) return false;
        }
    for (size_t pi = 0; pi < vocab.patterns.size(); ++pi) {
      if (vocab.patterns[pi].closed) {
        auto [pos, neg] = countLit([&](const Lit& l) {
          return isBlockNode(l.atom) && vocab.patternIndex(l.atom) == (int)pi;
        });
        if (pos + neg == 0 || (pos > 0 && neg > 0)) return false;
        continue;
      }
      for (auto& v : uv) {
        auto [pos, neg] = countLit([&](const Lit& l) {
          return isBlockNode(l.atom) && vocab.patternIndex(l.atom) == (int)pi &&
                 freeVars(l.atom).count(v);
        });
        if (pos + neg == 0 || (pos > 0 && neg > 0)) return false;
      }
    }
  }
  (void)blockVars;
  return true;
}

namespace {

// Set partitions of indices 0..n-1 as class-id vectors (restricted growth).
void partitions(size_t n, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(n, 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int maxc) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= maxc; ++c) {
      cur[i] = c;
      rec(i + 1, std::max(maxc, c + 1));
    }
  };
  if (n) rec(0, 0);
}

struct DiagramBuilder {
  const Signature& sig;
  std::vector<Rel> forceRels;  // relations added to every induced vocabulary
  unsigned varCounter = 0;

  // Propositional atoms of a diagram over representatives.
  struct AtomTable {
    std::vector<FormulaPtr> atoms;  // instantiated atoms
    size_t size() const { return atoms.size(); }
  };

  FormulaPtr instantiate(const RelativePattern& p, const std::string& v) {
    return p.closed ? p.abstracted : renameFree(p.abstracted, kHole, v);
  }

  // Evaluate matrix under an atom assignment; vars mapped to representatives.
  bool evalMatrix(const FormulaPtr& f, const Vocabulary& vocab,
                  const std::map<std::string, std::string>& rep,
                  const std::map<std::string, bool>& val) {
    switch (f->kind) {
      case FKind::True:
        return true;
      case FKind::False:
        return false;
      case FKind::UnaryAtom: {
        auto key = "u:" + f->pred + ":" + rep.at(f->v1);
        return val.at(key);
      }
      case FKind::NavAtom: {
        auto key = std::string("r:") + relName(f->rel) + ":" + rep.at(f->v1) +
                   ":" + rep.at(f->v2);
        return val.at(key);
      }
      case FKind::Eq:
        return rep.at(f->v1) == rep.at(f->v2);
      case FKind::Not:
        return !evalMatrix(f->kids[0], vocab, rep, val);
      case FKind::And:
        return evalMatrix(f->kids[0], vocab, rep, val) &&
               evalMatrix(f->kids[1], vocab, rep, val);
      case FKind::Or:
        return evalMatrix(f->kids[0], vocab, rep, val) ||
               evalMatrix(f->kids[1], vocab, rep, val);
      default: {
        int pi = vocab.patternIndex(f);
        if (pi < 0) throw std::runtime_error("unexpected matrix node");
        std::set<std::string> fv = freeVars(f);
        std::string key = vocab.patterns[pi].closed
                              ? "p" + std::to_string(pi) + ":"
                              : "p" + std::to_string(pi) + ":" + rep.at(*fv.begin());
        return val.at(key);
      }
    }
  }

  // Rewrite the matrix of one block into a disjunction of diagrams.
  FormulaPtr diagramMatrix(const FormulaPtr& matrix,
                           const std::vector<std::string>& blockVars) {
    Vocabulary vocab;
    collectVocab(matrix, vocab);
    for (Rel r : forceRels)
      if (std::find(vocab.rels.begin(), vocab.rels.end(), r) ==
          vocab.rels.end())
        vocab.rels.push_back(r);
    std::vector<std::string> vars = orderedVars(matrix, blockVars);
    std::set<std::string> mfree = freeVars(matrix);
    std::string outer;
    for (auto& v : vars)
      if (mfree.count(v) &&
          std::find(blockVars.begin(), blockVars.end(), v) == blockVars.end())
        outer = v;

    std::vector<std::vector<int>> parts;
    partitions(vars.size(), parts);

    std::vector<FormulaPtr> diagrams;
    for (auto& part : parts) {
      // Representative of each class: the outer variable if present, else the
      // first variable of the class.
      int nclasses = *std::max_element(part.begin(), part.end()) + 1;
      std::vector<std::string> reps(nclasses);
      for (int c = 0; c < nclasses; ++c) {
        for (size_t i = 0; i < vars.size(); ++i)
          if (part[i] == c) {
            if (reps[c].empty() || vars[i] == outer) reps[c] = vars[i];
          }
      }
      std::map<std::string, std::string> rep;
      for (size_t i = 0; i < vars.size(); ++i) rep[vars[i]] = reps[part[i]];

      // Atom keys in deterministic order.
      std::vector<std::pair<std::string, FormulaPtr>> keys;
      for (auto& p : vocab.preds)
        for (auto& r : reps)
          keys.push_back({"u:" + p + ":" + r, fAtom(p, r)});
      for (auto& rl : vocab.rels)
        for (auto& a : reps)
          for (auto& b : reps)
            keys.push_back({std::string("r:") + relName(rl) + ":" + a + ":" + b,
                            fNav(rl, a, b)});
      for (size_t pi = 0; pi < vocab.patterns.size(); ++pi) {
        if (vocab.patterns[pi].closed) {
          keys.push_back({"p" + std::to_string(pi) + ":",
                          vocab.patterns[pi].abstracted});
        } else {
          for (auto& r : reps)
            keys.push_back({"p" + std::to_string(pi) + ":" + r,
                            instantiate(vocab.patterns[pi], r)});
        }
      }
      if (keys.size() > 24)
        throw std::runtime_error(
            "diagram vocabulary too large; reduce formula width");

      for (size_t mask = 0; mask < (size_t(1) << keys.size()); ++mask) {
        std::map<std::string, bool> val;
        for (size_t i = 0; i < keys.size(); ++i)
          val[keys[i].first] = (mask >> i) & 1;
        if (!evalMatrix(matrix, vocab, rep, val)) continue;
        std::vector<FormulaPtr> lits;
        for (size_t i = 0; i < reps.size(); ++i)
          for (size_t j = i + 1; j < reps.size(); ++j)
            lits.push_back(fNot(fEq(reps[i], reps[j])));
        for (size_t i = 0; i < keys.size(); ++i)
          lits.push_back(((mask >> i) & 1) ? keys[i].second
                                           : fNot(keys[i].second));
        diagrams.push_back(fConj(lits));
      }
    }
    if (diagrams.empty()) return fAnd(matrix, fNot(matrix));
    return fDisj(diagrams);
  }

  FormulaPtr transform(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::Exists:
      case FKind::Forall: {
        FormulaPtr body = transform(f->kids[0]);
        FormulaPtr matrix = diagramMatrix(body, f->vars);
        return f->kind == FKind::Exists ? fExists(f->vars, matrix)
                                        : fForall(f->vars, matrix);
      }
      case FKind::Not:
        return fNot(transform(f->kids[0]));
      case FKind::And:
        return fAnd(transform(f->kids[0]), transform(f->kids[1]));
      case FKind::Or:
        return fOr(transform(f->kids[0]), transform(f->kids[1]));
      default:
        if (f->kind == FKind::CountGe || f->kind == FKind::CountLe)
          throw std::runtime_error("counting quantifiers are outside the fragment");
        return f;
    }
  }
};

}  // namespace

FormulaPtr toDiagramNormalForm(const FormulaPtr& f, const Signature& sig) {
  DiagramBuilder b{sig};
  return b.transform(f);
}

FormulaPtr toDiagramNormalForm(const FormulaPtr& f, const Signature& sig,
                               const std::vector<Rel>& forceRels) {
  DiagramBuilder b{sig, forceRels};
  return b.transform(f);
}

namespace {

struct Rooter {
  const Signature& sig;
  unsigned counter = 0;

  // exists-parent pattern; its negation marks the root. The body is itself a
  // diagram disjunction so the output stays in diagram normal form throughout.
  FormulaPtr parentAtom(const std::string& v) {
    std::string p = "_rt" + std::to_string(++counter);
    DiagramBuilder b{sig};
    return fExists({p}, b.diagramMatrix(fNav(Rel::succv, p, v), {p}));
  }

  // Add root placement to a single diagram (literal conjunction) over vars.
  // z is the fresh variable available for the added-root case.
  std::vector<FormulaPtr> rootDiagram(const FormulaPtr& diagram,
                                      const std::string& z) {
    std::vector<Lit> lits;
    if (!splitLiterals(diagram, lits))
      throw std::runtime_error("input is not in diagram normal form");
    std::set<std::string> used;
    for (auto& l : lits)
      for (auto& v : freeVars(l.atom)) used.insert(v);
    std::vector<std::string> uv(used.begin(), used.end());

    auto hasPositive = [&](Rel r, const std::string& a, const std::string& b) {
      for (auto& l : lits)
        if (l.positive && l.atom->kind == FKind::NavAtom && l.atom->rel == r &&
            l.atom->v1 == a && l.atom->v2 == b)
          return true;
      return false;
    };

    std::vector<FormulaPtr> out;
    // Case: an existing variable is the root. Possible only if it sits above
    // every other variable of the diagram.
    for (auto& v : uv) {
      bool aboveAll = true;
      for (auto& u : uv)
        if (u != v && !hasPositive(Rel::lessv, v, u)) aboveAll = false;
      if (!aboveAll) continue;
      std::vector<FormulaPtr> ls{diagram, fNot(parentAtom(v))};
      for (auto& u : uv)
        if (u != v) ls.push_back(parentAtom(u));
      out.push_back(fConj(ls));
    }
    // Case: a fresh root variable above everything. Literals covering the
    // vocabulary at the root: descendant edges down to every variable are
    // forced, sibling orders and upward edges are impossible for a root, and
    // the root's unary atoms, child edges, and relative atoms are disjoined
    // over all completions.
    Vocabulary vocab;
    collectVocab(diagram, vocab);
    auto hasRel = [&](Rel r) {
      return std::find(vocab.rels.begin(), vocab.rels.end(), r) !=
             vocab.rels.end();
    };
    std::vector<FormulaPtr> choice;
    for (auto& p : vocab.preds) choice.push_back(fAtom(p, z));
    if (hasRel(Rel::succv))
      for (auto& u : uv) choice.push_back(fNav(Rel::succv, z, u));
    for (auto& p : vocab.patterns)
      if (!p.closed) choice.push_back(renameFree(p.abstracted, kHole, z));
    if (choice.size() > 16)
      throw std::runtime_error("rooted form blow-up; reduce formula width");
    std::vector<FormulaPtr> forced{fNot(parentAtom(z))};
    for (auto& u : uv) {
      forced.push_back(parentAtom(u));
      forced.push_back(fNot(fEq(z, u)));
    }
    for (Rel r : vocab.rels) {
      forced.push_back(fNot(fNav(r, z, z)));
      for (auto& u : uv) {
        if (r == Rel::lessv) {
          forced.push_back(fNav(r, z, u));
          forced.push_back(fNot(fNav(r, u, z)));
        } else if (r == Rel::succv) {
          forced.push_back(fNot(fNav(r, u, z)));
        } else if (r == Rel::succh || r == Rel::lessh) {
          forced.push_back(fNot(fNav(r, z, u)));
          forced.push_back(fNot(fNav(r, u, z)));
        } else {
          throw std::runtime_error("rooted form is tree-only");
        }
      }
    }
    for (size_t mask = 0; mask < (size_t(1) << choice.size()); ++mask) {
      std::vector<FormulaPtr> ls{diagram};
      ls.insert(ls.end(), forced.begin(), forced.end());
      for (size_t i = 0; i < choice.size(); ++i)
        ls.push_back(((mask >> i) & 1) ? choice[i] : fNot(choice[i]));
      out.push_back(fConj(ls));
    }
    return out;
  }

  FormulaPtr transform(const FormulaPtr& f) {
    switch (f->kind) {
      case FKind::Exists: {
        FormulaPtr body = transform(f->kids[0]);
        std::string z = "_z" + std::to_string(++counter);
        std::vector<FormulaPtr> newDisjuncts;
        for (auto& d : disjuncts(body))
          for (auto& r : rootDiagram(d, z)) newDisjuncts.push_back(r);
        std::vector<std::string> vars = f->vars;
        vars.push_back(z);
        return fExists(vars, fDisj(newDisjuncts));
      }
      case FKind::Not:
        return fNot(transform(f->kids[0]));
      case FKind::And:
        return fAnd(transform(f->kids[0]), transform(f->kids[1]));
      case FKind::Or:
        return fOr(transform(f->kids[0]), transform(f->kids[1]));
      default:
        return f;
    }
  }
};

}  // namespace

FormulaPtr toRootedDiagramForm(const FormulaPtr& f, const Signature& sig) {
  if (!sig.hasNav(Rel::lessv))
    throw std::runtime_error("rooted form requires the descendant relation");
  // Eliminate universal blocks, then rebuild diagrams and add roots.
  std::function<FormulaPtr(const FormulaPtr&)> deforall =
      [&](const FormulaPtr& g) -> FormulaPtr {
    switch (g->kind) {
      case FKind::Forall:
        return fNot(fExists(
            g->vars, deforall(pushNegationsInward(fNot(g->kids[0])))));
      case FKind::Not:
        return fNot(deforall(g->kids[0]));
      case FKind::And:
        return fAnd(deforall(g->kids[0]), deforall(g->kids[1]));
      case FKind::Or:
        return fOr(deforall(g->kids[0]), deforall(g->kids[1]));
      case FKind::Exists:
        return fExists(g->vars, deforall(g->kids[0]));
      default:
        return g;
    }
  };
  // Rebuild diagrams with the descendant relation forced into every
  // vocabulary so root placement can be read off each diagram.
  DiagramBuilder b{sig, {Rel::lessv}};
  FormulaPtr g = b.transform(deforall(f));
  Rooter r{sig};
  return r.transform(g);
}

}  // namespace odfkit
