#pragma once

#include <map>
#include <string>

#include "odfkit/formula.hpp"
#include "odfkit/structures.hpp"

namespace odfkit {

using Assignment = std::map<std::string, int>;  // variable -> element index

// Naive Tarskian evaluation with quantifier expansion; oracle-grade.
// Counting quantifiers count witnesses, stopping at threshold+1.
bool evalFO(const Structure& s, const FormulaPtr& f, const Assignment& asg = {});

// Modal evaluation at an element. Vertical directions require a tree;
// horizontal directions work on words (next/previous/future/past) and trees.
bool evalModal(const Structure& s, const ModalPtr& m, int at);

// True iff prefix.period^omega satisfies the closed normal-form sentence f:
// every omega-profile realized in the word is compatible with f. Computed at
// width max(k, width(f), 1); throws if f is not in normal-form shape.
bool evalNormalFormOnLasso(const LassoWord& w, const FormulaPtr& f, unsigned k,
                           const Signature& sig);

}  // namespace odfkit
