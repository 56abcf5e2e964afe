#include <stdexcept>

#include "odfkit/contraction.hpp"

namespace odfkit {

std::pair<WordModel, ContractionTrace> contractWord(const WordModel& w,
                                                    unsigned k,
                                                    const Signature& sig) {
  WordModel cur = w;
  ContractionTrace trace;
  trace.beforeSize = w.size();
  trace.sourceIndex.resize(w.size());
  for (size_t i = 0; i < w.size(); ++i) trace.sourceIndex[i] = i;
  while (true) {
    std::vector<WordProfile> prof;
    prof.reserve(cur.size());
    for (size_t a = 0; a < cur.size(); ++a)
      prof.push_back(wordProfile(cur, k, a, sig));
    // leftmost pair (c,d), c < d, with equal profiles; smallest d wins so the
    // removed range is minimal for the chosen c
    size_t c = cur.size(), d = cur.size();
    for (size_t j = 1; j < cur.size() && c == cur.size(); ++j)
      for (size_t i = 0; i < j; ++i)
        if (prof[i] == prof[j]) {
          c = i;
          d = j;
          break;
        }
    if (c == cur.size()) break;
    ContractionStep step;
    step.kind = "word";
    step.witnessA = c;
    step.witnessB = d;
    step.detail = "removed positions " + std::to_string(c + 1) + ".." +
                  std::to_string(d);
    trace.steps.push_back(step);
    cur.positions.erase(cur.positions.begin() + (long)(c + 1),
                        cur.positions.begin() + (long)(d + 1));
    trace.sourceIndex.erase(trace.sourceIndex.begin() + (long)(c + 1),
                            trace.sourceIndex.begin() + (long)(d + 1));
  }
  trace.afterSize = cur.size();
  return {cur, trace};
}

}  // namespace odfkit
