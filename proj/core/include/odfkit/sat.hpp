#pragma once

#include <optional>

#include "odfkit/profiles.hpp"

namespace odfkit {

enum class SatVerdict { sat, unsatWithinCaps, unsatProved };

const char* satVerdictName(SatVerdict v);

enum class SatStrategy { brute, profile };

struct SatCaps {
  size_t maxLen = 6;                    // words
  size_t maxPrefix = 2, maxPeriod = 3;  // lassos
  size_t maxDepth = 2, maxBranch = 2;   // trees
  size_t guard = size_t(1) << 24;       // refuse larger searches
  SatStrategy strategy = SatStrategy::profile;
};

// Verdicts: sat comes with a re-verified witness; unsat-within-caps means the
// bounded search was exhausted; unsat-proved is only emitted with an actual
// proof (a static refutation of the normal form, or caps covering the
// small-model bound).
struct SatResult {
  SatVerdict verdict = SatVerdict::unsatWithinCaps;
  std::optional<AnyStructure> witness;
  SatCaps capsUsed;
  std::string strategy;
};

// Finite words, signature relations among {succh, lessh}. Brute strategy
// evaluates the formula on every word up to maxLen; profile strategy expands
// each candidate canonically and accepts when every position's realized
// profile is compatible with the normal form.
SatResult satWord(const FormulaPtr& f, const Signature& sig,
                  const SatCaps& caps);

// Omega-words as lassos. Searches prefix/period labelings over the extended
// (normal-form) signature, smallest total size first, and accepts when every
// realized omega-profile is compatible; the witness is restricted to the
// input signature.
SatResult satOmega(const FormulaPtr& f, const Signature& sig,
                   const SatCaps& caps);

// Unranked ordered trees. Brute as above; profile strategy computes each
// node's components bottom-up / left-to-right through the neighbor
// recurrences (with memoization) and accepts when every node's full type set
// is compatible. The profile strategy requires lessh and lessv in the
// signature.
SatResult satTree(const FormulaPtr& f, const Signature& sig,
                  const SatCaps& caps);

}  // namespace odfkit
