#pragma once

#include <string>
#include <vector>

#include "perioloz/common.hpp"
#include "perioloz/weights.hpp"

namespace perioloz {

struct FacetWord {
  int index = 0;            // 0 = top facet
  double angle = 0;         // (number of R per period) * pi / (2k)
  std::string period_word;  // k letters, boundary side on the right
  std::string prefix;       // transient letters next to the boundary
};

// Letter at horizontal distance s >= 1 from the boundary inside facet f: 'R' iff the class of
// beta_{(s-1) mod k} is among the f smallest.
char facet_letter(const BetaData& bd, int f, long s);

// Distinct betas (l = k); throws DomainError otherwise.
std::vector<FacetWord> facet_words(const BetaData& bd);

// Any l; merged classes drop the intermediate facets.
std::vector<FacetWord> facet_words_degenerate(const BetaData& bd);

}  // namespace perioloz
