#include "perioloz/facets.hpp"

#include <algorithm>
#include <cmath>

#include "perioloz/common.hpp"

namespace perioloz {

char facet_letter(const BetaData& bd, int f, long s) {
  if (s < 1) throw DomainError("facet_letter: distance must be >= 1");
  if (f < 0 || f > bd.l) throw DomainError("facet_letter: facet index out of range");
  const long n = ((s - 1) % bd.k + bd.k) % bd.k;
  return bd.residue_class[n] < f ? 'R' : 'L';
}

std::vector<FacetWord> facet_words_degenerate(const BetaData& bd) {
  std::vector<FacetWord> out;
  for (int f = 0; f <= bd.l; ++f) {
    FacetWord w;
    w.index = f;
    long p = 1;
    while (p <= bd.k && facet_letter(bd, f, p) == 'L') ++p;
    if (p > bd.k) p = 1;  // no R at all
    w.prefix.assign(p - 1, 'L');
    for (long s = p + bd.k - 1; s >= p; --s) w.period_word.push_back(facet_letter(bd, f, s));
    const long nr = std::count(w.period_word.begin(), w.period_word.end(), 'R');
    w.angle = nr * kPi / (2.0 * bd.k);
    out.push_back(w);
  }
  return out;
}

std::vector<FacetWord> facet_words(const BetaData& bd) {
  if (bd.l != bd.k) throw DomainError("facet_words: betas are not distinct; use facet_words_degenerate");
  return facet_words_degenerate(bd);
}

}  // namespace perioloz
