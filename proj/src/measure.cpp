#include "cantor_quant/measure.hpp"

#include "cantor_quant/error.hpp"

#include <algorithm>
#include <vector>

namespace cantor_quant {

namespace {

Rational const kMean(1, 2);
Rational const kVariance(1, 8);

// Affine form S_w(x) = scale * x + shift.
struct AffineMap
{
  Rational scale{1};
  Rational shift{0};
};

AffineMap then_apply(AffineMap const &outer, Letter j)
{
  // outer o S_j
  Rational const inner_scale = inverse_power(3, j);
  Rational const inner_shift = 1 - inverse_power(3, j - 1);
  return {outer.scale * inner_scale, outer.shift + outer.scale * inner_shift};
}

} // namespace

Rational apply_similitude(Letter j, Rational const &x)
{
  if (j < 1) { throw DomainError("similitude index must be >= 1"); }
  return x * inverse_power(3, j) + 1 - inverse_power(3, j - 1);
}

Rational apply_word_map(Word const &word, Rational const &x)
{
  Rational y = x;
  auto const letters = word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) { y = apply_similitude(*it, y); }
  return y;
}

Interval cell_interval(Word const &word)
{
  return {apply_word_map(word, 0), apply_word_map(word, 1)};
}

Interval tail_interval(Word const &word)
{
  if (word.empty()) { throw DomainError("tail_interval: undefined for the empty word"); }
  return {apply_word_map(tail_representative(word, 1), 0), apply_word_map(drop_last(word), 1)};
}

Moments moments() { return {kMean, kVariance}; }

Rational tail_centroid_level(Letter k)
{
  if (k < 1) { throw DomainError("tail_centroid_level: k must be >= 1"); }
  return 1 - inverse_power(3, k - 1) / 2;
}

Rational cell_centroid(Word const &word) { return apply_word_map(word, kMean); }

Rational tail_centroid(Word const &word)
{
  if (word.empty()) { throw DomainError("tail_centroid: undefined for the empty word"); }
  Word const first = tail_representative(word, 1);
  return cell_centroid(first) + contraction_ratio(first);
}

Rational cell_distortion(Word const &word, Rational const &x0)
{
  Rational const s = contraction_ratio(word);
  Rational const offset = cell_centroid(word) - x0;
  return prob_weight(word) * (s * s * kVariance + offset * offset);
}

Rational tail_distortion(Word const &word, Rational const &x0)
{
  Rational const offset = x0 - tail_centroid(word);
  return cell_error(word) + offset * offset * tail_mass(word);
}

Rational cell_error(Word const &word)
{
  Rational const s = contraction_ratio(word);
  return prob_weight(word) * s * s * kVariance;
}

IntegralCheck self_similar_integral_check(unsigned k,
                                          Letter max_letter,
                                          std::span<Rational const> poly_coeffs,
                                          std::uint64_t max_words)
{
  if (k < 1 || max_letter < 1) { throw DomainError("integral check: k and max_letter must be >= 1"); }
  for (std::size_t i = 3; i < poly_coeffs.size(); ++i) {
    if (poly_coeffs[i] != 0) {
      throw DomainError("integral check: only polynomials of degree <= 2 are supported");
    }
  }
  std::uint64_t words = 1;
  for (unsigned i = 0; i < k; ++i) {
    words *= max_letter;
    if (words > max_words) {
      throw CapExceeded("integral check: too many words", std::to_string(max_letter) + "^" + std::to_string(k));
    }
  }

  auto coeff = [&](std::size_t i) { return i < poly_coeffs.size() ? poly_coeffs[i] : Rational(0); };
  Rational const c0 = coeff(0), c1 = coeff(1), c2 = coeff(2);
  Rational const second = kMean * kMean + kVariance;

  IntegralCheck result;
  result.lhs = c0 + c1 * kMean + c2 * second;

  // Depth-first over {1..max_letter}^k carrying the affine map of the prefix.
  std::vector<AffineMap> maps(k + 1);
  std::vector<Rational> weights(k + 1);
  std::vector<Letter> letters(k + 1, 0);
  weights[0] = 1;
  unsigned depth = 0;
  letters[0] = 0;
  while (true) {
    if (letters[depth] == max_letter) {
      if (depth == 0) { break; }
      --depth;
      continue;
    }
    Letter const j = ++letters[depth];
    maps[depth + 1] = then_apply(maps[depth], j);
    weights[depth + 1] = weights[depth] * inverse_power(2, j);
    if (depth + 1 == k) {
      AffineMap const &m = maps[k];
      Rational const integral = c0 + c1 * (m.scale * kMean + m.shift)
                                + c2 * (m.scale * m.scale * second + 2 * m.scale * m.shift * kMean + m.shift * m.shift);
      result.rhs_truncated += weights[k] * integral;
    } else {
      ++depth;
      letters[depth] = 0;
    }
  }

  Rational kept = 1;
  Rational const per_letter = 1 - inverse_power(2, max_letter);
  for (unsigned i = 0; i < k; ++i) { kept *= per_letter; }

  Rational sup = max(abs(c0), abs(c0 + c1 + c2));
  if (c2 != 0) {
    Rational const vertex = -c1 / (2 * c2);
    if (vertex >= 0 && vertex <= 1) { sup = max(sup, abs(c0 + c1 * vertex + c2 * vertex * vertex)); }
  }
  result.truncation_bound = (1 - kept) * sup;
  return result;
}

} // namespace cantor_quant
