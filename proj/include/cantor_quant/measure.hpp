#pragma once

#include "cantor_quant/rational.hpp"
#include "cantor_quant/word.hpp"

#include <cstdint>
#include <span>

// Exact evaluation of the self-similar measure P = sum_j 2^-j P o S_j^-1 with
// S_j(x) = x / 3^j + 1 - 1 / 3^(j-1). Everything here is exact rational
// arithmetic; nothing in this header touches floating point.

namespace cantor_quant {

struct Interval
{
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(Rational const &x) const { return lo <= x && x <= hi; }
  bool contains(Interval const &other) const { return lo <= other.lo && other.hi <= hi; }
  bool interior_contains(Rational const &x) const { return lo < x && x < hi; }

  friend bool operator==(Interval const &, Interval const &) = default;
};

Rational apply_similitude(Letter j, Rational const &x);

/// S_w(x), left-to-right composition; the empty word is the identity.
Rational apply_word_map(Word const &word, Rational const &x);

/// J_w = S_w([0, 1]).
Interval cell_interval(Word const &word);

/// Smallest closed interval holding J_(w,inf): [S_{w^-(w_last+1)}(0), S_{w^-}(1)].
Interval tail_interval(Word const &word);

struct Moments
{
  Rational mean;
  Rational variance;

  Rational second_raw_moment() const { return mean * mean + variance; }
};

/// E(X) = 1/2 and V = 1/8 for X ~ P.
Moments moments();

/// E(X | X in J_k u J_{k+1} u ...) = 1 - 3^-(k-1) / 2.
Rational tail_centroid_level(Letter k);

/// a(w) = S_w(1/2), the conditional mean of P on J_w.
Rational cell_centroid(Word const &word);

/// a(w, inf), the conditional mean of P on J_(w,inf). Throws on the empty word.
Rational tail_centroid(Word const &word);

/// Integral over J_w of (x - x0)^2 dP.
Rational cell_distortion(Word const &word, Rational const &x0);

/// Integral over J_(w,inf) of (x - x0)^2 dP. Throws on the empty word.
Rational tail_distortion(Word const &word, Rational const &x0);

/// p_w s_w^2 V: the error of a(w) on J_w, which is also the error of a(w,inf)
/// on J_(w,inf).
Rational cell_error(Word const &word);

struct IntegralCheck
{
  Rational lhs;
  Rational rhs_truncated;
  Rational truncation_bound;

  bool holds() const { return abs(lhs - rhs_truncated) <= truncation_bound; }
};

/// Checks int f dP = sum_{|w| = k} p_w int f o S_w dP for a polynomial f of
/// degree <= 2 (coefficients in increasing degree), with the sum restricted to
/// letters <= max_letter. The bound is the omitted mass times sup |f| on [0,1].
/// Refuses more than `max_words` words.
IntegralCheck self_similar_integral_check(unsigned k,
                                          Letter max_letter,
                                          std::span<Rational const> poly_coeffs,
                                          std::uint64_t max_words = 1'000'000);

} // namespace cantor_quant
