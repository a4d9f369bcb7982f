#pragma once

#include "cantor_quant/rational.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cantor_quant {

using Letter = std::uint32_t;

/// Finite word over the alphabet {1, 2, 3, ...}. Letter j indexes the
/// similitude S_j; a word indexes the composition S_{w1} o ... o S_{wk}.
/// The empty word is a valid value (identity map, weight 1).
class Word
{
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters);

  std::span<Letter const> letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter front() const;
  Letter back() const;

  /// Sum of letters. Words with equal letter sum share p_w and s_w.
  std::uint64_t letter_sum() const noexcept;

  /// Lexicographic on letters; a proper prefix sorts first.
  friend auto operator<=>(Word const &, Word const &) = default;
  friend bool operator==(Word const &, Word const &) = default;

private:
  std::vector<Letter> letters_;
};

Word concat(Word const &head, Word const &tail);

/// w^- : w without its last letter. Throws DomainError on the empty word.
Word drop_last(Word const &word);

/// w^-(w_last + j), the j-th word of the tail (w, inf).
Word tail_representative(Word const &word, Letter j);

/// p_w = prod 2^-w_i
Rational prob_weight(Word const &word);

/// s_w = prod 3^-w_i
Rational contraction_ratio(Word const &word);

/// p_{(w,inf)} = sum_{j >= 1} p_{w^-(w_last + j)}, which collapses to p_w.
/// Throws on the empty word.
Rational tail_mass(Word const &word);

/// All words with letter sum `total` (compositions of total), in canonical
/// order. compositions(0) is {empty word}.
std::vector<Word> compositions(unsigned total);

/// "[1,2,1]"; the empty word is "[]".
std::string to_string(Word const &word);
Word parse_word(std::string_view text);

} // namespace cantor_quant
