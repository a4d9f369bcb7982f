#include "cantor_quant/word.hpp"

#include "cantor_quant/error.hpp"

#include <charconv>
#include <numeric>

namespace cantor_quant {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters))
{
  for (auto letter : letters_) {
    if (letter < 1) { throw DomainError("word letters must be positive integers"); }
  }
}

Word::Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

Letter Word::front() const
{
  if (empty()) { throw DomainError("empty word has no first letter"); }
  return letters_.front();
}

Letter Word::back() const
{
  if (empty()) { throw DomainError("empty word has no last letter"); }
  return letters_.back();
}

std::uint64_t Word::letter_sum() const noexcept
{
  return std::accumulate(letters_.begin(), letters_.end(), std::uint64_t{0});
}

Word concat(Word const &head, Word const &tail)
{
  std::vector<Letter> letters(head.letters().begin(), head.letters().end());
  letters.insert(letters.end(), tail.letters().begin(), tail.letters().end());
  return Word(std::move(letters));
}

Word drop_last(Word const &word)
{
  if (word.empty()) { throw DomainError("drop_last: the empty word has no last letter"); }
  return Word(std::vector<Letter>(word.letters().begin(), word.letters().end() - 1));
}

Word tail_representative(Word const &word, Letter j)
{
  if (word.empty()) { throw DomainError("tail_representative: undefined for the empty word"); }
  if (j < 1) { throw DomainError("tail_representative: j must be >= 1"); }
  std::vector<Letter> letters(word.letters().begin(), word.letters().end());
  letters.back() += j;
  return Word(std::move(letters));
}

Rational prob_weight(Word const &word)
{
  return inverse_power(2, static_cast<unsigned>(word.letter_sum()));
}

Rational contraction_ratio(Word const &word)
{
  return inverse_power(3, static_cast<unsigned>(word.letter_sum()));
}

Rational tail_mass(Word const &word)
{
  if (word.empty()) { throw DomainError("tail_mass: undefined for the empty word"); }
  // sum_j p_{w^-} 2^-(w_last + j) = p_{w^-} 2^-w_last = p_w
  return prob_weight(word);
}

namespace {

void compose(unsigned remaining, std::vector<Letter> &prefix, std::vector<Word> &out)
{
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (Letter first = 1; first <= remaining; ++first) {
    prefix.push_back(first);
    compose(remaining - first, prefix, out);
    prefix.pop_back();
  }
}

} // namespace

std::vector<Word> compositions(unsigned total)
{
  std::vector<Word> out;
  out.reserve(total == 0 ? 1 : std::size_t{1} << (total - 1));
  std::vector<Letter> prefix;
  compose(total, prefix, out);
  return out;
}

std::string to_string(Word const &word)
{
  std::string out = "[";
  for (std::size_t i = 0; i < word.length(); ++i) {
    if (i != 0) { out += ','; }
    out += std::to_string(word.letters()[i]);
  }
  return out + "]";
}

Word parse_word(std::string_view text)
{
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ParseError("malformed word '" + std::string(text) + "', expected [a,b,...]");
  }
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<Letter> letters;
  if (body.empty()) { return Word{}; }
  while (true) {
    auto const comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    Letter letter = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), letter);
    if (ec != std::errc{} || end != item.data() + item.size() || letter < 1) {
      throw ParseError("malformed word letter '" + std::string(item) + "'");
    }
    letters.push_back(letter);
    if (comma == std::string_view::npos) { break; }
    body.remove_prefix(comma + 1);
  }
  return Word(std::move(letters));
}

} // namespace cantor_quant
