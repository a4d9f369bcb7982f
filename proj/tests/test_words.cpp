#include "cantor_quant/error.hpp"
#include "cantor_quant/word.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace cantor_quant;

TEST_CASE("word construction rejects letter zero")
{
  CHECK_THROWS_AS(Word({1, 0}), DomainError);
  CHECK_THROWS_AS(Word(std::vector<Letter>{0}), DomainError);
  CHECK(Word{}.empty());
  CHECK(Word{}.length() == 0);
  CHECK(Word({2, 3, 1}).letter_sum() == 6);
  CHECK_THROWS_AS(Word{}.back(), DomainError);
  CHECK_THROWS_AS(Word{}.front(), DomainError);
}

TEST_CASE("concat")
{
  CHECK(concat(Word{1, 2}, Word{3}) == Word{1, 2, 3});
  CHECK(concat(Word{}, Word{5}) == Word{5});
  CHECK(concat(Word{2}, Word{1, 1}) == Word{2, 1, 1});
  CHECK(concat(Word{4}, Word{}) == Word{4});
}

TEST_CASE("drop_last")
{
  CHECK(drop_last(Word{1, 1}) == Word{1});
  CHECK(drop_last(Word{7}) == Word{});
  CHECK(drop_last(Word{2, 3, 1}) == Word{2, 3});
  CHECK_THROWS_AS(drop_last(Word{}), DomainError);
}

TEST_CASE("tail_representative")
{
  CHECK(tail_representative(Word{1}, 1) == Word{2});
  CHECK(tail_representative(Word{1, 1}, 1) == Word{1, 2});
  CHECK(tail_representative(Word{2, 3}, 4) == Word{2, 7});
  CHECK_THROWS_AS(tail_representative(Word{}, 1), DomainError);
  CHECK_THROWS_AS(tail_representative(Word{1}, 0), DomainError);
}

TEST_CASE("prob_weight and contraction_ratio")
{
  CHECK(prob_weight(Word{1, 1}) == Rational(1, 4));
  CHECK(prob_weight(Word{}) == 1);
  CHECK(prob_weight(Word{2, 3}) == Rational(1, 32));
  CHECK(contraction_ratio(Word{1}) == Rational(1, 3));
  CHECK(contraction_ratio(Word{1, 2}) == Rational(1, 27));
  CHECK(contraction_ratio(Word{}) == 1);
}

TEST_CASE("tail_mass")
{
  CHECK(tail_mass(Word{1}) == Rational(1, 2));
  CHECK(tail_mass(Word{1, 1}) == Rational(1, 4));
  CHECK(tail_mass(Word{2}) == Rational(1, 4));
  CHECK_THROWS_AS(tail_mass(Word{}), DomainError);
}

TEST_CASE("tail_mass against a truncated geometric series")
{
  // sum_{j=1}^{J} p_{w^-(w_last+j)} approaches the tail mass from below with a gap of exactly p_w 2^-J
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Word const w = test_support::random_word(rng, 1, 5, 6);
    Rational partial = 0;
    for (Letter j = 1; j <= 40; ++j) {
      Word rep = drop_last(w);
      rep = concat(rep, Word{w.back() + j});
      partial += prob_weight(rep);
    }
    Rational const gap = tail_mass(w) - partial;
    CHECK(gap > 0);
    CHECK(gap == prob_weight(w) * inverse_power(2, 40));
  }
}

TEST_CASE("multiplicativity")
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Word const a = test_support::random_word(rng, 0, 6, 9);
    Word const b = test_support::random_word(rng, 0, 6, 9);
    CHECK(prob_weight(concat(a, b)) == prob_weight(a) * prob_weight(b));
    CHECK(contraction_ratio(concat(a, b)) == contraction_ratio(a) * contraction_ratio(b));
    CHECK(concat(a, b).length() == a.length() + b.length());
  }
}

TEST_CASE("tail representatives scale weight and ratio by the increment")
{
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    Word const w = test_support::random_word(rng, 1, 6, 9);
    auto const j = static_cast<Letter>(1 + rng() % 12);
    CHECK(prob_weight(tail_representative(w, j)) == prob_weight(w) * inverse_power(2, j));
    CHECK(contraction_ratio(tail_representative(w, j)) == contraction_ratio(w) * inverse_power(3, j));
  }
}

TEST_CASE("tail mass telescopes")
{
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Word const w = test_support::random_word(rng, 1, 6, 9);
    auto const big_j = static_cast<Letter>(1 + rng() % 15);
    Rational sum = 0;
    for (Letter j = 1; j <= big_j; ++j) { sum += prob_weight(tail_representative(w, j)); }
    CHECK(tail_mass(w) == sum + tail_mass(tail_representative(w, big_j)));
  }
}

TEST_CASE("equal weight implies equal ratio")
{
  std::mt19937_64 rng(21);
  std::vector<Word> words;
  for (int i = 0; i < 400; ++i) { words.push_back(test_support::random_word(rng, 0, 4, 4)); }
  int pairs = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (prob_weight(words[i]) == prob_weight(words[j])) {
        ++pairs;
        CHECK(contraction_ratio(words[i]) == contraction_ratio(words[j]));
      }
    }
  }
  CHECK(pairs > 100);
}

TEST_CASE("compositions")
{
  CHECK(compositions(0) == std::vector<Word>{Word{}});
  CHECK(compositions(1) == std::vector<Word>{Word{1}});
  CHECK(compositions(3) == std::vector<Word>{Word{1, 1, 1}, Word{1, 2}, Word{2, 1}, Word{3}});
  for (unsigned total = 1; total <= 14; ++total) {
    auto const words = compositions(total);
    CHECK(words.size() == (std::size_t{1} << (total - 1)));
    CHECK(std::is_sorted(words.begin(), words.end()));
    CHECK(std::set<Word>(words.begin(), words.end()).size() == words.size());
    for (auto const &w : words) {
      CHECK(w.letter_sum() == total);
      CHECK(prob_weight(w) == inverse_power(2, total));
    }
  }
}

TEST_CASE("canonical order puts a proper prefix first")
{
  CHECK(Word{1} < Word{1, 1});
  CHECK(Word{1, 1} < Word{2});
  CHECK(Word{} < Word{1});
  CHECK(Word{1, 9} < Word{2});
}

TEST_CASE("serialization")
{
  CHECK(to_string(Word{1, 2, 1}) == "[1,2,1]");
  CHECK(to_string(Word{}) == "[]");
  CHECK(parse_word("[1,2,1]") == Word{1, 2, 1});
  CHECK(parse_word("[]") == Word{});
  CHECK(parse_word("[12]") == Word{12});
  CHECK_THROWS_AS(parse_word("1,2"), ParseError);
  CHECK_THROWS_AS(parse_word("[1,,2]"), ParseError);
  CHECK_THROWS_AS(parse_word("[0]"), ParseError);
  CHECK_THROWS_AS(parse_word("[1,2"), ParseError);
  CHECK_THROWS_AS(parse_word("[-1]"), ParseError);
  CHECK_THROWS_AS(parse_word("[1,]"), ParseError);

  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    Word const w = test_support::random_word(rng, 0, 8, 1000);
    CHECK(parse_word(to_string(w)) == w);
  }
}
