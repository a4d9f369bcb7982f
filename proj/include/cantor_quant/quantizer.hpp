#pragma once

#include "cantor_quant/measure.hpp"
#include "cantor_quant/rational.hpp"
#include "cantor_quant/word.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cantor_quant {

/// Cell(w) sits at a(w), Tail(w) at a(w, inf). Free marks a bare position with
/// no construction label; such sets can be stored and exported but not
/// evaluated by the label-driven operations below.
enum class PointKind { Cell, Tail, Free };

struct LabeledPoint
{
  PointKind kind = PointKind::Free;
  Word word;
  Rational position;

  friend bool operator==(LabeledPoint const &, LabeledPoint const &) = default;
};

LabeledPoint cell_point(Word word);
LabeledPoint tail_point(Word word);
LabeledPoint free_point(Rational position);

char const *to_string(PointKind kind);

/// Cell(w) -> J_w; Tail(w) -> the enclosing interval of J_(w,inf).
Interval support_piece(LabeledPoint const &point);

/// P-mass of the support piece: p_w for Cell and for Tail alike.
Rational piece_mass(LabeledPoint const &point);

/// The two points that replace `point` when it is split:
/// Cell(w) -> Cell(w1), Tail(w1); Tail(w) -> Cell(w'), Tail(w') with
/// w' = w^-(w_last + 1). Child positions are offsets from point.position, so
/// the point must sit at its label's centroid.
std::pair<LabeledPoint, LabeledPoint> split_point(LabeledPoint const &point);

/// Points sorted strictly increasing by position, all within [0, 1].
class QuantizerSet
{
public:
  QuantizerSet() = default;
  explicit QuantizerSet(std::vector<LabeledPoint> points);

  static QuantizerSet from_positions(std::vector<Rational> positions);

  std::span<LabeledPoint const> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  LabeledPoint const &operator[](std::size_t i) const { return points_[i]; }
  bool labeled() const noexcept;
  std::vector<Rational> positions() const;

  friend bool operator==(QuantizerSet const &, QuantizerSet const &) = default;

private:
  std::vector<LabeledPoint> points_;
};

struct QuantizerLimits
{
  unsigned max_level = 20;
  std::uint64_t max_sets = 100'000;
};

/// l(n) with 2^l <= n < 2^(l+1); n >= 2.
unsigned level_index(std::uint64_t n);

/// alpha(l): Cell(w) and Tail(w) for every w with letter sum l, i.e. p_w = 2^-l.
/// Level 0 is the one-point set {a(empty)} = {1/2}.
QuantizerSet build_level_set(unsigned level, QuantizerLimits const &limits = {});

/// alpha_n(I) where I indexes positions of alpha(l(n)) (ascending order).
QuantizerSet build_optimal_set(std::uint64_t n,
                               std::span<std::size_t const> replaced,
                               QuantizerLimits const &limits = {});

/// Same construction starting from an already built level set; the resulting
/// size is level_set.size() + replaced.size().
QuantizerSet refine_level_set(QuantizerSet const &level_set, std::span<std::size_t const> replaced);

/// Binomial(2^l(n), n - 2^l(n)); 1 for n = 1.
Integer optimal_set_count(std::uint64_t n);

/// Every alpha_n(I), subsets I in lexicographic order. Throws CapExceeded
/// when the count is above limits.max_sets.
std::vector<QuantizerSet> enumerate_optimal_sets(std::uint64_t n, QuantizerLimits const &limits = {});

/// V_n = 18^-l (1/8) (2^(l+1) - n + (n - 2^l) / 9) for n >= 2, V_1 = 1/8.
Rational quantization_error(std::uint64_t n);

/// Sum of cell errors over the labels of a constructed set.
Rational set_distortion(QuantizerSet const &set);

/// One successor per split candidate: every point whose word maximises
/// p_w s_w^2 over the words present in the set.
std::vector<QuantizerSet> split_step(QuantizerSet const &set);

/// Midpoints of consecutive points; empty for fewer than two points.
std::vector<Rational> voronoi_boundaries(QuantizerSet const &set);

/// True when every point equals the centroid of its label, the support pieces
/// carry total mass 1, and each piece lies inside the point's Voronoi cell.
bool centroid_condition_check(QuantizerSet const &set);

/// Points of `set` inside J_j, mapped back through S_j^-1 with the leading
/// letter j removed from their labels.
QuantizerSet pull_back(QuantizerSet const &set, Letter j);

} // namespace cantor_quant
