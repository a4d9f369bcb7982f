#include "cantor_quant/quantizer.hpp"

#include "cantor_quant/error.hpp"

#include <algorithm>
#include <map>
#include <bit>

namespace cantor_quant {

namespace {

void require_labeled(QuantizerSet const &set, char const *operation)
{
  if (!set.labeled()) {
    throw DomainError(std::string(operation) + ": set has points without construction labels");
  }
}

Rational split_priority(Word const &word)
{
  Rational const s = contraction_ratio(word);
  return prob_weight(word) * s * s;
}

} // namespace

LabeledPoint cell_point(Word word)
{
  Rational position = cell_centroid(word);
  return {PointKind::Cell, std::move(word), std::move(position)};
}

LabeledPoint tail_point(Word word)
{
  Rational position = tail_centroid(word);
  return {PointKind::Tail, std::move(word), std::move(position)};
}

LabeledPoint free_point(Rational position) { return {PointKind::Free, Word{}, std::move(position)}; }

char const *to_string(PointKind kind)
{
  switch (kind) {
  case PointKind::Cell: return "Cell";
  case PointKind::Tail: return "Tail";
  case PointKind::Free: return "Free";
  }
  return "?";
}

Interval support_piece(LabeledPoint const &point)
{
  switch (point.kind) {
  case PointKind::Cell: return cell_interval(point.word);
  case PointKind::Tail: return tail_interval(point.word);
  case PointKind::Free: break;
  }
  throw DomainError("support_piece: unlabeled point");
}

Rational piece_mass(LabeledPoint const &point)
{
  switch (point.kind) {
  case PointKind::Cell: return prob_weight(point.word);
  case PointKind::Tail: return tail_mass(point.word);
  case PointKind::Free: break;
  }
  throw DomainError("piece_mass: unlabeled point");
}

std::pair<LabeledPoint, LabeledPoint> split_point(LabeledPoint const &point)
{
  Word child;
  switch (point.kind) {
  case PointKind::Cell: child = concat(point.word, Word{1}); break;
  case PointKind::Tail: child = tail_representative(point.word, 1); break;
  case PointKind::Free: throw DomainError("split_point: unlabeled point");
  }
  // both children sit s_child either side of the parent:
  // a(w1) = a(w) - s_w1, a(w1,inf) = a(w) + s_w1, a(w') = a(w,inf) - s_w', a(w',inf) = a(w,inf) + s_w'
  Rational const offset = contraction_ratio(child);
  LabeledPoint left{PointKind::Cell, child, point.position - offset};
  LabeledPoint right{PointKind::Tail, std::move(child), point.position + offset};
  return {std::move(left), std::move(right)};
}

QuantizerSet::QuantizerSet(std::vector<LabeledPoint> points) : points_(std::move(points))
{
  for (std::size_t i = 0; i < points_.size(); ++i) {
    auto const &p = points_[i];
    if (p.position < 0 || p.position > 1) { throw DomainError("quantizer point outside [0, 1]"); }
    if (p.kind == PointKind::Tail && p.word.empty()) { throw DomainError("Tail label requires a nonempty word"); }
    if (i > 0 && !(points_[i - 1].position < p.position)) {
      throw DomainError("quantizer points must be strictly increasing");
    }
  }
}

QuantizerSet QuantizerSet::from_positions(std::vector<Rational> positions)
{
  std::vector<LabeledPoint> points;
  points.reserve(positions.size());
  for (auto &x : positions) { points.push_back(free_point(std::move(x))); }
  return QuantizerSet(std::move(points));
}

bool QuantizerSet::labeled() const noexcept
{
  return std::none_of(points_.begin(), points_.end(), [](auto const &p) { return p.kind == PointKind::Free; });
}

std::vector<Rational> QuantizerSet::positions() const
{
  std::vector<Rational> out;
  out.reserve(points_.size());
  for (auto const &p : points_) { out.push_back(p.position); }
  return out;
}

unsigned level_index(std::uint64_t n)
{
  if (n < 2) { throw DomainError("level_index: n must be >= 2"); }
  return static_cast<unsigned>(std::bit_width(n) - 1);
}

QuantizerSet build_level_set(unsigned level, QuantizerLimits const &limits)
{
  if (level > limits.max_level) {
    throw CapExceeded("level " + std::to_string(level) + " exceeds depth cap " + std::to_string(limits.max_level),
                      std::to_string(level));
  }
  if (level == 0) { return QuantizerSet({cell_point(Word{})}); }

  // Lexicographic composition order is also ascending position order: J_w
  // precedes J_(w,inf), and both precede anything under a larger prefix.
  std::vector<LabeledPoint> points;
  auto const words = compositions(level);
  points.reserve(2 * words.size());
  for (auto const &word : words) {
    points.push_back(cell_point(word));
    points.push_back(tail_point(word));
  }
  return QuantizerSet(std::move(points));
}

QuantizerSet refine_level_set(QuantizerSet const &level_set, std::span<std::size_t const> replaced)
{
  require_labeled(level_set, "refine_level_set");
  std::vector<bool> marked(level_set.size(), false);
  for (auto index : replaced) {
    if (index >= level_set.size()) {
      throw DomainError("subset index " + std::to_string(index) + " out of range for a level set of size "
                        + std::to_string(level_set.size()));
    }
    if (marked[index]) { throw DomainError("duplicate subset index " + std::to_string(index)); }
    marked[index] = true;
  }

  std::vector<LabeledPoint> points;
  points.reserve(level_set.size() + replaced.size());
  for (std::size_t i = 0; i < level_set.size(); ++i) {
    if (marked[i]) {
      auto [left, right] = split_point(level_set[i]);
      points.push_back(std::move(left));
      points.push_back(std::move(right));
    } else {
      points.push_back(level_set[i]);
    }
  }
  return QuantizerSet(std::move(points));
}

QuantizerSet build_optimal_set(std::uint64_t n, std::span<std::size_t const> replaced, QuantizerLimits const &limits)
{
  unsigned const level = level_index(n);
  std::uint64_t const extra = n - (std::uint64_t{1} << level);
  if (replaced.size() != extra) {
    throw DomainError("subset for n = " + std::to_string(n) + " must have exactly " + std::to_string(extra)
                      + " indices, got " + std::to_string(replaced.size()));
  }
  return refine_level_set(build_level_set(level, limits), replaced);
}

Integer optimal_set_count(std::uint64_t n)
{
  if (n == 1) { return 1; }
  unsigned const level = level_index(n);
  std::uint64_t const total = std::uint64_t{1} << level;
  std::uint64_t const chosen = std::min(n - total, total - (n - total));
  Integer count = 1;
  for (std::uint64_t i = 0; i < chosen; ++i) {
    count *= total - i;
    count /= i + 1;
  }
  return count;
}

std::vector<QuantizerSet> enumerate_optimal_sets(std::uint64_t n, QuantizerLimits const &limits)
{
  if (n == 1) { return {build_level_set(0, limits)}; }
  Integer const count = optimal_set_count(n);
  if (count > limits.max_sets) {
    throw CapExceeded("n = " + std::to_string(n) + " has " + count.str() + " optimal sets, above the cap of "
                        + std::to_string(limits.max_sets),
                      count.str());
  }
  unsigned const level = level_index(n);
  QuantizerSet const level_set = build_level_set(level, limits);
  std::size_t const choose = n - level_set.size();

  std::vector<QuantizerSet> out;
  out.reserve(count.convert_to<std::size_t>());
  std::vector<std::size_t> subset(choose);
  for (std::size_t i = 0; i < choose; ++i) { subset[i] = i; }
  while (true) {
    out.push_back(refine_level_set(level_set, subset));
    // next combination in lexicographic order
    std::size_t i = choose;
    while (i > 0 && subset[i - 1] == level_set.size() - choose + i - 1) { --i; }
    if (i == 0) { break; }
    ++subset[i - 1];
    for (std::size_t j = i; j < choose; ++j) { subset[j] = subset[j - 1] + 1; }
  }
  return out;
}

Rational quantization_error(std::uint64_t n)
{
  if (n == 0) { throw DomainError("quantization_error: n must be >= 1"); }
  if (n == 1) { return moments().variance; }
  unsigned const level = level_index(n);
  Integer const base = Integer(1) << level;
  Rational const scale = inverse_power(18, level) / 8;
  return scale * (Rational(2 * base - n) + Rational(Integer(n) - base) / 9);
}

Rational set_distortion(QuantizerSet const &set)
{
  require_labeled(set, "set_distortion");
  // cell_error only depends on the letter sum
  std::map<std::uint64_t, std::uint64_t> by_sum;
  std::map<std::uint64_t, Word const *> sample;
  for (auto const &p : set.points()) {
    auto const sum = p.word.letter_sum();
    ++by_sum[sum];
    sample.emplace(sum, &p.word);
  }
  Rational total = 0;
  for (auto const &[sum, count] : by_sum) { total += cell_error(*sample[sum]) * count; }
  return total;
}

std::vector<QuantizerSet> split_step(QuantizerSet const &set)
{
  require_labeled(set, "split_step");
  if (set.size() == 0) { throw DomainError("split_step: empty set"); }

  std::vector<Rational> priority;
  priority.reserve(set.size());
  for (auto const &p : set.points()) { priority.push_back(split_priority(p.word)); }
  Rational const best = *std::max_element(priority.begin(), priority.end());

  std::vector<QuantizerSet> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (priority[i] != best) { continue; }
    std::vector<LabeledPoint> points;
    points.reserve(set.size() + 1);
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k == i) {
        auto [left, right] = split_point(set[k]);
        points.push_back(std::move(left));
        points.push_back(std::move(right));
      } else {
        points.push_back(set[k]);
      }
    }
    out.emplace_back(std::move(points));
  }
  return out;
}

std::vector<Rational> voronoi_boundaries(QuantizerSet const &set)
{
  std::vector<Rational> out;
  for (std::size_t i = 1; i < set.size(); ++i) { out.push_back((set[i - 1].position + set[i].position) / 2); }
  return out;
}

bool centroid_condition_check(QuantizerSet const &set)
{
  require_labeled(set, "centroid_condition_check");
  auto const boundaries = voronoi_boundaries(set);
  Rational mass = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto const &p = set[i];
    Rational const centroid = p.kind == PointKind::Cell ? cell_centroid(p.word) : tail_centroid(p.word);
    if (p.position != centroid) { return false; }
    // Pieces are sorted with the points, so containment in the own cell also
    // keeps every other piece out of it (up to shared boundary points).
    Interval const piece = support_piece(p);
    if (i > 0 && piece.lo < boundaries[i - 1]) { return false; }
    if (i + 1 < set.size() && piece.hi > boundaries[i]) { return false; }
    mass += piece_mass(p);
  }
  return mass == 1;
}

QuantizerSet pull_back(QuantizerSet const &set, Letter j)
{
  require_labeled(set, "pull_back");
  Interval const cell = cell_interval(Word{j});
  Rational const scale = Rational(1) / contraction_ratio(Word{j});
  std::vector<LabeledPoint> points;
  for (auto const &p : set.points()) {
    if (!cell.contains(p.position)) { continue; }
    if (p.word.empty() || p.word.front() != j) {
      throw DomainError("pull_back: point " + to_string(p.word) + " lies in J_" + std::to_string(j)
                        + " but its label does not start with " + std::to_string(j));
    }
    Word stripped(std::vector<Letter>(p.word.letters().begin() + 1, p.word.letters().end()));
    points.push_back({p.kind, std::move(stripped), (p.position - cell.lo) * scale});
  }
  return QuantizerSet(std::move(points));
}

} // namespace cantor_quant
