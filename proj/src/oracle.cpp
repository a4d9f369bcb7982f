#include "cantor_quant/oracle.hpp"

#include "cantor_quant/error.hpp"
#include "cantor_quant/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cantor_quant {

namespace {

unsigned refinement_depth(Rational const &epsilon)
{
  unsigned depth = 0;
  Rational mass = 1;
  while (mass > epsilon) {
    mass /= 2;
    ++depth;
  }
  return depth;
}

struct Discretizer
{
  Rational const &epsilon;
  DiscreteMeasure &out;

  void refine(Word const &word, Rational const &mass)
  {
    if (mass <= epsilon) {
      out.atoms.push_back({cell_centroid(word), mass});
      out.collapse_bound += cell_error(word);
      return;
    }
    Rational remaining = mass;
    Letter j = 0;
    Word child;
    do {
      ++j;
      child = concat(word, Word{j});
      remaining /= 2;
      refine(child, remaining);
    } while (remaining > epsilon);
    out.atoms.push_back({tail_centroid(child), tail_mass(child)});
    out.collapse_bound += cell_error(child);
  }
};

// Kahan-compensated running sum.
struct CompensatedSum
{
  double sum = 0.0;
  double carry = 0.0;

  void add(double value)
  {
    double const y = value - carry;
    double const t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct PrefixSums
{
  std::vector<double> weight;
  std::vector<double> first;
  std::vector<double> second;

  explicit PrefixSums(DiscreteMeasure const &measure)
  {
    auto const m = measure.atoms.size();
    weight.resize(m + 1);
    first.resize(m + 1);
    second.resize(m + 1);
    CompensatedSum w, s, q;
    for (std::size_t i = 0; i < m; ++i) {
      double const x = to_double(measure.atoms[i].position);
      double const p = to_double(measure.atoms[i].weight);
      w.add(p);
      s.add(p * x);
      q.add(p * x * x);
      weight[i + 1] = w.sum;
      first[i + 1] = s.sum;
      second[i + 1] = q.sum;
    }
  }

  // Weighted squared error of atoms [i, j) around their mean.
  double cost(std::size_t i, std::size_t j) const
  {
    double const w = weight[j] - weight[i];
    double const s = first[j] - first[i];
    double const c = (second[j] - second[i]) - s * s / w;
    return c > 0.0 ? c : 0.0;
  }

  double mean(std::size_t i, std::size_t j) const { return (first[j] - first[i]) / (weight[j] - weight[i]); }
};

Rational exact_cluster_cost(DiscreteMeasure const &measure, std::size_t begin, std::size_t end)
{
  Rational w = 0, s = 0, q = 0;
  for (std::size_t i = begin; i < end; ++i) {
    auto const &a = measure.atoms[i];
    Rational const ws = a.weight * a.position;
    w += a.weight;
    s += ws;
    q += ws * a.position;
  }
  return q - s * s / w;
}

OracleResult dp_result(DiscreteMeasure const &measure,
                       PrefixSums const &sums,
                       std::vector<std::vector<std::uint32_t>> const &split,
                       std::size_t k)
{
  OracleResult result;
  result.n = k;
  result.method = OracleMethod::ExactDP;
  std::size_t end = measure.atoms.size();
  for (std::size_t layer = k; layer >= 1; --layer) {
    std::size_t const begin = layer == 1 ? 0 : split[layer][end];
    result.clusters.emplace_back(begin, end);
    end = begin;
  }
  std::reverse(result.clusters.begin(), result.clusters.end());
  Rational exact = 0;
  for (auto [begin, stop] : result.clusters) {
    result.points.push_back(sums.mean(begin, stop));
    exact += exact_cluster_cost(measure, begin, stop);
  }
  // the table only picks the partition; report its cost without prefix cancellation
  result.distortion = to_double(exact);
  result.exact_distortion = exact;
  return result;
}

} // namespace

DiscreteMeasure make_discrete_measure(std::vector<Atom> atoms)
{
  if (atoms.empty()) { throw DomainError("discrete measure needs at least one atom"); }
  Rational total = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].weight <= 0) { throw DomainError("atom weights must be positive"); }
    if (i > 0 && !(atoms[i - 1].position < atoms[i].position)) {
      throw DomainError("atom positions must be strictly increasing");
    }
    total += atoms[i].weight;
  }
  if (total != 1) { throw DomainError("atom weights must sum to 1, got " + to_fraction_string(total)); }
  return {std::move(atoms), Rational(0)};
}

std::uint64_t discretized_atom_count(Rational const &epsilon)
{
  if (epsilon <= 0 || epsilon > 1) { throw DomainError("epsilon must satisfy 0 < epsilon <= 1"); }
  unsigned const depth = refinement_depth(epsilon);
  if (depth >= 63) { return std::numeric_limits<std::uint64_t>::max(); }
  return std::uint64_t{1} << depth;
}

DiscreteMeasure discretize(Rational const &epsilon, std::size_t max_atoms)
{
  std::uint64_t const count = discretized_atom_count(epsilon);
  if (count > max_atoms) {
    throw CapExceeded("epsilon " + to_fraction_string(epsilon) + " needs " + std::to_string(count)
                        + " atoms, above the cap of " + std::to_string(max_atoms),
                      std::to_string(count));
  }
  DiscreteMeasure out;
  out.atoms.reserve(count);
  Discretizer{epsilon, out}.refine(Word{}, Rational(1));
  Rational total = 0;
  for (auto const &a : out.atoms) { total += a.weight; }
  if (total != 1) { throw std::logic_error("discretize: atom weights sum to " + to_fraction_string(total)); }
  return out;
}

std::vector<OracleResult> kmeans_exact_dp_levels(DiscreteMeasure const &measure, std::size_t max_n)
{
  std::size_t const m = measure.atoms.size();
  if (max_n < 1) { throw DomainError("k-means needs n >= 1"); }
  if (max_n > m) {
    throw DomainError("n = " + std::to_string(max_n) + " exceeds the atom count " + std::to_string(m));
  }
  PrefixSums const sums(measure);
  double const inf = std::numeric_limits<double>::infinity();

  // prev[j]: best cost of atoms [0, j) with k - 1 clusters.
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  for (std::size_t j = 1; j <= m; ++j) { prev[j] = sums.cost(0, j); }
  std::vector<std::vector<std::uint32_t>> split(max_n + 1);

  std::vector<OracleResult> results;
  results.push_back(dp_result(measure, sums, split, 1));
  for (std::size_t k = 2; k <= max_n; ++k) {
    split[k].assign(m + 1, 0);
    std::fill(cur.begin(), cur.end(), inf);
    for (std::size_t j = k; j <= m; ++j) {
      double value = inf;
      std::uint32_t arg = 0;
      for (std::size_t i = k - 1; i < j; ++i) {
        double const candidate = prev[i] + sums.cost(i, j);
        if (candidate < value) {
          value = candidate;
          arg = static_cast<std::uint32_t>(i);
        }
      }
      cur[j] = value;
      split[k][j] = arg;
    }
    std::swap(prev, cur);
    results.push_back(dp_result(measure, sums, split, k));
  }
  return results;
}

OracleResult kmeans_exact_dp(DiscreteMeasure const &measure, std::size_t n)
{
  return std::move(kmeans_exact_dp_levels(measure, n).back());
}

OracleResult lloyd(DiscreteMeasure const &measure, std::size_t n, std::uint64_t seed, std::size_t max_iter, double tol)
{
  std::size_t const m = measure.atoms.size();
  if (n < 1 || n > m) { throw DomainError("lloyd: need 1 <= n <= atom count"); }
  if (max_iter < 1) { throw DomainError("lloyd: max_iter must be >= 1"); }

  std::vector<double> x(m), w(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = to_double(measure.atoms[i].position);
    w[i] = to_double(measure.atoms[i].weight);
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) { order[i] = i; }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t const r = i + static_cast<std::size_t>(rng() % (m - i));
    std::swap(order[i], order[r]);
  }
  std::vector<double> centers(n);
  for (std::size_t i = 0; i < n; ++i) { centers[i] = x[order[i]]; }
  std::sort(centers.begin(), centers.end());

  OracleResult result;
  result.n = n;
  result.method = OracleMethod::Lloyd;

  std::vector<std::size_t> owner(m);
  auto assign = [&] {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t nearest = 0;
      double gap = std::abs(x[i] - centers[0]);
      for (std::size_t k = 1; k < n; ++k) {
        double const d = std::abs(x[i] - centers[k]);
        if (d < gap) {
          gap = d;
          nearest = k;
        }
      }
      owner[i] = nearest;
      total += w[i] * gap * gap;
    }
    return total;
  };

  double distortion = assign();
  result.history.push_back(distortion);
  std::vector<double> mass(n), moment(n);
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    std::fill(mass.begin(), mass.end(), 0.0);
    std::fill(moment.begin(), moment.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      mass[owner[i]] += w[i];
      moment[owner[i]] += w[i] * x[i];
    }
    double movement = 0.0;
    bool reseeded = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (mass[k] > 0.0) {
        double const next = moment[k] / mass[k];
        movement = std::max(movement, std::abs(next - centers[k]));
        centers[k] = next;
        continue;
      }
      // Empty cluster: move it onto the atom contributing the most error.
      std::size_t worst = 0;
      double worst_error = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        double const d = x[i] - centers[owner[i]];
        if (w[i] * d * d > worst_error) {
          worst_error = w[i] * d * d;
          worst = i;
        }
      }
      movement = std::max(movement, std::abs(x[worst] - centers[k]));
      centers[k] = x[worst];
      ++result.reseeds;
      reseeded = true;
    }
    if (reseeded) { std::sort(centers.begin(), centers.end()); }
    distortion = assign();
    result.history.push_back(distortion);
    result.iterations = iter;
    if (movement < tol) { break; }
  }
  // final centroid update in exact arithmetic
  std::vector<Rational> w_sum(n), x_sum(n);
  for (std::size_t i = 0; i < m; ++i) {
    auto const &a = measure.atoms[i];
    w_sum[owner[i]] += a.weight;
    x_sum[owner[i]] += a.weight * a.position;
  }
  std::vector<Rational> exact_centers(n);
  for (std::size_t k = 0; k < n; ++k) {
    exact_centers[k] = w_sum[k] > 0 ? Rational(x_sum[k] / w_sum[k]) : Rational(centers[k]);
    centers[k] = to_double(exact_centers[k]);
  }
  Rational exact = 0;
  for (std::size_t i = 0; i < m; ++i) {
    auto const &a = measure.atoms[i];
    Rational const d = a.position - exact_centers[owner[i]];
    exact += a.weight * d * d;
  }
  result.points = centers;
  result.distortion = to_double(exact);
  return result;
}

VerificationReport compare(std::uint64_t n, Rational const &epsilon, QuantizerLimits const &limits, std::size_t max_atoms)
{
  if (n < 1) { throw DomainError("compare: n must be >= 1"); }
  VerificationReport report;
  report.n = n;
  report.epsilon = epsilon;
  report.exact_error = quantization_error(n);
  report.set_count = optimal_set_count(n);

  QuantizerSet canonical;
  if (n == 1) {
    canonical = build_level_set(0, limits);
  } else {
    unsigned const level = level_index(n);
    std::vector<std::size_t> first(n - (std::uint64_t{1} << level));
    for (std::size_t i = 0; i < first.size(); ++i) { first[i] = i; }
    canonical = build_optimal_set(n, first, limits);
  }
  report.construction_error = set_distortion(canonical);
  report.centroid_condition_ok = centroid_condition_check(canonical);

  DiscreteMeasure const measure = discretize(epsilon, max_atoms);
  report.collapse_bound = measure.collapse_bound;
  report.atom_count = measure.atoms.size();

  Rational const twice_bound = 2 * measure.collapse_bound;
  bool const left_gap = n == 1 || twice_bound < quantization_error(n - 1) - report.exact_error;
  bool const right_gap = twice_bound < report.exact_error - quantization_error(n + 1);
  report.separated = left_gap && right_gap;

  std::vector<std::string> problems;
  if (report.construction_error != report.exact_error) { problems.push_back("construction error differs from V_n"); }
  if (!report.centroid_condition_ok) { problems.push_back("constructed set fails the centroid condition"); }
  if (!report.separated) { problems.push_back("collapse bound too loose to separate V_n from V_(n-1), V_(n+1)"); }

  if (n > measure.atoms.size()) {
    problems.push_back("n exceeds the atom count of the discretization");
  } else {
    OracleResult const dp = kmeans_exact_dp(measure, n);
    report.dp_distortion = dp.exact_distortion;
    report.dp_points = dp.points;
    report.within_bound = abs(*dp.exact_distortion - report.exact_error) <= measure.collapse_bound;
    if (!report.within_bound) { problems.push_back("DP distortion outside V_n +/- collapse bound"); }

    try {
      auto const sets = enumerate_optimal_sets(n, limits);
      report.match_checked = true;
      for (std::size_t s = 0; s < sets.size() && !report.matched_set; ++s) {
        bool close = sets[s].size() == dp.points.size();
        for (std::size_t i = 0; close && i < dp.points.size(); ++i) {
          close = std::abs(to_double(sets[s][i].position) - dp.points[i]) <= report.match_tolerance;
        }
        if (close) { report.matched_set = s; }
      }
      if (!report.matched_set) { problems.push_back("DP centroids match no enumerated optimal set"); }
    } catch (CapExceeded const &) {
      report.match_checked = false;
    }
  }

  report.passed = problems.empty();
  if (report.passed) {
    report.message = "PASS";
  } else {
    report.message = "FAIL:";
    for (auto const &p : problems) { report.message += " " + p + ";"; }
  }
  return report;
}

} // namespace cantor_quant
