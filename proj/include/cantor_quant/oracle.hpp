#pragma once

#include "cantor_quant/quantizer.hpp"
#include "cantor_quant/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Independent optimality check: collapse P onto finitely many atoms with a
// certified error bound, then solve weighted 1-D k-means on the atoms.

namespace cantor_quant {

struct Atom
{
  Rational position;
  Rational weight;
};

/// Atoms sorted strictly by position with positive weights summing to 1.
/// collapse_bound is the total within-piece error discarded by the collapse.
struct DiscreteMeasure
{
  std::vector<Atom> atoms;
  Rational collapse_bound;
};

/// Validates the invariants above; collapse_bound is set to 0 (the atoms are
/// taken as the measure itself).
DiscreteMeasure make_discrete_measure(std::vector<Atom> atoms);

/// Refines every piece of mass > epsilon, peeling children w1, w2, ... off a
/// cell while the remaining tail mass exceeds epsilon, and collapses each
/// leaf cell to a(w) and each remaining tail to a(w, inf). Requires
/// 0 < epsilon <= 1. All atoms end up with mass 2^-ceil(log2(1/epsilon)).
DiscreteMeasure discretize(Rational const &epsilon, std::size_t max_atoms = 1'000'000);

/// Number of atoms discretize(epsilon) produces, without building them.
std::uint64_t discretized_atom_count(Rational const &epsilon);

enum class OracleMethod { ExactDP, Lloyd };

struct OracleResult
{
  std::size_t n = 0;
  std::vector<double> points;
  double distortion = 0.0;
  OracleMethod method = OracleMethod::ExactDP;
  std::size_t iterations = 0;

  // ExactDP: the chosen partition as half-open atom ranges, and its
  // distortion re-evaluated in exact arithmetic.
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  std::optional<Rational> exact_distortion;

  // Lloyd: distortion after every iteration and how many empty clusters were
  // reseeded.
  std::vector<double> history;
  std::size_t reseeds = 0;
};

/// Globally optimal weighted k-means on the atoms via the O(n m^2)
/// interval-cost dynamic program. Ties go to the leftmost split.
OracleResult kmeans_exact_dp(DiscreteMeasure const &measure, std::size_t n);

/// The same program run once for every k = 1..max_n.
std::vector<OracleResult> kmeans_exact_dp_levels(DiscreteMeasure const &measure, std::size_t max_n);

/// Lloyd iteration from n distinct atoms chosen by a partial Fisher-Yates
/// shuffle driven by std::mt19937_64(seed), index i + (draw mod (m - i)).
OracleResult lloyd(DiscreteMeasure const &measure,
                   std::size_t n,
                   std::uint64_t seed,
                   std::size_t max_iter = 1000,
                   double tol = 1e-13);

struct VerificationReport
{
  std::uint64_t n = 0;
  Rational exact_error;
  Rational construction_error;
  bool centroid_condition_ok = false;
  Integer set_count;

  Rational epsilon;
  Rational collapse_bound;
  std::size_t atom_count = 0;
  std::optional<Rational> dp_distortion;
  std::vector<double> dp_points;
  bool within_bound = false;
  bool separated = false;
  bool match_checked = false;
  std::optional<std::size_t> matched_set;
  double match_tolerance = 1e-3;
  bool passed = false;
  std::string message;
};

/// Exact V_n against the DP optimum on discretize(epsilon). Never throws for a
/// failed comparison; the outcome is in `passed` and `message`.
VerificationReport compare(std::uint64_t n,
                           Rational const &epsilon,
                           QuantizerLimits const &limits = {},
                           std::size_t max_atoms = 1'000'000);

} // namespace cantor_quant
