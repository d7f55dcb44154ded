#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permcode/perm.hpp"

namespace permcode {

struct Literal {
  std::size_t variable = 0;  // 0-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Two literals on distinct variables; their order matters to the gadget.
struct Clause {
  Literal first;
  Literal second;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Max2SatInstance {
  std::size_t variables = 0;
  std::vector<Clause> clauses;
  std::size_t target = 0;  // k: satisfy at least this many clauses

  /// Throws InvalidArgument on out-of-range or repeated variables, or k
  /// above the clause count.
  void validate() const;
};

/// Is there g in <generators> agreeing with sigma on at least `threshold`
/// points?
struct SubgroupDistanceInstance {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  Permutation sigma;
  std::size_t threshold = 0;
};

/// DIMACS CNF with exactly two literals per clause. The target defaults to
/// the clause count.
Max2SatInstance parse_dimacs(const std::string& text, std::optional<std::size_t> target = {});
std::string to_dimacs(const Max2SatInstance& instance);

/// Clause j owns points 6j..6j+5. A variable in first position swaps the
/// gadget's pairs (0 1)(2 3), in second position (0 1)(4 5).
SubgroupDistanceInstance reduce(const Max2SatInstance& instance);

bool clause_satisfied(const Clause& clause, const std::vector<bool>& assignment);
std::size_t satisfied_count(const Max2SatInstance& instance, const std::vector<bool>& assignment);
/// Points x with x.g == x.sigma.
std::size_t agreement(const Permutation& g, const Permutation& sigma);

/// Product of the generators of the true variables.
Permutation assignment_element(const SubgroupDistanceInstance& reduced,
                               const std::vector<bool>& assignment);
/// Writes g as a product of generators (one flag per generator), or nullopt
/// outside the group. Requires every generator to be a product of
/// transpositions from one common matching.
std::optional<std::vector<bool>> decompose(const SubgroupDistanceInstance& instance,
                                           const Permutation& g);

struct Max2SatSolution {
  std::size_t satisfied = 0;
  std::vector<bool> assignment;
};
inline constexpr std::size_t kMaxBruteVariables = 24;
/// Exhaustive over all assignments; throws LimitExceeded above 24 variables.
Max2SatSolution solve_max2sat_brute(const Max2SatInstance& instance);

struct SubgroupDistanceSolution {
  std::size_t agreement = 0;
  Permutation element;
  std::vector<bool> generator_mask;  // the subset of generators multiplied
};
/// Exhaustive over generator subsets of an elementary abelian 2-group.
/// Throws InvalidArgument if the generators are not commuting involutions
/// and LimitExceeded with more than 24 generators.
SubgroupDistanceSolution solve_subgroup_distance_brute(const SubgroupDistanceInstance& instance);

bool commuting_involutions(const std::vector<Permutation>& generators);

/// Random clauses over distinct variable pairs, every variable used.
/// Needs 2 <= variables <= 2 * clauses.
Max2SatInstance random_max2sat(std::size_t variables, std::size_t clauses, Rng& rng);

/// {degree, generators, sigma, threshold}, 1-based.
std::string to_json(const SubgroupDistanceInstance& instance);
SubgroupDistanceInstance subgroup_distance_from_json(const std::string& text);

}  // namespace permcode
