#include "permcode/reduction.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "json.hpp"
#include "permcode/error.hpp"

namespace permcode {

void Max2SatInstance::validate() const {
  for (const auto& c : clauses) {
    if (c.first.variable >= variables || c.second.variable >= variables) {
      fail(ErrorCode::InvalidArgument, "clause uses an undeclared variable");
    }
    if (c.first.variable == c.second.variable) {
      fail(ErrorCode::InvalidArgument, "clause repeats a variable");
    }
  }
  if (target > clauses.size()) fail(ErrorCode::InvalidArgument, "target exceeds the clause count");
}

Max2SatInstance parse_dimacs(const std::string& text, std::optional<std::size_t> target) {
  std::istringstream lines(text);
  std::string line;
  Max2SatInstance inst;
  std::optional<std::size_t> declared;
  std::vector<std::int64_t> pending;
  std::size_t line_no = 0;
  auto where = [&] { return " (line " + std::to_string(line_no) + ")"; };
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream in(line);
    std::string head;
    if (!(in >> head) || head == "c") continue;
    if (head == "%") break;
    if (head == "p") {
      std::string kind;
      long long n = -1, m = -1;
      if (declared || !(in >> kind >> n >> m) || kind != "cnf" || n < 0 || m < 0) {
        fail(ErrorCode::Parse, "bad problem line" + where());
      }
      inst.variables = static_cast<std::size_t>(n);
      declared = static_cast<std::size_t>(m);
      continue;
    }
    if (!declared) fail(ErrorCode::Parse, "clause before the problem line" + where());
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      std::int64_t lit = 0;
      std::size_t used = 0;
      try {
        lit = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) fail(ErrorCode::Parse, "bad literal '" + token + "'" + where());
      if (lit != 0) {
        if (static_cast<std::size_t>(lit < 0 ? -lit : lit) > inst.variables) {
          fail(ErrorCode::Parse, "literal " + token + " exceeds the variable count" + where());
        }
        pending.push_back(lit);
        continue;
      }
      if (pending.size() != 2) fail(ErrorCode::Parse, "clause must have exactly two literals" + where());
      auto literal = [](std::int64_t l) {
        return Literal{static_cast<std::size_t>((l < 0 ? -l : l) - 1), l < 0};
      };
      Clause c{literal(pending[0]), literal(pending[1])};
      if (c.first.variable == c.second.variable) {
        fail(ErrorCode::Parse, "clause repeats a variable" + where());
      }
      inst.clauses.push_back(c);
      pending.clear();
    }
  }
  if (!declared) fail(ErrorCode::Parse, "missing problem line");
  if (!pending.empty()) fail(ErrorCode::Parse, "unterminated clause");
  if (inst.clauses.size() != *declared) {
    fail(ErrorCode::Parse, "problem line declares " + std::to_string(*declared) + " clauses, found " +
                               std::to_string(inst.clauses.size()));
  }
  inst.target = target.value_or(inst.clauses.size());
  try {
    inst.validate();
  } catch (const Error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  return inst;
}

std::string to_dimacs(const Max2SatInstance& instance) {
  std::ostringstream out;
  out << "p cnf " << instance.variables << ' ' << instance.clauses.size() << '\n';
  auto lit = [](const Literal& l) {
    const auto v = static_cast<std::int64_t>(l.variable + 1);
    return l.negated ? -v : v;
  };
  for (const auto& c : instance.clauses) out << lit(c.first) << ' ' << lit(c.second) << " 0\n";
  return out.str();
}

SubgroupDistanceInstance reduce(const Max2SatInstance& instance) {
  instance.validate();
  const std::size_t degree = 6 * instance.clauses.size();
  std::vector<std::vector<Point>> images(instance.variables, std::vector<Point>(degree));
  for (auto& row : images) {
    for (Point x = 0; x < degree; ++x) row[x] = x;
  }
  std::vector<Point> sigma(degree);
  for (Point x = 0; x < degree; ++x) sigma[x] = x;
  auto swap = [](std::vector<Point>& p, Point a, Point b) { std::swap(p[a], p[b]); };

  for (std::size_t j = 0; j < instance.clauses.size(); ++j) {
    const auto& c = instance.clauses[j];
    const auto base = static_cast<Point>(6 * j);
    auto& first = images[c.first.variable];
    swap(first, base, base + 1);
    swap(first, base + 2, base + 3);
    auto& second = images[c.second.variable];
    swap(second, base, base + 1);
    swap(second, base + 4, base + 5);
    const bool a = c.first.negated, b = c.second.negated;
    if (!a && !b) {
      swap(sigma, base, base + 1);
      swap(sigma, base + 2, base + 3);
      swap(sigma, base + 4, base + 5);
    } else if (a && b) {
      swap(sigma, base, base + 1);
    } else if (a) {
      swap(sigma, base + 4, base + 5);
    } else {
      swap(sigma, base + 2, base + 3);
    }
  }
  SubgroupDistanceInstance out;
  out.degree = degree;
  for (auto& row : images) out.generators.emplace_back(std::move(row));
  out.sigma = Permutation(std::move(sigma));
  out.threshold = 4 * instance.target;
  return out;
}

bool clause_satisfied(const Clause& clause, const std::vector<bool>& assignment) {
  return assignment.at(clause.first.variable) != clause.first.negated ||
         assignment.at(clause.second.variable) != clause.second.negated;
}

std::size_t satisfied_count(const Max2SatInstance& instance, const std::vector<bool>& assignment) {
  if (assignment.size() != instance.variables) {
    fail(ErrorCode::InvalidArgument, "assignment length differs from the variable count");
  }
  return static_cast<std::size_t>(std::count_if(
      instance.clauses.begin(), instance.clauses.end(),
      [&](const Clause& c) { return clause_satisfied(c, assignment); }));
}

std::size_t agreement(const Permutation& g, const Permutation& sigma) {
  if (g.degree() != sigma.degree()) fail(ErrorCode::DegreeMismatch, "agreement: degree mismatch");
  return g.degree() - hamming_distance(g, sigma);
}

Permutation assignment_element(const SubgroupDistanceInstance& reduced,
                               const std::vector<bool>& assignment) {
  if (assignment.size() != reduced.generators.size()) {
    fail(ErrorCode::InvalidArgument, "assignment length differs from the generator count");
  }
  Permutation g = Permutation::identity(reduced.degree);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i]) g = g * reduced.generators[i];
  }
  return g;
}

namespace {

using Bits = std::vector<std::uint64_t>;

void flip(Bits& v, std::size_t i) { v[i / 64] ^= std::uint64_t{1} << (i % 64); }
bool test(const Bits& v, std::size_t i) { return (v[i / 64] >> (i % 64)) & 1; }
void xor_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
std::optional<std::size_t> lowest(const Bits& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(v[i]));
  }
  return std::nullopt;
}

// The transpositions of the common matching, as slot bits; nullopt when g
// is not a product of them.
std::optional<Bits> slots_of(const Permutation& g, const std::vector<std::int64_t>& slot) {
  Bits v((slot.size() + 63) / 64 + 1, 0);
  for (Point x = 0; x < g.degree(); ++x) {
    const Point y = g[x];
    if (y == x) continue;
    if (g[y] != x || slot[x] < 0 || slot[x] != slot[y]) return std::nullopt;
    if (x < y) flip(v, static_cast<std::size_t>(slot[x]));
  }
  return v;
}

}  // namespace

std::optional<std::vector<bool>> decompose(const SubgroupDistanceInstance& instance,
                                           const Permutation& g) {
  const std::size_t n = instance.degree;
  if (g.degree() != n) fail(ErrorCode::DegreeMismatch, "decompose: degree mismatch");
  std::vector<std::int64_t> partner(n, -1), slot(n, -1);
  std::int64_t slots = 0;
  for (const auto& s : instance.generators) {
    for (Point x = 0; x < n; ++x) {
      const Point y = s[x];
      if (y == x) continue;
      if (s[y] != x || (partner[x] >= 0 && partner[x] != y)) {
        fail(ErrorCode::InvalidArgument, "generators do not share one matching");
      }
      partner[x] = y;
      if (slot[x] < 0) slot[x] = slot[y] = slots++;
    }
  }
  const std::size_t gens = instance.generators.size();
  struct Row {
    Bits vec;
    Bits combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < gens; ++i) {
    Bits v = *slots_of(instance.generators[i], slot);
    Bits combo((gens + 63) / 64 + 1, 0);
    flip(combo, i);
    for (const auto& r : rows) {
      if (test(v, r.pivot)) {
        xor_into(v, r.vec);
        xor_into(combo, r.combo);
      }
    }
    if (auto p = lowest(v)) rows.push_back({std::move(v), std::move(combo), *p});
  }
  auto target = slots_of(g, slot);
  if (!target) return std::nullopt;
  Bits combo((gens + 63) / 64 + 1, 0);
  for (const auto& r : rows) {
    if (test(*target, r.pivot)) {
      xor_into(*target, r.vec);
      xor_into(combo, r.combo);
    }
  }
  if (lowest(*target)) return std::nullopt;
  std::vector<bool> mask(gens);
  for (std::size_t i = 0; i < gens; ++i) mask[i] = test(combo, i);
  return mask;
}

Max2SatSolution solve_max2sat_brute(const Max2SatInstance& instance) {
  instance.validate();
  if (instance.variables > kMaxBruteVariables) {
    fail(ErrorCode::LimitExceeded, "too many variables for exhaustive search");
  }
  Max2SatSolution best{0, std::vector<bool>(instance.variables, false)};
  best.satisfied = satisfied_count(instance, best.assignment);
  std::vector<bool> assignment(instance.variables);
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << instance.variables); ++bits) {
    for (std::size_t i = 0; i < instance.variables; ++i) assignment[i] = (bits >> i) & 1;
    const std::size_t s = satisfied_count(instance, assignment);
    if (s > best.satisfied) best = {s, assignment};
  }
  return best;
}

bool commuting_involutions(const std::vector<Permutation>& generators) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& a = generators[i];
    if (!(a * a).is_identity()) return false;
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (a * generators[j] != generators[j] * a) return false;
    }
  }
  return true;
}

SubgroupDistanceSolution solve_subgroup_distance_brute(const SubgroupDistanceInstance& instance) {
  const auto& gens = instance.generators;
  for (const auto& g : gens) {
    if (g.degree() != instance.degree) fail(ErrorCode::DegreeMismatch, "generator degree mismatch");
  }
  if (instance.sigma.degree() != instance.degree) fail(ErrorCode::DegreeMismatch, "sigma degree mismatch");
  if (!commuting_involutions(gens)) {
    fail(ErrorCode::InvalidArgument, "generators are not commuting involutions");
  }
  if (gens.size() > kMaxBruteVariables) fail(ErrorCode::LimitExceeded, "too many generators");

  // Gray code: each step multiplies in one generator.
  Permutation g = Permutation::identity(instance.degree);
  std::vector<bool> mask(gens.size(), false);
  SubgroupDistanceSolution best{agreement(g, instance.sigma), g, mask};
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << gens.size()); ++step) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(step));
    g = g * gens[bit];
    mask[bit] = !mask[bit];
    const std::size_t a = agreement(g, instance.sigma);
    if (a > best.agreement) best = {a, g, mask};
  }
  return best;
}

Max2SatInstance random_max2sat(std::size_t variables, std::size_t clauses, Rng& rng) {
  if (variables < 2 || variables > 2 * clauses) {
    fail(ErrorCode::InvalidArgument, "need 2 <= variables <= 2 * clauses to use every variable");
  }
  std::vector<std::size_t> order(variables);
  for (std::size_t i = 0; i < variables; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<std::size_t> pick(0, variables - 1);
  std::bernoulli_distribution coin(0.5);
  Max2SatInstance inst;
  inst.variables = variables;
  std::size_t next = 0;
  for (std::size_t j = 0; j < clauses; ++j) {
    std::size_t a = next < variables ? order[next++] : pick(rng);
    std::size_t b = next < variables ? order[next++] : pick(rng);
    while (b == a) b = pick(rng);
    if (coin(rng)) std::swap(a, b);
    inst.clauses.push_back({{a, coin(rng)}, {b, coin(rng)}});
  }
  std::shuffle(inst.clauses.begin(), inst.clauses.end(), rng);
  inst.target = clauses;
  return inst;
}

std::string to_json(const SubgroupDistanceInstance& instance) {
  using nlohmann::json;
  json gens = json::array();
  for (const auto& g : instance.generators) gens.push_back(g.to_one_based());
  json j{{"degree", instance.degree},
         {"generators", gens},
         {"sigma", instance.sigma.to_one_based()},
         {"threshold", instance.threshold}};
  return j.dump() + "\n";
}

SubgroupDistanceInstance subgroup_distance_from_json(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    SubgroupDistanceInstance out;
    out.degree = j.at("degree").get<std::size_t>();
    for (const auto& g : j.at("generators")) {
      out.generators.push_back(Permutation::from_one_based(g.get<std::vector<std::int64_t>>()));
    }
    out.sigma = Permutation::from_one_based(j.at("sigma").get<std::vector<std::int64_t>>());
    out.threshold = j.at("threshold").get<std::size_t>();
    for (const auto& g : out.generators) {
      if (g.degree() != out.degree) fail(ErrorCode::Parse, "generator degree mismatch");
    }
    if (out.sigma.degree() != out.degree) fail(ErrorCode::Parse, "sigma degree mismatch");
    return out;
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed instance: ") + e.what());
  }
}

}  // namespace permcode
