#include "permcode/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "permcode/analysis.hpp"
#include "permcode/attacks.hpp"
#include "permcode/crypto.hpp"
#include "permcode/error.hpp"
#include "permcode/linear_embed.hpp"
#include "permcode/reduction.hpp"
#include "permcode/stab_chain.hpp"
#include "permcode/two_subsets.hpp"
#include "permcode/wreath.hpp"

namespace permcode {

namespace {

std::size_t closure_size(const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation::identity(gens.front().degree())};
  std::vector<Permutation> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier) {
      for (const auto& s : gens) {
        if (auto h = g * s; seen.insert(h).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

std::size_t brute_minimal_degree(const std::vector<Permutation>& gens) {
  std::size_t best = gens.front().degree();
  build_chain(gens).for_each_element([&](const Permutation& g) {
    if (!g.is_identity()) best = std::min(best, support(g).size());
    return true;
  });
  return best;
}

BigInt random_index(const BigInt& bound, Rng& rng) {
  BigInt k = 0;
  for (int d = 0; d < 8; ++d) k = (k << 64) + rng();
  return k % bound;
}

KeyPair make_keys(Family family, std::size_t m, std::size_t n, Rng& rng) {
  KeygenOptions options;
  options.params = {family, m, n};
  return keygen(options, rng);
}

using Check = std::function<std::string(Rng&)>;  // empty string = pass

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

std::vector<std::pair<std::string, Check>> checks() {
  return {
      {"schreier-sims order vs closure",
       [](Rng& rng) -> std::string {
         for (int t = 0; t < 10; ++t) {
           std::vector<Permutation> gens{random_permutation(7, rng), random_permutation(7, rng)};
           if (build_chain(gens).order() != closure_size(gens)) return "order differs from closure";
         }
         return "";
       }},
      {"decoding thresholds m=5 n=100",
       [](Rng&) -> std::string {
         const std::pair<const char*, std::size_t> cases[] = {
             {"0.95", 19}, {"0.90", 24}, {"0.80", 31}, {"0.50", 46}};
         for (auto [level, k] : cases) {
           if (correctable_threshold(5, 100, 2, parse_probability(level)) != k) {
             return std::string("threshold at ") + level;
           }
         }
         return "";
       }},
      {"pattern count vs majority decoding",
       [](Rng& rng) -> std::string {
         for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 3}, {5, 2}, {3, 4}}) {
           WreathCode code(m, n);
           const Permutation g = code.to_permutation(code.random_element(rng));
           std::vector<BigInt> counts(code.degree() + 1, 0);
           for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << code.degree()); ++mask) {
             Word w(g);
             std::size_t k = 0;
             for (Point x = 0; x < code.degree(); ++x) {
               if (!(mask >> x & 1u)) continue;
               ++k;
               const Point s = g[x];
               w.set(x, static_cast<Point>(((s / m + 1) % n) * m + (s % m + 1) % m));
             }
             auto out = code.decode_majority(w);
             if (out.element && *out.element == g) counts[k] += 1;
           }
           for (std::size_t k = 0; k <= code.degree(); ++k) {
             if (counts[k] != correctable_pattern_count(m, n, code.capacity(), k)) {
               return "count differs at m=" + std::to_string(m) + " n=" + std::to_string(n);
             }
           }
         }
         return "";
       }},
      {"minimal degrees",
       [](Rng&) -> std::string {
         for (std::size_t m : {5, 6}) {
           if (brute_minimal_degree(TwoSubsetCode(m).generators()) != 2 * (m - 2)) return "two-subsets";
         }
         for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 3}, {4, 2}}) {
           if (brute_minimal_degree(WreathCode(m, n).generators()) != m) return "wreath";
         }
         return "";
       }},
      {"UBB avoidance",
       [](Rng&) -> std::string {
         for (std::size_t m : {5, 6, 7}) {
           TwoSubsetCode code(m);
           if (!ubb_avoids_all(code.ubb(), code.degree(), code.capacity())) return "two-subsets m=" + std::to_string(m);
         }
         WreathCode wreath(5, 3);
         return expect(ubb_avoids_all(wreath.row_ubb(), wreath.degree(), wreath.capacity()), "wreath row UBB");
       }},
      {"cryptosystem round trip",
       [](Rng& rng) -> std::string {
         for (auto [family, m, n] : {std::tuple<Family, std::size_t, std::size_t>{Family::Wreath, 5, 10},
                                     {Family::TwoSubsets, 7, 0}}) {
           for (int key = 0; key < 5; ++key) {
             auto keys = make_keys(family, m, n, rng);
             PublicContext pk(keys.public_key);
             PrivateContext sk(keys.private_key);
             for (int t = 0; t < 20; ++t) {
               auto index = random_index(pk.key().message_space_size, rng);
               if (decrypt(sk, pk, encrypt(pk, index, rng)).message != index) {
                 return "round trip failed for " + to_string(family);
               }
             }
           }
         }
         return "";
       }},
      {"ISD per-iteration success bound",
       [](Rng& rng) -> std::string {
         auto keys = make_keys(Family::Wreath, 5, 10, rng);
         PublicContext pk(keys.public_key);
         const double p = 780.0 / 1225.0;
         const int trials = 400;
         int wins = 0;
         for (int t = 0; t < trials; ++t) {
           auto h = pk.message_element(random_index(pk.key().message_space_size, rng));
           wins += isd_iteration(pk.key().generators, pk.key().message_space_size,
                                 add_errors(h, 2, rng), 2, rng)
                       .has_value();
         }
         const double rate = static_cast<double>(wins) / trials;
         return expect(rate >= p - 3 * std::sqrt(p * (1 - p) / trials), "rate " + std::to_string(rate));
       }},
      {"block-system attack",
       [](Rng& rng) -> std::string {
         auto keys = make_keys(Family::Wreath, 5, 10, rng);
         PublicContext pk(keys.public_key);
         BlockSystemAttack attack(pk);
         for (int t = 0; t < 50; ++t) {
           auto index = random_index(pk.key().message_space_size, rng);
           if (attack.attack(encrypt(pk, index, rng)).message != index) return "plaintext not recovered";
         }
         return "";
       }},
      {"conjugator search",
       [](Rng& rng) -> std::string {
         auto keys = make_keys(Family::TwoSubsets, 5, 0, rng);
         PublicContext pk(keys.public_key);
         auto report = conjugator_search_attack(pk, 5);
         return expect(report.success, "no key recovered: " + report.note);
       }},
      {"Max-2-SAT reduction",
       [](Rng& rng) -> std::string {
         for (int t = 0; t < 10; ++t) {
           auto inst = random_max2sat(6, 8, rng);
           auto red = reduce(inst);
           if (!commuting_involutions(red.generators)) return "generators do not commute";
           if (build_chain(red.generators).order() != 64) return "group order is not 2^n";
           if (solve_subgroup_distance_brute(red).agreement != 4 * solve_max2sat_brute(inst).satisfied) {
             return "optimum is not 4k";
           }
         }
         return "";
       }},
      {"security curve below 80 bits",
       [](Rng&) -> std::string {
         for (std::size_t m = 5; m <= 1000; ++m) {
           if (security_bits_two_subsets(m) >= 80) return "m=" + std::to_string(m);
         }
         return "";
       }},
      {"embedding distance expansion",
       [](Rng&) -> std::string {
         LinearCodeSpec hamming{2, 7, {{1, 0, 0, 0, 1, 1, 0}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 0, 1, 1},
                                       {0, 0, 0, 1, 1, 1, 1}}};
         auto words = codewords(hamming);
         for (const auto& a : words) {
           for (const auto& b : words) {
             std::size_t d = 0;
             for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
             if (hamming_distance(embed_qary_vector(2, a), embed_qary_vector(2, b)) != 2 * d) {
               return "distance not doubled";
             }
           }
         }
         return "";
       }},
  };
}

}  // namespace

std::vector<CheckResult> run_verify_suite(std::uint64_t seed) {
  std::vector<CheckResult> results;
  std::uint64_t stream = 0;
  for (auto& [name, check] : checks()) {
    Rng rng(derive_seed(seed, stream++));
    const auto start = std::chrono::steady_clock::now();
    CheckResult result{name, false, "", 0};
    try {
      result.detail = check(rng);
      result.passed = result.detail.empty();
    } catch (const std::exception& e) {
      result.detail = std::string("exception: ") + e.what();
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(result));
  }
  return results;
}

std::string format_check_table(const std::vector<CheckResult>& results) {
  std::size_t width = 5;
  for (const auto& r : results) width = std::max(width, r.name.size());
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-6s %10s  %s\n", static_cast<int>(width), "check", "result",
                "ms", "detail");
  out << line;
  std::size_t failed = 0;
  for (const auto& r : results) {
    failed += !r.passed;
    std::snprintf(line, sizeof line, "%-*s  %-6s %10.1f  %s\n", static_cast<int>(width), r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.elapsed_ms, r.detail.c_str());
    out << line;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return out.str();
}

}  // namespace permcode
