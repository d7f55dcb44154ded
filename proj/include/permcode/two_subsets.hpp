#pragma once

#include <utility>
#include <vector>

#include "permcode/perm.hpp"
#include "permcode/stab_chain.hpp"
#include "permcode/ubb.hpp"

namespace permcode {

// S_m acting on the n = m(m-1)/2 two-element subsets of {0..m-1}. Subsets
// {i,j}, i<j, are numbered in lexicographic order; 2-subsets double as the
// edges of K_m.

std::size_t pair_count(std::size_t m);
Point pair_index(std::size_t m, Point i, Point j);
std::pair<Point, Point> pair_of(std::size_t m, Point index);

Permutation induced_action(std::size_t m, const Permutation& g);

struct HamiltonianDecomposition {
  std::vector<std::vector<Point>> cycles;       // vertex sequences of length m
  std::vector<std::pair<Point, Point>> matching;  // empty for odd m
};

/// Walecki's decomposition of K_m; verified before returning.
HamiltonianDecomposition walecki_decomposition(std::size_t m);

/// V-graphs of one Hamiltonian cycle (every third edge deleted, over several
/// rotations of the deletion pattern), each given as its list of edge
/// indices and each verified to be a base.
std::vector<std::vector<Point>> vgraph_bases(std::size_t m, const std::vector<Point>& cycle);

/// All V-graphs of the Walecki decomposition; the (m-3)-avoidance property
/// is verified exhaustively for m <= 8 and on random samples above.
Ubb build_ubb(std::size_t m);

class TwoSubsetCode {
 public:
  explicit TwoSubsetCode(std::size_t m);

  std::size_t m() const noexcept { return m_; }
  std::size_t degree() const noexcept { return pair_count(m_); }
  std::size_t minimal_degree() const noexcept { return 2 * (m_ - 2); }
  std::size_t capacity() const noexcept { return m_ - 3; }
  /// Induced (1 2) and (1 2 ... m).
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  BigInt order() const { return factorial(m_); }
  const Ubb& ubb() const noexcept { return ubb_; }
  const UbbDecoder& decoder() const noexcept { return decoder_; }

  std::optional<Permutation> decode(const Word& w, UbbDecodeStats* stats = nullptr) const {
    return decoder_.decode(w, stats);
  }

 private:
  std::size_t m_;
  std::vector<Permutation> generators_;
  Ubb ubb_;
  UbbDecoder decoder_;
};

}  // namespace permcode
