#include "permcode/two_subsets.hpp"

#include <algorithm>

#include "permcode/error.hpp"

namespace permcode {

std::size_t pair_count(std::size_t m) { return m * (m - 1) / 2; }

Point pair_index(std::size_t m, Point i, Point j) {
  if (i > j) std::swap(i, j);
  if (i == j || j >= m) fail(ErrorCode::OutOfRange, "not a 2-subset of {0..m-1}");
  return static_cast<Point>(i * (2 * m - i - 1) / 2 + (j - i - 1));
}

std::pair<Point, Point> pair_of(std::size_t m, Point index) {
  if (index >= pair_count(m)) fail(ErrorCode::OutOfRange, "2-subset index out of range");
  Point i = 0;
  while (index >= m - 1 - i) {
    index -= static_cast<Point>(m - 1 - i);
    ++i;
  }
  return {i, i + 1 + index};
}

Permutation induced_action(std::size_t m, const Permutation& g) {
  if (g.degree() != m) fail(ErrorCode::DegreeMismatch, "induced_action: degree must be m");
  std::vector<Point> images(pair_count(m));
  Point idx = 0;
  for (Point i = 0; i < m; ++i) {
    for (Point j = i + 1; j < m; ++j) images[idx++] = pair_index(m, g[i], g[j]);
  }
  return Permutation(std::move(images));
}

namespace {

std::vector<Permutation> natural_generators(std::size_t m) {
  std::vector<Point> cycle(m);
  for (Point x = 0; x < m; ++x) cycle[x] = static_cast<Point>((x + 1) % m);
  std::vector<Point> swap12(m);
  for (Point x = 0; x < m; ++x) swap12[x] = x;
  std::swap(swap12[0], swap12[1]);
  return {induced_action(m, Permutation(swap12)), induced_action(m, Permutation(cycle))};
}

void verify_decomposition(std::size_t m, const HamiltonianDecomposition& d) {
  std::vector<int> used(pair_count(m), 0);
  for (const auto& cycle : d.cycles) {
    std::vector<Point> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    for (Point x = 0; x < m; ++x) {
      if (sorted.size() != m || sorted[x] != x) fail(ErrorCode::Internal, "cycle is not Hamiltonian");
    }
    for (std::size_t t = 0; t < m; ++t) ++used[pair_index(m, cycle[t], cycle[(t + 1) % m])];
  }
  std::vector<bool> matched(m, false);
  for (auto [a, b] : d.matching) {
    if (matched[a] || matched[b]) fail(ErrorCode::Internal, "matching is not perfect");
    matched[a] = matched[b] = true;
    ++used[pair_index(m, a, b)];
  }
  if (!d.matching.empty() && std::find(matched.begin(), matched.end(), false) != matched.end()) {
    fail(ErrorCode::Internal, "matching is not perfect");
  }
  if (std::any_of(used.begin(), used.end(), [](int u) { return u != 1; })) {
    fail(ErrorCode::Internal, "decomposition is not an edge partition");
  }
}

}  // namespace

HamiltonianDecomposition walecki_decomposition(std::size_t m) {
  if (m < 3) fail(ErrorCode::InvalidArgument, "walecki_decomposition: m must be >= 3");
  // Residues mod z on a circle plus a centre vertex (label m-1); each cycle
  // runs centre, i, i+1, i-1, i+2, i-2, ... and back to the centre.
  const std::size_t z = m - 1;
  const std::size_t rotations = m % 2 ? (m - 1) / 2 : (m - 2) / 2;
  const auto centre = static_cast<Point>(m - 1);
  HamiltonianDecomposition d;
  for (std::size_t i = 0; i < rotations; ++i) {
    std::vector<Point> cycle{centre};
    for (std::size_t t = 0; t < z; ++t) {
      const auto step = static_cast<std::ptrdiff_t>((t + 1) / 2);
      const std::ptrdiff_t offset = t % 2 ? step : -step;
      const auto zz = static_cast<std::ptrdiff_t>(z);
      cycle.push_back(static_cast<Point>(((static_cast<std::ptrdiff_t>(i) + offset) % zz + zz) % zz));
    }
    d.cycles.push_back(std::move(cycle));
  }
  if (m % 2 == 0) {
    std::vector<bool> used(pair_count(m), false);
    for (const auto& cycle : d.cycles) {
      for (std::size_t t = 0; t < m; ++t) used[pair_index(m, cycle[t], cycle[(t + 1) % m])] = true;
    }
    for (Point e = 0; e < used.size(); ++e) {
      if (!used[e]) d.matching.push_back(pair_of(m, e));
    }
  }
  verify_decomposition(m, d);
  return d;
}

std::vector<std::vector<Point>> vgraph_bases(std::size_t m, const std::vector<Point>& cycle) {
  if (m < 3) fail(ErrorCode::InvalidArgument, "vgraph_bases: m must be >= 3");
  {
    std::vector<Point> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    bool hamiltonian = sorted.size() == m;
    for (Point x = 0; hamiltonian && x < m; ++x) hamiltonian = sorted[x] == x;
    if (!hamiltonian) fail(ErrorCode::InvalidArgument, "vgraph_bases: not a Hamiltonian cycle");
  }
  // Deleted cycle positions (edge t joins cycle[t] and cycle[t+1]). For
  // m = 2 mod 3 the final gap is split 4,1 so that a single vertex ends up
  // isolated and no edge does.
  std::vector<std::size_t> pattern;
  for (std::size_t t = 0; t < m; t += 3) pattern.push_back(t);
  if (m % 3 == 2) pattern.back() = m - 1;

  std::vector<std::size_t> rotations{0, 1, 2};
  std::vector<bool> deleted(m, false);
  auto mark = [&](std::size_t rho) {
    bool fresh = false;
    for (std::size_t t : pattern) {
      fresh |= !deleted[(t + rho) % m];
      deleted[(t + rho) % m] = true;
    }
    return fresh;
  };
  for (std::size_t rho : rotations) mark(rho);
  for (std::size_t rho = 3; rho < m; ++rho) {
    if (std::find(deleted.begin(), deleted.end(), false) == deleted.end()) break;
    std::vector<bool> before = deleted;
    if (mark(rho)) {
      rotations.push_back(rho);
    } else {
      deleted = std::move(before);
    }
  }

  const auto generators = natural_generators(m);
  const BigInt order = factorial(m);
  std::vector<std::vector<Point>> bases;
  for (std::size_t rho : rotations) {
    std::vector<bool> drop(m, false);
    for (std::size_t t : pattern) drop[(t + rho) % m] = true;
    std::vector<Point> edges;
    for (std::size_t t = 0; t < m; ++t) {
      if (!drop[t]) edges.push_back(pair_index(m, cycle[t], cycle[(t + 1) % m]));
    }
    if (check_base(generators, edges, order).is_base &&
        std::find(bases.begin(), bases.end(), edges) == bases.end()) {
      bases.push_back(std::move(edges));
    }
  }
  return bases;
}

Ubb build_ubb(std::size_t m) {
  if (m < 5) fail(ErrorCode::InvalidArgument, "build_ubb: m must be >= 5");
  Ubb ubb;
  for (const auto& cycle : walecki_decomposition(m).cycles) {
    for (auto& base : vgraph_bases(m, cycle)) ubb.bases.push_back(std::move(base));
  }
  const std::size_t n = pair_count(m);
  const std::size_t r = m - 3;
  bool ok = true;
  if (m <= 8) {
    ok = ubb_avoids_all(ubb, n, r);
  } else {
    Rng rng(derive_seed(m, 0x0bb));
    ok = !ubb_find_hitting_sample(ubb, n, r, 100000, rng);
  }
  if (!ok) fail(ErrorCode::Internal, "V-graph family fails the avoidance property");
  return ubb;
}

TwoSubsetCode::TwoSubsetCode(std::size_t m) : m_(m) {
  if (m < 5) fail(ErrorCode::InvalidArgument, "two-subsets code needs m >= 5");
  generators_ = natural_generators(m);
  ubb_ = build_ubb(m);
  decoder_ = make_ubb_decoder(generators_, ubb_, factorial(m), capacity());
}

}  // namespace permcode
