#include "permcode/linear_embed.hpp"

#include <algorithm>

#include "json.hpp"
#include "permcode/error.hpp"

namespace permcode {

bool is_prime(std::size_t q) {
  if (q < 2) return false;
  for (std::size_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

namespace {

std::size_t inverse_mod(std::size_t a, std::size_t q) {
  std::size_t result = 1;
  for (std::size_t e = q - 2, base = a % q; e > 0; e >>= 1, base = base * base % q) {
    if (e & 1) result = result * base % q;
  }
  return result;
}

void require_prime(std::size_t q) {
  if (!is_prime(q)) fail(ErrorCode::InvalidArgument, "alphabet size must be prime, got " + std::to_string(q));
}

}  // namespace

std::size_t rank_mod(std::vector<Vector> rows, std::size_t q) {
  require_prime(q);
  for (auto& row : rows) {
    for (auto& x : row) x %= q;
  }
  std::size_t rank = 0;
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                              [&](const Vector& r) { return r[col] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
    const std::size_t inv = inverse_mod(rows[rank][col], q);
    for (auto& x : rows[rank]) x = x * inv % q;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const std::size_t f = rows[i][col];
      for (std::size_t c = 0; c < width; ++c) rows[i][c] = (rows[i][c] + (q - f) * rows[rank][c]) % q;
    }
    ++rank;
  }
  return rank;
}

void LinearCodeSpec::validate() const {
  require_prime(q);
  for (const auto& v : basis) {
    if (v.size() != n) fail(ErrorCode::InvalidArgument, "basis vector length differs from n");
    for (auto s : v) {
      if (s >= q) fail(ErrorCode::InvalidArgument, "basis symbol out of range");
    }
  }
  if (rank_mod(basis, q) != basis.size()) fail(ErrorCode::InvalidArgument, "basis vectors are dependent");
}

std::size_t weight(const Vector& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto s) { return s != 0; }));
}

Permutation embed_binary_vector(const std::vector<bool>& v) {
  std::vector<Point> images(2 * v.size());
  for (Point i = 0; i < v.size(); ++i) {
    images[2 * i] = v[i] ? 2 * i + 1 : 2 * i;
    images[2 * i + 1] = v[i] ? 2 * i : 2 * i + 1;
  }
  return Permutation(std::move(images));
}

Permutation embed_qary_vector(std::size_t q, const Vector& v) {
  require_prime(q);
  std::vector<Point> images(q * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= q) fail(ErrorCode::InvalidArgument, "symbol out of range");
    for (std::size_t x = 0; x < q; ++x) images[q * i + x] = static_cast<Point>(q * i + (x + v[i]) % q);
  }
  return Permutation(std::move(images));
}

std::optional<Vector> pullback(std::size_t q, const Permutation& g) {
  require_prime(q);
  if (g.degree() % q != 0) return std::nullopt;
  Vector v(g.degree() / q);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point first = g[static_cast<Point>(q * i)];
    if (first < q * i || first >= q * i + q) return std::nullopt;
    v[i] = first - q * i;
    for (std::size_t x = 1; x < q; ++x) {
      if (g[static_cast<Point>(q * i + x)] != q * i + (x + v[i]) % q) return std::nullopt;
    }
  }
  return v;
}

std::vector<Permutation> embed_code(const LinearCodeSpec& spec) {
  spec.validate();
  std::vector<Permutation> out;
  for (const auto& v : spec.basis) out.push_back(embed_qary_vector(spec.q, v));
  return out;
}

std::vector<Vector> codewords(const LinearCodeSpec& spec, std::size_t limit) {
  spec.validate();
  std::size_t count = 1;
  for (std::size_t i = 0; i < spec.basis.size(); ++i) {
    count *= spec.q;
    if (count > limit) fail(ErrorCode::LimitExceeded, "code has too many words to list");
  }
  std::vector<Vector> out;
  std::vector<std::size_t> coeff(spec.basis.size(), 0);
  for (std::size_t w = 0; w < count; ++w) {
    Vector v(spec.n, 0);
    for (std::size_t b = 0; b < coeff.size(); ++b) {
      for (std::size_t x = 0; x < spec.n; ++x) v[x] = (v[x] + coeff[b] * spec.basis[b][x]) % spec.q;
    }
    out.push_back(std::move(v));
    for (std::size_t b = 0; b < coeff.size() && ++coeff[b] == spec.q; ++b) coeff[b] = 0;
  }
  return out;
}

std::size_t minimum_weight(const LinearCodeSpec& spec) {
  std::size_t best = spec.n;
  for (const auto& v : codewords(spec)) {
    if (weight(v) > 0) best = std::min(best, weight(v));
  }
  return best;
}

namespace {

std::vector<bool> bits(const Vector& v) {
  std::vector<bool> b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i] != 0;
  return b;
}

std::size_t vector_distance(const Vector& a, const Vector& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Unique nearest codeword, or nullopt on a tie.
std::optional<Vector> nearest_codeword(const std::vector<Vector>& code, const Vector& v) {
  std::optional<Vector> best;
  std::size_t best_d = v.size() + 1;
  bool tie = false;
  for (const auto& c : code) {
    const std::size_t d = vector_distance(c, v);
    if (d < best_d) {
      best_d = d;
      best = c;
      tie = false;
    } else if (d == best_d) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return best;
}

}  // namespace

CaveatReport demo_error_pattern_caveat(const LinearCodeSpec& spec, Rng& rng) {
  if (spec.q != 2) fail(ErrorCode::InvalidArgument, "the caveat demo takes a binary code");
  const auto code = codewords(spec, 256);
  const std::size_t d = minimum_weight(spec);
  if (d < 3 || code.size() < 2) fail(ErrorCode::InvalidArgument, "the demo needs minimum weight >= 3");
  CaveatReport report;
  report.capacity = (d - 1) / 2;
  std::uniform_int_distribution<std::size_t> pick(0, code.size() - 1);
  const Vector& sent = code[pick(rng)];
  const Permutation image = embed_binary_vector(bits(sent));

  auto linear_decode = [&](const Permutation& received) -> std::optional<Vector> {
    auto v = pullback(2, received);
    if (!v) return std::nullopt;
    return nearest_codeword(code, *v);
  };
  report.zero_error_round_trip = linear_decode(image) == sent;

  // Structured: an embedded error vector of weight t.
  Vector error(spec.n, 0);
  std::vector<std::size_t> positions(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) positions[i] = i;
  std::shuffle(positions.begin(), positions.end(), rng);
  for (std::size_t i = 0; i < report.capacity; ++i) error[positions[i]] = 1;
  const Permutation structured = image * embed_binary_vector(bits(error));
  report.structured_errors = hamming_distance(structured, image);
  report.structured_decoded = linear_decode(structured) == sent;

  // Unstructured: symbols leave their blocks.
  Word word(image);
  if (2 * report.capacity - 1 >= 2) {
    const Point a = image[0], b = image[2];
    word.set(0, b);
    word.set(2, a);
  } else {
    word.set(0, image[0] ^ 2u);
  }
  report.unstructured_errors = hamming_distance(word, image);
  report.unstructured_pullback_defined =
      word.is_permutation() && pullback(2, Permutation(std::vector<Point>(word.symbols().begin(),
                                                                          word.symbols().end())));
  std::size_t best = word.size() + 1, ties = 0;
  bool sent_is_best = false;
  for (const auto& c : code) {
    const std::size_t dist = hamming_distance(embed_binary_vector(bits(c)), word);
    if (dist < best) {
      best = dist;
      ties = 1;
      sent_is_best = c == sent;
    } else if (dist == best) {
      ++ties;
    }
  }
  report.unstructured_nearest_is_sent = sent_is_best && ties == 1;
  return report;
}

LinearCodeSpec linear_code_from_json(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    LinearCodeSpec spec;
    spec.q = j.at("q").get<std::size_t>();
    spec.n = j.at("n").get<std::size_t>();
    spec.basis = j.at("basis").get<std::vector<Vector>>();
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed code spec: ") + e.what());
  }
}

std::string to_json(const LinearCodeSpec& spec) {
  return nlohmann::json{{"q", spec.q}, {"n", spec.n}, {"basis", spec.basis}}.dump() + "\n";
}

std::string to_json(const CaveatReport& r) {
  nlohmann::json j{{"capacity", r.capacity},
                   {"structured", {{"errors", r.structured_errors}, {"decoded", r.structured_decoded}}},
                   {"unstructured",
                    {{"errors", r.unstructured_errors},
                     {"pullback_defined", r.unstructured_pullback_defined},
                     {"nearest_is_sent", r.unstructured_nearest_is_sent}}},
                   {"zero_error_round_trip", r.zero_error_round_trip}};
  return j.dump() + "\n";
}

}  // namespace permcode
