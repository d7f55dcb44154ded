#include "permcode/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "permcode/error.hpp"

namespace permcode {

using nlohmann::json;

namespace {

json perm_json(const Permutation& g) { return g.to_one_based(); }

Permutation perm_from(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "expected an array of images");
  return Permutation::from_one_based(j.get<std::vector<std::int64_t>>());
}

json parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Parse, "expected a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer()) {
    fail(ErrorCode::Parse, "missing format version");
  }
  if (j["version"].get<int>() != kFormatVersion) {
    fail(ErrorCode::Parse, "unsupported format version " + j["version"].dump());
  }
  return j;
}

template <typename F>
auto guarded(F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed key material: ") + e.what());
  }
}

}  // namespace

std::string to_json(const PrivateKey& key) {
  json gens = json::array();
  for (const auto& g : key.generators) gens.push_back(perm_json(g));
  json params{{"m", key.params.m}, {"errors", key.errors}};
  if (key.params.family == Family::Wreath) params["n"] = key.params.n;
  json j{{"version", kFormatVersion},
         {"family", to_string(key.params.family)},
         {"params", params},
         {"generators", gens},
         {"conjugator", perm_json(key.conjugator)}};
  return j.dump() + "\n";
}

std::string to_json(const PublicKey& key) {
  json gens = json::array();
  for (const auto& g : key.generators) gens.push_back(perm_json(g));
  json base = json::array();
  for (Point b : key.base) base.push_back(b + 1);
  json j{{"version", kFormatVersion},
         {"family_degree", key.degree},
         {"generators", gens},
         {"base", base},
         {"r", key.errors},
         {"message_space_size", key.message_space_size.str()}};
  return j.dump() + "\n";
}

std::string to_json(const Ciphertext& c) {
  json j{{"version", kFormatVersion}, {"word", c.word.to_one_based()}, {"checksum", c.checksum}};
  return j.dump() + "\n";
}

PrivateKey private_key_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    PrivateKey key;
    key.params.family = parse_family(j.at("family").get<std::string>());
    const json& params = j.at("params");
    key.params.m = params.at("m").get<std::size_t>();
    if (key.params.family == Family::Wreath) key.params.n = params.at("n").get<std::size_t>();
    key.errors = params.value("errors", key.params.capacity());
    for (const auto& g : j.at("generators")) key.generators.push_back(perm_from(g));
    key.conjugator = perm_from(j.at("conjugator"));
    if (key.conjugator.degree() != key.params.degree()) {
      fail(ErrorCode::Parse, "conjugator degree does not match the family parameters");
    }
    return key;
  });
}

PublicKey public_key_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    PublicKey key;
    key.degree = j.at("family_degree").get<std::size_t>();
    for (const auto& g : j.at("generators")) {
      key.generators.push_back(perm_from(g));
      if (key.generators.back().degree() != key.degree) {
        fail(ErrorCode::Parse, "public generator degree does not match family_degree");
      }
    }
    for (const auto& b : j.at("base")) {
      const auto p = b.get<std::int64_t>();
      if (p < 1 || static_cast<std::size_t>(p) > key.degree) fail(ErrorCode::Parse, "base point out of range");
      key.base.push_back(static_cast<Point>(p - 1));
    }
    key.errors = j.at("r").get<std::size_t>();
    key.message_space_size = parse_bigint(j.at("message_space_size").get<std::string>());
    return key;
  });
}

Ciphertext ciphertext_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    Ciphertext c;
    c.word = Word::from_one_based(j.at("word").get<std::vector<std::int64_t>>());
    c.checksum = j.at("checksum").get<std::string>();
    return c;
  });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

}  // namespace permcode

namespace permcode {

std::string to_json(const AttackReport& report) {
  json recovered = json::object();
  if (report.element) recovered["element"] = perm_json(*report.element);
  if (report.message) recovered["message"] = report.message->str();
  if (report.distance) recovered["distance"] = *report.distance;
  if (report.nearest_count) recovered["nearest_count"] = report.nearest_count;
  if (!report.recovered_generators.empty()) {
    json gens = json::array();
    for (const auto& g : report.recovered_generators) gens.push_back(perm_json(g));
    recovered["generators"] = gens;
  }
  if (report.recovered_conjugator) recovered["conjugator"] = perm_json(*report.recovered_conjugator);
  json j{{"attack", report.attack},
         {"success", report.success},
         {"iterations", report.iterations},
         {"seed", report.seed},
         {"elapsed_ms", report.elapsed_ms},
         {"recovered", recovered}};
  if (report.stream) j["stream"] = *report.stream;
  if (!report.note.empty()) j["note"] = report.note;
  return j.dump() + "\n";
}

}  // namespace permcode
