#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permcode/permcode.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kDecodeFailure = 2, kBudgetExhausted = 3, kVerificationFailed = 4 };

struct Failure : std::runtime_error {
  int code;
  Failure(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Owned C string from the library.
struct CString {
  char* p = nullptr;
  ~CString() { pc_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using PrivateKey = Handle<pc_private_key, pc_private_key_free>;
using PublicKey = Handle<pc_public_key, pc_public_key_free>;
using Ciphertext = Handle<pc_ciphertext, pc_ciphertext_free>;

void check(pc_status status) {
  if (status == PC_OK) return;
  const int code = status == PC_DECODE_FAILURE        ? kDecodeFailure
                   : status == PC_BUDGET_EXHAUSTED    ? kBudgetExhausted
                   : status == PC_VERIFICATION_FAILED ? kVerificationFailed
                                                      : kUsage;
  throw Failure(code, std::string(pc_status_name(status)) + ": " + pc_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kUsage, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// "-" or empty writes to stdout.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure(kUsage, "cannot write " + path);
}

// "a:b[:step]", "a,b,c" or a single value.
std::vector<std::size_t> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw Failure(kUsage, "bad range '" + text + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::size_t> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(number(part));
    if (parts.size() < 2 || parts.size() > 3 || (parts.size() == 3 && parts[2] == 0) || parts[0] > parts[1]) {
      throw Failure(kUsage, "bad range '" + text + "'");
    }
    const std::size_t step = parts.size() == 3 ? parts[2] : 1;
    for (std::size_t v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    return out;
  }
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) out.push_back(number(part));
  if (out.empty()) throw Failure(kUsage, "empty range");
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation-group codes: keys, encryption, attacks, analysis, reductions"};
  app.require_subcommand(1);

  std::string family, out_private, out_public, public_path, private_path, in_path, out_path, message, kind,
      report_path, m_range, n_range, levels = "0.95,0.90,0.80,0.50";
  std::size_t m = 0, n = 0;
  long long errors = -1, target = -1, pivot = -1;
  std::uint64_t seed = 0, budget = 0;
  unsigned threads = 1;
  bool verify_reduction = false;

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  keygen->add_option("--family", family, "wreath or two-subsets")->required();
  keygen->add_option("--m", m, "rows (wreath) or points (two-subsets)")->required();
  keygen->add_option("--n", n, "columns (wreath only)");
  keygen->add_option("--errors", errors, "errors added by encryption (default: capacity)");
  keygen->add_option("--seed", seed)->required();
  keygen->add_option("--out-private", out_private)->required();
  keygen->add_option("--out-public", out_public)->required();

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a message index");
  encrypt->add_option("--public", public_path)->required();
  encrypt->add_option("--message", message, "decimal index")->required();
  encrypt->add_option("--seed", seed)->required();
  encrypt->add_option("--out", out_path, "ciphertext file (default stdout)");

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext");
  decrypt->add_option("--private", private_path)->required();
  decrypt->add_option("--public", public_path)->required();
  decrypt->add_option("--in", in_path)->required();

  auto* attack = app.add_subcommand("attack", "Run an attack from public data");
  attack->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"brute-enum", "brute-ball", "isd", "block", "conjugator"}));
  attack->add_option("--public", public_path)->required();
  attack->add_option("--in", in_path, "ciphertext (not used by conjugator)");
  attack->add_option("--seed", seed)->required();
  attack->add_option("--budget", budget, "iteration or enumeration limit");
  attack->add_option("--threads", threads, "isd workers")->check(CLI::Range(1u, 256u));
  attack->add_option("--pivot", pivot, "conjugator: public generator index");
  attack->add_option("--report", report_path, "report file (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "Emit analysis curves as CSV");
  analyze->add_option("curve", kind)
      ->required()
      ->check(CLI::IsMember({"decoding-curve", "threshold-curve", "security-wreath", "security-two-subsets"}));
  analyze->add_option("--m", m_range, "a:b[:step] or a,b,...")->required();
  analyze->add_option("--n-range,--n", n_range, "a:b[:step] or a,b,...");
  analyze->add_option("--levels", levels, "comma-separated probabilities");
  analyze->add_option("--out", out_path, "CSV file (default stdout)");

  auto* reduce = app.add_subcommand("reduce", "Reduce Max-2-SAT to subgroup distance");
  reduce->add_option("--in", in_path, "DIMACS CNF")->required();
  reduce->add_option("--k", target, "clauses to satisfy (default: all)");
  reduce->add_option("--out", out_path, "instance file (default stdout)");
  reduce->add_flag("--verify", verify_reduction, "check the optimum correspondence by brute force");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  std::uint64_t verify_seed = 2024;
  verify->add_option("--seed", verify_seed, "default 2024");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*keygen) {
      PrivateKey sk;
      PublicKey pk;
      check(pc_keygen(family.c_str(), m, n, errors, seed, &sk.p, &pk.p));
      CString sk_text, pk_text;
      check(pc_private_key_to_json(sk.p, &sk_text.p));
      check(pc_public_key_to_json(pk.p, &pk_text.p));
      write_output(out_private, sk_text.str());
      write_output(out_public, pk_text.str());
    } else if (*encrypt) {
      PublicKey pk;
      check(pc_public_key_from_json(read_file(public_path).c_str(), &pk.p));
      Ciphertext c;
      check(pc_encrypt(pk.p, message.c_str(), seed, &c.p));
      CString text;
      check(pc_ciphertext_to_json(c.p, &text.p));
      write_output(out_path, text.str());
    } else if (*decrypt) {
      PrivateKey sk;
      PublicKey pk;
      Ciphertext c;
      check(pc_private_key_from_json(read_file(private_path).c_str(), &sk.p));
      check(pc_public_key_from_json(read_file(public_path).c_str(), &pk.p));
      check(pc_ciphertext_from_json(read_file(in_path).c_str(), &c.p));
      CString index;
      const pc_status status = pc_decrypt(sk.p, pk.p, c.p, &index.p);
      if (status == PC_DECODE_FAILURE) {
        std::cout << "DECODE_FAILURE\n";
        std::cerr << pc_last_error() << "\n";
        return kDecodeFailure;
      }
      check(status);
      std::cout << index.str() << "\n";
    } else if (*attack) {
      PublicKey pk;
      check(pc_public_key_from_json(read_file(public_path).c_str(), &pk.p));
      Ciphertext c;
      if (!in_path.empty()) check(pc_ciphertext_from_json(read_file(in_path).c_str(), &c.p));
      if (kind != "conjugator" && !c.p) throw Failure(kUsage, "--in is required for this attack");
      pc_attack_options options{seed, budget, threads, pivot};
      CString report;
      const pc_status status = pc_attack(kind.c_str(), pk.p, c.p, &options, &report.p);
      if (report.p) write_output(report_path, report.str());
      if (status == PC_BUDGET_EXHAUSTED) {
        std::cerr << "attack failed: " << pc_last_error() << "\n";
        return kBudgetExhausted;
      }
      check(status);
    } else if (*analyze) {
      const auto ms = parse_range(m_range);
      std::vector<std::size_t> ns;
      if (!n_range.empty()) ns = parse_range(n_range);
      const auto level_strings = split(levels);
      std::vector<const char*> level_ptrs;
      for (const auto& l : level_strings) level_ptrs.push_back(l.c_str());
      CString csv;
      check(pc_analyze(kind.c_str(), ms.data(), ms.size(), ns.data(), ns.size(), level_ptrs.data(),
                       level_ptrs.size(), &csv.p));
      write_output(out_path, csv.str());
    } else if (*reduce) {
      CString instance, summary;
      const pc_status status = pc_reduce(read_file(in_path).c_str(), target, verify_reduction ? 1 : 0,
                                         &instance.p, &summary.p);
      if (instance.p) write_output(out_path, instance.str());
      if (summary.p) (out_path.empty() || out_path == "-" ? std::cerr : std::cout) << summary.str();
      check(status);
    } else if (*verify) {
      CString table;
      const pc_status status = pc_verify(verify_seed, &table.p);
      std::cout << table.str();
      if (status == PC_VERIFICATION_FAILED) return kVerificationFailed;
      check(status);
    }
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  }
  return kOk;
}
