#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sobmor/error.hpp"

namespace sobmor {

enum class Command {
  Validate,
  Sigma,
  VerifyLemma1,
  VerifySobolev,
  VerifyHolder,
  VerifyMaximal,
  VerifyPoincare,
  CexNorms,
  CexFit,
  Report,
};

const char* command_name(Command c);

// Flat option set shared by every subcommand. Values are kept in the exact
// textual shapes used on the command line ("30:44", "2.5,3,4,6") so a parsed
// config re-serializes byte-identically.
struct RunConfig {
  Command command = Command::Validate;

  int d = 2;
  double p = 1.5;
  double q = 2.0;
  double q1 = 1.5;
  std::string mode = "counterexample";  // or "verification"

  double theta = 0.5;
  std::string n = "30:44";  // "lo:hi" or single value
  std::string r = "2.5,3,4,6";
  int k0 = 0;  // 0 = automatic
  std::string profile = "trapezoid";

  int seeds = 50;
  std::uint64_t seed_base = 42;
  int cells = 256;
  double box = 1.0;  // box halfwidth
  int padding = 0;   // 0 = cells / 4
  int summands = 3;

  std::string out = ".";
  std::string format = "csv";  // csv | json
  std::string in;              // comma-separated csv inputs (report)
  std::string field;           // optional binary field input
};

// `key = value` lines, '#' comments, blanks ignored.
struct KeyValues {
  std::vector<std::pair<std::string, std::string>> entries;
};

KeyValues parse_key_values(std::string_view text);

// All recognized config keys, in canonical serialization order.
const std::vector<std::string>& config_keys();

// Applies file entries onto a config. Unknown keys and malformed values
// throw (UnknownKey / TypeMismatch naming the key).
void apply_key_values(RunConfig& cfg, const KeyValues& kv);

// Canonical `key = value` text with every key present.
std::string serialize_config(const RunConfig& cfg);

// Parsed views of the range/list fields.
std::pair<int, int> parse_n_range(const std::string& text);   // TypeMismatch
std::vector<double> parse_r_list(const std::string& text);    // TypeMismatch
std::vector<std::string> split_list(const std::string& text); // on commas

}  // namespace sobmor
