#include "sobmor/runconfig.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "sobmor/report.hpp"

namespace sobmor {

const char* command_name(Command c) {
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Sigma: return "sigma";
    case Command::VerifyLemma1: return "verify-lemma1";
    case Command::VerifySobolev: return "verify-sobolev";
    case Command::VerifyHolder: return "verify-holder";
    case Command::VerifyMaximal: return "verify-maximal";
    case Command::VerifyPoincare: return "verify-poincare";
    case Command::CexNorms: return "cex-norms";
    case Command::CexFit: return "cex-fit";
    case Command::Report: return "report";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::TypeMismatch,
                "key '" + key + "' expects a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::TypeMismatch,
                "key '" + key + "' expects an integer, got '" + v + "'");
  }
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::TypeMismatch,
                  "config line " + std::to_string(lineno) +
                      " is not `key = value`: '" + t + "'");
    kv.entries.emplace_back(trim(std::string_view(t).substr(0, eq)),
                            trim(std::string_view(t).substr(eq + 1)));
  }
  return kv;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "d",     "p",      "q",         "q1",   "mode",    "theta",
      "n",     "r",      "k0",        "profile", "seeds", "seed_base",
      "cells", "box",    "padding",   "summands", "out",  "format",
      "in",    "field"};
  return keys;
}

void apply_key_values(RunConfig& cfg, const KeyValues& kv) {
  for (const auto& [key, value] : kv.entries) {
    if (key == "d") cfg.d = static_cast<int>(parse_int(key, value));
    else if (key == "p") cfg.p = parse_double(key, value);
    else if (key == "q") cfg.q = parse_double(key, value);
    else if (key == "q1") cfg.q1 = parse_double(key, value);
    else if (key == "mode") cfg.mode = value;
    else if (key == "theta") cfg.theta = parse_double(key, value);
    else if (key == "n") cfg.n = value;
    else if (key == "r") cfg.r = value;
    else if (key == "k0") cfg.k0 = static_cast<int>(parse_int(key, value));
    else if (key == "profile") cfg.profile = value;
    else if (key == "seeds") cfg.seeds = static_cast<int>(parse_int(key, value));
    else if (key == "seed_base")
      cfg.seed_base = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "cells") cfg.cells = static_cast<int>(parse_int(key, value));
    else if (key == "box") cfg.box = parse_double(key, value);
    else if (key == "padding")
      cfg.padding = static_cast<int>(parse_int(key, value));
    else if (key == "summands")
      cfg.summands = static_cast<int>(parse_int(key, value));
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.format = value;
    else if (key == "in") cfg.in = value;
    else if (key == "field") cfg.field = value;
    else
      throw Error(ErrorCode::UnknownKey, "unknown config key '" + key + "'");
  }
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "d = " << cfg.d << '\n';
  out << "p = " << format_double(cfg.p) << '\n';
  out << "q = " << format_double(cfg.q) << '\n';
  out << "q1 = " << format_double(cfg.q1) << '\n';
  out << "mode = " << cfg.mode << '\n';
  out << "theta = " << format_double(cfg.theta) << '\n';
  out << "n = " << cfg.n << '\n';
  out << "r = " << cfg.r << '\n';
  out << "k0 = " << cfg.k0 << '\n';
  out << "profile = " << cfg.profile << '\n';
  out << "seeds = " << cfg.seeds << '\n';
  out << "seed_base = " << cfg.seed_base << '\n';
  out << "cells = " << cfg.cells << '\n';
  out << "box = " << format_double(cfg.box) << '\n';
  out << "padding = " << cfg.padding << '\n';
  out << "summands = " << cfg.summands << '\n';
  out << "out = " << cfg.out << '\n';
  out << "format = " << cfg.format << '\n';
  out << "in = " << cfg.in << '\n';
  out << "field = " << cfg.field << '\n';
  return out.str();
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    const int n = static_cast<int>(parse_int("n", text));
    return {n, n};
  }
  const int lo = static_cast<int>(parse_int("n", text.substr(0, colon)));
  const int hi = static_cast<int>(parse_int("n", text.substr(colon + 1)));
  if (hi < lo)
    throw Error(ErrorCode::TypeMismatch,
                "key 'n' range must be lo:hi, got '" + text + "'");
  return {lo, hi};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string part = trim(
        std::string_view(text).substr(start, comma == std::string::npos
                                                 ? std::string::npos
                                                 : comma - start));
    if (!part.empty()) parts.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::vector<double> parse_r_list(const std::string& text) {
  std::vector<double> rs;
  for (const std::string& part : split_list(text))
    rs.push_back(parse_double("r", part));
  return rs;
}

}  // namespace sobmor
