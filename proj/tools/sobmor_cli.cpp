// Command-line front end: parses flags plus an optional `key = value` config
// file (flags win), runs one verification command, writes CSV/JSON artifacts
// atomically, and reports per-check pass/fail with stage timings on stdout.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 configuration error,
// 3 I/O error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sobmor/family.hpp"
#include "sobmor/inequality.hpp"
#include "sobmor/report.hpp"
#include "sobmor/runconfig.hpp"

namespace {

using namespace sobmor;
using Clock = std::chrono::steady_clock;

struct Check {
  std::string name;
  bool pass = false;
};

struct Stage {
  std::string name;
  double seconds = 0.0;
};

struct Outcome {
  std::vector<Check> checks;
  std::vector<Stage> stages;
};

class StageTimer {
 public:
  StageTimer(Outcome& out, std::string name)
      : out_(out), name_(std::move(name)), start_(Clock::now()) {}
  ~StageTimer() {
    const double s =
        std::chrono::duration<double>(Clock::now() - start_).count();
    out_.stages.push_back({name_, s});
  }

 private:
  Outcome& out_;
  std::string name_;
  Clock::time_point start_;
};

ParamMode mode_from_string(const std::string& m) {
  if (m == "verification") return ParamMode::Verification;
  if (m == "counterexample") return ParamMode::Counterexample;
  throw Error(ErrorCode::TypeMismatch,
              "key 'mode' expects verification|counterexample, got '" + m +
                  "'");
}

std::string artifact_ext(const RunConfig& cfg) {
  if (cfg.format == "csv") return ".csv";
  if (cfg.format == "json") return ".json";
  throw Error(ErrorCode::TypeMismatch,
              "key 'format' expects csv|json, got '" + cfg.format + "'");
}

void emit(const RunConfig& cfg, const std::string& stem, const Table& t) {
  const std::filesystem::path path =
      std::filesystem::path(cfg.out) / (stem + artifact_ext(cfg));
  write_atomic(path, cfg.format == "csv" ? to_csv(t) : to_json(t));
}

GridField seeded_field(const RunConfig& cfg, std::uint64_t seed, int cells,
                       int padding) {
  TestFunctionSpec spec;
  spec.seed = seed;
  spec.count = cfg.summands;
  Box box;
  for (int a = 0; a < cfg.d; ++a) {
    box.lo[a] = -cfg.box;
    box.hi[a] = cfg.box;
  }
  std::array<int, 3> ext{1, 1, 1};
  for (int a = 0; a < cfg.d; ++a) ext[a] = cells;
  return random_field(spec, cfg.d, box, ext, padding);
}

int grid_padding(const RunConfig& cfg, int cells) {
  return cfg.padding > 0 ? cfg.padding : cells / 4;
}

// ---------------------------------------------------------------- commands

void run_validate(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "validate");
  const ParamSet ps =
      validate(cfg.d, cfg.p, cfg.q, cfg.q1, mode_from_string(cfg.mode));
  Table table;
  table.columns = {"d",     "p",     "q",           "q1",    "mode",
                   "theta", "alpha", "sobolev_exp", "r_low", "adm_lo",
                   "adm_hi", "ext_lo", "ext_hi"};
  const RInterval adm = admissible_range(ps);
  const auto ext = extended_range(ps);
  std::vector<Cell> row{int_cell(ps.d),
                        num_cell(ps.p),
                        num_cell(ps.q),
                        num_cell(ps.q1),
                        str_cell(param_mode_name(ps.mode)),
                        num_cell(ps.theta),
                        num_cell(ps.alpha),
                        num_cell(ps.sobolev_exp),
                        num_cell(ps.r_low),
                        num_cell(adm.lo),
                        num_cell(adm.hi)};
  if (ext) {
    row.push_back(num_cell(ext->lo));
    row.push_back(num_cell(ext->hi));
  } else {
    row.push_back(str_cell(""));
    row.push_back(str_cell(""));
  }
  table.add_row(std::move(row));
  emit(cfg, "validate", table);
  out.checks.push_back({"params.valid", true});
}

void run_sigma(const RunConfig& cfg, Outcome& out) {
  const auto [n_lo, n_hi] = parse_n_range(cfg.n);
  const int n = n_hi;
  const ProfileKind kind = profile_kind_from_name(cfg.profile);
  std::optional<int> k0;
  if (cfg.k0 > 0) k0 = cfg.k0;
  const OffsetSchedule sched(cfg.theta, n, k0);
  const SigmaTrain train(sched, Profile1D(kind));

  {
    StageTimer t(out, "schedule");
    Table table;
    table.columns = {"theta", "n", "k", "g_k", "m_k"};
    bool certified = true;
    for (int k = sched.k0(); k <= n; ++k) {
      table.add_row({num_cell(cfg.theta), int_cell(n), int_cell(k),
                     num_cell(sched.block_gap(k)),
                     int_cell(sched.block_count(k))});
      certified = certified && sched.containment_certified(k) &&
                  sched.gap_certified(k);
    }
    emit(cfg, "sigma_schedule", table);
    out.checks.push_back({"schedule.certified", certified});
  }

  {
    StageTimer t(out, "norms");
    Table table;
    table.columns = {"theta", "n", "r", "norm_closed", "norm_quadrature"};
    bool agree = true;
    const bool quad_ok = sched.total_count() <= 20000;
    for (double r : parse_r_list(cfg.r)) {
      const double closed = train.lr_norm_closed(r);
      Cell quad = str_cell("");
      if (quad_ok) {
        const double qv = train.lr_norm_quadrature(r, 1e-8);
        quad = num_cell(qv);
        agree = agree && std::abs(qv - closed) <= 1e-6 * std::abs(closed);
      }
      table.add_row({num_cell(cfg.theta), int_cell(n), num_cell(r),
                     num_cell(closed), quad});
    }
    emit(cfg, "sigma_norms", table);
    out.checks.push_back({"norms.closed_vs_quadrature", agree});
  }
}

void run_lemma1(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "lemma1");
  const ParamSet ps =
      validate(cfg.d, cfg.p, cfg.q, cfg.q1, ParamMode::Verification);
  const int padding = grid_padding(cfg, cfg.cells);
  const WindowLattice lattice = WindowLattice::up_to(padding);
  Table table;
  table.columns = {"seed", "lhs", "rhs_grad", "rhs_morrey", "ratio"};
  bool finite = true, invariant = true;
  for (int s = 0; s < cfg.seeds; ++s) {
    const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(s);
    const GridField u = (!cfg.field.empty() && s == 0)
                            ? read_field(cfg.field, padding)
                            : seeded_field(cfg, seed, cfg.cells, padding);
    const Lemma1Report rep = verify_lemma1(u, ps, lattice);
    finite = finite && std::isfinite(rep.ratio) && rep.ratio > 0.0;
    if (s == 0) {
      GridField u2 = u;
      for (double& v : u2.values()) v *= 2.0;
      const Lemma1Report rep2 = verify_lemma1(u2, ps, lattice);
      invariant = std::abs(rep2.ratio - rep.ratio) <= 1e-10 * rep.ratio;
    }
    table.add_row({int_cell(static_cast<long long>(seed)), num_cell(rep.lhs),
                   num_cell(rep.rhs_grad), num_cell(rep.rhs_morrey),
                   num_cell(rep.ratio)});
  }
  emit(cfg, "lemma1", table);
  out.checks.push_back({"lemma1.ratio_finite", finite});
  out.checks.push_back({"lemma1.amplitude_invariant", invariant});
}

void run_sobolev(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "sobolev");
  const ParamSet ps =
      validate(cfg.d, cfg.p, cfg.q, cfg.q1, ParamMode::Verification);
  const int padding = grid_padding(cfg, cfg.cells);
  Table table;
  table.columns = {"seed", "ratio"};
  bool finite = true, invariant = true;
  for (int s = 0; s < cfg.seeds; ++s) {
    const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(s);
    const GridField u = seeded_field(cfg, seed, cfg.cells, padding);
    const double ratio = verify_sobolev(u, ps);
    finite = finite && std::isfinite(ratio) && ratio > 0.0;
    if (s == 0) {
      GridField u2 = u;
      for (double& v : u2.values()) v *= 2.0;
      invariant =
          std::abs(verify_sobolev(u2, ps) - ratio) <= 1e-10 * ratio;
    }
    table.add_row({int_cell(static_cast<long long>(seed)), num_cell(ratio)});
  }
  emit(cfg, "sobolev", table);
  out.checks.push_back({"sobolev.ratio_finite", finite});
  out.checks.push_back({"sobolev.amplitude_invariant", invariant});
}

void run_holder(const RunConfig& cfg, bool r_given, Outcome& out) {
  StageTimer t(out, "holder");
  const ParamSet ps =
      validate(cfg.d, cfg.p, cfg.q, cfg.q1, ParamMode::Verification);
  std::vector<double> rs;
  if (r_given) {
    rs = parse_r_list(cfg.r);
    for (double r : rs)
      if (!(r >= ps.r_low && r <= ps.sobolev_exp))
        throw Error(ErrorCode::ROutOfRange,
                    "r = " + format_double(r) + " outside [" +
                        format_double(ps.r_low) + ", " +
                        format_double(ps.sobolev_exp) + "]");
  } else {
    for (int i = 0; i < 5; ++i)
      rs.push_back(ps.r_low +
                   (ps.sobolev_exp - ps.r_low) * double(i) / 4.0);
  }
  const int padding = grid_padding(cfg, cfg.cells);
  Table table;
  table.columns = {"seed", "r", "theta_interp", "lhs", "bound", "slack"};
  bool nonneg = true;
  for (int s = 0; s < cfg.seeds; ++s) {
    const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(s);
    const GridField u = seeded_field(cfg, seed, cfg.cells, padding);
    for (double r : rs) {
      const HolderReport rep = verify_holder_chain(u, ps, r);
      nonneg = nonneg && rep.slack >= -1e-12 * rep.bound;
      table.add_row({int_cell(static_cast<long long>(seed)), num_cell(r),
                     num_cell(rep.theta_interp), num_cell(rep.lhs),
                     num_cell(rep.bound), num_cell(rep.slack)});
    }
  }
  emit(cfg, "holder", table);
  out.checks.push_back({"holder.slack_nonnegative", nonneg});
}

void run_maximal(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "maximal");
  const int padding = grid_padding(cfg, cfg.cells);
  const WindowLattice lattice = WindowLattice::up_to(padding);
  Table table;
  table.columns = {"seed",      "f_over_sharp", "sharp_over_f", "f_over_hl",
                   "hl_over_f", "hom_resid",    "subl_min_slack",
                   "sharp_vs_2hl_min_slack"};
  bool ratios_ok = true, hom_ok = true, subl_ok = true, twohl_ok = true;
  for (int s = 0; s < cfg.seeds; ++s) {
    const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(s);
    const GridField f = seeded_field(cfg, seed, cfg.cells, padding);
    const GridField g = seeded_field(cfg, seed + 1000, cfg.cells, padding);
    const FsRatios fs = verify_fs_equivalence(f, 2.0, lattice);
    ratios_ok = ratios_ok && std::isfinite(fs.f_over_sharp) &&
                std::isfinite(fs.sharp_over_f) && fs.f_over_hl <= 1.0 + 1e-15;

    const GridField mf = hl_maximal(f, lattice);
    const GridField mg = hl_maximal(g, lattice);
    GridField f2 = f;
    for (double& v : f2.values()) v *= 2.0;
    const GridField mf2 = hl_maximal(f2, lattice);
    GridField fg = f;
    for (std::size_t i = 0; i < fg.size(); ++i)
      fg.values()[i] += g.values()[i];
    const GridField mfg = hl_maximal(fg, lattice);
    const GridField sf = sharp_maximal(f, lattice);

    double hom = 0.0, subl = 1e300, twohl = 1e300;
    for (std::size_t i = 0; i < f.size(); ++i) {
      hom = std::max(hom,
                     std::abs(mf2.values()[i] - 2.0 * mf.values()[i]));
      subl = std::min(subl, mf.values()[i] + mg.values()[i] -
                                mfg.values()[i]);
      twohl = std::min(twohl, 2.0 * mf.values()[i] - sf.values()[i]);
    }
    hom_ok = hom_ok && hom <= 1e-12;
    subl_ok = subl_ok && subl >= -1e-12;
    twohl_ok = twohl_ok && twohl >= -1e-12;
    table.add_row({int_cell(static_cast<long long>(seed)),
                   num_cell(fs.f_over_sharp), num_cell(fs.sharp_over_f),
                   num_cell(fs.f_over_hl), num_cell(fs.hl_over_f),
                   num_cell(hom), num_cell(subl), num_cell(twohl)});
  }
  emit(cfg, "maximal", table);
  out.checks.push_back({"maximal.fs_ratios_finite", ratios_ok});
  out.checks.push_back({"maximal.positively_homogeneous", hom_ok});
  out.checks.push_back({"maximal.sublinear", subl_ok});
  out.checks.push_back({"maximal.sharp_le_2hl", twohl_ok});
}

void run_poincare(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "poincare");
  Table table;
  table.columns = {"seed", "ratio_coarse", "ratio_fine", "stability"};
  bool stable = true;
  for (int s = 0; s < cfg.seeds; ++s) {
    const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(s);
    const int pc = grid_padding(cfg, cfg.cells);
    const GridField uc = seeded_field(cfg, seed, cfg.cells, pc);
    const GridField uf = seeded_field(cfg, seed, 2 * cfg.cells, 2 * pc);
    const double rc =
        poincare_ratio(uc, WindowLattice::up_to(pc), cfg.cells / 32);
    const double rf = poincare_ratio(uf, WindowLattice::up_to(2 * pc),
                                     cfg.cells / 16);
    const double stability = rf / rc;
    stable = stable && stability <= 1.1 && stability >= 1.0 / 1.1;
    table.add_row({int_cell(static_cast<long long>(seed)), num_cell(rc),
                   num_cell(rf), num_cell(stability)});
  }
  emit(cfg, "poincare", table);
  out.checks.push_back({"poincare.refinement_stable", stable});
}

void run_cex_norms(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "cex_norms");
  const ParamSet ps =
      validate(cfg.d, cfg.p, cfg.q, cfg.q1, ParamMode::Counterexample);
  CexFamily fam(ps, profile_kind_from_name(cfg.profile));
  const auto [n_lo, n_hi] = parse_n_range(cfg.n);
  fam.normalize(n_lo, n_hi);
  const std::vector<double> rs = parse_r_list(cfg.r);

  Table table;
  table.columns = {"n", "grad_lp", "morrey_sup"};
  for (double r : rs) table.columns.push_back("lr_" + format_double(r));
  bool es5 = true;
  double mmin = 1e300, mmax = 0.0;
  for (int n = n_lo; n <= n_hi; ++n) {
    const NormReport rep = fam.norm_report(n, rs);
    es5 = es5 && rep.grad_lp <= 1.0 && rep.morrey_sup <= 1.0;
    mmin = std::min(mmin, rep.morrey_sup);
    mmax = std::max(mmax, rep.morrey_sup);
    std::vector<Cell> row{int_cell(n), num_cell(rep.grad_lp),
                          num_cell(rep.morrey_sup)};
    for (const auto& [r, v] : rep.lr) row.push_back(num_cell(v));
    table.add_row(std::move(row));
  }
  emit(cfg, "cex_norms", table);
  out.checks.push_back({"cex.normalized_bounds_hold", es5});
  out.checks.push_back({"cex.morrey_comparable", mmax <= 4.0 * mmin});
}

void run_cex_fit(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "cex_fit");
  const ParamSet ps =
      validate(cfg.d, cfg.p, cfg.q, cfg.q1, ParamMode::Counterexample);
  CexFamily fam(ps, profile_kind_from_name(cfg.profile));
  const auto [n_lo, n_hi] = parse_n_range(cfg.n);
  const std::vector<double> rs = parse_r_list(cfg.r);

  Table table;
  table.columns = {"r",         "slope",  "intercept", "max_residual",
                   "predicted", "verdict", "agrees"};
  bool all_agree = true;
  for (const SharpnessRow& row : fam.sharpness_report(rs, n_lo, n_hi)) {
    const ScalingFit fit = fam.scaling_fit(row.r, n_lo, n_hi);
    all_agree = all_agree && row.agrees;
    table.add_row({num_cell(row.r), num_cell(fit.slope),
                   num_cell(fit.intercept), num_cell(fit.max_residual),
                   num_cell(row.predicted), str_cell(verdict_name(row.verdict)),
                   str_cell(row.agrees ? "true" : "false")});
  }
  emit(cfg, "cex_fit", table);
  out.checks.push_back({"cex.verdicts_match_threshold", all_agree});
}

void run_report(const RunConfig& cfg, Outcome& out) {
  StageTimer t(out, "report");
  if (cfg.in.empty())
    throw Error(ErrorCode::MissingRequired,
                "key 'in' is required for the report command");
  std::ostringstream json;
  json << "{\"reports\":[";
  bool first = true;
  for (const std::string& file : split_list(cfg.in)) {
    const Table t2 = read_csv(file);
    if (!first) json << ',';
    first = false;
    std::string body = to_json(t2);
    if (!body.empty() && body.back() == '\n') body.pop_back();
    json << "{\"file\":\"" << std::filesystem::path(file).filename().string()
         << "\",\"table\":" << body << '}';
  }
  json << "]}\n";
  write_atomic(std::filesystem::path(cfg.out) / "report.json", json.str());
  out.checks.push_back({"report.aggregated", true});
}

// ------------------------------------------------------------------- main

struct CliState {
  RunConfig argv_cfg;  // values staged by CLI11
  std::string config_path;
  std::vector<std::function<void(RunConfig&)>> merges;
  bool r_given = false;
};

void add_common_options(CLI::App* sub, CliState& st) {
  auto& c = st.argv_cfg;
  const auto track = [&st](CLI::Option* opt,
                           std::function<void(RunConfig&)> apply) {
    st.merges.push_back([opt, apply](RunConfig& cfg) {
      if (opt->count() > 0) apply(cfg);
    });
  };

  track(sub->add_option("--d", c.d, "ambient dimension"),
        [&c](RunConfig& cfg) { cfg.d = c.d; });
  track(sub->add_option("--p", c.p, "Sobolev integrability exponent"),
        [&c](RunConfig& cfg) { cfg.p = c.p; });
  track(sub->add_option("--q", c.q, "Morrey exponent"),
        [&c](RunConfig& cfg) { cfg.q = c.q; });
  track(sub->add_option("--q1", c.q1, "secondary exponent"),
        [&c](RunConfig& cfg) { cfg.q1 = c.q1; });
  track(sub->add_option("--mode", c.mode, "verification|counterexample"),
        [&c](RunConfig& cfg) { cfg.mode = c.mode; });
  track(sub->add_option("--theta", c.theta, "bump-train theta"),
        [&c](RunConfig& cfg) { cfg.theta = c.theta; });
  track(sub->add_option("--n", c.n, "n or n_lo:n_hi window"),
        [&c](RunConfig& cfg) { cfg.n = c.n; });
  CLI::Option* ropt =
      sub->add_option("--r", c.r, "comma-separated r exponents");
  st.merges.push_back([ropt, &c, &st](RunConfig& cfg) {
    if (ropt->count() > 0) {
      cfg.r = c.r;
      st.r_given = true;
    }
  });
  track(sub->add_option("--k0", c.k0, "first block override (0 = auto)"),
        [&c](RunConfig& cfg) { cfg.k0 = c.k0; });
  track(sub->add_option("--profile", c.profile, "trapezoid|smooth"),
        [&c](RunConfig& cfg) { cfg.profile = c.profile; });
  track(sub->add_option("--seeds", c.seeds, "number of seeded fields"),
        [&c](RunConfig& cfg) { cfg.seeds = c.seeds; });
  track(sub->add_option("--seed_base", c.seed_base, "first seed"),
        [&c](RunConfig& cfg) { cfg.seed_base = c.seed_base; });
  track(sub->add_option("--cells", c.cells, "grid cells per axis"),
        [&c](RunConfig& cfg) { cfg.cells = c.cells; });
  track(sub->add_option("--box", c.box, "box halfwidth"),
        [&c](RunConfig& cfg) { cfg.box = c.box; });
  track(sub->add_option("--padding", c.padding, "zero margin cells (0 = auto)"),
        [&c](RunConfig& cfg) { cfg.padding = c.padding; });
  track(sub->add_option("--summands", c.summands, "random summands per field"),
        [&c](RunConfig& cfg) { cfg.summands = c.summands; });
  track(sub->add_option("--out", c.out, "output directory"),
        [&c](RunConfig& cfg) { cfg.out = c.out; });
  track(sub->add_option("--format", c.format, "csv|json"),
        [&c](RunConfig& cfg) { cfg.format = c.format; });
  track(sub->add_option("--in", c.in, "comma-separated input CSVs"),
        [&c](RunConfig& cfg) { cfg.in = c.in; });
  track(sub->add_option("--field", c.field, "binary field input"),
        [&c](RunConfig& cfg) { cfg.field = c.field; });
  sub->add_option("--config", st.config_path, "key = value config file");
}

int run_command(const RunConfig& cfg, bool r_given) {
  Outcome out;
  std::cout << "# sobmor " << command_name(cfg.command) << '\n';
  std::cout << "# config\n";
  std::istringstream echo(serialize_config(cfg));
  for (std::string line; std::getline(echo, line);)
    std::cout << "#   " << line << '\n';

  switch (cfg.command) {
    case Command::Validate: run_validate(cfg, out); break;
    case Command::Sigma: run_sigma(cfg, out); break;
    case Command::VerifyLemma1: run_lemma1(cfg, out); break;
    case Command::VerifySobolev: run_sobolev(cfg, out); break;
    case Command::VerifyHolder: run_holder(cfg, r_given, out); break;
    case Command::VerifyMaximal: run_maximal(cfg, out); break;
    case Command::VerifyPoincare: run_poincare(cfg, out); break;
    case Command::CexNorms: run_cex_norms(cfg, out); break;
    case Command::CexFit: run_cex_fit(cfg, out); break;
    case Command::Report: run_report(cfg, out); break;
  }

  bool all = true;
  for (const Check& c : out.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << '\n';
    all = all && c.pass;
  }
  for (const Stage& s : out.stages) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", s.seconds);
    std::cout << "# stage " << s.name << ": " << buf << " s\n";
  }
  std::cout << "exit " << (all ? 0 : 1) << '\n';
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for a Sobolev-Morrey interpolation "
               "inequality and its sharpness family"};
  app.require_subcommand(1);

  CliState st;
  const std::pair<const char*, Command> commands[] = {
      {"validate", Command::Validate},
      {"sigma", Command::Sigma},
      {"verify-lemma1", Command::VerifyLemma1},
      {"verify-sobolev", Command::VerifySobolev},
      {"verify-holder", Command::VerifyHolder},
      {"verify-maximal", Command::VerifyMaximal},
      {"verify-poincare", Command::VerifyPoincare},
      {"cex-norms", Command::CexNorms},
      {"cex-fit", Command::CexFit},
      {"report", Command::Report},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    add_common_options(sub, st);
    subs.emplace_back(sub, cmd);
  }

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ConversionError& e) {
      throw Error(ErrorCode::TypeMismatch, e.what());
    } catch (const CLI::RequiredError& e) {
      throw Error(ErrorCode::MissingRequired, e.what());
    } catch (const CLI::ExtrasError& e) {
      throw Error(ErrorCode::UnknownKey, e.what());
    } catch (const CLI::ParseError& e) {
      throw Error(ErrorCode::TypeMismatch, e.what());
    }

    RunConfig cfg;
    for (const auto& [sub, cmd] : subs)
      if (sub->parsed()) cfg.command = cmd;

    // config file first, then any flag given on the command line wins
    if (!st.config_path.empty()) {
      std::ifstream in(st.config_path);
      if (!in)
        throw Error(ErrorCode::IoError,
                    "cannot open config file " + st.config_path);
      std::ostringstream text;
      text << in.rdbuf();
      const KeyValues kv = parse_key_values(text.str());
      for (const auto& [key, value] : kv.entries)
        if (key == "r") st.r_given = true;
      apply_key_values(cfg, kv);
    }
    for (const auto& merge : st.merges) merge(cfg);

    if (const char* env = std::getenv("SOBMOR_OUT_DIR"); env && *env)
      cfg.out = env;

    return run_command(cfg, st.r_given);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
