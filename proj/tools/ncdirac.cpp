// ncdirac: hydrogen levels and their noncommutative-space corrections.
//
//   ncdirac levels 1S1/2 2P3/2
//   ncdirac shift 2P1/2 --theta "(4 GeV)^-2"
//   ncdirac bound 2P3/2 --accuracy-khz 0.08
//   ncdirac nonrel --n 3 --l 2 --j 5/2 --mj 1/2 --theta 1e-20
//   ncdirac sweep --theta-min 0 --theta-max 1e-19 --steps 5 --format csv
//   ncdirac verify

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ncdirac/cli.hpp"

namespace {

using namespace ncdirac;
using namespace ncdirac::cli;

HalfInteger parse_half(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    if (text.substr(slash + 1) != "2") throw ParseError("half-integer must be written k/2: '" + text + "'");
    const double num = parse_real(text.substr(0, slash));
    if (num != static_cast<int>(num)) throw ParseError("bad half-integer '" + text + "'");
    return HalfInteger::from_twice(static_cast<int>(num));
  }
  const double v = parse_real(text);
  const double twice = 2.0 * v;
  if (twice != static_cast<int>(twice)) throw ParseError("not a half-integer: '" + text + "'");
  return HalfInteger::from_twice(static_cast<int>(twice));
}

int emit(const CommandOutput& out, const RunConfig& cfg) {
  const std::string text = render(out.doc, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot open output file '" << cfg.out << "'\n";
      return kExitUsage;
    }
    f << text;
    if (!f) {
      std::cerr << "error: write to '" << cfg.out << "' failed\n";
      return kExitUsage;
    }
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hydrogen levels and first-order noncommutative-space corrections"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string constants_file, format = "json", out, hz = "two_pi_hbar";
  int quad_order = specfun::kDefaultLaguerreOrder;
  app.add_option("--constants-file", constants_file, "JSON file with m_e, alpha, hbar_eV_s, planck_eV_s, lambda_qcd, hz_convention");
  app.add_option("--format", format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", out, "write output to this file instead of stdout");
  app.add_option("--quad-order", quad_order, "Gauss-Laguerre starting order")->check(CLI::Range(4, specfun::kMaxLaguerreOrder));
  app.add_option("--hz-convention", hz, "two_pi_hbar | planck_h")->check(CLI::IsMember({"two_pi_hbar", "planck_h"}));

  auto* levels = app.add_subcommand("levels", "Exact Dirac-Coulomb energies");
  std::vector<std::string> level_labels;
  int n_r = -1, kappa = 0;
  levels->add_option("labels", level_labels, "spectroscopic labels such as 2P3/2");
  auto* opt_nr = levels->add_option("--n-r", n_r, "radial quantum number");
  auto* opt_kappa = levels->add_option("--kappa", kappa, "relativistic angular quantum number");
  opt_nr->needs(opt_kappa);
  opt_kappa->needs(opt_nr);

  auto* shift = app.add_subcommand("shift", "First-order shifts of one level");
  std::string shift_level, shift_theta;
  shift->add_option("level", shift_level, "level label")->required();
  shift->add_option("--theta", shift_theta, "theta in eV^-2 or \"(X GeV)^-2\"")->required();

  auto* bound = app.add_subcommand("bound", "theta upper bounds from a frequency accuracy");
  std::string bound_level;
  double accuracy_khz = 0.08;
  double coefficient = 0.0;
  bound->add_option("level", bound_level, "level label");
  bound->add_option("--accuracy-khz", accuracy_khz, "accuracy in kHz (default 0.08)");
  auto* opt_coef = bound->add_option("--coefficient", coefficient, "explicit shift coefficient, eV^3 per unit theta");

  auto* nonrel = app.add_subcommand("nonrel", "Nonrelativistic fine structure and theta corrections");
  int nr_n = 2, nr_l = 1;
  std::string nr_j = "1/2", nr_mj = "1/2", nr_theta = "0";
  nonrel->add_option("--n", nr_n, "principal quantum number")->required();
  nonrel->add_option("--l", nr_l, "orbital quantum number")->required();
  nonrel->add_option("--j", nr_j, "total angular momentum, e.g. 3/2")->required();
  nonrel->add_option("--mj", nr_mj, "projection, e.g. -1/2")->required();
  nonrel->add_option("--theta", nr_theta, "theta in eV^-2 or \"(X GeV)^-2\"");

  auto* sweep = app.add_subcommand("sweep", "Level splittings over a theta range");
  std::string sw_min, sw_max, sw_source = "quadrature";
  int sw_steps = 2;
  std::vector<std::string> sw_levels = {"2P1/2", "2P3/2"};
  sweep->add_option("--theta-min", sw_min, "first theta")->required();
  sweep->add_option("--theta-max", sw_max, "last theta")->required();
  sweep->add_option("--steps", sw_steps, "number of theta values (>= 2)");
  sweep->add_option("--levels", sw_levels, "levels to include")->delimiter(',');
  sweep->add_option("--source", sw_source, "quadrature | closed-form")->check(CLI::IsMember({"quadrature", "closed-form"}));

  auto* verify = app.add_subcommand("verify", "Run the closed-form vs quadrature validation suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    if (!constants_file.empty()) load_constants_file(constants_file, cfg);
    if (app.get_option("--hz-convention")->count() > 0) cfg.hz_convention = parse_hz_convention(hz);
    cfg.format = parse_format(format);
    cfg.out = out;
    cfg.quad_order = quad_order;

    if (levels->parsed()) {
      if (opt_nr->count() > 0) return emit(cmd_levels(n_r, kappa, cfg), cfg);
      if (level_labels.empty()) throw ParseError("levels: give labels or --n-r/--kappa");
      return emit(cmd_levels(level_labels, cfg), cfg);
    }
    if (shift->parsed()) return emit(cmd_shift(shift_level, parse_theta(shift_theta), cfg), cfg);
    if (bound->parsed()) {
      if (opt_coef->count() > 0) return emit(cmd_bound_coefficient(coefficient, accuracy_khz, cfg), cfg);
      if (bound_level.empty()) throw ParseError("bound: give a level or --coefficient");
      return emit(cmd_bound(bound_level, accuracy_khz, cfg), cfg);
    }
    if (nonrel->parsed()) {
      return emit(cmd_nonrel(nr_n, nr_l, parse_half(nr_j), parse_half(nr_mj), parse_theta(nr_theta), cfg), cfg);
    }
    if (sweep->parsed()) {
      return emit(cmd_sweep(parse_theta(sw_min), parse_theta(sw_max), sw_steps, sw_levels, parse_sweep_source(sw_source), cfg), cfg);
    }
    if (verify->parsed()) return emit(cmd_verify(cfg), cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
