#pragma once
/// @file cli.hpp
/// @brief Command-line front end: eval | symmetry | hessian | sing | jacobian.
///
/// Every subcommand accepts --n, --q, --seed, --trials, --format
/// {json,csv,plain} and --out FILE, and prints a deterministic payload for a
/// fixed configuration.  Exit codes: 0 success, 1 verification failure,
/// 2 input error, 3 size guard exceeded.  The catalog subcommands (sing,
/// jacobian) emit the full component catalog with formula and oracle
/// dimensions and exact representatives; they exit 1 when any formula/oracle
/// pair disagrees, after still emitting the catalog for inspection.

#include <cstddef>
#include <cstdint>

#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "immgeo/catalog.hpp"
#include "immgeo/dynkin.hpp"
#include "immgeo/errors.hpp"
#include "immgeo/hessian.hpp"
#include "immgeo/imm.hpp"
#include "immgeo/jacobian.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/quiver.hpp"
#include "immgeo/quotient.hpp"
#include "immgeo/rational.hpp"
#include "immgeo/rng.hpp"
#include "immgeo/symmetry.hpp"

namespace immgeo {

struct RunConfig {
  int n = 3;
  int q = 2;
  std::uint64_t seed = 17;
  int trials = 20;
  std::string format = "plain";
  std::string out_path;
};

[[nodiscard]] inline Json config_json(const RunConfig& cfg) {
  return Json{{"n", cfg.n},
              {"q", cfg.q},
              {"seed", cfg.seed},
              {"trials", cfg.trials},
              {"format", cfg.format}};
}

namespace detail {

[[nodiscard]] inline std::string render_catalog_plain(const CatalogDocument& doc) {
  std::string s = "components: " + std::to_string(doc.records.size()) + "\n";
  for (const CatalogRecord& rec : doc.records) {
    s += rec.label + ": dim " + std::to_string(rec.dim) + " (oracle " +
         std::to_string(rec.dim_oracle) + ")\n";
  }
  for (const auto& [key, value] : doc.summary.items()) {
    if (key == "component_count") continue;
    s += key + " = " + value.dump() + "\n";
  }
  return s;
}

inline void emit_catalog(const RunConfig& cfg, const CatalogDocument& doc, std::ostream& out) {
  std::string payload;
  if (cfg.format == "json") {
    payload = catalog_to_json(doc).dump(2) + "\n";
  } else if (cfg.format == "csv") {
    payload = catalog_to_csv(doc);
  } else {
    payload = render_catalog_plain(doc);
  }
  write_payload(cfg.out_path, payload, out);
}

}  // namespace detail

/// Evaluates IMM at an exact rational point: the tuple loaded from the given
/// JSON file, or a seeded random tuple when no file is named.
[[nodiscard]] inline int cmd_eval(RunConfig cfg, const std::string& point_file,
                                  std::ostream& out) {
  const RationalTuple x = [&] {
    if (point_file.empty()) {
      RatSampler sampler(cfg.seed);
      return random_tuple(cfg.n, cfg.q, sampler);
    }
    std::ifstream in(point_file);
    if (!in) throw InputError("cannot open point file '" + point_file + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("point file '" + point_file + "': " + e.what());
    }
    return tuple_from_json(j);
  }();
  cfg.n = x.n();
  cfg.q = x.q();

  const std::string value = to_string(evaluate(x));
  std::string payload;
  if (cfg.format == "json") {
    payload = Json{{"tool", tool_stamp()}, {"config", config_json(cfg)}, {"value", value}}.dump(2) +
              "\n";
  } else if (cfg.format == "csv") {
    payload = "value\n" + value + "\n";
  } else {
    payload = value + "\n";
  }
  write_payload(cfg.out_path, payload, out);
  return 0;
}

/// Runs the symmetry suite: exact invariance under each generator and under
/// random generator words, the annihilation of IMM by the infinitesimal
/// conjugation action (with a nonvacuousness control), and the diagram
/// stabilizer.  `inject_corrupt` deliberately composes a non-symmetry into
/// the conjugation check so the failure path stays exercised.
[[nodiscard]] inline int cmd_symmetry(const RunConfig& cfg, bool inject_corrupt,
                                      std::ostream& out) {
  if (cfg.trials < 1) throw InputError("symmetry suite needs --trials >= 1");
  const int n = cfg.n;
  const int q = cfg.q;
  const auto qs = static_cast<std::size_t>(q);
  RatSampler sampler(cfg.seed);

  struct CheckLine {
    std::string name;
    bool pass = false;
  };
  std::vector<CheckLine> checks;

  {
    bool pass = true;
    for (int t = 0; t < cfg.trials; ++t) {
      const RationalTuple x = random_tuple(n, q, sampler);
      std::vector<Matrix<Rational>> gs;
      gs.reserve(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) gs.push_back(sampler.invertible_matrix(qs, 3, 2));
      RationalTuple y = GroupElement::phi(std::move(gs)).apply(x);
      if (inject_corrupt) y = slot_transpose(y, 1);
      if (evaluate(y) != evaluate(x)) pass = false;
    }
    checks.push_back({"conjugation generators", pass});
  }
  {
    bool pass = true;
    for (int t = 0; t < cfg.trials; ++t) {
      const RationalTuple x = random_tuple(n, q, sampler);
      for (int k = 1; k <= n; ++k) {
        if (!check_invariance(GroupElement::cyclic_shift(k), x)) pass = false;
      }
    }
    checks.push_back({"cyclic shift generators", pass});
  }
  {
    bool pass = true;
    for (int t = 0; t < cfg.trials; ++t) {
      if (!check_invariance(GroupElement::transpose_reversal(), random_tuple(n, q, sampler))) {
        pass = false;
      }
    }
    checks.push_back({"transpose reversal generator", pass});
  }
  {
    bool pass = true;
    for (int t = 0; t < cfg.trials; ++t) {
      const GroupElement w = random_group_word(n, q, sampler, 1 + static_cast<int>(sampler.index(5)));
      for (int p = 0; p < 3; ++p) {
        if (!check_invariance(w, random_tuple(n, q, sampler))) pass = false;
      }
    }
    checks.push_back({"random generator words", pass});
  }
  {
    bool pass = true;
    bool control = false;
    for (int t = 0; t < cfg.trials; ++t) {
      const RationalTuple x = random_tuple(n, q, sampler);
      const Matrix<Rational> dir = sampler.rational_matrix(qs, qs);
      for (int alpha = 1; alpha <= n; ++alpha) {
        if (!lie_derivative(x, alpha, dir).is_zero()) pass = false;
        if (!lie_derivative_unbalanced(x, alpha, dir).is_zero()) control = true;
      }
    }
    checks.push_back({"infinitesimal action annihilates", pass});
    checks.push_back({"infinitesimal control is nonvacuous", control});
  }
  const DynkinStabilizer stab = dynkin_stabilizer(n, q);

  bool all_pass = true;
  for (const CheckLine& c : checks) all_pass = all_pass && c.pass;

  std::string payload;
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (const CheckLine& c : checks) rows.push_back(Json{{"name", c.name}, {"pass", c.pass}});
    payload = Json{{"tool", tool_stamp()},
                   {"config", config_json(cfg)},
                   {"checks", std::move(rows)},
                   {"dynkin_stabilizer",
                    Json{{"order", stab.order}, {"dihedral", stab.dihedral}}}}
                  .dump(2) +
              "\n";
  } else if (cfg.format == "csv") {
    payload = "check,result\n";
    for (const CheckLine& c : checks) {
      payload += detail::csv_quote(c.name) + "," + (c.pass ? "pass" : "fail") + "\n";
    }
    payload += "\"dynkin stabilizer order\"," + std::to_string(stab.order) + "\n";
    payload += "\"dihedral\"," + std::string(stab.dihedral ? "yes" : "no") + "\n";
  } else {
    for (const CheckLine& c : checks) payload += c.name + (c.pass ? ": pass\n" : ": FAIL\n");
    payload += "dynkin stabilizer order: " + std::to_string(stab.order) +
               (stab.dihedral ? " (dihedral: yes)\n" : " (dihedral: no)\n");
  }
  write_payload(cfg.out_path, payload, out);
  return all_pass ? 0 : 1;
}

/// Reports the Hessian data at the distinguished diagonal point: the closed
/// form coefficient aₙ, verification of the closed-form inverse (or, when the
/// closed form degenerates, the determinant unit check), and the computed
/// dual-variety dimension next to the hypersurface value nq² − 2.
[[nodiscard]] inline int cmd_hessian(const RunConfig& cfg, std::ostream& out) {
  const Int an = a_coeff(cfg.n, cfg.q);
  std::string closed_form;
  bool ran_unit_check = false;
  HessianUnitCheck unit;
  int exit_code = 0;
  if (cfg.n >= 3 && !an.is_zero()) {
    const bool ok = verify_hessian_inverse(cfg.n, cfg.q);
    closed_form = ok ? "verified" : "failed";
    if (!ok) exit_code = 1;
  } else {
    closed_form = cfg.n < 3 ? "not applicable (n < 3)" : "degenerate (a_n = 0)";
    unit = hessian_unit_check(cfg.n, cfg.q);
    ran_unit_check = true;
  }
  const std::size_t dual = dual_dimension(cfg.n, cfg.q, cfg.trials, cfg.seed);
  const long long ambient = static_cast<long long>(cfg.n) * cfg.q * cfg.q;

  std::string payload;
  if (cfg.format == "json") {
    Json doc{{"tool", tool_stamp()},
             {"config", config_json(cfg)},
             {"a_n", an.str()},
             {"closed_form_inverse", closed_form}};
    if (ran_unit_check) {
      doc["hessian_det"] = to_string(unit.det);
      doc["hessian_det_is_unit"] = unit.is_unit;
    }
    doc["dual_dim"] = dual;
    doc["hypersurface_dual_dim"] = ambient - 2;
    payload = doc.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    payload = "key,value\n";
    payload += "a_n," + an.str() + "\n";
    payload += "closed_form_inverse," + detail::csv_quote(closed_form) + "\n";
    if (ran_unit_check) {
      payload += "hessian_det," + detail::csv_quote(to_string(unit.det)) + "\n";
      payload += std::string("hessian_det_is_unit,") + (unit.is_unit ? "yes" : "no") + "\n";
    }
    payload += "dual_dim," + std::to_string(dual) + "\n";
    payload += "hypersurface_dual_dim," + std::to_string(ambient - 2) + "\n";
  } else {
    payload = "a_n = " + an.str() + "\n";
    if (ran_unit_check) {
      payload += "closed form " +
                 std::string(cfg.n < 3 ? "needs n >= 3" : "degenerate (a_n = 0)") +
                 "; unit check: " + (unit.is_unit ? "unit" : "not a unit") + "\n";
    } else {
      payload += std::string("H(p)*C = I: ") + (exit_code == 0 ? "verified" : "FAILED") + "\n";
    }
    payload += "dual dim = " + std::to_string(dual) + " (n*q^2 - 2 = " +
               std::to_string(ambient - 2) + ")\n";
  }
  write_payload(cfg.out_path, payload, out);
  return exit_code;
}

/// Emits the singular-locus component catalog.
[[nodiscard]] inline int cmd_sing(const RunConfig& cfg, std::ostream& out) {
  const std::vector<SingComponent> comps = maximal_components(cfg.n, cfg.q);
  CatalogDocument doc;
  doc.config = config_json(cfg);
  doc.summary = Json{{"component_count", comps.size()}};
  bool mismatch = false;
  for (const SingComponent& c : comps) {
    if (c.dim_formula != c.dim_oracle) mismatch = true;
    Json intervals = Json::array();
    for (const auto& [interval, copies] : c.rep.multiplicity) {
      intervals.push_back(
          Json{{"start", interval.start}, {"end", interval.end}, {"copies", copies}});
    }
    doc.records.push_back(CatalogRecord{"sing", c.label, c.dim_formula, c.dim_oracle,
                                        Json{{"intervals", std::move(intervals)}},
                                        c.representative});
  }
  detail::emit_catalog(cfg, doc, out);
  return mismatch ? 1 : 0;
}

/// Emits the catalog of components of the order-(n−2) vanishing locus.
[[nodiscard]] inline int cmd_jacobian(const RunConfig& cfg, std::ostream& out) {
  const std::vector<JacComponent> comps = jac_components(cfg.n, cfg.q);
  CatalogDocument doc;
  doc.config = config_json(cfg);
  doc.summary = Json{{"component_count", comps.size()},
                     {"locus_dim", jacobian_locus_dim(cfg.n, cfg.q)}};
  bool mismatch = false;
  for (const JacComponent& c : comps) {
    const std::size_t oracle = jac_dim_oracle(cfg.q, c.r, cfg.seed);
    if (oracle != c.dim) mismatch = true;
    doc.records.push_back(CatalogRecord{"jacobian", c.label, c.dim, oracle,
                                        Json{{"alpha", c.alpha}, {"r", c.r}}, c.representative});
  }
  detail::emit_catalog(cfg, doc, out);
  return mismatch ? 1 : 0;
}

/// Parses the argument list (program name excluded) and dispatches.  All
/// diagnostics go to `err`; payloads go to `out` or the --out file.
[[nodiscard]] inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                                 std::ostream& err) {
  CLI::App app{"Exact invariants of the iterated matrix multiplication polynomial"};
  app.require_subcommand(1);

  RunConfig cfg_eval, cfg_sym, cfg_hess, cfg_sing, cfg_jac;
  cfg_hess.trials = 2;
  std::string point_file;
  bool inject_corrupt = false;

  const auto add_common = [](CLI::App* cmd, RunConfig& cfg) {
    const auto positive = CLI::Range(1, std::numeric_limits<int>::max());
    cmd->add_option("--n", cfg.n, "number of matrix blocks")->check(positive);
    cmd->add_option("--q", cfg.q, "block size")->check(positive);
    cmd->add_option("--seed", cfg.seed, "sampler seed");
    cmd->add_option("--trials", cfg.trials, "randomized trials")
        ->check(CLI::Range(0, std::numeric_limits<int>::max()));
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    cmd->add_option("--out", cfg.out_path, "write the payload to FILE instead of stdout");
  };

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate the polynomial at an exact rational point");
  add_common(eval_cmd, cfg_eval);
  eval_cmd->add_option("file", point_file,
                       "JSON point file {n, q, blocks}; omitted = seeded random point");

  CLI::App* sym_cmd = app.add_subcommand("symmetry", "Exact invariance suite and stabilizer");
  add_common(sym_cmd, cfg_sym);
  sym_cmd->add_flag("--inject-corrupt-generator", inject_corrupt)->group("");

  CLI::App* hess_cmd =
      app.add_subcommand("hessian", "Hessian inverse verification and dual dimension");
  add_common(hess_cmd, cfg_hess);

  CLI::App* sing_cmd = app.add_subcommand("sing", "Singular-locus component catalog");
  add_common(sing_cmd, cfg_sing);

  CLI::App* jac_cmd =
      app.add_subcommand("jacobian", "Catalog of the order-(n-2) vanishing locus (needs n >= 3)");
  add_common(jac_cmd, cfg_jac);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back(kToolName);
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // help request
    (void)app.exit(e, out, err);
    return 2;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(cfg_eval, point_file, out);
    if (sym_cmd->parsed()) return cmd_symmetry(cfg_sym, inject_corrupt, out);
    if (hess_cmd->parsed()) return cmd_hessian(cfg_hess, out);
    if (sing_cmd->parsed()) return cmd_sing(cfg_sing, out);
    return cmd_jacobian(cfg_jac, out);
  } catch (const GuardExceeded& e) {
    err << "size guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace immgeo
