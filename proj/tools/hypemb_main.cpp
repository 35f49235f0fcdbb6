// Reproducible experiment runner: every subcommand maps a configuration to a
// machine-readable report. Exit codes: 0 pass, 1 criterion fail, 2 usage,
// 3 resource cap / precision refusal.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hypemb/experiments.hpp"
#include "hypemb/numerics.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "rows";
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& common) {
  cmd->add_option("--config", common.config_path, "key = value config file");
  cmd->add_option("--out", common.out_path, "write the report here instead of stdout");
  cmd->add_option("--format", common.format, "rows | summary")
      ->check(CLI::IsMember({"rows", "summary"}));
  cmd->add_option("--set", common.sets, "extra key=value overrides")->take_all();
}

int run(const std::string& name, const CommonArgs& common, const hypemb::KeyValueConfig& flags) {
  hypemb::KeyValueConfig cfg;
  if (!common.config_path.empty()) cfg = hypemb::KeyValueConfig::from_file(common.config_path);
  for (const std::string& kv : common.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw hypemb::UsageError("--set needs key=value, got: " + kv);
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.merge_overrides(flags);

  hypemb::Report report = hypemb::run_experiment(name, cfg);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!common.out_path.empty()) {
    file.open(common.out_path);
    if (!file) throw hypemb::UsageError("cannot open output path: " + common.out_path);
    out = &file;
  }
  if (common.format == "summary") {
    hypemb::emit_summary(report, *out);
  } else {
    hypemb::emit_rows(report, *out);
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale embeddings of hyperbolic groups into L_p spaces"};
  app.require_subcommand(1);

  struct Sub {
    std::string name;
    CommonArgs common;
    hypemb::KeyValueConfig flags;
  };
  std::vector<std::shared_ptr<Sub>> subs;

  auto add_flag_option = [](CLI::App* cmd, std::shared_ptr<Sub> sub, const std::string& key,
                            const std::string& help) {
    auto setter = [sub, key](const std::string& v) { sub->flags.set(key, v); };
    cmd->add_option_function<std::string>("--" + key, setter, help);
  };

  auto make = [&](const std::string& name, const std::string& desc,
                  const std::vector<std::pair<std::string, std::string>>& options) {
    auto sub = std::make_shared<Sub>();
    sub->name = name;
    subs.push_back(sub);
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_common(cmd, sub->common);
    auto seed_setter = [sub](const std::string& v) { sub->flags.set("seed", v); };
    cmd->add_option_function<std::string>("--seed", seed_setter, "rng seed");
    auto workers_setter = [sub](const std::string& v) { sub->flags.set("workers", v); };
    cmd->add_option_function<std::string>("--workers", workers_setter,
                                          "worker threads (never changes results)");
    for (const auto& [key, help] : options) add_flag_option(cmd, sub, key, help);
    return cmd;
  };

  make("threshold", "summability frontier across a p grid",
       {{"k", "free-group rank"},
        {"a", "visual metric base"},
        {"pgrid", "p grid, lo:hi:step or comma list"},
        {"T", "truncation radius"},
        {"frontier_tol", "allowed |frontier - Q|"}});
  make("compression", "compression exponent of the family cocycle",
       {{"k", "free-group rank"},
        {"a", "visual metric base"},
        {"p", "exponent"},
        {"lengths", "comma list of word lengths"},
        {"samples", "samples per length"},
        {"cbar", "cover radius of the observable family"},
        {"t_multiplier", "truncation = multiplier*length + offset"},
        {"t_offset", "truncation offset"},
        {"slope_tol", "slope slack below 1/p"}});
  make("properness", "soundness sweep of the properness lower bound",
       {{"k", "free-group rank"},
        {"a", "visual metric base"},
        {"p", "exponent"},
        {"cbar", "cover radius"},
        {"samples", "number of random words"},
        {"min_length", "shortest word"},
        {"max_length", "longest word"},
        {"t_offset", "truncation = |g| + offset"}});
  make("embed-tree", "tree embedding with prescribed compression",
       {{"rho", "power | log"},
        {"alpha", "power-law exponent"},
        {"beta", "log power"},
        {"p", "target space exponent"},
        {"depth", "complete binary tree depth"},
        {"pairs", "sampled vertex pairs"},
        {"lipschitz_cap", "reject if the step displacement exceeds this"},
        {"quad_tol", "quadrature vs closed-form tolerance"},
        {"expect", "embed | reject"}});
  make("walls", "hyperbolic-plane wall measure and cocycle norms",
       {{"distances", "comma list of hyperbolic distances"},
        {"plist", "comma list of exponents"},
        {"samples", "Monte Carlo samples per distance"},
        {"strata", "strata of the angular midpoint"},
        {"slope_tol", "allowed |slope - 1/p|"},
        {"cnd_points", "points per kernel check"},
        {"cnd_seeds", "number of kernel checks"},
        {"cnd_tol", "eigenvalue tolerance"}});
  make("regularity", "Ahlfors regularity, doubling, shadow sandwich",
       {{"k", "free-group rank"},
        {"a", "visual metric base"},
        {"depth_lo", "first depth"},
        {"depth_hi", "last depth"},
        {"stability_factor", "allowed spread of per-depth constants"},
        {"sandwich_gmax", "exhaustive sandwich up to this |g|"},
        {"R", "shadow radius"}});
  make("cover", "greedy separated cover of a ball by V-translates",
       {{"k", "free-group rank"},
        {"vradius", "radius of V"},
        {"region", "radius of the covered ball"},
        {"shadow_r", "shadow radius (0 = derive from vradius)"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& sub : subs) {
      if (app.get_subcommand(sub->name)->parsed()) return run(sub->name, sub->common, sub->flags);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const hypemb::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const hypemb::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const hypemb::PrecisionError& e) {
    std::cerr << "precision refusal: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }
}
