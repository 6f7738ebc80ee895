// Command-line driver: single-instance factorization and the benchmark
// experiments (accuracy/iteration sweeps, FHRR comparison, beta sweep, noise
// sweep, bundle decomposition, summary tables).
//
// Exit codes: 0 success, 1 invalid arguments, 2 I/O failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdres/bench.hpp"
#include "hdres/plot.hpp"
#include "hdres/records_io.hpp"

namespace {

using namespace hdres;

struct ExperimentCli {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  double beta = 250.0;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> factors;
  std::vector<std::uint64_t> ms;
  std::vector<std::size_t> sizes;
  std::vector<double> sigmas;
  std::vector<std::size_t> ks;
  std::vector<double> betas;
  std::string out;
  std::string format = "csv";
  std::string plot;
  std::size_t workers = 0;
};

ExperimentSpec base_spec(const std::string& name, UpdateRule rule, const ExperimentCli& cli) {
  ExperimentSpec spec;
  spec.name = name;
  spec.update_rule = rule;
  spec.vector_kind = kind_for(rule);
  spec.beta = cli.beta;
  spec.trials = cli.trials;
  spec.master_seed = cli.seed;
  return spec;
}

std::vector<TrialRecord> run_specs(std::vector<ExperimentSpec> specs, const ExperimentCli& cli) {
  std::unique_ptr<RecordSink> sink;
  if (!cli.out.empty())
    sink = open_record_sink(cli.out, record_format_from_string(cli.format));
  RecordCallback cb;
  if (sink) cb = [&](const TrialRecord& r) { sink->append(r); };
  std::vector<TrialRecord> all;
  for (const ExperimentSpec& spec : specs) {
    std::vector<TrialRecord> recs = run_experiment(spec, cb, cli.workers, true);
    all.insert(all.end(), recs.begin(), recs.end());
  }
  if (sink) sink->close();
  return all;
}

void maybe_plot(const std::vector<TrialRecord>& records, const std::string& x,
                const std::string& y, std::vector<std::string> groups,
                const ExperimentCli& cli) {
  if (cli.plot.empty()) return;
  emit_plot(records, x, y, groups, cli.plot);
  std::fprintf(stderr, "plot written to %s\n", cli.plot.c_str());
}


std::vector<TrialRecord> select(const std::vector<TrialRecord>& records, UpdateRule rule,
                                std::size_t f, std::size_t k) {
  std::vector<TrialRecord> out;
  for (const TrialRecord& r : records)
    if (r.rule == rule && r.factors == f && r.k == k) out.push_back(r);
  return out;
}

int cmd_factorize(bool fhrr, bool attention, std::size_t dim, std::size_t f, std::size_t n,
                  double beta, std::uint64_t seed) {
  const UpdateRule rule = rule_for(attention, fhrr ? Kind::Complex : Kind::Bipolar);
  const Rng root(seed);
  std::vector<Codebook> codebooks;
  for (std::size_t j = 0; j < f; ++j) {
    Rng cb_rng = root.derive("codebook", j);
    codebooks.push_back(make_codebook(n, dim, kind_for(rule), cb_rng));
  }
  Rng truth_rng = root.derive("truth");
  const BundleSpec truth = random_bundle_spec(codebooks, 1, truth_rng);
  const Hypervector s = encode_bundle(codebooks, truth);

  ResonatorConfig cfg;
  cfg.update_rule = rule;
  cfg.beta = beta;
  std::uint64_t space = 1;
  for (std::size_t j = 0; j < f; ++j) space *= n;
  cfg.max_iters = max_iters_for(space);
  const FactorizationResult result = factorize(s, codebooks, cfg);

  nlohmann::ordered_json j;
  j["kind"] = to_string(kind_for(rule));
  j["rule"] = attention ? "attention" : "original";
  j["D"] = dim;
  j["F"] = f;
  j["n"] = n;
  j["M"] = space;
  j["beta"] = beta;
  j["seed"] = seed;
  j["max_iters"] = cfg.max_iters;
  j["truth"] = truth.tuples.front();
  j["indices"] = result.indices;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["stop_reason"] = result.stop_reason == StopReason::FixedPoint ? "fixed-point" : "iteration-cap";
  j["accuracy"] = accuracy(result, truth.tuples.front());
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_acc_iters_vs_m(const ExperimentCli& cli, bool iterations_plot) {
  ExperimentCli c = cli;
  if (c.dims.empty()) c.dims = {1000, 1500};
  if (c.factors.empty()) c.factors = {2, 3, 4};
  if (c.ms.empty() && c.sizes.empty()) c.ms = {5000, 10000, 20000};
  const std::string name = iterations_plot ? "iters-vs-m" : "acc-vs-m";
  std::vector<ExperimentSpec> specs;
  for (UpdateRule rule : {UpdateRule::OriginalBipolar, UpdateRule::AttentionBipolar}) {
    ExperimentSpec spec = base_spec(name, rule, c);
    spec.dims = c.dims;
    spec.factors = c.factors;
    spec.codebook_sizes = c.sizes;
    spec.search_space_sizes = c.ms;
    specs.push_back(spec);
  }
  const std::vector<TrialRecord> records = run_specs(std::move(specs), c);
  maybe_plot(records, "M", iterations_plot ? "iterations" : "accuracy",
             {"rule", "F", "D"}, c);
  return 0;
}

int cmd_fhrr_vs_bipolar(const ExperimentCli& cli) {
  ExperimentCli c = cli;
  if (c.dims.empty()) c.dims = {500, 1000};
  if (c.factors.empty()) c.factors = {3};
  if (c.ms.empty() && c.sizes.empty()) c.ms = {5000, 10000, 20000};
  std::vector<ExperimentSpec> specs;
  for (UpdateRule rule : {UpdateRule::AttentionBipolar, UpdateRule::AttentionFhrr}) {
    ExperimentSpec spec = base_spec("fhrr-vs-bipolar", rule, c);
    spec.dims = c.dims;
    spec.factors = c.factors;
    spec.codebook_sizes = c.sizes;
    spec.search_space_sizes = c.ms;
    specs.push_back(spec);
  }
  const std::vector<TrialRecord> records = run_specs(std::move(specs), c);
  maybe_plot(records, "M", "accuracy", {"kind", "D"}, c);
  return 0;
}

int cmd_beta_sweep(const ExperimentCli& cli) {
  ExperimentCli c = cli;
  if (c.dims.empty()) c.dims = {1000};
  if (c.factors.empty()) c.factors = {3};
  if (c.ms.empty() && c.sizes.empty()) c.ms = {5000};
  if (c.betas.empty()) c.betas = {10, 25, 50, 100, 175, 250};
  std::vector<ExperimentSpec> specs;
  for (double beta : c.betas) {
    ExperimentSpec spec = base_spec("beta-sweep", UpdateRule::AttentionBipolar, c);
    spec.beta = beta;
    spec.dims = c.dims;
    spec.factors = c.factors;
    spec.codebook_sizes = c.sizes;
    spec.search_space_sizes = c.ms;
    specs.push_back(spec);
  }
  const std::vector<TrialRecord> records = run_specs(std::move(specs), c);
  maybe_plot(records, "beta", "accuracy", {"F", "D"}, c);
  return 0;
}

int cmd_noise_sweep(const ExperimentCli& cli) {
  ExperimentCli c = cli;
  if (c.dims.empty()) c.dims = {1500};
  if (c.factors.empty()) c.factors = {4};
  if (c.ms.empty() && c.sizes.empty()) c.sizes = {8};
  if (c.sigmas.empty()) c.sigmas = {0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<ExperimentSpec> specs;
  for (UpdateRule rule : {UpdateRule::OriginalBipolar, UpdateRule::AttentionBipolar,
                          UpdateRule::OriginalFhrr, UpdateRule::AttentionFhrr}) {
    ExperimentSpec spec = base_spec("noise-sweep", rule, c);
    spec.dims = c.dims;
    spec.factors = c.factors;
    spec.codebook_sizes = c.sizes;
    spec.search_space_sizes = c.ms;
    spec.sigma_list = c.sigmas;
    specs.push_back(spec);
  }
  const std::vector<TrialRecord> records = run_specs(std::move(specs), c);
  maybe_plot(records, "sigma", "accuracy", {"rule", "kind"}, c);
  return 0;
}

int cmd_bundle_sweep(const ExperimentCli& cli) {
  ExperimentCli c = cli;
  if (c.dims.empty()) c.dims = {1500};
  if (c.factors.empty()) c.factors = {2, 4, 6};
  if (c.ms.empty() && c.sizes.empty()) c.ms = {5000};
  if (c.ks.empty()) c.ks = {1, 3, 9};
  std::vector<ExperimentSpec> specs;
  for (UpdateRule rule : {UpdateRule::OriginalBipolar, UpdateRule::AttentionBipolar,
                          UpdateRule::OriginalFhrr, UpdateRule::AttentionFhrr}) {
    ExperimentSpec spec = base_spec("bundle-sweep", rule, c);
    spec.dims = c.dims;
    spec.factors = c.factors;
    spec.codebook_sizes = c.sizes;
    spec.search_space_sizes = c.ms;
    spec.k_list = c.ks;
    specs.push_back(spec);
  }
  const std::vector<TrialRecord> records = run_specs(std::move(specs), c);
  maybe_plot(records, "k", "success", {"rule", "kind", "F"}, c);
  return 0;
}

int cmd_tables(const ExperimentCli& cli) {
  ExperimentCli c = cli;
  if (c.dims.empty()) c.dims = {1500};
  if (c.factors.empty()) c.factors = {2, 4, 6};
  if (c.ms.empty() && c.sizes.empty()) c.ms = {5000};
  if (c.ks.empty()) c.ks = {1, 3, 9};
  const std::vector<UpdateRule> rules = {UpdateRule::AttentionBipolar, UpdateRule::AttentionFhrr,
                                         UpdateRule::OriginalBipolar, UpdateRule::OriginalFhrr};
  std::vector<ExperimentSpec> specs;
  for (UpdateRule rule : rules) {
    ExperimentSpec spec = base_spec("tables", rule, c);
    spec.dims = c.dims;
    spec.factors = c.factors;
    spec.codebook_sizes = c.sizes;
    spec.search_space_sizes = c.ms;
    spec.k_list = c.ks;
    specs.push_back(spec);
  }
  const std::vector<TrialRecord> records = run_specs(std::move(specs), c);

  const char* labels[] = {"Attention Bipolar", "Attention FHRR", "Original Bipolar",
                          "Original FHRR"};
  auto print_table = [&](const char* title, bool success_table) {
    std::printf("\n%s\n", title);
    std::printf("%-18s", "Method");
    for (std::size_t f : c.factors)
      for (std::size_t k : c.ks) std::printf("  (%zu,%zu)", f, k);
    std::printf("\n");
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      std::printf("%-18s", labels[ri]);
      for (std::size_t f : c.factors) {
        for (std::size_t k : c.ks) {
          const std::vector<TrialRecord> cell = select(records, rules[ri], f, k);
          if (cell.empty()) {
            std::printf("  %6s", "-");
            continue;
          }
          if (success_table) {
            std::printf("  %6.3f", estimate_success_rate(cell));
          } else {
            const double v = complexity(cell);
            if (std::isinf(v)) {
              std::printf("  %6s", "inf");
            } else {
              std::printf("  %6.2f", v);
            }
          }
        }
      }
      std::printf("\n");
    }
  };
  print_table("Success probability", true);
  print_table("Complexity (mean iterations / P_success)", false);
  maybe_plot(records, "k", "success", {"rule", "kind", "F"}, c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperdimensional resonator networks: factorization and benchmarks"};
  app.require_subcommand(1);

  // factorize
  std::string kind_s = "bipolar", rule_s = "attention";
  std::size_t dim = 1500, f = 3, n = 17;
  double beta = 250.0;
  std::uint64_t seed = 1;
  CLI::App* fac = app.add_subcommand("factorize", "factorize one random bound hypervector");
  fac->add_option("--kind", kind_s, "bipolar|fhrr")
      ->check(CLI::IsMember({"bipolar", "fhrr"}));
  fac->add_option("--rule", rule_s, "original|attention")
      ->check(CLI::IsMember({"original", "attention"}));
  fac->add_option("--dim", dim, "hypervector dimension D");
  fac->add_option("--factors", f, "number of factors F");
  fac->add_option("--codebook-size", n, "codebook size n");
  fac->add_option("--beta", beta, "softmax inverse temperature");
  fac->add_option("--seed", seed, "master seed");

  // experiment
  ExperimentCli ex;
  CLI::App* exp = app.add_subcommand("experiment", "run a benchmark sweep");
  exp->require_subcommand(1);
  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"acc-vs-m", "iters-vs-m", "fhrr-vs-bipolar", "beta-sweep",
                           "noise-sweep", "bundle-sweep", "tables"}) {
    CLI::App* s = exp->add_subcommand(name);
    s->add_option("--trials", ex.trials, "Monte Carlo trials per point (default 1000)");
    s->add_option("--seed", ex.seed, "master seed");
    s->add_option("--beta", ex.beta, "softmax inverse temperature (default 250)");
    s->add_option("--dims", ex.dims, "hypervector dimensions to sweep");
    s->add_option("--factors", ex.factors, "factor counts to sweep");
    s->add_option("--ms", ex.ms, "search-space sizes M (n = round(M^(1/F)))");
    s->add_option("--sizes", ex.sizes, "codebook sizes n (alternative to --ms)");
    s->add_option("--sigmas", ex.sigmas, "noise standard deviations");
    s->add_option("--ks", ex.ks, "bundle sizes");
    s->add_option("--betas", ex.betas, "beta grid (beta-sweep only)");
    s->add_option("--out", ex.out, "records output path");
    s->add_option("--format", ex.format, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--plot", ex.plot, "SVG plot output path");
    s->add_option("--workers", ex.workers, "worker threads (0 = hardware)");
    subs[name] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fac->parsed()) {
      return cmd_factorize(kind_s == "fhrr", rule_s == "attention", dim, f, n, beta, seed);
    }
    if (subs["acc-vs-m"]->parsed()) return cmd_acc_iters_vs_m(ex, false);
    if (subs["iters-vs-m"]->parsed()) return cmd_acc_iters_vs_m(ex, true);
    if (subs["fhrr-vs-bipolar"]->parsed()) return cmd_fhrr_vs_bipolar(ex);
    if (subs["beta-sweep"]->parsed()) return cmd_beta_sweep(ex);
    if (subs["noise-sweep"]->parsed()) return cmd_noise_sweep(ex);
    if (subs["bundle-sweep"]->parsed()) return cmd_bundle_sweep(ex);
    if (subs["tables"]->parsed()) return cmd_tables(ex);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid arguments: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 2;
  }
  return 1;
}
