// Acceptance suite: end-to-end reproduction checks for the benchmark claims.
// Each criterion prints one PASS/FAIL line (with its sub-checks indented);
// the process exits nonzero if any criterion fails.
//
// Shared configuration: D = 1500, M ~ 5000, beta = 250, 1000 trials per cell;
// Monte Carlo tolerances assume binomial standard error <= 0.016.

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hdres/bench.hpp"
#include "hdres/records_io.hpp"

using namespace hdres;

namespace {

constexpr std::size_t kTrials = 1000;
constexpr std::size_t kDim = 1500;
constexpr double kBeta = 250.0;

int failures = 0;
std::vector<std::string> sub_lines;
bool criterion_ok = true;

void sub_check(bool ok, const std::string& text) {
  std::ostringstream os;
  os << "    [" << (ok ? "ok" : "FAIL") << "] " << text;
  sub_lines.push_back(os.str());
  criterion_ok = criterion_ok && ok;
}

void finish_criterion(int number, const std::string& title) {
  std::printf("[%s] criterion %d: %s\n", criterion_ok ? "PASS" : "FAIL", number,
              title.c_str());
  for (const std::string& line : sub_lines) std::printf("%s\n", line.c_str());
  std::fflush(stdout);
  if (!criterion_ok) ++failures;
  sub_lines.clear();
  criterion_ok = true;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// ---- shared experiment runs -------------------------------------------------

using CellKey = std::tuple<UpdateRule, std::size_t, std::size_t>;  // rule, F, k

struct TableRuns {
  std::map<CellKey, std::vector<TrialRecord>> cells;
  const std::vector<TrialRecord>& at(UpdateRule r, std::size_t f, std::size_t k) const {
    return cells.at({r, f, k});
  }
};

TableRuns run_tables() {
  TableRuns out;
  for (UpdateRule rule : {UpdateRule::AttentionBipolar, UpdateRule::AttentionFhrr,
                          UpdateRule::OriginalBipolar, UpdateRule::OriginalFhrr}) {
    ExperimentSpec spec;
    spec.name = "tables";
    spec.update_rule = rule;
    spec.vector_kind = kind_for(rule);
    spec.dims = {kDim};
    spec.factors = {2, 4, 6};
    spec.search_space_sizes = {5000};
    spec.beta = kBeta;
    spec.trials = kTrials;
    spec.k_list = {1, 3, 9};
    spec.master_seed = 11;
    const auto records = run_experiment(spec, nullptr, 0, true);
    for (const TrialRecord& r : records)
      out.cells[{rule, r.factors, r.k}].push_back(r);
  }
  return out;
}

double mean_accuracy(const std::vector<TrialRecord>& recs) {
  double s = 0.0;
  for (const auto& r : recs) s += r.accuracy;
  return s / static_cast<double>(recs.size());
}

double mean_iterations(const std::vector<TrialRecord>& recs) {
  double s = 0.0;
  for (const auto& r : recs) s += static_cast<double>(r.iterations);
  return s / static_cast<double>(recs.size());
}

std::map<std::uint64_t, std::vector<TrialRecord>> by_search_space(
    const std::vector<TrialRecord>& recs) {
  std::map<std::uint64_t, std::vector<TrialRecord>> out;
  for (const auto& r : recs) out[r.search_space].push_back(r);
  return out;
}

// ---- criteria ----------------------------------------------------------------

void criterion_1_2() {
  const TableRuns tables = run_tables();

  // criterion 1: success-probability spot values, with the D-ambiguity
  // fallback orderings engaged if any absolute value misses
  struct Spot {
    UpdateRule rule;
    std::size_t f, k;
    double expect;
    const char* label;
  };
  const Spot spots[] = {
      {UpdateRule::AttentionBipolar, 2, 1, 0.998, "attention bipolar (2,1)"},
      {UpdateRule::AttentionFhrr, 4, 3, 0.853, "attention fhrr (4,3)"},
      {UpdateRule::AttentionFhrr, 6, 1, 0.991, "attention fhrr (6,1)"},
      {UpdateRule::OriginalBipolar, 6, 1, 0.141, "original bipolar (6,1)"},
  };
  bool spots_ok = true;
  for (const Spot& s : spots) {
    const double p = estimate_success_rate(tables.at(s.rule, s.f, s.k));
    const bool ok = std::abs(p - s.expect) <= 0.05;
    spots_ok = spots_ok && ok;
    sub_check(ok, std::string(s.label) + " P=" + fmt(p) + " expected " + fmt(s.expect) +
                      " +-0.05");
  }
  bool orig_fhrr_ok = true;
  double worst_orig_fhrr = 0.0;
  for (std::size_t f : {2, 4, 6}) {
    for (std::size_t k : {1, 3, 9}) {
      const double p = estimate_success_rate(tables.at(UpdateRule::OriginalFhrr, f, k));
      worst_orig_fhrr = std::max(worst_orig_fhrr, p);
      orig_fhrr_ok = orig_fhrr_ok && p <= 0.01;
    }
  }
  sub_check(orig_fhrr_ok, "original fhrr P <= 0.01 at every (F,k) (worst " +
                              fmt(worst_orig_fhrr) + ")");
  if (!(spots_ok && orig_fhrr_ok)) {
    bool fallback_ok = true;
    for (std::size_t f : {4, 6}) {
      for (std::size_t k : {1, 3, 9}) {
        const double pf = estimate_success_rate(tables.at(UpdateRule::AttentionFhrr, f, k));
        const double pb =
            estimate_success_rate(tables.at(UpdateRule::AttentionBipolar, f, k));
        const double po =
            estimate_success_rate(tables.at(UpdateRule::OriginalBipolar, f, k));
        fallback_ok = fallback_ok && (pf >= pb + 0.05) && (pb >= po + 0.05);
      }
    }
    sub_check(fallback_ok,
              "fallback: attention-fhrr >= attention-bipolar >= original-bipolar by 0.05 "
              "for F in {4,6}, all k");
    criterion_ok = fallback_ok;  // spots missed; the fallback decides
  }
  finish_criterion(1, "success-probability table spots (M~5000, D=1500, beta=250)");

  // criterion 2: complexity spot values and hard ordering
  {
    const double c21 = complexity(tables.at(UpdateRule::AttentionFhrr, 2, 1));
    sub_check(std::abs(c21 - 3.01) <= 0.3 * 3.01,
              "attention fhrr (2,1) complexity " + fmt(c21) + " expected 3.01 +-30%");
    const double c69 = complexity(tables.at(UpdateRule::AttentionFhrr, 6, 9));
    sub_check(std::abs(c69 - 8.39) <= 0.3 * 8.39,
              "attention fhrr (6,9) complexity " + fmt(c69) + " expected 8.39 +-30%");
    const double o69 = complexity(tables.at(UpdateRule::OriginalBipolar, 6, 9));
    sub_check(std::abs(o69 - 87.03) <= 0.3 * 87.03,
              "original bipolar (6,9) complexity " + fmt(o69) + " expected 87.03 +-30%");
    bool inf_ok = true;
    for (std::size_t f : {2, 4, 6})
      for (std::size_t k : {1, 3, 9})
        inf_ok = inf_ok && std::isinf(complexity(tables.at(UpdateRule::OriginalFhrr, f, k)));
    sub_check(inf_ok, "original fhrr complexity infinite (P_success = 0) at every (F,k)");
    bool order_ok = true;
    for (std::size_t f : {4, 6}) {
      for (std::size_t k : {1, 3, 9}) {
        const double orig = complexity(tables.at(UpdateRule::OriginalBipolar, f, k));
        order_ok = order_ok &&
                   complexity(tables.at(UpdateRule::AttentionFhrr, f, k)) < orig &&
                   complexity(tables.at(UpdateRule::AttentionBipolar, f, k)) < orig;
      }
    }
    sub_check(order_ok,
              "attention complexity < original bipolar complexity for F >= 4, all k");
  }
  finish_criterion(2, "complexity table spots and hard ordering");
}

std::map<std::uint64_t, std::vector<TrialRecord>> sweep_m(UpdateRule rule, std::size_t f,
                                                          std::uint64_t seed) {
  ExperimentSpec spec;
  spec.name = "acc-vs-m";
  spec.update_rule = rule;
  spec.vector_kind = kind_for(rule);
  spec.dims = {kDim};
  spec.factors = {f};
  spec.search_space_sizes = {5000, 10000, 20000};
  spec.beta = kBeta;
  spec.trials = kTrials;
  spec.master_seed = seed;
  return by_search_space(run_experiment(spec, nullptr, 0, true));
}

void criterion_3_4() {
  std::map<std::size_t, std::map<std::uint64_t, std::vector<TrialRecord>>> attn, orig;
  for (std::size_t f : {3, 4}) {
    attn[f] = sweep_m(UpdateRule::AttentionBipolar, f, 21);
    orig[f] = sweep_m(UpdateRule::OriginalBipolar, f, 22);
  }

  // criterion 3: accuracy gap at every swept M, growing with F
  double gap_f3_last = 0.0, gap_f4_last = 0.0;
  for (std::size_t f : {3, 4}) {
    for (const auto& [m, recs] : attn[f]) {
      const double ga = mean_accuracy(recs) - mean_accuracy(orig[f].at(m));
      sub_check(ga > 0.0, "F=" + std::to_string(f) + " M=" + std::to_string(m) +
                              " attention-original accuracy gap " + fmt(ga) + " > 0");
      if (f == 3) gap_f3_last = ga;
      if (f == 4) gap_f4_last = ga;
    }
  }
  sub_check(gap_f4_last >= 0.05,
            "gap at largest M for F=4 is " + fmt(gap_f4_last) + " >= 0.05");
  sub_check(gap_f4_last > gap_f3_last, "gap grows with F at largest M (F=4 " +
                                           fmt(gap_f4_last) + " > F=3 " + fmt(gap_f3_last) +
                                           ")");
  finish_criterion(3, "attention beats original accuracy at every swept M for F=3,4");

  // criterion 4: iteration counts and cap saturation. At M ~ 5000 the cap is
  // 4-5 sweeps and both rules saturate it, so the iteration comparison is
  // made where the cap leaves room to converge early (cap >= 10).
  for (std::size_t f : {3, 4}) {
    for (const auto& [m, recs] : attn[f]) {
      if (max_iters_for(m) < 10) continue;
      const double ia = mean_iterations(recs);
      const double io = mean_iterations(orig[f].at(m));
      sub_check(ia < io, "F=" + std::to_string(f) + " M=" + std::to_string(m) +
                             " mean iterations attention " + fmt(ia) + " < original " +
                             fmt(io));
    }
  }
  const auto& orig_f4 = orig[4].at(4096);
  std::size_t capped = 0;
  for (const auto& r : orig_f4) capped += r.converged ? 0 : 1;
  const double frac = static_cast<double>(capped) / static_cast<double>(orig_f4.size());
  sub_check(frac >= 0.5,
            "original cap-hit fraction at F=4, M~5000 is " + fmt(frac) + " >= 0.5");
  finish_criterion(4, "attention converges in fewer iterations; original saturates the cap");
}

void criterion_5() {
  double acc[2];
  int i = 0;
  for (UpdateRule rule : {UpdateRule::AttentionFhrr, UpdateRule::OriginalFhrr}) {
    ExperimentSpec spec;
    spec.name = "fhrr-gap";
    spec.update_rule = rule;
    spec.vector_kind = Kind::Complex;
    spec.dims = {kDim};
    spec.factors = {3};
    spec.search_space_sizes = {5000};
    spec.beta = kBeta;
    spec.trials = kTrials;
    spec.master_seed = 31;
    acc[i++] = mean_accuracy(run_experiment(spec, nullptr, 0, true));
  }
  const double gap = acc[0] - acc[1];
  sub_check(gap >= 0.3, "attention fhrr " + fmt(acc[0]) + " vs original fhrr " + fmt(acc[1]) +
                            ": accuracy gap " + fmt(gap) + " >= 0.3");
  finish_criterion(5, "original rule adapted to FHRR underperforms attention FHRR at F=3");
}

void criterion_6() {
  const std::vector<double> betas = {10, 25, 50, 100, 175, 250};
  std::vector<double> acc;
  for (double beta : betas) {
    ExperimentSpec spec;
    spec.name = "beta-sweep";
    spec.update_rule = UpdateRule::AttentionBipolar;
    spec.vector_kind = Kind::Bipolar;
    spec.dims = {1000};
    spec.factors = {3};
    spec.search_space_sizes = {5000};
    spec.beta = beta;
    spec.trials = kTrials;
    spec.master_seed = 41;
    acc.push_back(mean_accuracy(run_experiment(spec, nullptr, 0, true)));
  }
  for (std::size_t i = 0; i + 1 < betas.size(); ++i) {
    const bool ok = acc[i + 1] >= acc[i] - 0.05;
    sub_check(ok, "beta " + fmt(betas[i]) + " -> " + fmt(betas[i + 1]) + ": accuracy " +
                      fmt(acc[i]) + " -> " + fmt(acc[i + 1]) + " (tolerance -0.05)");
  }
  finish_criterion(6, "accuracy non-decreasing in beta at F=3, bipolar, D=1000");
}

void criterion_7() {
  const std::vector<double> sigmas = {0.0, 0.5, 1.0, 1.5, 2.0};
  std::map<UpdateRule, std::map<double, double>> acc;
  for (UpdateRule rule : {UpdateRule::OriginalBipolar, UpdateRule::AttentionBipolar,
                          UpdateRule::OriginalFhrr, UpdateRule::AttentionFhrr}) {
    ExperimentSpec spec;
    spec.name = "noise-sweep";
    spec.update_rule = rule;
    spec.vector_kind = kind_for(rule);
    spec.dims = {kDim};
    spec.factors = {4};
    spec.codebook_sizes = {8};
    spec.beta = kBeta;
    spec.trials = kTrials;
    spec.sigma_list = sigmas;
    spec.master_seed = 51;
    const auto records = run_experiment(spec, nullptr, 0, true);
    for (const auto& r : records)
      acc[rule][r.sigma] += r.accuracy / static_cast<double>(kTrials);
  }
  for (Kind kind : {Kind::Bipolar, Kind::Complex}) {
    const UpdateRule a = rule_for(true, kind);
    const UpdateRule o = rule_for(false, kind);
    double max_interior_gap = 0.0;
    for (double sigma : sigmas) {
      const double gap = acc[a][sigma] - acc[o][sigma];
      sub_check(gap >= 0.0, std::string(to_string(kind)) + " sigma=" + fmt(sigma) +
                                ": attention " + fmt(acc[a][sigma]) + " >= original " +
                                fmt(acc[o][sigma]));
      if (sigma > 0.0 && sigma < 2.0) max_interior_gap = std::max(max_interior_gap, gap);
    }
    sub_check(max_interior_gap >= 0.1, std::string(to_string(kind)) +
                                           ": max interior-sigma gap " +
                                           fmt(max_interior_gap) + " >= 0.1");
  }
  finish_criterion(7, "attention outperforms original under Gaussian noise (F=4, n=8)");
}

void criterion_8() {
  // bind/unbind identity and self-similarity
  {
    Rng rng(61);
    const Hypervector x = sample_fhrr(2048, rng);
    const Hypervector y = sample_fhrr(2048, rng);
    const Hypervector back = bind(bind(x, y), inverse(y));
    double worst = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i)
      worst = std::max(worst, std::abs(back.at(i) - x.at(i)));
    sub_check(worst <= 1e-9, "bind/unbind identity within 1e-9");
    sub_check(std::abs(similarity(x, x) - 1.0) <= 1e-12, "self-similarity = 1 within 1e-12");
  }
  // softmax weights sum to one; attention estimate stays in the convex hull
  {
    Rng rng(62);
    const Codebook cb = make_codebook(9, 1024, Kind::Bipolar, rng);
    const Hypervector q = sample_bipolar(1024, rng);
    const auto w = attention_weights(cb, q, kBeta);
    double total = 0.0;
    for (double x : w) total += x;
    sub_check(std::abs(total - 1.0) <= 1e-12, "softmax weights sum to 1 within 1e-12");
    const Hypervector est = cb.combine(w);
    bool hull = true;
    for (std::size_t i = 0; i < est.dim(); ++i) {
      double lo = 1e300, hi = -1e300;
      for (std::size_t r = 0; r < cb.size(); ++r) {
        lo = std::min(lo, cb.re_data()[r * cb.dim() + i]);
        hi = std::max(hi, cb.re_data()[r * cb.dim() + i]);
      }
      hull = hull && est.re()[i] >= lo - 1e-12 && est.re()[i] <= hi + 1e-12;
    }
    sub_check(hull, "attention estimate lies inside the codebook convex hull");
  }
  // original bipolar closure
  {
    std::vector<Codebook> cbs;
    for (std::size_t j = 0; j < 3; ++j) {
      Rng rng(derive_seed(63, "cb", j));
      cbs.push_back(make_codebook(5, 512, Kind::Bipolar, rng));
    }
    const Hypervector s = bind(bind(cbs[0].row(0), cbs[1].row(1)), cbs[2].row(2));
    ResonatorConfig cfg;
    cfg.update_rule = UpdateRule::OriginalBipolar;
    cfg.max_iters = 8;
    const auto res = factorize(s, cbs, cfg);
    bool bipolar = true;
    for (const auto& e : res.estimates)
      for (double x : e.re()) bipolar = bipolar && (x == 1.0 || x == -1.0);
    sub_check(bipolar, "original bipolar states remain in {-1,+1}^D after every sweep");
  }
  // determinism: same seed, identical CSV regardless of workers
  {
    ExperimentSpec spec;
    spec.name = "det";
    spec.update_rule = UpdateRule::AttentionFhrr;
    spec.vector_kind = Kind::Complex;
    spec.dims = {256};
    spec.factors = {2};
    spec.codebook_sizes = {5};
    spec.trials = 20;
    spec.master_seed = 64;
    const auto run1 = run_experiment(spec, nullptr, 1);
    const auto run2 = run_experiment(spec, nullptr, 4);
    std::string csv1, csv2;
    for (const auto& r : run1) csv1 += csv_line(r) + "\n";
    for (const auto& r : run2) csv2 += csv_line(r) + "\n";
    sub_check(csv1 == csv2, "same seed yields identical CSV (1 vs 4 workers)");
  }
  // exhaustive-search oracle agreement on converged noiseless runs
  {
    std::size_t converged = 0, agreed = 0;
    for (std::size_t t = 0; t < 200; ++t) {
      std::vector<Codebook> cbs;
      for (std::size_t j = 0; j < 2; ++j) {
        Rng rng(derive_seed(6500 + t, "cb", j));
        cbs.push_back(make_codebook(4, 1500, Kind::Bipolar, rng));
      }
      Rng pick(derive_seed(6500 + t, "truth"));
      const IndexTuple truth{pick.below(4), pick.below(4)};
      const Hypervector s = bind(cbs[0].row(truth[0]), cbs[1].row(truth[1]));
      ResonatorConfig cfg;
      cfg.update_rule = UpdateRule::AttentionBipolar;
      cfg.max_iters = 10;
      const auto res = factorize(s, cbs, cfg);
      if (!res.converged) continue;
      ++converged;
      double best = -2.0;
      IndexTuple arg{0, 0};
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          const double sc = similarity(s, bind(cbs[0].row(i), cbs[1].row(j)));
          if (sc > best) {
            best = sc;
            arg = {i, j};
          }
        }
      }
      if (res.indices == arg) ++agreed;
    }
    sub_check(converged > 0 && agreed * 100 >= converged * 95,
              "exhaustive-search agreement on " + std::to_string(agreed) + "/" +
                  std::to_string(converged) + " converged runs (>= 95%)");
  }
  // iteration cap never exceeded
  {
    ExperimentSpec spec;
    spec.name = "cap";
    spec.update_rule = UpdateRule::OriginalBipolar;
    spec.vector_kind = Kind::Bipolar;
    spec.dims = {512};
    spec.factors = {3};
    spec.search_space_sizes = {3000};
    spec.trials = 50;
    spec.master_seed = 66;
    const auto records = run_experiment(spec);
    bool ok = true;
    for (const auto& r : records) ok = ok && r.iterations <= max_iters_for(r.search_space);
    sub_check(ok, "iterations never exceed max_iters_for(M)");
  }
  finish_criterion(8, "property suite");
}

void criterion_9() {
  const std::size_t d = 10000;
  std::vector<Codebook> cbs;
  for (std::size_t j = 0; j < 4; ++j) {
    Rng rng(derive_seed(71, "cb", j));
    cbs.push_back(make_codebook(8, d, Kind::Bipolar, rng));
  }
  for (std::size_t k : {2, 3, 5, 9}) {
    Rng rng(derive_seed(72, "tuples", k));
    const BundleSpec spec = random_bundle_spec(cbs, k, rng);
    const Hypervector s = encode_bundle(cbs, spec);
    const Hypervector rest = subtract(s, encode_tuple(cbs, spec.tuples[0]));
    double var = 0.0;
    for (std::size_t i = 0; i < d; ++i) var += rest.re()[i] * rest.re()[i];
    var /= static_cast<double>(d);
    const double ratio = var / static_cast<double>(k - 1);
    sub_check(std::abs(ratio - 1.0) <= 0.15,
              "k=" + std::to_string(k) + ": per-component variance / (k-1) = " + fmt(ratio));
  }
  finish_criterion(9, "bundle interference variance grows linearly in k-1 at D=10000");
}

}  // namespace

int main() {
  std::printf("acceptance suite: D=%zu, M~5000, beta=%g, %zu trials per cell\n", kDim, kBeta,
              kTrials);
  criterion_1_2();
  criterion_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
