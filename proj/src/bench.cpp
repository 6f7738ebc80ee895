#include "hdres/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace hdres {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t point_seed(const ExperimentSpec& spec, const SpecPoint& p,
                         std::size_t trial_index) {
  std::uint64_t s = derive_seed(spec.master_seed, "trial");
  s = mix_seed(s, static_cast<std::uint64_t>(spec.update_rule));
  s = mix_seed(s, static_cast<std::uint64_t>(spec.vector_kind));
  s = mix_seed(s, p.dim);
  s = mix_seed(s, p.factors);
  s = mix_seed(s, p.codebook_size);
  s = mix_seed(s, std::bit_cast<std::uint64_t>(spec.beta));
  s = mix_seed(s, std::bit_cast<std::uint64_t>(p.sigma));
  s = mix_seed(s, p.k);
  return mix_seed(s, trial_index);
}

}  // namespace

double accuracy(const FactorizationResult& result, const IndexTuple& truth) {
  require(result.indices.size() == truth.size(), "accuracy: tuple length mismatch");
  std::size_t correct = 0;
  for (std::size_t j = 0; j < truth.size(); ++j)
    if (result.indices[j] == truth[j]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

std::size_t codebook_size_for(std::uint64_t search_space, std::size_t factors) {
  require(search_space >= 1, "codebook_size_for: M must be >= 1");
  require(factors >= 1, "codebook_size_for: F must be >= 1");
  const double n = std::round(std::pow(static_cast<double>(search_space),
                                       1.0 / static_cast<double>(factors)));
  return static_cast<std::size_t>(std::max(1.0, n));
}

std::vector<SpecPoint> resolve_points(const ExperimentSpec& spec) {
  require(spec.trials >= 1, "experiment: trials must be >= 1");
  require(spec.codebook_sizes.empty() != spec.search_space_sizes.empty(),
          "experiment: specify codebook sizes or search-space sizes, not both");
  std::vector<SpecPoint> points;
  for (std::size_t dim : spec.dims) {
    require(dim >= 1, "experiment: dim must be >= 1");
    for (std::size_t f : spec.factors) {
      require(f >= 1, "experiment: factors must be >= 1");
      std::vector<std::size_t> sizes = spec.codebook_sizes;
      if (sizes.empty()) {
        for (std::uint64_t m : spec.search_space_sizes)
          sizes.push_back(codebook_size_for(m, f));
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
      }
      for (std::size_t n : sizes) {
        require(n >= 1, "experiment: codebook size must be >= 1");
        std::uint64_t realized = 1;
        for (std::size_t i = 0; i < f; ++i) realized *= n;
        for (double sigma : spec.sigma_list) {
          require(sigma >= 0.0, "experiment: sigma must be nonnegative");
          for (std::size_t k : spec.k_list) {
            require(k >= 1, "experiment: k must be >= 1");
            points.push_back(SpecPoint{dim, f, n, realized, sigma, k});
          }
        }
      }
    }
  }
  require(!points.empty(), "experiment: empty sweep");
  return points;
}

TrialRecord run_trial(const ExperimentSpec& spec, const SpecPoint& point,
                      std::size_t trial_index) {
  const auto t0 = std::chrono::steady_clock::now();
  const Rng trial_rng(point_seed(spec, point, trial_index));

  std::vector<Codebook> codebooks;
  codebooks.reserve(point.factors);
  for (std::size_t j = 0; j < point.factors; ++j) {
    Rng cb_rng = trial_rng.derive("codebook", j);
    codebooks.push_back(make_codebook(point.codebook_size, point.dim, spec.vector_kind, cb_rng));
  }

  Rng truth_rng = trial_rng.derive("truth");
  const BundleSpec truth = random_bundle_spec(codebooks, point.k, truth_rng);
  Hypervector s = encode_bundle(codebooks, truth);
  if (point.sigma > 0.0) {
    Rng noise_rng = trial_rng.derive("noise");
    s = add_noise(s, NoiseSpec{point.sigma}, noise_rng);
  }

  ResonatorConfig cfg;
  cfg.update_rule = spec.update_rule;
  cfg.beta = spec.beta;
  cfg.max_iters = max_iters_for(point.search_space);
  const std::vector<FactorizationResult> results =
      decode_bundle(s, codebooks, point.k, cfg);

  TrialRecord rec;
  rec.experiment = spec.name;
  rec.trial = trial_index;
  rec.kind = spec.vector_kind;
  rec.rule = spec.update_rule;
  rec.dim = point.dim;
  rec.factors = point.factors;
  rec.codebook_size = point.codebook_size;
  rec.search_space = point.search_space;
  rec.beta = spec.beta;
  rec.sigma = point.sigma;
  rec.k = point.k;

  std::vector<IndexTuple> decoded;
  decoded.reserve(results.size());
  double iter_sum = 0.0;
  bool all_converged = true;
  double best_accuracy = 0.0;
  for (const FactorizationResult& r : results) {
    decoded.push_back(r.indices);
    iter_sum += static_cast<double>(r.iterations);
    all_converged = all_converged && r.converged;
    for (const IndexTuple& t : truth.tuples)
      best_accuracy = std::max(best_accuracy, accuracy(r, t));
  }
  rec.accuracy = best_accuracy;
  rec.iterations = static_cast<std::size_t>(
      std::llround(iter_sum / static_cast<double>(results.size())));
  rec.converged = all_converged;
  rec.success = is_success(decoded, truth);
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

double estimate_success_rate(std::span<const TrialRecord> records) {
  require(!records.empty(), "estimate_success_rate: no records");
  std::size_t hits = 0;
  for (const TrialRecord& r : records) hits += r.success ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

double complexity(std::span<const TrialRecord> records) {
  require(!records.empty(), "complexity: no records");
  const double p = estimate_success_rate(records);
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  double iter_sum = 0.0;
  for (const TrialRecord& r : records) iter_sum += static_cast<double>(r.iterations);
  return iter_sum / static_cast<double>(records.size()) / p;
}

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec,
                                        const RecordCallback& on_record,
                                        std::size_t workers,
                                        bool progress_to_stderr) {
  const std::vector<SpecPoint> points = resolve_points(spec);
  const std::size_t total = points.size() * spec.trials;
  std::vector<TrialRecord> records(total);

  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, total);

  // Work items are indexed globally; record i belongs to point i / trials,
  // trial i % trials, which is already the canonical order. Completed records
  // are streamed to the callback in that order via a reorder cursor, so the
  // sink sees a deterministic prefix no matter how workers are scheduled.
  std::vector<char> ready(total, 0);
  std::size_t flushed = 0;
  std::mutex flush_mu;
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::size_t> done{0};

  auto worker_fn = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= total) return;
      const SpecPoint& p = points[i / spec.trials];
      TrialRecord rec = run_trial(spec, p, i % spec.trials);
      {
        std::lock_guard<std::mutex> lock(flush_mu);
        records[i] = std::move(rec);
        ready[i] = 1;
        while (flushed < total && ready[flushed]) {
          if (on_record) on_record(records[flushed]);
          ++flushed;
        }
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress_to_stderr && (d % 500 == 0 || d == total)) {
        std::fprintf(stderr, "[%s] %zu/%zu trials\n", spec.name.c_str(), d, total);
      }
    }
  };

  if (workers <= 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

}  // namespace hdres
