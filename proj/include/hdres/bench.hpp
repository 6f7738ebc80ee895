#pragma once

// Experiment harness: deterministic Monte Carlo sweeps over (D, F, n/M,
// sigma, k) grids with per-trial sub-seeding, plus the accuracy / success /
// complexity metrics. Records are independent of worker count and collection
// order; the canonical sort is (point index, trial index).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hdres/decomposer.hpp"
#include "hdres/resonator.hpp"

namespace hdres {

struct ExperimentSpec {
  std::string name;
  Kind vector_kind = Kind::Bipolar;
  UpdateRule update_rule = UpdateRule::AttentionBipolar;
  std::vector<std::size_t> dims = {1500};
  std::vector<std::size_t> factors = {3};
  // Exactly one of the next two should be nonempty. Given M, the per-factor
  // codebook size is n = round(M^(1/F)) and the realized M = n^F is recorded.
  std::vector<std::size_t> codebook_sizes;
  std::vector<std::uint64_t> search_space_sizes;
  double beta = 250.0;
  std::size_t trials = 1000;
  std::vector<double> sigma_list = {0.0};
  std::vector<std::size_t> k_list = {1};
  std::uint64_t master_seed = 1;
};

// One fully resolved grid point of a sweep.
struct SpecPoint {
  std::size_t dim = 0;
  std::size_t factors = 0;
  std::size_t codebook_size = 0;
  std::uint64_t search_space = 0;  // realized n^F
  double sigma = 0.0;
  std::size_t k = 1;
};

struct TrialRecord {
  std::string experiment;
  std::size_t trial = 0;
  Kind kind = Kind::Bipolar;
  UpdateRule rule = UpdateRule::AttentionBipolar;
  std::size_t dim = 0;
  std::size_t factors = 0;
  std::size_t codebook_size = 0;
  std::uint64_t search_space = 0;
  double beta = 0.0;
  double sigma = 0.0;
  std::size_t k = 1;
  double accuracy = 0.0;     // best matched-tuple fraction, c/F
  std::size_t iterations = 0;  // per-decode mean, rounded to nearest
  bool converged = false;    // all k decodes reached a fixed point
  bool success = false;
  double wall_time_s = 0.0;  // excluded from persistence and determinism
};

// Fraction of factor positions where the readout matches the truth tuple.
double accuracy(const FactorizationResult& result, const IndexTuple& truth);

// Resolved grid of an experiment spec, in canonical order.
std::vector<SpecPoint> resolve_points(const ExperimentSpec& spec);

// n = round(M^(1/F)), at least 1.
std::size_t codebook_size_for(std::uint64_t search_space, std::size_t factors);

// Runs a single trial: derive sub-seed, sample codebooks and truth tuples,
// encode, add noise, decode, measure.
TrialRecord run_trial(const ExperimentSpec& spec, const SpecPoint& point,
                      std::size_t trial_index);

// Fraction of records with success = true.
double estimate_success_rate(std::span<const TrialRecord> records);

// Mean iterations divided by success rate; +infinity when no trial succeeds.
double complexity(std::span<const TrialRecord> records);

// Invoked with records in canonical order as soon as they are available.
using RecordCallback = std::function<void(const TrialRecord&)>;

// Cartesian sweep, trials fanned across `workers` threads (0 = hardware
// concurrency). Per-trial seeding makes the output independent of scheduling;
// the returned records are sorted by (point, trial).
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec,
                                        const RecordCallback& on_record = nullptr,
                                        std::size_t workers = 0,
                                        bool progress_to_stderr = false);

}  // namespace hdres
