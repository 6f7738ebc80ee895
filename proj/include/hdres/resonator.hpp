#pragma once

// Resonator networks: iterative factorization of a bound hypervector into one
// entry per codebook. Four update rules are provided.
//
//   OriginalBipolar   x_j <- sgn(X X^T (s * o_j))        o_j = prod of raw estimates
//   OriginalFhrr      x_j <- g(X Re[X^dagger (s * o_j)]) o_j = prod of raw estimates
//   AttentionBipolar  x_j <- X^T softmax(beta * scores)  o_j = prod of conjugated estimates
//   AttentionFhrr     same, complex codebooks
//
// All factors update simultaneously from the previous iterate. The attention
// scores are cosine similarities between the codebook rows and the unbound
// query (the query's magnitude is normalized out), scaled by beta; see
// ResonatorConfig::unbind for the alternative unbinding variants.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hdres/codebook.hpp"
#include "hdres/hypervector.hpp"

namespace hdres {

enum class UpdateRule : std::uint8_t {
  OriginalBipolar,
  OriginalFhrr,
  AttentionBipolar,
  AttentionFhrr,
};

const char* to_string(UpdateRule rule);
bool is_attention(UpdateRule rule);
Kind kind_for(UpdateRule rule);
UpdateRule rule_for(bool attention, Kind kind);

// How the attention rules invert estimates during unbinding. Conjugate keeps
// each component's magnitude as a confidence weight and is the default; the
// clamped reciprocal is the exact multiplicative inverse.
enum class UnbindMode : std::uint8_t { Conjugate, ClampedInverse };

struct ResonatorConfig {
  UpdateRule update_rule = UpdateRule::AttentionBipolar;
  double beta = 250.0;            // inverse temperature (attention rules only)
  std::size_t max_iters = 100;
  double conv_tol = 1e-4;
  double inverse_eps = 1e-6;
  UnbindMode unbind = UnbindMode::Conjugate;
};

enum class StopReason : std::uint8_t { FixedPoint, IterationCap };

struct FactorizationResult {
  std::vector<Hypervector> estimates;  // final per-factor states
  std::vector<std::size_t> indices;    // nearest-codebook readout
  std::size_t iterations = 0;          // update sweeps executed
  bool converged = false;
  StopReason stop_reason = StopReason::IterationCap;
};

// Iteration cap 0.001 * M for search-space size M = n^F, floored, at least 1.
std::size_t max_iters_for(std::uint64_t search_space_size);

// Estimate j starts at the mean vector of codebook j.
std::vector<Hypervector> init_estimates(std::span<const Codebook> codebooks);

// s * prod_{i != j} inv(estimate_i). The original rules use the raw estimates
// (self-inverse convention carried over from the bipolar domain); the
// attention rules apply `mode` with clamp `inverse_eps`. F = 1 returns s.
Hypervector unbind_others(const Hypervector& s, std::span<const Hypervector> estimates,
                          std::size_t j, double inverse_eps, UpdateRule rule,
                          UnbindMode mode = UnbindMode::Conjugate);

// Numerically stable softmax of beta * scores; weights sum to 1.
std::vector<double> softmax(std::span<const double> scores, double beta);

// Softmax attention weights over a codebook's rows for an unbound query:
// cosine scores, scaled by beta. The convex combination cb.combine(weights)
// is one attention update.
std::vector<double> attention_weights(const Codebook& cb, const Hypervector& unbound,
                                      double beta);

// One simultaneous sweep of the original (sign / phase-normalization) rule.
std::vector<Hypervector> step_original(std::span<const Codebook> codebooks,
                                       const Hypervector& s,
                                       std::span<const Hypervector> estimates,
                                       const ResonatorConfig& cfg);

// One simultaneous sweep of the attention rule.
std::vector<Hypervector> step_attention(std::span<const Codebook> codebooks,
                                        const Hypervector& s,
                                        std::span<const Hypervector> estimates,
                                        const ResonatorConfig& cfg);

// True iff every factor's max componentwise change is below tol.
bool has_converged(std::span<const Hypervector> prev, std::span<const Hypervector> next,
                   double tol);

// Full loop: init, sweep until fixed point or cap, nearest-row readout.
FactorizationResult factorize(const Hypervector& s, std::span<const Codebook> codebooks,
                              const ResonatorConfig& cfg);

}  // namespace hdres
