#pragma once

// Bundle construction, Gaussian noise injection, and greedy "reasoning out"
// decomposition: factorize the residual, subtract the clean reconstruction of
// the decoded tuple, repeat.

#include <cstddef>
#include <span>
#include <vector>

#include "hdres/codebook.hpp"
#include "hdres/hypervector.hpp"
#include "hdres/resonator.hpp"
#include "hdres/rng.hpp"

namespace hdres {

using IndexTuple = std::vector<std::size_t>;

struct BundleSpec {
  std::vector<IndexTuple> tuples;  // k ground-truth index tuples, length F each
  std::size_t k() const { return tuples.size(); }
};

struct NoiseSpec {
  double sigma = 0.0;
};

// Draws k distinct random tuples, one index per codebook.
BundleSpec random_bundle_spec(std::span<const Codebook> codebooks, std::size_t k, Rng& rng);

// s = sum over tuples of the componentwise product of the selected rows.
Hypervector encode_bundle(std::span<const Codebook> codebooks, const BundleSpec& spec);

// Bound tuple for a single index tuple.
Hypervector encode_tuple(std::span<const Codebook> codebooks, const IndexTuple& tuple);

// Adds independent N(0, sigma) noise per component; complex components get
// N(0, sigma/sqrt(2)) on each of the real and imaginary parts so the expected
// squared modulus of the perturbation is sigma^2. sigma = 0 returns s as is.
Hypervector add_noise(const Hypervector& s, const NoiseSpec& noise, Rng& rng);

// k rounds of factorize-and-subtract over the residual, in decode order.
std::vector<FactorizationResult> decode_bundle(const Hypervector& s,
                                               std::span<const Codebook> codebooks,
                                               std::size_t k, const ResonatorConfig& cfg);

// True iff at least one decoded tuple equals some ground-truth tuple exactly.
bool is_success(std::span<const IndexTuple> decoded, const BundleSpec& truth);

}  // namespace hdres
