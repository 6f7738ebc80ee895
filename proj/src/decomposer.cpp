#include "hdres/decomposer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hdres {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_tuple(std::span<const Codebook> codebooks, const IndexTuple& tuple) {
  require(tuple.size() == codebooks.size(), "bundle: tuple length != number of factors");
  for (std::size_t j = 0; j < tuple.size(); ++j)
    require(tuple[j] < codebooks[j].size(), "bundle: tuple index out of range");
}

}  // namespace

BundleSpec random_bundle_spec(std::span<const Codebook> codebooks, std::size_t k, Rng& rng) {
  require(k >= 1, "random_bundle_spec: k must be >= 1");
  require(!codebooks.empty(), "random_bundle_spec: need at least one codebook");
  std::uint64_t space = 1;
  for (const Codebook& cb : codebooks) space *= cb.size();
  require(k <= space, "random_bundle_spec: k exceeds number of distinct tuples");
  std::set<IndexTuple> seen;
  BundleSpec spec;
  while (spec.tuples.size() < k) {
    IndexTuple t(codebooks.size());
    for (std::size_t j = 0; j < codebooks.size(); ++j) t[j] = rng.below(codebooks[j].size());
    if (seen.insert(t).second) spec.tuples.push_back(std::move(t));
  }
  return spec;
}

Hypervector encode_tuple(std::span<const Codebook> codebooks, const IndexTuple& tuple) {
  check_tuple(codebooks, tuple);
  Hypervector out = codebooks[0].row(tuple[0]);
  for (std::size_t j = 1; j < codebooks.size(); ++j)
    out = bind(out, codebooks[j].row(tuple[j]));
  return out;
}

Hypervector encode_bundle(std::span<const Codebook> codebooks, const BundleSpec& spec) {
  require(spec.k() >= 1, "encode_bundle: k must be >= 1");
  for (std::size_t a = 0; a < spec.k(); ++a)
    for (std::size_t b = a + 1; b < spec.k(); ++b)
      require(spec.tuples[a] != spec.tuples[b], "encode_bundle: duplicate tuple");
  std::vector<Hypervector> terms;
  terms.reserve(spec.k());
  for (const IndexTuple& t : spec.tuples) terms.push_back(encode_tuple(codebooks, t));
  return bundle(terms);
}

Hypervector add_noise(const Hypervector& s, const NoiseSpec& noise, Rng& rng) {
  require(noise.sigma >= 0.0, "add_noise: sigma must be nonnegative");
  if (noise.sigma == 0.0) return s;
  Hypervector out = s;
  if (!s.is_complex()) {
    for (double& x : out.re()) x += noise.sigma * rng.normal();
    return out;
  }
  const double per_axis = noise.sigma / std::sqrt(2.0);
  for (double& x : out.re()) x += per_axis * rng.normal();
  for (double& x : out.im()) x += per_axis * rng.normal();
  return out;
}

std::vector<FactorizationResult> decode_bundle(const Hypervector& s,
                                               std::span<const Codebook> codebooks,
                                               std::size_t k, const ResonatorConfig& cfg) {
  require(k >= 1, "decode_bundle: k must be >= 1");
  std::vector<FactorizationResult> results;
  results.reserve(k);
  Hypervector residual = s;
  for (std::size_t step = 0; step < k; ++step) {
    FactorizationResult r = factorize(residual, codebooks, cfg);
    residual = subtract(residual, encode_tuple(codebooks, r.indices));
    results.push_back(std::move(r));
  }
  return results;
}

bool is_success(std::span<const IndexTuple> decoded, const BundleSpec& truth) {
  for (const IndexTuple& d : decoded) {
    for (const IndexTuple& t : truth.tuples) {
      if (d == t) return true;
    }
  }
  return false;
}

}  // namespace hdres
