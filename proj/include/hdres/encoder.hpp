#pragma once

// Kernel-trick encoder for continuous features: H_f = exp(i * W * f), where W
// is a fixed D x d projection drawn from p(omega). When p(omega) is the
// Fourier transform of a translation-invariant kernel K, similarities of
// encoded vectors approximate K(f - g). The default standard-normal law
// corresponds to the Gaussian kernel exp(-|f - g|^2 / 2).

#include <cstddef>
#include <string>
#include <vector>

#include "hdres/hypervector.hpp"
#include "hdres/rng.hpp"

namespace hdres {

class FhrrEncoder {
 public:
  // Samples a D x d projection with i.i.d. standard-normal entries.
  FhrrEncoder(std::size_t input_dim, std::size_t dim, Rng& rng);

  // Adopts a caller-supplied projection (row-major, dim x input_dim) together
  // with a descriptor of the law it was drawn from.
  FhrrEncoder(std::size_t input_dim, std::size_t dim, std::vector<double> projection,
              std::string distribution);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t dim() const { return dim_; }
  const std::string& distribution() const { return distribution_; }
  const std::vector<double>& projection() const { return projection_; }

  // Component j of the output is exp(i * (W f)_j); always unit modulus.
  Hypervector encode(std::span<const double> feature) const;

 private:
  std::size_t input_dim_;
  std::size_t dim_;
  std::vector<double> projection_;  // dim_ x input_dim_, row-major
  std::string distribution_;
};

}  // namespace hdres
