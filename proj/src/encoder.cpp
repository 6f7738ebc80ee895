#include "hdres/encoder.hpp"

#include <cmath>
#include <stdexcept>

namespace hdres {

FhrrEncoder::FhrrEncoder(std::size_t input_dim, std::size_t dim, Rng& rng)
    : input_dim_(input_dim), dim_(dim), distribution_("standard-normal") {
  if (input_dim == 0 || dim == 0)
    throw std::invalid_argument("FhrrEncoder: dimensions must be >= 1");
  projection_.resize(dim * input_dim);
  for (double& w : projection_) w = rng.normal();
}

FhrrEncoder::FhrrEncoder(std::size_t input_dim, std::size_t dim,
                         std::vector<double> projection, std::string distribution)
    : input_dim_(input_dim),
      dim_(dim),
      projection_(std::move(projection)),
      distribution_(std::move(distribution)) {
  if (input_dim == 0 || dim == 0)
    throw std::invalid_argument("FhrrEncoder: dimensions must be >= 1");
  if (projection_.size() != dim * input_dim)
    throw std::invalid_argument("FhrrEncoder: projection size mismatch");
}

Hypervector FhrrEncoder::encode(std::span<const double> feature) const {
  if (feature.size() != input_dim_)
    throw std::invalid_argument("FhrrEncoder::encode: feature length mismatch");
  std::vector<double> re(dim_), im(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const double* wrow = projection_.data() + j * input_dim_;
    double phase = 0.0;
    for (std::size_t k = 0; k < input_dim_; ++k) phase += wrow[k] * feature[k];
    re[j] = std::cos(phase);
    im[j] = std::sin(phase);
  }
  return Hypervector::complex(std::move(re), std::move(im));
}

}  // namespace hdres
