#pragma once

// Dense hypervector type and the VSA algebra on it: similarity, binding,
// bundling, permutation, inversion.
//
// Two families are supported. Bipolar vectors are sampled from {-1,+1}^D and
// stored as a single real plane; bundling and averaging widen their domain to
// arbitrary reals, which downstream operations accept. Complex (FHRR) vectors
// are unit-modulus phasors e^{i*theta} stored as separate real and imaginary
// planes, which keeps the hot inner-product loops on contiguous doubles.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hdres/rng.hpp"

namespace hdres {

enum class Kind : std::uint8_t { Bipolar, Complex };

const char* to_string(Kind kind);

class Hypervector {
 public:
  Hypervector() = default;

  static Hypervector bipolar(std::vector<double> values);
  static Hypervector complex(std::vector<double> re, std::vector<double> im);
  static Hypervector zeros(Kind kind, std::size_t dim);
  static Hypervector ones(Kind kind, std::size_t dim);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return re_.size(); }
  bool is_complex() const { return kind_ == Kind::Complex; }

  std::span<const double> re() const { return re_; }
  std::span<const double> im() const { return im_; }  // empty for Bipolar
  std::span<double> re() { return re_; }
  std::span<double> im() { return im_; }

  std::complex<double> at(std::size_t i) const {
    return {re_[i], is_complex() ? im_[i] : 0.0};
  }

  bool operator==(const Hypervector& other) const = default;

 private:
  Hypervector(Kind kind, std::vector<double> re, std::vector<double> im)
      : kind_(kind), re_(std::move(re)), im_(std::move(im)) {}

  Kind kind_ = Kind::Bipolar;
  std::vector<double> re_;
  std::vector<double> im_;
};

// i.i.d. uniform {-1,+1} components.
Hypervector sample_bipolar(std::size_t dim, Rng& rng);

// Unit-modulus phasors e^{i*m}, m ~ Unif[0, 2*pi).
Hypervector sample_fhrr(std::size_t dim, Rng& rng);

// Real part of the normalized conjugate inner product, Re[a^dagger b] / D.
double similarity(const Hypervector& a, const Hypervector& b);

// Componentwise product.
Hypervector bind(const Hypervector& a, const Hypervector& b);

// Componentwise clamped multiplicative inverse, conj(z) / max(|z|^2, eps^2).
// Bipolar {-1,+1} values map to themselves; unit-modulus phasors to their
// conjugates; exact zeros stay zero.
Hypervector inverse(const Hypervector& a, double eps = 1e-6);

// Componentwise complex conjugate (identity for Bipolar kind).
Hypervector conjugate(const Hypervector& a);

// Componentwise sum; no normalization.
Hypervector bundle(std::span<const Hypervector> vs);

// Componentwise difference a - b.
Hypervector subtract(const Hypervector& a, const Hypervector& b);

// Cyclic rotation of components by shift positions (any sign).
Hypervector permute(const Hypervector& a, std::int64_t shift);

// Euclidean norm sqrt(sum |z_i|^2).
double l2_norm(const Hypervector& a);

}  // namespace hdres
