#pragma once

// Codebook: the n x D matrix of hypervectors assigned to one attribute's
// possible values. Rows are stored densely in row-major order so the
// correlate/combine passes used by the resonator update rules are two
// cache-friendly matrix-vector products.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdres/hypervector.hpp"
#include "hdres/rng.hpp"

namespace hdres {

class Codebook {
 public:
  Codebook() = default;
  Codebook(Kind kind, std::size_t n, std::size_t dim);

  Kind kind() const { return kind_; }
  std::size_t size() const { return n_; }  // number of symbols
  std::size_t dim() const { return dim_; }
  bool is_complex() const { return kind_ == Kind::Complex; }

  Hypervector row(std::size_t j) const;
  void set_row(std::size_t j, const Hypervector& v);

  // Raw inner products Re[x_j^dagger u] for every row; length n.
  // (Not divided by D; callers apply their own normalization.)
  std::vector<double> correlate(const Hypervector& u) const;

  // Weighted row combination sum_j w_j * x_j. Output kind matches the
  // codebook's; bipolar sources produce real-valued (widened) components.
  Hypervector combine(std::span<const double> weights) const;

  std::span<const double> re_data() const { return re_; }
  std::span<const double> im_data() const { return im_; }

  bool operator==(const Codebook& other) const = default;

 private:
  Kind kind_ = Kind::Bipolar;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> re_;  // n * dim, row-major
  std::vector<double> im_;  // empty for Bipolar
};

// n independently sampled rows of the requested kind.
Codebook make_codebook(std::size_t n, std::size_t dim, Kind kind, Rng& rng);

// Argmax over rows of similarity(row, v); ties break toward the lowest index.
struct NearestResult {
  std::size_t index = 0;
  double score = 0.0;
};
NearestResult nearest(const Codebook& cb, const Hypervector& v);

// Componentwise arithmetic mean of the rows.
Hypervector mean_vector(const Codebook& cb);

// Binary container, documented in the README: magic "HDCB", version, kind,
// n, dim, optional seed, then row-major 64-bit little-endian floats (complex
// rows as interleaved re,im pairs). Round-trips are bit-exact.
void save_codebook(const Codebook& cb, const std::filesystem::path& path,
                   std::optional<std::uint64_t> seed = std::nullopt);

struct LoadedCodebook {
  Codebook codebook;
  std::optional<std::uint64_t> seed;
};
LoadedCodebook load_codebook(const std::filesystem::path& path);

}  // namespace hdres
