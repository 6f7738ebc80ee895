#include "hdres/codebook.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hdres {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Codebook::Codebook(Kind kind, std::size_t n, std::size_t dim)
    : kind_(kind), n_(n), dim_(dim), re_(n * dim, 0.0) {
  require(n >= 1, "codebook: n must be >= 1");
  require(dim >= 1, "codebook: dim must be >= 1");
  if (kind == Kind::Complex) im_.assign(n * dim, 0.0);
}

Hypervector Codebook::row(std::size_t j) const {
  require(j < n_, "codebook: row index out of range");
  std::vector<double> re(re_.begin() + j * dim_, re_.begin() + (j + 1) * dim_);
  if (!is_complex()) return Hypervector::bipolar(std::move(re));
  std::vector<double> im(im_.begin() + j * dim_, im_.begin() + (j + 1) * dim_);
  return Hypervector::complex(std::move(re), std::move(im));
}

void Codebook::set_row(std::size_t j, const Hypervector& v) {
  require(j < n_, "codebook: row index out of range");
  require(v.kind() == kind_ && v.dim() == dim_, "codebook: row kind/dim mismatch");
  std::copy(v.re().begin(), v.re().end(), re_.begin() + j * dim_);
  if (is_complex()) std::copy(v.im().begin(), v.im().end(), im_.begin() + j * dim_);
}

std::vector<double> Codebook::correlate(const Hypervector& u) const {
  require(u.kind() == kind_, "correlate: kind mismatch");
  require(u.dim() == dim_, "correlate: dim mismatch");
  std::vector<double> out(n_, 0.0);
  const double* ur = u.re().data();
  for (std::size_t j = 0; j < n_; ++j) {
    const double* xr = re_.data() + j * dim_;
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) acc += xr[i] * ur[i];
    out[j] = acc;
  }
  if (is_complex()) {
    const double* ui = u.im().data();
    for (std::size_t j = 0; j < n_; ++j) {
      const double* xi = im_.data() + j * dim_;
      double acc = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) acc += xi[i] * ui[i];
      out[j] += acc;
    }
  }
  return out;
}

Hypervector Codebook::combine(std::span<const double> weights) const {
  require(weights.size() == n_, "combine: weight count mismatch");
  std::vector<double> re(dim_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const double w = weights[j];
    const double* xr = re_.data() + j * dim_;
    for (std::size_t i = 0; i < dim_; ++i) re[i] += w * xr[i];
  }
  if (!is_complex()) return Hypervector::bipolar(std::move(re));
  std::vector<double> im(dim_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const double w = weights[j];
    const double* xi = im_.data() + j * dim_;
    for (std::size_t i = 0; i < dim_; ++i) im[i] += w * xi[i];
  }
  return Hypervector::complex(std::move(re), std::move(im));
}

Codebook make_codebook(std::size_t n, std::size_t dim, Kind kind, Rng& rng) {
  require(n >= 1, "make_codebook: n must be >= 1");
  require(dim >= 1, "make_codebook: dim must be >= 1");
  Codebook cb(kind, n, dim);
  for (std::size_t j = 0; j < n; ++j) {
    if (kind == Kind::Bipolar) {
      cb.set_row(j, sample_bipolar(dim, rng));
    } else {
      cb.set_row(j, sample_fhrr(dim, rng));
    }
  }
  return cb;
}

NearestResult nearest(const Codebook& cb, const Hypervector& v) {
  require(v.kind() == cb.kind(), "nearest: kind mismatch");
  require(v.dim() == cb.dim(), "nearest: dim mismatch");
  const std::vector<double> raw = cb.correlate(v);
  std::size_t best = 0;
  double best_raw = raw[0];
  for (std::size_t j = 1; j < raw.size(); ++j) {
    if (raw[j] > best_raw) {
      best_raw = raw[j];
      best = j;
    }
  }
  return {best, best_raw / static_cast<double>(cb.dim())};
}

Hypervector mean_vector(const Codebook& cb) {
  const std::vector<double> uniform(cb.size(), 1.0 / static_cast<double>(cb.size()));
  return cb.combine(uniform);
}

namespace {

constexpr char kMagic[4] = {'H', 'D', 'C', 'B'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ofstream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ofstream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ofstream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::ifstream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::ifstream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::ifstream& is) { return std::bit_cast<double>(get_u64(is)); }

[[noreturn]] void io_fail(const std::filesystem::path& path, const char* what) {
  throw std::runtime_error(std::string(what) + ": " + path.string());
}

}  // namespace

void save_codebook(const Codebook& cb, const std::filesystem::path& path,
                   std::optional<std::uint64_t> seed) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) io_fail(path, "cannot open codebook file for writing");
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, cb.kind() == Kind::Complex ? 1u : 0u);
  put_u32(os, seed.has_value() ? 1u : 0u);
  put_u64(os, cb.size());
  put_u64(os, cb.dim());
  put_u64(os, seed.value_or(0));
  for (std::size_t j = 0; j < cb.size(); ++j) {
    const std::size_t base = j * cb.dim();
    for (std::size_t i = 0; i < cb.dim(); ++i) {
      put_f64(os, cb.re_data()[base + i]);
      if (cb.is_complex()) put_f64(os, cb.im_data()[base + i]);
    }
  }
  if (!os) io_fail(path, "codebook write failed");
}

LoadedCodebook load_codebook(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) io_fail(path, "cannot open codebook file");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) io_fail(path, "bad codebook magic");
  if (get_u32(is) != kVersion) io_fail(path, "unsupported codebook version");
  const std::uint32_t kind_tag = get_u32(is);
  const std::uint32_t has_seed = get_u32(is);
  const std::uint64_t n = get_u64(is);
  const std::uint64_t dim = get_u64(is);
  const std::uint64_t seed = get_u64(is);
  if (kind_tag > 1) io_fail(path, "bad codebook kind tag");
  const Kind kind = kind_tag == 1 ? Kind::Complex : Kind::Bipolar;
  Codebook cb(kind, n, dim);
  for (std::uint64_t j = 0; j < n; ++j) {
    std::vector<double> re(dim), im(kind == Kind::Complex ? dim : 0);
    for (std::uint64_t i = 0; i < dim; ++i) {
      re[i] = get_f64(is);
      if (kind == Kind::Complex) im[i] = get_f64(is);
    }
    cb.set_row(j, kind == Kind::Complex
                      ? Hypervector::complex(std::move(re), std::move(im))
                      : Hypervector::bipolar(std::move(re)));
  }
  if (!is) io_fail(path, "codebook truncated");
  LoadedCodebook out{std::move(cb), std::nullopt};
  if (has_seed) out.seed = seed;
  return out;
}

}  // namespace hdres
