#include "hdres/hypervector.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hdres {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_compatible(const Hypervector& a, const Hypervector& b) {
  require(a.kind() == b.kind(), "hypervector kind mismatch");
  require(a.dim() == b.dim(), "hypervector dimension mismatch");
}

}  // namespace

const char* to_string(Kind kind) {
  return kind == Kind::Bipolar ? "bipolar" : "fhrr";
}

Hypervector Hypervector::bipolar(std::vector<double> values) {
  require(!values.empty(), "hypervector dimension must be >= 1");
  return Hypervector(Kind::Bipolar, std::move(values), {});
}

Hypervector Hypervector::complex(std::vector<double> re, std::vector<double> im) {
  require(!re.empty(), "hypervector dimension must be >= 1");
  require(re.size() == im.size(), "real/imaginary plane size mismatch");
  return Hypervector(Kind::Complex, std::move(re), std::move(im));
}

Hypervector Hypervector::zeros(Kind kind, std::size_t dim) {
  require(dim >= 1, "hypervector dimension must be >= 1");
  if (kind == Kind::Bipolar) return Hypervector(kind, std::vector<double>(dim, 0.0), {});
  return Hypervector(kind, std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0));
}

Hypervector Hypervector::ones(Kind kind, std::size_t dim) {
  require(dim >= 1, "hypervector dimension must be >= 1");
  if (kind == Kind::Bipolar) return Hypervector(kind, std::vector<double>(dim, 1.0), {});
  return Hypervector(kind, std::vector<double>(dim, 1.0), std::vector<double>(dim, 0.0));
}

Hypervector sample_bipolar(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("sample_bipolar: dim must be >= 1");
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.coin() ? 1.0 : -1.0;
  return Hypervector::bipolar(std::move(v));
}

Hypervector sample_fhrr(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("sample_fhrr: dim must be >= 1");
  std::vector<double> re(dim), im(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double m = rng.uniform(0.0, kTwoPi);
    re[i] = std::cos(m);
    im[i] = std::sin(m);
  }
  return Hypervector::complex(std::move(re), std::move(im));
}

double similarity(const Hypervector& a, const Hypervector& b) {
  require_compatible(a, b);
  const std::size_t d = a.dim();
  const double* ar = a.re().data();
  const double* br = b.re().data();
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) acc += ar[i] * br[i];
  if (a.is_complex()) {
    const double* ai = a.im().data();
    const double* bi = b.im().data();
    for (std::size_t i = 0; i < d; ++i) acc += ai[i] * bi[i];
  }
  return acc / static_cast<double>(d);
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
  require_compatible(a, b);
  const std::size_t d = a.dim();
  if (!a.is_complex()) {
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = a.re()[i] * b.re()[i];
    return Hypervector::bipolar(std::move(out));
  }
  std::vector<double> re(d), im(d);
  const double* ar = a.re().data();
  const double* ai = a.im().data();
  const double* br = b.re().data();
  const double* bi = b.im().data();
  for (std::size_t i = 0; i < d; ++i) {
    re[i] = ar[i] * br[i] - ai[i] * bi[i];
    im[i] = ar[i] * bi[i] + ai[i] * br[i];
  }
  return Hypervector::complex(std::move(re), std::move(im));
}

Hypervector inverse(const Hypervector& a, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("inverse: eps must be positive");
  const std::size_t d = a.dim();
  const double eps2 = eps * eps;
  if (!a.is_complex()) {
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double z = a.re()[i];
      out[i] = z / std::max(z * z, eps2);
    }
    return Hypervector::bipolar(std::move(out));
  }
  std::vector<double> re(d), im(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double zr = a.re()[i];
    const double zi = a.im()[i];
    const double m2 = std::max(zr * zr + zi * zi, eps2);
    re[i] = zr / m2;
    im[i] = -zi / m2;
  }
  return Hypervector::complex(std::move(re), std::move(im));
}

Hypervector conjugate(const Hypervector& a) {
  if (!a.is_complex()) return a;
  std::vector<double> re(a.re().begin(), a.re().end());
  std::vector<double> im(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) im[i] = -a.im()[i];
  return Hypervector::complex(std::move(re), std::move(im));
}

Hypervector bundle(std::span<const Hypervector> vs) {
  if (vs.empty()) throw std::invalid_argument("bundle: empty sequence");
  for (const auto& v : vs) require_compatible(vs.front(), v);
  Hypervector acc = Hypervector::zeros(vs.front().kind(), vs.front().dim());
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < acc.dim(); ++i) acc.re()[i] += v.re()[i];
    if (acc.is_complex())
      for (std::size_t i = 0; i < acc.dim(); ++i) acc.im()[i] += v.im()[i];
  }
  return acc;
}

Hypervector subtract(const Hypervector& a, const Hypervector& b) {
  require_compatible(a, b);
  const std::size_t d = a.dim();
  std::vector<double> re(d);
  for (std::size_t i = 0; i < d; ++i) re[i] = a.re()[i] - b.re()[i];
  if (!a.is_complex()) return Hypervector::bipolar(std::move(re));
  std::vector<double> im(d);
  for (std::size_t i = 0; i < d; ++i) im[i] = a.im()[i] - b.im()[i];
  return Hypervector::complex(std::move(re), std::move(im));
}

Hypervector permute(const Hypervector& a, std::int64_t shift) {
  const std::int64_t d = static_cast<std::int64_t>(a.dim());
  const std::size_t s = static_cast<std::size_t>(((shift % d) + d) % d);
  if (s == 0) return a;
  const std::size_t dim = a.dim();
  std::vector<double> re(dim);
  for (std::size_t i = 0; i < dim; ++i) re[(i + s) % dim] = a.re()[i];
  if (!a.is_complex()) return Hypervector::bipolar(std::move(re));
  std::vector<double> im(dim);
  for (std::size_t i = 0; i < dim; ++i) im[(i + s) % dim] = a.im()[i];
  return Hypervector::complex(std::move(re), std::move(im));
}

double l2_norm(const Hypervector& a) {
  double acc = 0.0;
  for (double x : a.re()) acc += x * x;
  for (double x : a.im()) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace hdres
