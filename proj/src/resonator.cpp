#include "hdres/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hdres {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Calibrated logit scale for the attention rules: softmax logits are
// beta * cosine / kLogitScale. With the benchmark default beta = 250 the
// effective gain sits in the soft-start regime where early sweeps retain a
// superposition of candidates and later sweeps sharpen onto one row.
constexpr double kLogitScale = 8.0;

Hypervector sign_cleanup(const Hypervector& v) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v.re()[i] >= 0.0 ? 1.0 : -1.0;
  return Hypervector::bipolar(std::move(out));
}

// g: componentwise phase normalization; near-zero components map to 1+0i.
Hypervector phase_cleanup(const Hypervector& v) {
  std::vector<double> re(v.dim()), im(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double zr = v.re()[i];
    const double zi = v.im()[i];
    const double m = std::sqrt(zr * zr + zi * zi);
    if (m < 1e-12) {
      re[i] = 1.0;
      im[i] = 0.0;
    } else {
      re[i] = zr / m;
      im[i] = zi / m;
    }
  }
  return Hypervector::complex(std::move(re), std::move(im));
}

void check_problem(const Hypervector& s, std::span<const Codebook> codebooks,
                   const ResonatorConfig& cfg) {
  require(!codebooks.empty(), "factorize: need at least one codebook");
  const Kind kind = kind_for(cfg.update_rule);
  require(s.kind() == kind, "factorize: input kind does not match update rule");
  for (const Codebook& cb : codebooks) {
    require(cb.kind() == kind, "factorize: codebook kind does not match update rule");
    require(cb.dim() == s.dim(), "factorize: codebook dim does not match input");
  }
  require(cfg.beta > 0.0, "factorize: beta must be positive");
  require(cfg.max_iters >= 1, "factorize: max_iters must be >= 1");
  require(cfg.conv_tol > 0.0, "factorize: conv_tol must be positive");
}

}  // namespace

const char* to_string(UpdateRule rule) {
  switch (rule) {
    case UpdateRule::OriginalBipolar: return "original-bipolar";
    case UpdateRule::OriginalFhrr: return "original-fhrr";
    case UpdateRule::AttentionBipolar: return "attention-bipolar";
    case UpdateRule::AttentionFhrr: return "attention-fhrr";
  }
  return "?";
}

bool is_attention(UpdateRule rule) {
  return rule == UpdateRule::AttentionBipolar || rule == UpdateRule::AttentionFhrr;
}

Kind kind_for(UpdateRule rule) {
  return (rule == UpdateRule::OriginalFhrr || rule == UpdateRule::AttentionFhrr)
             ? Kind::Complex
             : Kind::Bipolar;
}

UpdateRule rule_for(bool attention, Kind kind) {
  if (attention) {
    return kind == Kind::Complex ? UpdateRule::AttentionFhrr : UpdateRule::AttentionBipolar;
  }
  return kind == Kind::Complex ? UpdateRule::OriginalFhrr : UpdateRule::OriginalBipolar;
}

std::size_t max_iters_for(std::uint64_t search_space_size) {
  require(search_space_size >= 1, "max_iters_for: M must be >= 1");
  return std::max<std::uint64_t>(1, search_space_size / 1000);
}

std::vector<Hypervector> init_estimates(std::span<const Codebook> codebooks) {
  require(!codebooks.empty(), "init_estimates: need at least one codebook");
  for (const Codebook& cb : codebooks) {
    require(cb.kind() == codebooks.front().kind(), "init_estimates: mixed codebook kinds");
    require(cb.dim() == codebooks.front().dim(), "init_estimates: mixed codebook dims");
  }
  std::vector<Hypervector> out;
  out.reserve(codebooks.size());
  for (const Codebook& cb : codebooks) out.push_back(mean_vector(cb));
  return out;
}

Hypervector unbind_others(const Hypervector& s, std::span<const Hypervector> estimates,
                          std::size_t j, double inverse_eps, UpdateRule rule,
                          UnbindMode mode) {
  require(j < estimates.size(), "unbind_others: factor index out of range");
  Hypervector out = s;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (i == j) continue;
    if (!is_attention(rule)) {
      out = bind(out, estimates[i]);  // self-inverse convention
    } else if (mode == UnbindMode::Conjugate) {
      out = bind(out, conjugate(estimates[i]));
    } else {
      out = bind(out, inverse(estimates[i], inverse_eps));
    }
  }
  return out;
}

std::vector<double> softmax(std::span<const double> scores, double beta) {
  require(!scores.empty(), "softmax: empty scores");
  double hi = scores[0];
  for (double x : scores) hi = std::max(hi, x);
  std::vector<double> out(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(beta * (scores[i] - hi));
    total += out[i];
  }
  for (double& w : out) w /= total;
  return out;
}

std::vector<Hypervector> step_original(std::span<const Codebook> codebooks,
                                       const Hypervector& s,
                                       std::span<const Hypervector> estimates,
                                       const ResonatorConfig& cfg) {
  require(!is_attention(cfg.update_rule), "step_original: attention rule configured");
  check_problem(s, codebooks, cfg);
  std::vector<Hypervector> next;
  next.reserve(codebooks.size());
  for (std::size_t j = 0; j < codebooks.size(); ++j) {
    const Hypervector unbound =
        unbind_others(s, estimates, j, cfg.inverse_eps, cfg.update_rule, cfg.unbind);
    const std::vector<double> weights = codebooks[j].correlate(unbound);
    const Hypervector combined = codebooks[j].combine(weights);
    next.push_back(cfg.update_rule == UpdateRule::OriginalBipolar ? sign_cleanup(combined)
                                                                  : phase_cleanup(combined));
  }
  return next;
}

std::vector<double> attention_weights(const Codebook& cb, const Hypervector& unbound,
                                      double beta) {
  require(beta > 0.0, "attention_weights: beta must be positive");
  std::vector<double> scores = cb.correlate(unbound);
  // Cosine similarity per row: rows have norm sqrt(D) by construction, so
  // divide the raw products by sqrt(D) * |unbound|. An all-zero query maps
  // to all-zero scores (uniform softmax, mean-vector estimate).
  const double denom = std::sqrt(static_cast<double>(cb.dim())) * l2_norm(unbound);
  const double scale = denom > 0.0 ? 1.0 / denom : 0.0;
  for (double& x : scores) x *= scale;
  return softmax(scores, beta / kLogitScale);
}

std::vector<Hypervector> step_attention(std::span<const Codebook> codebooks,
                                        const Hypervector& s,
                                        std::span<const Hypervector> estimates,
                                        const ResonatorConfig& cfg) {
  require(is_attention(cfg.update_rule), "step_attention: original rule configured");
  check_problem(s, codebooks, cfg);
  std::vector<Hypervector> next;
  next.reserve(codebooks.size());
  for (std::size_t j = 0; j < codebooks.size(); ++j) {
    const Hypervector unbound =
        unbind_others(s, estimates, j, cfg.inverse_eps, cfg.update_rule, cfg.unbind);
    next.push_back(codebooks[j].combine(attention_weights(codebooks[j], unbound, cfg.beta)));
  }
  return next;
}

bool has_converged(std::span<const Hypervector> prev, std::span<const Hypervector> next,
                   double tol) {
  require(prev.size() == next.size(), "has_converged: shape mismatch");
  for (std::size_t j = 0; j < prev.size(); ++j) {
    require(prev[j].dim() == next[j].dim() && prev[j].kind() == next[j].kind(),
            "has_converged: shape mismatch");
    const std::size_t d = prev[j].dim();
    for (std::size_t i = 0; i < d; ++i) {
      const double dr = prev[j].re()[i] - next[j].re()[i];
      double delta2 = dr * dr;
      if (prev[j].is_complex()) {
        const double di = prev[j].im()[i] - next[j].im()[i];
        delta2 += di * di;
      }
      if (delta2 >= tol * tol) return false;
    }
  }
  return true;
}

FactorizationResult factorize(const Hypervector& s, std::span<const Codebook> codebooks,
                              const ResonatorConfig& cfg) {
  check_problem(s, codebooks, cfg);
  std::vector<Hypervector> estimates = init_estimates(codebooks);
  FactorizationResult result;
  for (std::size_t t = 1; t <= cfg.max_iters; ++t) {
    std::vector<Hypervector> next = is_attention(cfg.update_rule)
                                        ? step_attention(codebooks, s, estimates, cfg)
                                        : step_original(codebooks, s, estimates, cfg);
    result.iterations = t;
    const bool fixed = has_converged(estimates, next, cfg.conv_tol);
    estimates = std::move(next);
    if (fixed) {
      result.converged = true;
      result.stop_reason = StopReason::FixedPoint;
      break;
    }
  }
  if (!result.converged) result.stop_reason = StopReason::IterationCap;
  result.indices.reserve(codebooks.size());
  for (std::size_t j = 0; j < codebooks.size(); ++j)
    result.indices.push_back(nearest(codebooks[j], estimates[j]).index);
  result.estimates = std::move(estimates);
  return result;
}

}  // namespace hdres
