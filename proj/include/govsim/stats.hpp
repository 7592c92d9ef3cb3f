#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace govsim {

// ── Descriptive summary ──────────────────────────────────────────────────────

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;        // sample standard deviation (n-1 denominator)
  double ci95_half = 0.0; // 1.96 * sd / sqrt(n)
};

inline double sample_mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
  const double m = sample_mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline SampleSummary summarize(std::span<const double> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("summarize: need at least two samples");
  SampleSummary out;
  out.n = samples.size();
  out.mean = sample_mean(samples);
  out.sd = std::sqrt(sample_variance(samples));
  out.ci95_half = 1.96 * out.sd / std::sqrt(static_cast<double>(out.n));
  return out;
}

// ── Regularized incomplete beta ──────────────────────────────────────────────

namespace detail {

// Continued fraction for I_x(a,b), modified Lentz iteration.
inline double incomplete_beta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-14;
  constexpr int kMaxIter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace detail

// I_x(a, b) for a, b > 0 and x in [0, 1].
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("incomplete beta requires a, b > 0");
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("incomplete beta requires x in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_prefix = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(log_prefix) * detail::incomplete_beta_cf(a, b, x) / a;
  return 1.0 - std::exp(log_prefix) * detail::incomplete_beta_cf(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a t statistic with (possibly fractional) df.
inline double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be > 0");
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

// ── Welch's t-test and Cohen's d ─────────────────────────────────────────────

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

inline WelchResult welch_t_test(std::span<const double> a,
                                std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_test: need at least two samples per group");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sample_variance(a);
  const double vb = sample_variance(b);
  if (va == 0.0 && vb == 0.0)
    throw std::invalid_argument("welch_t_test: both samples have zero variance");

  const double se2 = va / na + vb / nb;
  WelchResult r;
  r.t = (sample_mean(a) - sample_mean(b)) / std::sqrt(se2);
  r.df = se2 * se2 /
         ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

inline double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("cohens_d: need at least two samples per group");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double pooled = std::sqrt(((na - 1.0) * sample_variance(a) +
                                   (nb - 1.0) * sample_variance(b)) /
                                  (na + nb - 2.0));
  if (pooled == 0.0)
    throw std::invalid_argument("cohens_d: pooled standard deviation is zero");
  return (sample_mean(a) - sample_mean(b)) / pooled;
}

// ── Labels ───────────────────────────────────────────────────────────────────

inline std::string effect_label(double d) {
  const double m = std::fabs(d);
  if (m < 0.2) return "Negligible";
  if (m < 0.5) return "Small";
  if (m < 0.8) return "Medium";
  if (m < 4.0) return "Large";
  return "Very Large";
}

inline std::string sig_stars(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("sig_stars: p must lie in [0,1]");
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "ns";
}

// Full pairwise comparison row.
struct TestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  double d = 0.0;
  std::string label;
  std::string stars;
};

inline TestResult compare_samples(std::span<const double> a,
                                  std::span<const double> b) {
  const WelchResult w = welch_t_test(a, b);
  TestResult r;
  r.t = w.t;
  r.df = w.df;
  r.p = w.p;
  r.d = cohens_d(a, b);
  r.label = effect_label(r.d);
  r.stars = sig_stars(r.p);
  return r;
}

}  // namespace govsim
