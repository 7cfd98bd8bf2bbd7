#include "tml/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "tml/dyck.hpp"

namespace tml {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sum(const std::vector<double>& xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

BoundSum finish(std::vector<BoundTerm> terms) {
  BoundSum out;
  out.terms = std::move(terms);
  out.log_total = kNegInf;
  for (const auto& t : out.terms) out.log_total = log_add(out.log_total, t.log_value);
  return out;
}

void require_positive(double n, double sigma, double K) {
  if (!(n > 0.0) || !(sigma > 0.0) || !(K > 0.0))
    throw std::invalid_argument("n, sigma and K must be positive");
}

}  // namespace

double BoundSum::total() const { return std::exp(log_total); }

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_falling(double n, double k) {
  if (k < 0.0 || k > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
}

mpz_class caseA_insertion_bound_exact(int m, int l, int J) {
  if (!(1 <= J && J <= 2 * l && l <= m))
    throw std::invalid_argument("caseA_insertion_bound needs 1 <= J <= 2l <= 2m");
  const auto M = static_cast<unsigned long>(2 * m);
  mpz_class c1, c2, fact, fall = 1;
  mpz_bin_uiui(c1.get_mpz_t(), M, static_cast<unsigned long>(J));
  mpz_bin_uiui(c2.get_mpz_t(), static_cast<unsigned long>(2 * l), static_cast<unsigned long>(J));
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(J));
  for (int k = 2 * m - 2 * l + J + 1; k <= 2 * m; ++k) fall *= k;
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(J));
  return c1 * fact * pow2 * c2 * fall;
}

double caseA_insertion_bound(int m, int l, int J) { return caseA_insertion_bound_exact(m, l, J).get_d(); }

double log_even_scale(int s, double n, double sigma) {
  return std::log(n) + log_catalan(s) + 2.0 * s * std::log(sigma);
}

BoundSum caseA_contribution_bound(int s, double n, double sigma, double K, double C1) {
  require_positive(n, sigma, K);
  std::vector<BoundTerm> terms;
  for (int l = 1; l <= s - 1; ++l) {
    const int m = s - l;
    const double v = std::log(C1) + std::log(n) + log_catalan(m) + 2.0 * m * std::log(sigma) +
                     2.0 * l * std::log(16.0 * K * m / std::sqrt(n));
    terms.push_back({l, v});
  }
  return finish(std::move(terms));
}

std::vector<std::vector<double>> log_catalan_convolutions(int s_max) {
  if (s_max < 1) throw std::invalid_argument("s_max must be positive");
  const auto S = static_cast<std::size_t>(s_max);
  std::vector<double> lc(S + 1);
  for (std::size_t k = 0; k <= S; ++k) lc[k] = log_catalan(static_cast<int>(k));
  std::vector<std::vector<double>> table(S + 1, std::vector<double>(S + 1, kNegInf));
  for (std::size_t m = 1; m <= S; ++m) table[1][m] = lc[m];
  std::vector<double> parts;
  for (std::size_t I = 2; I <= S; ++I) {
    for (std::size_t m = I; m <= S; ++m) {
      parts.clear();
      for (std::size_t j = 1; j + (I - 1) <= m; ++j) parts.push_back(table[I - 1][m - j] + lc[j]);
      table[I][m] = log_sum(parts);
    }
  }
  return table;
}

BoundSum caseB_contribution_bound(int s, double n, double sigma, double K, double C1) {
  require_positive(n, sigma, K);
  if (s > kCaseBMaxS) throw std::length_error("caseB_contribution_bound is limited to s <= 300");
  std::vector<BoundTerm> terms;
  if (s < 3) return finish(std::move(terms));
  const auto conv = log_catalan_convolutions(s);
  const double ln = std::log(n);
  std::vector<double> parts;
  for (int l = 1; l <= s - 1; ++l) {
    const int m = s - l;
    parts.clear();
    for (int J = 2; J <= 2 * l; ++J) {
      const double head = J * std::log(2.0) + std::lgamma(J + 1.0) + log_binomial(2 * l, J) +
                          log_falling(2 * m, 2 * l - J) + 2.0 * l * std::log(K) - l * ln;
      if (head == kNegInf) continue;
      for (int I = 2; I <= std::min(J, m); ++I) {
        const double v = head + log_binomial(2 * m, I - 1) + log_binomial(2 * m - I + 1, J - I + 1) +
                         ln + I * std::log(C1) + 2.0 * m * std::log(sigma) +
                         conv[static_cast<std::size_t>(I)][static_cast<std::size_t>(m)];
        if (v != kNegInf) parts.push_back(v);
      }
    }
    terms.push_back({l, log_sum(parts)});
  }
  return finish(std::move(terms));
}

BoundSum caseB_simplified_bound(int s, double n, double sigma, double K, double C1,
                                double belgorod_const) {
  require_positive(n, sigma, K);
  std::vector<BoundTerm> terms;
  const double ln = std::log(n);
  const double lc1 = std::max(0.0, std::log(C1));
  std::vector<double> parts;
  for (int l = 1; l <= s - 1; ++l) {
    const int m = s - l;
    parts.clear();
    for (int J = 2; J <= 2 * l; ++J) {
      const double v = 2.0 * J * std::log(2.0) + std::lgamma(J + 1.0) + log_binomial(2 * l, J) +
                       log_falling(2 * m, 2 * l - J) + 2.0 * l * std::log(K) - l * ln +
                       log_binomial(2 * m, J) + ln + J * lc1 + 2.0 * m * std::log(sigma) +
                       2.0 * l * std::log(belgorod_const) + log_catalan(m);
      if (v != kNegInf) parts.push_back(v);
    }
    terms.push_back({l, log_sum(parts)});
  }
  return finish(std::move(terms));
}

double belgorod_constant(int s_max) {
  const auto conv = log_catalan_convolutions(s_max);
  double best = 0.0;
  for (int m = 2; m <= s_max; ++m) {
    double acc = kNegInf;
    for (int J = 2; J <= m; ++J) {
      acc = log_add(acc, conv[static_cast<std::size_t>(J)][static_cast<std::size_t>(m)]);
      best = std::max(best, std::exp((acc - log_catalan(m)) / J));
    }
  }
  return best;
}

std::vector<mpz_class> catalan_self_convolution(int s_max) {
  if (s_max < 0) throw std::invalid_argument("s_max must be nonnegative");
  const auto S = static_cast<std::size_t>(s_max);
  // Every coefficient is at most T_{2(s+1)} < 4^{s+1}.
  const std::size_t slot = (2 * S + 3 + 63) / 64;
  std::vector<std::uint64_t> packed((S + 1) * slot, 0);
  mpz_class c = 1;
  for (std::size_t k = 0; k <= S; ++k) {
    std::size_t count = 0;
    mpz_export(packed.data() + k * slot, &count, -1, sizeof(std::uint64_t), 0, 0, c.get_mpz_t());
    c = c * static_cast<unsigned long>(2 * (2 * k + 1)) / static_cast<unsigned long>(k + 2);
  }
  mpz_class poly;
  mpz_import(poly.get_mpz_t(), packed.size(), -1, sizeof(std::uint64_t), 0, 0, packed.data());
  packed.clear();
  packed.shrink_to_fit();
  mpz_class square = poly * poly;
  poly = 0;
  std::vector<std::uint64_t> words(mpz_sizeinbase(square.get_mpz_t(), 2) / 64 + 2, 0);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, square.get_mpz_t());
  std::vector<mpz_class> out(S + 1);
  for (std::size_t s = 0; s <= S; ++s) {
    const std::size_t lo = s * slot;
    if (lo >= count) continue;
    const std::size_t len = std::min(slot, count - lo);
    mpz_import(out[s].get_mpz_t(), len, -1, sizeof(std::uint64_t), 0, 0, words.data() + lo);
  }
  return out;
}

CatalanConvolutionCheck catalan_convolution_check(int s_max, unsigned long factor) {
  const auto conv = catalan_self_convolution(s_max);
  CatalanConvolutionCheck out;
  out.s_max = s_max;
  mpz_class c = 1;  // T_{2s}
  for (int s = 0; s <= s_max; ++s) {
    if (s >= 2) {
      const mpz_class inner = conv[static_cast<std::size_t>(s)] - 2 * c;
      if (inner > factor * c && out.holds) {
        out.holds = false;
        out.first_violation = s;
      }
      const mpf_class ratio = mpf_class(inner, 128) / mpf_class(c, 128);
      const double r = ratio.get_d();
      if (r > out.max_ratio) {
        out.max_ratio = r;
        out.argmax = s;
      }
    }
    c = c * static_cast<unsigned long>(2 * (2 * s + 1)) / static_cast<unsigned long>(s + 2);
  }
  return out;
}

namespace {

double power_convolution_sup(int s_max, double outer_exponent) {
  double best = 0.0;
  for (int s = 2; s <= s_max; ++s) {
    double sum = 0.0;
    for (int k = 1; k <= s - 1; ++k) sum += std::pow(static_cast<double>(k) * (s - k), -1.5);
    best = std::max(best, std::pow(static_cast<double>(s), outer_exponent) * sum);
  }
  return best;
}

}  // namespace

double power_convolution_constant(int s_max) { return power_convolution_sup(s_max, 1.5); }
double power_convolution_constant_as_printed(int s_max) { return power_convolution_sup(s_max, -1.5); }

CaseCBound caseC_reduction_bound(int s, double n, int l, int I, int I1, double small_const,
                                 double big_const) {
  if (I1 < 0 || I1 >= std::max(I, 1) || s - l - I1 < 0 || l < 0 || !(n > 0.0))
    throw std::invalid_argument("caseC_reduction_bound needs 0 <= I1 < I and s >= l + I1");
  CaseCBound out;
  const double ln = std::log(n);
  const double base = log_binomial(2 * s, I1);
  out.log_trivial =
      base + I1 * (std::log(4.0 * s) + std::log(2.0 * s) + std::log(small_const) - ln);
  const int s_prime = s - l - I1;
  const double base_refined = log_binomial(2 * s_prime, I1);
  out.log_refined = base_refined + I1 * (std::log(big_const) + 1.5 * std::log(s) - ln);
  out.log_trivial_ratio = out.log_trivial - base;
  out.log_refined_ratio = out.log_refined - base_refined;
  return out;
}

double refined_insertion_log_term(double s, int l, int J, int c, double C) {
  if (!(1 <= c && c <= J && J <= 2 * l)) throw std::invalid_argument("needs 1 <= c <= J <= 2l");
  const double ls = std::log(s);
  return c * ls - std::lgamma(c + 1.0) + l * ls + (J - c) * ls - std::lgamma(J - c + 1.0) +
         2.0 * l * std::log(C);
}

double refined_insertion_log_sum(double s, int l, double C) {
  std::vector<double> parts;
  for (int J = 1; J <= 2 * l; ++J)
    for (int c = 1; c <= J; ++c) parts.push_back(refined_insertion_log_term(s, l, J, c, C));
  return log_sum(parts);
}

double refined_insertion_log_ratio(double n, int l, double eta, double C) {
  const double s = std::pow(n, 0.5 + eta);
  return refined_insertion_log_sum(s, l, C) - l * std::log(n);
}

double odd_edge_cutoff(double n, double eta, double epsilon) {
  return std::pow(n, 0.25 + eta / 2.0 - epsilon / 2.0);
}

double minsk_log_bound(double n, int s, int l, double eta, int r, int k1, int k2, double sigma,
                       double c_prime) {
  const int m = s - l;
  const double ln = std::log(n);
  return 2.0 * m * std::log(sigma) + log_catalan(m) + std::pow(n, 2.0 * eta) -
         std::lgamma(r + 1.0) + r * (-0.125 + 2.25 * eta) * ln - std::lgamma(k1 + 1.0) +
         k1 * (3.0 * eta - 0.5) * ln + k2 * (std::log(c_prime * s) - 0.995 * ln);
}

double vladik_log_bound(double s, int kappa, double M, double C0) {
  if (kappa < 1) throw std::invalid_argument("kappa must be positive");
  return 4.0 * kappa * std::log(s / kappa) - C0 * M;
}

}  // namespace tml
