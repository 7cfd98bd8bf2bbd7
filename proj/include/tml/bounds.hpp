#pragma once

#include <gmpxx.h>

#include <vector>

namespace tml {

/// log C(n, k) via lgamma; -inf outside 0 <= k <= n.
double log_binomial(double n, double k);
/// log of n! / (n - k)!; -inf when k > n.
double log_falling(double n, double k);

/// C(2m, J) J! 2^J C(2l, J) (2m)! / (2m - 2l + J)!. Requires 1 <= J <= 2l <= 2m.
mpz_class caseA_insertion_bound_exact(int m, int l, int J);
double caseA_insertion_bound(int m, int l, int J);

struct BoundTerm {
  int l = 0;
  double log_value = 0.0;
};

struct BoundSum {
  std::vector<BoundTerm> terms;  // one per l, ascending
  double log_total = 0.0;        // -inf for an empty sum

  double total() const;
};

/// sum_{l=1}^{s-1} C1 n T_{2(s-l)} sigma^{2(s-l)} (16 K (s-l) / sqrt(n))^{2l}.
BoundSum caseA_contribution_bound(int s, double n, double sigma, double K, double C1);

/// The l = 0 scale n T_{2s} sigma^{2s}, in log form.
double log_even_scale(int s, double n, double sigma);

/// Multiple-cluster bound summed term by term: over l, J <= 2l and 2 <= I <= J,
///   2^J J! C(2l, J) (2m)!/(2m-2l+J)! K^{2l} n^{-l} C(2m, I-1) C(2m-I+1, J-I+1)
///   n C1^I sigma^{2m} conv_I(m),
/// with m = s - l and conv_I(m) the I-fold Catalan convolution over
/// compositions of m into positive parts. Requires s <= kCaseBMaxS.
inline constexpr int kCaseBMaxS = 300;
BoundSum caseB_contribution_bound(int s, double n, double sigma, double K, double C1);

/// Same sum after bounding the binomial pair by 2^J C(2m, J) and the cluster
/// convolution by const^{2l} T_{2m}.
BoundSum caseB_simplified_bound(int s, double n, double sigma, double K, double C1,
                                double belgorod_const);

/// log of sum over compositions (s_1..s_I) of m into positive parts of
/// prod T_{2 s_i}; table[I][m] for 1 <= I, m <= s_max. Unused slots are -inf.
std::vector<std::vector<double>> log_catalan_convolutions(int s_max);

/// max over 2 <= m <= s_max and 2 <= J <= m of
/// (sum_{I=2}^{J} conv_I(m) / T_{2m})^{1/J}: the smallest const with the
/// cluster convolution bounded by const^J T_{2m} on that range.
double belgorod_constant(int s_max);

/// c_s = sum_{k=0}^{s} T_{2k} T_{2(s-k)} for 0 <= s <= s_max, computed exactly
/// by one big-integer squaring of the packed Catalan sequence.
std::vector<mpz_class> catalan_self_convolution(int s_max);

struct CatalanConvolutionCheck {
  int s_max = 0;
  bool holds = true;   // sum_{k=1}^{s-1} T_{2k} T_{2(s-k)} <= factor T_{2s} for all s
  int first_violation = 0;
  double max_ratio = 0.0;  // largest sum / T_{2s}
  int argmax = 0;
};

CatalanConvolutionCheck catalan_convolution_check(int s_max, unsigned long factor = 2);

/// sup over 2 <= s <= s_max of s^{3/2} sum_{k=1}^{s-1} k^{-3/2} (s-k)^{-3/2}.
double power_convolution_constant(int s_max);
/// Same supremum with the exponent as printed, s^{-3/2} times the sum.
double power_convolution_constant_as_printed(int s_max);

struct CaseCBound {
  double log_trivial = 0.0;        // C(2s,I1) (4s)^I1 (2s)^I1 (c/n)^I1
  double log_refined = 0.0;        // C(2s',I1) (C s^{3/2}/n)^I1, s' = s - l - I1
  double log_trivial_ratio = 0.0;  // log_trivial - log C(2s, I1)
  double log_refined_ratio = 0.0;  // log_refined - log C(2s', I1)
};

/// Requires 0 <= I1 < I and s - l - I1 >= 0.
CaseCBound caseC_reduction_bound(int s, double n, int l, int I, int I1, double small_const,
                                 double big_const);

/// log of s^c/c! * s^l * s^{J-c}/(J-c)! * C^{2l}. Requires 1 <= c <= J <= 2l.
double refined_insertion_log_term(double s, int l, int J, int c, double C);
/// log of the sum of refined_insertion_log_term over 1 <= c <= J <= 2l.
double refined_insertion_log_sum(double s, int l, double C);

/// With s = n^{1/2 + eta}: log(refined sum / n^l).
double refined_insertion_log_ratio(double n, int l, double eta, double C);
/// n^{1/4 + eta/2 - epsilon/2}.
double odd_edge_cutoff(double n, double eta, double epsilon);

/// Log of the even-path estimate for fixed (r, kappa_1, kappa_2):
///   sigma^{2m} T_{2m} e^{n^{2 eta}} (n^{-1/8+9eta/4})^r / r!
///   (n^{3eta-1/2})^{k1} / k1! (C' s / n^{199/200})^{k2}, m = s - l.
double minsk_log_bound(double n, int s, int l, double eta, int r, int k1, int k2, double sigma,
                       double c_prime);

/// Log of (s/kappa)^{4 kappa} exp(-C0 M). Requires kappa >= 1.
double vladik_log_bound(double s, int kappa, double M, double C0);

}  // namespace tml
