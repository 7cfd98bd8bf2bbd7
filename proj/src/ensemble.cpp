#include "tml/ensemble.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tml/rng.hpp"

namespace tml {

namespace {

constexpr double kTolerance = 1e-12;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view raw) {
  const auto s = trim(raw);
  if (s.empty()) throw std::invalid_argument("empty number in distribution token");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const double num = parse_number(s.substr(0, slash));
    const double den = parse_number(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in distribution token");
    return num / den;
  }
  const std::string copy(s);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(copy, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + copy + "'");
  }
  if (used != copy.size()) throw std::invalid_argument("not a number: '" + copy + "'");
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> values;
  for (auto item : split(text, ',')) values.push_back(parse_number(item));
  return values;
}

}  // namespace

double EntryDistribution::moment(int k) const {
  if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
  if (k <= kMomentCacheDepth) return moments_[static_cast<std::size_t>(k)];
  double sum = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) sum += probs_[i] * std::pow(support_[i], k);
  return sum;
}

double EntryDistribution::quantile(double u) const noexcept {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                         support_.size() - 1);
  return support_[idx];
}

std::string EntryDistribution::describe() const {
  if (!name_.empty()) return name_;
  std::ostringstream out;
  out.precision(17);
  out << "support=";
  for (std::size_t i = 0; i < support_.size(); ++i) out << (i ? "," : "") << support_[i];
  out << ";probs=";
  for (std::size_t i = 0; i < probs_.size(); ++i) out << (i ? "," : "") << probs_[i];
  return out.str();
}

EntryDistribution make_distribution(std::span<const double> support,
                                    std::span<const double> probabilities) {
  if (support.size() != probabilities.size())
    throw std::invalid_argument("support and probabilities differ in length");
  if (support.size() < 2) throw std::invalid_argument("distribution needs at least two atoms");

  double total = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in (0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > kTolerance)
    throw std::invalid_argument("probabilities do not sum to 1");

  EntryDistribution d;
  d.support_.assign(support.begin(), support.end());
  d.probs_.assign(probabilities.begin(), probabilities.end());

  d.moments_.assign(kMomentCacheDepth + 1, 0.0);
  for (int k = 1; k <= kMomentCacheDepth; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) sum += d.probs_[i] * std::pow(d.support_[i], k);
    d.moments_[static_cast<std::size_t>(k)] = sum;
  }
  if (std::abs(d.moments_[1]) > kTolerance)
    throw std::invalid_argument("distribution is not centered (mean != 0)");
  if (!(d.moments_[2] > 0.0)) throw std::invalid_argument("distribution has zero variance");
  // Centering and normalization are definitional once validated.
  d.moments_[0] = 1.0;
  d.moments_[1] = 0.0;

  d.sigma_ = std::sqrt(d.moments_[2]);
  for (double x : d.support_) d.bound_k_ = std::max(d.bound_k_, std::abs(x));

  d.cumulative_.resize(d.probs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < d.probs_.size(); ++i) {
    acc += d.probs_[i];
    d.cumulative_[i] = acc;
  }
  d.cumulative_.back() = 1.0;
  return d;
}

EntryDistribution named_distribution(std::string_view name) {
  EntryDistribution d;
  if (name == "rademacher") {
    const double support[] = {-1.0, 1.0};
    const double probs[] = {0.5, 0.5};
    d = make_distribution(support, probs);
  } else if (name == "skew12") {
    const double support[] = {-1.0, 2.0};
    const double probs[] = {2.0 / 3.0, 1.0 / 3.0};
    d = make_distribution(support, probs);
  } else {
    throw std::invalid_argument("unknown distribution preset '" + std::string(name) + "'");
  }
  d.name_ = std::string(name);
  return d;
}

EntryDistribution parse_distribution(std::string_view token) {
  token = trim(token);
  if (token.find('=') == std::string_view::npos) return named_distribution(token);

  std::vector<double> support;
  std::vector<double> probs;
  bool have_support = false;
  bool have_probs = false;
  for (auto field : split(token, ';')) {
    field = trim(field);
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("malformed distribution field '" + std::string(field) + "'");
    const auto key = trim(field.substr(0, eq));
    const auto value = field.substr(eq + 1);
    if (key == "support") {
      support = parse_list(value);
      have_support = true;
    } else if (key == "probs") {
      probs = parse_list(value);
      have_probs = true;
    } else {
      throw std::invalid_argument("unknown distribution field '" + std::string(key) + "'");
    }
  }
  if (!have_support || !have_probs)
    throw std::invalid_argument("distribution token needs both support= and probs=");
  return make_distribution(support, probs);
}

double MatrixSample::normalized(std::size_t i, std::size_t j) const noexcept {
  return entries[i * n + j] / std::sqrt(static_cast<double>(n));
}

std::vector<double> MatrixSample::normalized_entries() const {
  std::vector<double> out(entries);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& x : out) x *= scale;
  return out;
}

void fill_symmetric(const EntryDistribution& dist, std::size_t n, std::uint64_t seed,
                    std::span<double> out) {
  if (out.size() != n * n) throw std::invalid_argument("output span has wrong size");
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto i = static_cast<std::size_t>(r);
    for (std::size_t j = i; j < n; ++j) {
      const double u = to_unit_double(counter_hash(seed, i * n + j));
      out[i * n + j] = dist.quantile(u);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out[i * n + j] = out[j * n + i];
}

MatrixSample sample_symmetric_matrix(const EntryDistribution& dist, std::size_t n,
                                     std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
  MatrixSample m;
  m.n = n;
  m.seed = seed;
  m.entries.assign(n * n, 0.0);
  fill_symmetric(dist, n, seed, m.entries);
  return m;
}

}  // namespace tml
