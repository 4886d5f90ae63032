#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace schedlab {

/// Processing-time law of a stochastic job. Support must be strictly positive.
class Distribution {
 public:
  enum class Kind { PointMass, Exponential, TwoPoint, Discrete, Uniform };

  static Distribution point_mass(double value) {
    require(value > 0.0, "point mass value must be positive");
    Distribution d(Kind::PointMass);
    d.values_ = {value};
    d.probs_ = {1.0};
    return d;
  }

  static Distribution exponential(double rate) {
    require(rate > 0.0, "exponential rate must be positive");
    Distribution d(Kind::Exponential);
    d.values_ = {rate};
    return d;
  }

  static Distribution two_point(double low, double p_low, double high) {
    require(low > 0.0 && high > 0.0, "two-point support must be positive");
    require(low < high, "two-point support must be ordered low < high");
    require(p_low >= 0.0 && p_low <= 1.0, "two-point probability out of [0,1]");
    Distribution d(Kind::TwoPoint);
    d.values_ = {low, high};
    d.probs_ = {p_low, 1.0 - p_low};
    return d;
  }

  static Distribution discrete(std::vector<double> values,
                               std::vector<double> probs) {
    require(!values.empty() && values.size() == probs.size(),
            "discrete law needs matching nonempty values/probs");
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      require(values[i] > 0.0, "discrete support must be positive");
      require(probs[i] >= 0.0, "discrete probabilities must be nonnegative");
      total += probs[i];
    }
    require(std::abs(total - 1.0) <= 1e-12, "discrete probabilities must sum to 1");
    Distribution d(Kind::Discrete);
    d.values_ = std::move(values);
    d.probs_ = std::move(probs);
    return d;
  }

  static Distribution uniform(double low, double high) {
    require(low > 0.0, "uniform support must be positive");
    require(low < high, "uniform bounds must be ordered low < high");
    Distribution d(Kind::Uniform);
    d.values_ = {low, high};
    return d;
  }

  Kind kind() const { return kind_; }

  double mean() const {
    switch (kind_) {
      case Kind::Exponential:
        return 1.0 / values_[0];
      case Kind::Uniform:
        return 0.5 * (values_[0] + values_[1]);
      default:
        return std::inner_product(values_.begin(), values_.end(),
                                  probs_.begin(), 0.0);
    }
  }

  double variance() const {
    switch (kind_) {
      case Kind::Exponential:
        return 1.0 / (values_[0] * values_[0]);
      case Kind::Uniform: {
        const double w = values_[1] - values_[0];
        return w * w / 12.0;
      }
      default: {
        const double mu = mean();
        double second = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
          second += probs_[i] * values_[i] * values_[i];
        return std::max(0.0, second - mu * mu);
      }
    }
  }

  /// Squared coefficient of variation Var/mean^2.
  double scv() const {
    const double mu = mean();
    return variance() / (mu * mu);
  }

  bool is_discrete() const {
    return kind_ == Kind::PointMass || kind_ == Kind::TwoPoint ||
           kind_ == Kind::Discrete;
  }

  /// Finite support and matching probabilities; only for discrete kinds.
  const std::vector<double>& support() const {
    require_discrete();
    return values_;
  }
  const std::vector<double>& probabilities() const {
    require_discrete();
    return probs_;
  }

  /// Inverse-CDF draw from a 64-bit generator; bit-stable for a fixed seed.
  double sample(std::mt19937_64& rng) const {
    switch (kind_) {
      case Kind::PointMass:
        return values_[0];
      case Kind::Exponential:
        return -std::log1p(-unit(rng)) / values_[0];
      case Kind::Uniform:
        return values_[0] + (values_[1] - values_[0]) * unit(rng);
      default: {
        const double u = unit(rng);
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
          acc += probs_[i];
          if (u < acc) return values_[i];
        }
        return values_.back();
      }
    }
  }

  /// Raw parameters in constructor order (rate for exponential, bounds for
  /// uniform, support values otherwise).
  const std::vector<double>& params() const { return values_; }

 private:
  explicit Distribution(Kind k) : kind_(k) {}

  static void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  }

  void require_discrete() const {
    require(is_discrete(), "operation requires a finite-support law");
  }

  static double unit(std::mt19937_64& rng) {
    // 53-bit mantissa in [0,1).
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  }

  Kind kind_;
  std::vector<double> values_;
  std::vector<double> probs_;
};

inline std::string kind_name(Distribution::Kind k) {
  switch (k) {
    case Distribution::Kind::PointMass: return "point";
    case Distribution::Kind::Exponential: return "exponential";
    case Distribution::Kind::TwoPoint: return "two-point";
    case Distribution::Kind::Discrete: return "discrete";
    case Distribution::Kind::Uniform: return "uniform";
  }
  return "?";
}

}  // namespace schedlab
