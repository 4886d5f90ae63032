#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace schedlab::bounds {

/// Machine count for the bound formulas; the asymptotic case is an explicit
/// flag rather than a sentinel value.
struct MachineCount {
  static MachineCount finite(int m) {
    if (m < 1) throw std::invalid_argument("machine count must be >= 1");
    return MachineCount{m};
  }
  static MachineCount infinite() { return MachineCount{0}; }

  bool is_infinite() const { return m_ == 0; }
  int value() const {
    if (is_infinite()) throw std::logic_error("asymptotic machine count has no value");
    return m_;
  }

 private:
  explicit MachineCount(int m) : m_(m) {}
  int m_;
};

constexpr double sqrt2 = 1.4142135623730951;

/// Tight machine-independent WSPT ratio, (1+sqrt 2)/2.
inline double kk() { return 0.5 * (1.0 + sqrt2); }

/// 1 + (1+Delta)(1-1/m)/2.
inline double msu(MachineCount m, double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  const double factor = m.is_infinite() ? 1.0 : 1.0 - 1.0 / m.value();
  return 1.0 + 0.5 * (1.0 + delta) * factor;
}

/// 1 + (sqrt 2 - 1)(1+Delta)/2.
inline double wsept_red(double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  return 1.0 + 0.5 * (sqrt2 - 1.0) * (1.0 + delta);
}

/// 1 + max{2, 1+Delta}/6.
inline double wsept_orange(double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  return 1.0 + std::max(2.0, 1.0 + delta) / 6.0;
}

/// 1 + (1+Delta) / (2 (1 + min{2, sqrt(2+2Delta)})).
inline double wsept_green(double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  return 1.0 + 0.5 * (1.0 + delta) /
                   (1.0 + std::min(2.0, std::sqrt(2.0 + 2.0 * delta)));
}

/// 1 + (m-1)/(2 alpha m), the list-scheduling bound for alpha-points.
inline double eei_alpha(MachineCount m, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0,1]");
  const double factor = m.is_infinite() ? 1.0 : 1.0 - 1.0 / m.value();
  return 1.0 + factor / (2.0 * alpha);
}

/// 1 + 1/(2 alpha + sqrt(8 alpha)); valid only for alpha in [1/2, 1].
inline double kk_alpha(double alpha) {
  if (!(alpha >= 0.5 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [1/2, 1]");
  return 1.0 + 1.0 / (2.0 * alpha + std::sqrt(8.0 * alpha));
}

enum class TransferObjective { AlphaPoints, CompletionTimes };

/// Lifts a WSPT ratio 1+beta for alpha-points to a WSEPT ratio.
inline double wsept_from_wspt(double beta, double delta, double alpha,
                              TransferObjective objective) {
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0,1]");
  if (objective == TransferObjective::AlphaPoints)
    return 1.0 + beta * (1.0 + delta);
  return 1.0 + beta * std::max(1.0, alpha * (1.0 + delta));
}

/// Nearest integer to (1 - sqrt(2)/2) m, half rounded up.
inline int k_m(int m) {
  if (m < 2) throw std::invalid_argument("k_m requires m >= 2");
  return static_cast<int>(std::floor((1.0 - 0.5 * sqrt2) * m + 0.5));
}

/// Interval center m - sqrt(2m^2-1)/2 that pins down k_m.
inline double u_m(int m) {
  if (m < 2) throw std::invalid_argument("u_m requires m >= 2");
  return m - 0.5 * std::sqrt(2.0 * double(m) * m - 1.0);
}

/// Tight WSPT ratio for a fixed machine count.
inline double wspt_m(int m) {
  if (m < 1) throw std::invalid_argument("machine count must be >= 1");
  if (m == 1) return 1.0;
  const double k = k_m(m);
  return 1.0 + 0.5 * (std::sqrt((2.0 * m - k) * k) - k) / m;
}

/// The combined WSEPT ratio: min of the machine-dependent term and the
/// alpha-optimized machine-independent term, scaled by 1+Delta.
inline double composite(MachineCount m, double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  double machine_term;
  if (m.is_infinite()) {
    machine_term = sqrt2 - 1.0;
  } else if (m.value() == 1) {
    machine_term = 0.0;
  } else {
    const double k = k_m(m.value());
    machine_term = (std::sqrt((2.0 * m.value() - k) * k) - k) / m.value();
  }
  const double alpha_term =
      1.0 / (1.0 + std::min(2.0, std::sqrt(2.0 + 2.0 * delta)));
  return 1.0 + 0.5 * std::min(machine_term, alpha_term) * (1.0 + delta);
}

/// Machine-dependent WSEPT ratio 1 + (sqrt((2m-k_m)k_m)-k_m)(1+Delta)/(2m).
inline double wsept_magenta(int m, double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (m < 2) throw std::invalid_argument("wsept_magenta requires m >= 2");
  return 1.0 + (wspt_m(m) - 1.0) * (1.0 + delta);
}

/// Normative formula ids used by the CLI and the report format.
enum class Formula {
  Kk,
  Msu,
  WseptRed,
  WseptOrange,
  WseptGreen,
  EeiAlpha,
  KkAlpha,
  WsptM,
  Composite,
  WseptMagenta,
};

inline std::string formula_id(Formula f) {
  switch (f) {
    case Formula::Kk: return "kk";
    case Formula::Msu: return "msu";
    case Formula::WseptRed: return "wsept-red";
    case Formula::WseptOrange: return "wsept-orange";
    case Formula::WseptGreen: return "wsept-green";
    case Formula::EeiAlpha: return "eei-alpha";
    case Formula::KkAlpha: return "kk-alpha";
    case Formula::WsptM: return "wspt-m";
    case Formula::Composite: return "composite";
    case Formula::WseptMagenta: return "wsept-magenta";
  }
  return "?";
}

inline std::optional<Formula> formula_from_id(const std::string& id) {
  for (Formula f : {Formula::Kk, Formula::Msu, Formula::WseptRed,
                    Formula::WseptOrange, Formula::WseptGreen,
                    Formula::EeiAlpha, Formula::KkAlpha, Formula::WsptM,
                    Formula::Composite, Formula::WseptMagenta})
    if (formula_id(f) == id) return f;
  return std::nullopt;
}

/// A named ratio together with the parameters it was evaluated at.
struct BoundValue {
  Formula formula;
  std::optional<MachineCount> m;
  std::optional<double> delta;
  std::optional<double> alpha;
  double value = 1.0;
};

/// Evaluates a formula from its id and whichever parameters it needs.
inline BoundValue evaluate(Formula f, std::optional<MachineCount> m,
                           std::optional<double> delta,
                           std::optional<double> alpha) {
  const auto need_m = [&]() -> MachineCount {
    if (!m) throw std::invalid_argument(formula_id(f) + " needs a machine count");
    return *m;
  };
  const auto need_delta = [&]() -> double {
    if (!delta) throw std::invalid_argument(formula_id(f) + " needs delta");
    return *delta;
  };
  const auto need_alpha = [&]() -> double {
    if (!alpha) throw std::invalid_argument(formula_id(f) + " needs alpha");
    return *alpha;
  };
  BoundValue out{f, m, delta, alpha, 1.0};
  switch (f) {
    case Formula::Kk: out.value = kk(); break;
    case Formula::Msu: out.value = msu(need_m(), need_delta()); break;
    case Formula::WseptRed: out.value = wsept_red(need_delta()); break;
    case Formula::WseptOrange: out.value = wsept_orange(need_delta()); break;
    case Formula::WseptGreen: out.value = wsept_green(need_delta()); break;
    case Formula::EeiAlpha: out.value = eei_alpha(need_m(), need_alpha()); break;
    case Formula::KkAlpha: out.value = kk_alpha(need_alpha()); break;
    case Formula::WsptM: out.value = wspt_m(need_m().value()); break;
    case Formula::Composite: out.value = composite(need_m(), need_delta()); break;
    case Formula::WseptMagenta:
      out.value = wsept_magenta(need_m().value(), need_delta());
      break;
  }
  return out;
}

}  // namespace schedlab::bounds
