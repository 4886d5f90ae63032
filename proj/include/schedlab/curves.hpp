#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "schedlab/bounds.hpp"
#include "schedlab/io.hpp"
#include "schedlab/worst_case.hpp"

namespace schedlab::curves {

/// Grid request for the bound-curve table.
struct CurveRequest {
  std::vector<bounds::Formula> formulas;
  std::vector<bounds::MachineCount> m_values;
  std::vector<double> delta_grid;
  std::vector<double> alpha_grid;
};

inline bool needs_m(bounds::Formula f) {
  using bounds::Formula;
  return f == Formula::Msu || f == Formula::EeiAlpha || f == Formula::WsptM ||
         f == Formula::Composite || f == Formula::WseptMagenta;
}

inline bool needs_delta(bounds::Formula f) {
  using bounds::Formula;
  return f == Formula::Msu || f == Formula::WseptRed ||
         f == Formula::WseptOrange || f == Formula::WseptGreen ||
         f == Formula::Composite || f == Formula::WseptMagenta;
}

inline bool needs_alpha(bounds::Formula f) {
  using bounds::Formula;
  return f == Formula::EeiAlpha || f == Formula::KkAlpha;
}

/// Evaluates every formula over the product of the parameter grids it needs.
inline std::vector<bounds::BoundValue> bounds_table(const CurveRequest& req) {
  if (req.formulas.empty())
    throw std::invalid_argument("bounds table needs at least one formula");
  std::vector<bounds::BoundValue> rows;
  for (bounds::Formula f : req.formulas) {
    std::vector<std::optional<bounds::MachineCount>> ms{std::nullopt};
    std::vector<std::optional<double>> deltas{std::nullopt};
    std::vector<std::optional<double>> alphas{std::nullopt};
    if (needs_m(f)) {
      if (req.m_values.empty())
        throw std::invalid_argument(bounds::formula_id(f) + " needs --m");
      ms.assign(req.m_values.begin(), req.m_values.end());
    }
    if (needs_delta(f)) {
      if (req.delta_grid.empty())
        throw std::invalid_argument(bounds::formula_id(f) + " needs a delta grid");
      deltas.assign(req.delta_grid.begin(), req.delta_grid.end());
    }
    if (needs_alpha(f)) {
      if (req.alpha_grid.empty())
        throw std::invalid_argument(bounds::formula_id(f) + " needs an alpha grid");
      alphas.assign(req.alpha_grid.begin(), req.alpha_grid.end());
    }
    for (const auto& m : ms)
      for (const auto& d : deltas)
        for (const auto& a : alphas)
          rows.push_back(bounds::evaluate(f, m, d, a));
  }
  return rows;
}

inline std::string bounds_csv(const std::vector<bounds::BoundValue>& rows) {
  std::ostringstream out;
  out << "formula,m,delta,alpha,value\n";
  for (const bounds::BoundValue& b : rows) {
    out << bounds::formula_id(b.formula) << ',';
    if (b.m) out << (b.m->is_infinite() ? "inf" : std::to_string(b.m->value()));
    out << ',';
    if (b.delta) out << io::format_value(*b.delta);
    out << ',';
    if (b.alpha) out << io::format_value(*b.alpha);
    out << ',' << io::format_value(b.value) << '\n';
  }
  return out.str();
}

struct WsptCurveRow {
  int m = 0;
  int k = 0;
  double x = 0.0;
  double value = 1.0;
};

/// Fixed-m tight ratio per machine count, with the worst-case family's
/// long-job count and length.
inline std::vector<WsptCurveRow> wspt_curve(int m_max) {
  if (m_max < 2) throw std::invalid_argument("curve needs m_max >= 2");
  std::vector<WsptCurveRow> rows;
  for (int m = 2; m <= m_max; ++m) {
    const int k = bounds::k_m(m);
    rows.push_back({m, k, worst_case::x_km(k, m), bounds::wspt_m(m)});
  }
  return rows;
}

inline std::string wspt_curve_csv(const std::vector<WsptCurveRow>& rows) {
  std::ostringstream out;
  out << "m,k_m,x_m,wspt_m,kk\n";
  for (const WsptCurveRow& r : rows)
    out << r.m << ',' << r.k << ',' << io::format_value(r.x) << ','
        << io::format_value(r.value) << ',' << io::format_value(bounds::kk())
        << '\n';
  return out.str();
}

struct SurfaceRow {
  int m = 0;
  int k = 0;
  double value = 1.0;
};

/// Per-k worst-case ratio for each machine count up to m_max.
inline std::vector<SurfaceRow> surface(int m_max) {
  if (m_max < 2) throw std::invalid_argument("surface needs m_max >= 2");
  std::vector<SurfaceRow> rows;
  for (int m = 2; m <= m_max; ++m)
    for (int k = 1; k <= m - 1; ++k)
      rows.push_back({m, k, worst_case::lambda_mk(k, m)});
  return rows;
}

inline std::string surface_csv(const std::vector<SurfaceRow>& rows) {
  std::ostringstream out;
  out << "m,k,lambda\n";
  for (const SurfaceRow& r : rows)
    out << r.m << ',' << r.k << ',' << io::format_value(r.value) << '\n';
  return out.str();
}

}  // namespace schedlab::curves
