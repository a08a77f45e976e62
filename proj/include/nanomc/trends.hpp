#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nanomc/capacity.hpp"
#include "nanomc/csv.hpp"
#include "nanomc/detection.hpp"
#include "nanomc/energy.hpp"
#include "nanomc/release.hpp"

/// Shape assertions for each regenerated dataset. Failures name the row.
namespace nanomc::trends {

struct TrendCheck {
  std::string figure;
  std::string name;
  bool ok = true;
  std::string detail;
};

using Checks = std::vector<TrendCheck>;

namespace detail {

inline std::string row_pair(std::size_t i, double a, double b) {
  return "rows " + std::to_string(i) + "-" + std::to_string(i + 1) + ": " + csv::format(a) + " -> " + csv::format(b);
}

template <class Get>
TrendCheck monotone(std::string figure, std::string name, std::size_t n, Get get, int direction, bool strict) {
  TrendCheck c{std::move(figure), std::move(name), true, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = get(i);
    const double b = get(i + 1);
    const double step = (b - a) * direction;
    const bool ok = strict ? step > 0.0 : step >= 0.0;
    if (!ok) {
      c.ok = false;
      c.detail += (c.detail.empty() ? "" : "; ") + row_pair(i, a, b);
    }
  }
  return c;
}

}  // namespace detail

inline Checks fig4(std::span<const capacity::MixSweepRow> rows) {
  Checks out;
  std::vector<const capacity::MixSweepRow*> by_radius;
  for (const auto& r : rows) by_radius.push_back(&r);
  std::stable_sort(by_radius.begin(), by_radius.end(),
                   [](auto* a, auto* b) { return a->result.average_radius_m < b->result.average_radius_m; });
  TrendCheck c{"fig4", "capacity strictly decreasing in average radius", true, {}};
  for (std::size_t i = 0; i + 1 < by_radius.size(); ++i) {
    const auto& a = by_radius[i]->result;
    const auto& b = by_radius[i + 1]->result;
    if (b.average_radius_m > a.average_radius_m && !(b.capacity < a.capacity)) {
      c.ok = false;
      c.detail += (c.detail.empty() ? "" : "; ") + a.mix + " vs " + b.mix;
    }
  }
  out.push_back(c);
  return out;
}

/// Capacity trend for the metal varied in one block of a mix sweep: falling
/// when the varied metal is larger than the average of the others.
inline TrendCheck fig4_block(std::span<const capacity::MixSweepRow> block, double varied_radius,
                             double others_mean_radius) {
  const int dir = varied_radius > others_mean_radius ? -1 : 1;
  return detail::monotone(
      "fig4", "capacity " + std::string(dir < 0 ? "falls" : "rises") + " with the " + block.front().varied + " fraction",
      block.size(), [&](std::size_t i) { return block[i].result.capacity; }, dir, true);
}

inline TrendCheck linear_in_time(const std::string& figure, const energy::EnergyTrace& tr) {
  // Least-squares fit E = a + b t.
  const double n = static_cast<double>(tr.times.size());
  double st = 0, se = 0, stt = 0, ste = 0, see = 0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    st += tr.times[i];
    se += tr.energy[i];
    stt += tr.times[i] * tr.times[i];
    ste += tr.times[i] * tr.energy[i];
    see += tr.energy[i] * tr.energy[i];
  }
  const double sxx = stt - st * st / n;
  const double sxy = ste - st * se / n;
  const double syy = see - se * se / n;
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  TrendCheck c{figure, "E(t) linear at x=" + csv::format(tr.x), r2 > 1.0 - 1e-12, "R^2 = " + csv::format(r2)};
  return c;
}

/// direction +1: E rises with x at every t > 0; -1: falls.
inline Checks fig6(const std::string& figure, std::span<const energy::EnergyTrace> traces, int direction) {
  Checks out;
  bool all_linear = true;
  std::string linear_detail;
  for (const auto& tr : traces) {
    const auto c = linear_in_time(figure, tr);
    if (!c.ok) {
      all_linear = false;
      linear_detail += (linear_detail.empty() ? "" : "; ") + c.name + " " + c.detail;
    }
  }
  out.push_back({figure, "E(t) linear in t (R^2 > 1 - 1e-12)", all_linear, linear_detail});
  TrendCheck order{figure, std::string("E(t) ") + (direction > 0 ? "increasing" : "decreasing") + " in the swept variable",
                   true, {}};
  for (std::size_t k = 0; k < traces.front().times.size(); ++k) {
    if (!(traces.front().times[k] > 0.0)) continue;
    const auto c = detail::monotone(
        figure, "", traces.size(), [&](std::size_t i) { return traces[i].energy[k]; }, direction, true);
    if (!c.ok) {
      order.ok = false;
      order.detail += "t=" + csv::format(traces.front().times[k]) + ": " + c.detail + "; ";
    }
  }
  out.push_back(order);
  bool power_ok = true;
  for (const auto& tr : traces) power_ok = power_ok && tr.power() >= 0.0;
  out.push_back({figure, "power non-negative", power_ok, {}});
  return out;
}

/// E(1000 rpm) / E(500 rpm) at equal t.
inline TrendCheck rpm_energy_ratio(const energy::EnergyTrace& at500, const energy::EnergyTrace& at1000) {
  const double ratio = at1000.power() / at500.power();
  return {"fig6a", "E(1000 rpm) / E(500 rpm) = 4 +/- 1%", std::abs(ratio / 4.0 - 1.0) <= 0.01,
          "ratio = " + csv::format(ratio)};
}

inline Checks fig7a(std::span<const release::SweepRow> rows) {
  Checks out;
  out.push_back(detail::monotone(
      "fig7a", "simulated release time decreasing in rpm", rows.size(),
      [&](std::size_t i) { return rows[i].result.t_sim_mean; }, -1, true));
  const auto lo = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return std::abs(r.x - 50.0) < 1e-9; });
  const auto hi = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return std::abs(r.x - 1000.0) < 1e-9; });
  if (lo != rows.end() && hi != rows.end()) {
    const double ratio = lo->result.t_sim_mean / hi->result.t_sim_mean;
    out.push_back({"fig7a", "t(50 rpm) / t(1000 rpm) in [10, 22]", ratio >= 10.0 && ratio <= 22.0,
                   "ratio = " + csv::format(ratio)});
  }
  TrendCheck agree{"fig7a", "simulated vs analytic release time within 5% where Peclet > 1e3", true, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].result;
    if (!(r.peclet > 1e3)) continue;
    const double rel = std::abs(r.t_sim_mean - r.t_analytic) / r.t_analytic;
    if (!(rel < 0.05)) {
      agree.ok = false;
      agree.detail += "row " + std::to_string(i) + ": rel = " + csv::format(rel) + "; ";
    }
  }
  out.push_back(agree);
  return out;
}

inline Checks fig7b(std::span<const release::SweepRow> rows) {
  const auto n = rows.size();
  return {
      detail::monotone("fig7b", "Q decreasing in radius ratio", n, [&](std::size_t i) { return rows[i].result.q; }, -1,
                       true),
      detail::monotone("fig7b", "u increasing in radius ratio", n, [&](std::size_t i) { return rows[i].result.u; }, 1,
                       true),
      detail::monotone("fig7b", "release time decreasing in radius ratio", n,
                       [&](std::size_t i) { return rows[i].result.t_sim_mean; }, -1, true),
  };
}

inline Checks fig7c(std::span<const release::SweepRow> rows) {
  const auto n = rows.size();
  Checks out{
      detail::monotone("fig7c", "Q decreasing in aspect ratio", n, [&](std::size_t i) { return rows[i].result.q; }, -1,
                       true),
      detail::monotone("fig7c", "u decreasing in aspect ratio", n, [&](std::size_t i) { return rows[i].result.u; }, -1,
                       true),
  };
  TrendCheck convex{"fig7c", "release time superlinear in aspect ratio (positive second difference)", true, {}};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    for (const bool sim : {true, false}) {
      const auto t = [&](std::size_t j) { return sim ? rows[j].result.t_sim_mean : rows[j].result.t_analytic; };
      const double d2 = t(i + 1) - 2.0 * t(i) + t(i - 1);
      if (!(d2 > 0.0)) {
        convex.ok = false;
        convex.detail += std::string(sim ? "simulated" : "analytic") + " row " + std::to_string(i) +
                         ": second difference " + csv::format(d2) + "; ";
      }
    }
  }
  out.push_back(convex);
  return out;
}

inline TrendCheck bep_non_decreasing(const std::string& figure, std::span<const detection::SweepRow> rows) {
  return detail::monotone(
      figure, "BEP non-decreasing in x", rows.size(), [&](std::size_t i) { return rows[i].result.bep; }, 1, false);
}

inline Checks fig8(std::span<const detection::SweepRow> rows) {
  Checks out{bep_non_decreasing("fig8", rows)};
  double lo = 1.0;
  double hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.result.bep);
    hi = std::max(hi, r.result.bep);
  }
  out.push_back({"fig8", "total BEP increase below one order of magnitude", hi < 10.0 * lo,
                 "min " + csv::format(lo) + ", max " + csv::format(hi)});
  for (const int bit : {0, 1}) {
    double pmin = 1.0;
    double pmax = 0.0;
    for (const auto& r : rows) {
      const double p = bit ? r.result.pb_bit1 : r.result.pb_bit0;
      pmin = std::min(pmin, p);
      pmax = std::max(pmax, p);
    }
    const double rel = (pmax - pmin) / pmax;
    out.push_back({"fig8", "bound probability for bit " + std::to_string(bit) + " varies < 10%", rel < 0.10,
                   "relative spread " + csv::format(rel)});
  }
  return out;
}

inline Checks fig9(std::span<const detection::SweepRow> normal, std::span<const detection::SweepRow> saturated) {
  Checks out{bep_non_decreasing("fig9a", normal), bep_non_decreasing("fig9b", saturated)};
  TrendCheck sat{"fig9", "saturation BEP >= non-saturation BEP for ratio >= 0.5", true, {}};
  for (std::size_t i = 0; i < std::min(normal.size(), saturated.size()); ++i) {
    if (normal[i].x < 0.5 - 1e-12) continue;
    if (!(saturated[i].result.bep >= normal[i].result.bep)) {
      sat.ok = false;
      sat.detail += "x=" + csv::format(normal[i].x) + ": " + csv::format(saturated[i].result.bep) + " < " +
                    csv::format(normal[i].result.bep) + "; ";
    }
  }
  out.push_back(sat);
  return out;
}

/// `by_eta` ordered by increasing affinity ratio, all on the same grid.
inline Checks fig10(const std::vector<std::vector<detection::SweepRow>>& by_eta, std::span<const double> etas) {
  Checks out;
  for (std::size_t k = 0; k < by_eta.size(); ++k) {
    out.push_back(bep_non_decreasing("fig10 eta=" + csv::format(etas[k]), by_eta[k]));
  }
  TrendCheck order{"fig10", "BEP ordered by affinity ratio at every interferer mean", true, {}};
  for (std::size_t k = 0; k + 1 < by_eta.size(); ++k) {
    for (std::size_t i = 0; i < by_eta[k].size(); ++i) {
      if (!(by_eta[k + 1][i].result.bep >= by_eta[k][i].result.bep)) {
        order.ok = false;
        order.detail += "x=" + csv::format(by_eta[k][i].x) + ": eta " + csv::format(etas[k + 1]) + " below eta " +
                        csv::format(etas[k]) + "; ";
      }
    }
  }
  out.push_back(order);
  return out;
}

}  // namespace nanomc::trends
