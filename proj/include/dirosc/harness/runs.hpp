#pragma once

// Spectrum tables, single trajectories and gamma-t sweeps.

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dirosc/dynamics.hpp"
#include "dirosc/eigensolver.hpp"
#include "dirosc/harness/config.hpp"
#include "dirosc/harness/output.hpp"
#include "dirosc/sectors.hpp"
#include "dirosc/spectra.hpp"

namespace dirosc::harness {

inline constexpr const char* kVersion = "0.1.0";

inline nlohmann::ordered_json params_json(const ModelParams& p) {
  return {{"dimension", p.dimension}, {"m", p.m},         {"A", p.A},
          {"B", p.B},                 {"alpha", p.alpha}, {"gamma", p.gamma},
          {"ladder_scale", p.convention.scale}};
}

inline nlohmann::ordered_json base_metadata(const RunConfig& c) {
  nlohmann::ordered_json m;
  m["tool"] = "dirosc";
  m["version"] = kVersion;
  m["mode"] = to_string(c.mode);
  m["params"] = params_json(c.params);
  m["convention"] = detail::convention_text(c.params.convention);
  m["seed"] = c.seed;
  return m;
}

/// Runs task(i) for i in [0, count) on `workers` threads. Each task writes
/// only its own slot, so results do not depend on the worker count.
inline void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  unsigned w = workers > 0 ? static_cast<unsigned>(workers) : std::max(1u, std::thread::hardware_concurrency());
  w = static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(count, 1)));
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < w; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = next++; i < count; i = next++) task(i);
      } catch (...) {
        errors[k] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// spectrum

namespace detail {

struct SectorRows {
  std::string sector;
  std::vector<std::string> branch;
  std::vector<std::optional<double>> closed;
  std::vector<double> numeric;
};

inline SectorRows numeric_only(const BlockMatrix& b) {
  const auto es = jacobi_eigensolver(b.entries);
  SectorRows r{b.key.to_string(), {}, {}, {}};
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    r.branch.push_back("k" + std::to_string(i + 1));
    r.closed.push_back(std::nullopt);
    r.numeric.push_back(es.values(i));
  }
  return r;
}

inline SectorRows sorted_with_closed(const BlockMatrix& b, std::vector<double> closed) {
  auto r = numeric_only(b);
  std::sort(closed.begin(), closed.end());
  for (std::size_t i = 0; i < closed.size() && i < r.closed.size(); ++i) r.closed[i] = closed[i];
  return r;
}

}  // namespace detail

/// Per-sector rows: sector, branch, closed form (if a case applies), Jacobi
/// value, |difference|. Labelled closed forms are listed in branch order E1..E4.
inline Table run_spectrum(const RunConfig& c) {
  c.validate();
  const auto& p = c.params;
  Table t;
  t.columns = {"sector", "branch", "E_closed", "E_numeric", "abs_dev"};
  t.metadata = base_metadata(c);
  t.metadata["n_range"] = {c.n_range_min, c.n_range_max};
  t.metadata["closed_case"] = to_string(closed_case(p));
  nlohmann::ordered_json maps = nlohmann::ordered_json::object();
  nlohmann::ordered_json notes = nlohmann::ordered_json::array();

  std::vector<detail::SectorRows> sectors;
  if (p.dimension == 1 || p.dimension == 2) {
    const BlockMatrix singlet = p.dimension == 1 ? block_singlet(p) : block_2d_singlet(p);
    const BlockMatrix triplet = p.dimension == 1 ? block_triplet(p) : block_2d_triplet(p);
    if (c.n_range_min <= -2) sectors.push_back(detail::sorted_with_closed(singlet, {-(p.m + (p.B - p.A) * p.gamma)}));
    if (c.n_range_min <= -1 && c.n_range_max >= -1) {
      const auto roots = symmetric_cubic_roots(triplet.entries);
      sectors.push_back(detail::sorted_with_closed(triplet, {roots.begin(), roots.end()}));
    }
    for (int n = std::max(0, c.n_range_min); n <= c.n_range_max; ++n) {
      const BlockMatrix b = p.dimension == 1 ? block_1d(n, p) : block_2d(n, p);
      std::optional<EigenSystem> closed;
      try {
        closed = closed_form_spectrum(n, p);
      } catch (const DegenerateRadical& e) {
        notes.push_back(b.key.to_string() + ": " + e.what());
      }
      if (!closed) {
        sectors.push_back(detail::numeric_only(b));
        continue;
      }
      const auto es = jacobi_eigensolver(b.entries);
      detail::SectorRows r{b.key.to_string(), {}, {}, {}};
      for (int k = 0; k < 4; ++k) {
        // closed->values is ascending; branch k sits at branch_map[k] in both.
        const int pos = closed->branch_map[static_cast<std::size_t>(k)];
        r.branch.push_back("E" + std::to_string(k + 1));
        r.closed.push_back(closed->values(pos));
        r.numeric.push_back(es.values(pos));
      }
      maps[r.sector] = closed->branch_map;
      sectors.push_back(std::move(r));
    }
  } else {
    for (int v = std::max(-1, c.n_range_min); v <= c.n_range_max; ++v)
      for (const auto& b : blocks_3d(v, p)) sectors.push_back(detail::numeric_only(b));
  }

  for (const auto& s : sectors) {
    for (std::size_t i = 0; i < s.numeric.size(); ++i) {
      std::optional<double> dev;
      if (s.closed[i]) dev = std::abs(*s.closed[i] - s.numeric[i]);
      t.add({s.sector, s.branch[i], optional_cell(s.closed[i]), s.numeric[i], optional_cell(dev)});
    }
  }
  t.metadata["branch_map"] = maps;
  if (!notes.empty()) t.metadata["fallbacks"] = notes;
  return t;
}

// ---------------------------------------------------------------------------
// evolve / sweep

inline nlohmann::ordered_json dynamics_metadata(const RunConfig& c) {
  auto m = base_metadata(c);
  const auto osc = dirac_oscillator_state(c.n, c.params);
  m["n"] = c.n;
  m["theta"] = c.theta;
  m["entropy_log_base"] = "e";
  m["oscillator_energy"] = osc.energy;
  m["oscillator_energy_quoted"] = quoted_oscillator_energy(c.n, c.params.m);
  m["oscillator_energy_delta"] = quoted_oscillator_energy(c.n, c.params.m) - osc.energy;
  m["t_grid"] = {c.t_min, c.t_max, c.t_steps};
  return m;
}

inline Table run_evolve(const RunConfig& c) {
  c.validate();
  require_dimension(c.params, 1, "evolve");
  Table t;
  t.columns = {"t", "purity", "entropy"};
  t.metadata = dynamics_metadata(c);
  const auto grid = linear_grid(c.t_min, c.t_max, c.t_steps);
  for (const auto& pt : entanglement_trajectory(c.n, c.theta, c.params, grid)) t.add({pt.t, pt.purity, pt.entropy});
  return t;
}

/// gamma-t grid, gamma outer and t inner.
inline std::vector<std::vector<EntanglementPoint>> sweep_points(const RunConfig& c) {
  const auto gammas = linear_grid(c.gamma_min, c.gamma_max, c.gamma_steps);
  const auto times = linear_grid(c.t_min, c.t_max, c.t_steps);
  std::vector<std::vector<EntanglementPoint>> out(gammas.size());
  parallel_for(gammas.size(), c.workers, [&](std::size_t i) {
    ModelParams p = c.params;
    p.gamma = gammas[i];
    out[i] = entanglement_trajectory(c.n, c.theta, p, times);
  });
  return out;
}

inline Table run_sweep(const RunConfig& c) {
  c.validate();
  require_dimension(c.params, 1, "sweep");
  Table t;
  t.columns = {"gamma", "t", "purity", "entropy"};
  t.metadata = dynamics_metadata(c);
  t.metadata["gamma_grid"] = {c.gamma_min, c.gamma_max, c.gamma_steps};
  for (const auto& row : sweep_points(c))
    for (const auto& pt : row) t.add({pt.gamma, pt.t, pt.purity, pt.entropy});
  return t;
}

/// Time average of the entropy per gamma row.
inline std::vector<double> mean_entropy(const std::vector<std::vector<EntanglementPoint>>& grid) {
  std::vector<double> out;
  for (const auto& row : grid) {
    double s = 0.0;
    for (const auto& pt : row) s += pt.entropy;
    out.push_back(row.empty() ? 0.0 : s / static_cast<double>(row.size()));
  }
  return out;
}

}  // namespace dirosc::harness
