#include "netcoord/smoothing.hpp"

#include <algorithm>
#include <string>

#include "netcoord/errors.hpp"
#include "netcoord/rng.hpp"

namespace netcoord {

void PerturbationSpec::validate() const {
  if (phi <= 0) throw InvalidInput("phi must be positive");
  if (grid_log2 < 1 || grid_log2 > 62) throw InvalidInput("grid_log2 out of range");
  if (distribution == NoiseModel::kUniformFull && phi < rat(1, 2))
    throw InvalidInput("uniform-full density is 1/2; phi must be >= 1/2");
  // grid fine enough to resolve the density scale
  if (Rational(static_cast<unsigned long>(grid_resolution())) < 2 * phi)
    throw InvalidInput("grid_resolution must be >= 2*phi");
}

GraphTopology complete_graph(int n) {
  if (n < 0) throw InvalidInput("negative vertex count");
  GraphTopology g{n, {}};
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  return g;
}

GraphTopology path_graph(int n) {
  if (n < 0) throw InvalidInput("negative vertex count");
  GraphTopology g{n, {}};
  for (int u = 0; u + 1 < n; ++u) g.edges.emplace_back(u, u + 1);
  return g;
}

GraphTopology erdos_renyi(int n, const Rational& p, std::uint64_t seed) {
  if (n < 0) throw InvalidInput("negative vertex count");
  if (p < 0 || p > 1) throw InvalidInput("edge probability outside [0,1]");
  GraphTopology g{n, {}};
  if (!p.get_den().fits_ulong_p() || !p.get_num().fits_ulong_p())
    throw InvalidInput("edge probability resolution too fine");
  const std::uint64_t den = p.get_den().get_ui();
  const std::uint64_t num = p.get_num().get_ui();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      RngStream stream(seed, {hash_str("er-edge"), std::uint64_t(u), std::uint64_t(v)});
      if (stream.next_below(den) < num) g.edges.emplace_back(u, v);
    }
  return g;
}

namespace {

// Uniform over grid multiples j/R, j in [lo_idx, hi_idx].
Rational draw_grid(RngStream& stream, std::int64_t lo_idx, std::int64_t hi_idx,
                   std::uint64_t resolution) {
  const std::int64_t j = stream.next_in_range(lo_idx, hi_idx);
  Rational v(static_cast<long>(j), 1);
  v /= Rational(static_cast<unsigned long>(resolution));
  return v;
}

// Half-width of the uniform window in grid steps: floor(R / (2 phi)).
std::int64_t window_steps(const PerturbationSpec& spec) {
  Rational h = Rational(static_cast<unsigned long>(spec.grid_resolution())) /
               (2 * spec.phi);
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), h.get_num().get_mpz_t(), h.get_den().get_mpz_t());
  if (!fl.fits_slong_p()) throw InvalidInput("window too wide for the grid");
  return fl.get_si();
}

Rational clip_unit(Rational v) {
  if (v > 1) return rat(1);
  if (v < -1) return rat(-1);
  return v;
}

}  // namespace

GameInstance sample_instance(const GraphTopology& graph, int k,
                             const PerturbationSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (k < 1) throw InvalidInput("strategy count must be >= 1");
  const std::uint64_t res = spec.grid_resolution();
  const std::int64_t full = static_cast<std::int64_t>(res);
  const std::int64_t steps = spec.distribution == NoiseModel::kUniformFull
                                 ? full
                                 : window_steps(spec);

  std::vector<std::vector<Rational>> matrices;
  matrices.reserve(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    std::vector<Rational> m;
    m.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        RngStream stream(seed, {hash_str("payoff"), e, std::uint64_t(i),
                                std::uint64_t(j)});
        m.push_back(clip_unit(draw_grid(stream, -steps, steps, res)));
      }
    matrices.push_back(std::move(m));
  }
  return GameInstance(graph.n, k, graph.edges, std::move(matrices));
}

GameInstance perturb_instance(const GameInstance& base,
                              const PerturbationSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.distribution != NoiseModel::kUniformWindow)
    throw InvalidInput("perturb_instance requires the uniform-window model");
  const std::uint64_t res = spec.grid_resolution();
  const std::int64_t steps = window_steps(spec);

  const int k = base.strategy_count();
  std::vector<std::vector<Rational>> matrices;
  matrices.reserve(base.edges().size());
  for (int e = 0; e < base.edge_count(); ++e) {
    std::vector<Rational> m;
    m.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        RngStream stream(seed, {hash_str("payoff"), std::uint64_t(e),
                                std::uint64_t(i), std::uint64_t(j)});
        m.push_back(clip_unit(base.entry(e, i, j) +
                              draw_grid(stream, -steps, steps, res)));
      }
    matrices.push_back(std::move(m));
  }
  return GameInstance(base.player_count(), k, base.edges(), std::move(matrices));
}

GameInstance from_maxcut(const CutInstance& graph) {
  if (graph.terminals())
    throw InvalidInput("max-cut embedding takes a terminal-free graph");
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<Rational>> matrices;
  Rational lo = rat(0), hi = rat(0);
  for (const auto& e : graph.edges()) {
    edges.emplace_back(e.u, e.v);
    matrices.push_back({rat(0), e.w, e.w, rat(0)});
    lo = std::min(lo, e.w);
    hi = std::max(hi, e.w);
  }
  return GameInstance(graph.vertex_count(), 2, std::move(edges),
                      std::move(matrices), lo, hi);
}

}  // namespace netcoord
