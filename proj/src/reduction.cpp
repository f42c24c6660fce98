#include "netcoord/reduction.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "netcoord/errors.hpp"
#include "netcoord/rng.hpp"

namespace netcoord {

int strategy_pair_index(int i, int j, int k) {
  if (!(1 <= i && i < j && j <= k)) throw InvalidInput("bad strategy pair");
  // pairs (1,2),(1,3),...,(1,k),(2,3),... flattened
  const int a = i - 1, b = j - 1;
  return a * k - a * (a + 1) / 2 + (b - a - 1);
}

void AuxRandomness::validate(int n, int k) const {
  const Rational half = rat(1, 2);
  auto in_half_open_low = [&](const Rational& v) { return v >= 0 && v < half; };
  auto in_neg_unit = [](const Rational& v) { return v >= -1 && v < 0; };
  if (!in_half_open_low(a0)) throw InvalidInput("A0 outside [0, 1/2)");
  if (static_cast<int>(y.size()) != n || static_cast<int>(w.size()) != n ||
      static_cast<int>(r.size()) != n)
    throw InvalidInput("aux arrays sized differently from player count");
  const std::size_t pairs = static_cast<std::size_t>(k) * (k - 1) / 2;
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(y[u].size()) != k || static_cast<int>(w[u].size()) != k)
      throw InvalidInput("aux Y/W arrays sized differently from strategy count");
    if (r[u].size() != pairs)
      throw InvalidInput("aux R array sized differently from strategy pairs");
    for (const auto& v : y[u])
      if (!in_half_open_low(v)) throw InvalidInput("Y outside [0, 1/2)");
    for (const auto& v : w[u])
      if (!in_neg_unit(v)) throw InvalidInput("W outside [-1, 0)");
    for (const auto& v : r[u])
      if (v >= 0) throw InvalidInput("R must be strictly negative");
  }
}

namespace {

Rational draw_scaled(RngStream& stream, std::int64_t lo, std::int64_t hi,
                     std::uint64_t res) {
  Rational v(static_cast<long>(stream.next_in_range(lo, hi)), 1);
  v /= Rational(static_cast<unsigned long>(res));
  return v;
}

}  // namespace

AuxRandomness sample_aux(int n, int k, int grid_log2, std::uint64_t seed,
                         AuxRangePolicy policy) {
  if (grid_log2 < 1 || grid_log2 > 62) throw InvalidInput("grid_log2 out of range");
  const std::uint64_t res = std::uint64_t{1} << grid_log2;
  const auto full = static_cast<std::int64_t>(res);
  const auto half = static_cast<std::int64_t>(res / 2);
  // R on [-(B+1), -B); see the AuxRandomness doc for why this width
  const std::int64_t r_shift =
      policy == AuxRangePolicy::kValidityEnforcing
          ? static_cast<std::int64_t>(2 * (k + 1) * (n - 1)) * full
          : 0;

  AuxRandomness aux;
  {
    // nonzero so that adding s to the empty set strictly gains 2|E|A0
    RngStream s(seed, {hash_str("aux-a0")});
    aux.a0 = draw_scaled(s, 1, half - 1, res);
  }
  aux.y.resize(n);
  aux.w.resize(n);
  aux.r.resize(n);
  for (int u = 0; u < n; ++u) {
    for (int i = 1; i <= k; ++i) {
      RngStream sy(seed, {hash_str("aux-y"), std::uint64_t(u), std::uint64_t(i)});
      aux.y[u].push_back(draw_scaled(sy, 0, half - 1, res));
      RngStream sw(seed, {hash_str("aux-w"), std::uint64_t(u), std::uint64_t(i)});
      aux.w[u].push_back(draw_scaled(sw, -full, -1, res));
    }
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        RngStream sr(seed, {hash_str("aux-r"), std::uint64_t(u), std::uint64_t(i),
                            std::uint64_t(j)});
        aux.r[u].push_back(draw_scaled(sr, -full - r_shift, -1 - r_shift, res));
      }
  }
  return aux;
}

std::vector<Rational> sample_player_weights(int n, int grid_log2,
                                            std::uint64_t seed) {
  if (grid_log2 < 1 || grid_log2 > 62) throw InvalidInput("grid_log2 out of range");
  const std::uint64_t res = std::uint64_t{1} << grid_log2;
  std::vector<Rational> w;
  for (int u = 0; u < n; ++u) {
    RngStream s(seed, {hash_str("aux-w1"), std::uint64_t(u)});
    w.push_back(draw_scaled(s, -static_cast<std::int64_t>(res), -1, res));
  }
  return w;
}

GameInstance normalize_payoffs(const GameInstance& game) {
  const int k = game.strategy_count();
  std::vector<std::vector<Rational>> matrices;
  matrices.reserve(game.edges().size());
  for (int e = 0; e < game.edge_count(); ++e) {
    std::vector<Rational> m;
    m.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        const Rational& a = game.entry(e, i, j);
        if (a < -1 || a > 1)
          throw InvalidInput("payoff outside [-1,1]: " + rat_to_string(a));
        m.push_back((a + 3) / 4);
      }
    matrices.push_back(std::move(m));
  }
  return GameInstance(game.player_count(), k, game.edges(), std::move(matrices),
                      rat(1, 2), rat(1));
}

int ReductionArtifacts::node_of(int player, int strategy) const {
  if (variant == Variant::kOneFlip) return 2 + player;
  return 2 + player * game->strategy_count() + (strategy - 1);
}

namespace {

// Symbolic linear form over the reduction's input variables; the same weight
// formulas are instantiated once with Rational values (to build the cut
// instance) and once with unit forms (to build the certificate system).
struct LinearExpr {
  std::map<int, Rational> coeffs;

  LinearExpr& operator+=(const LinearExpr& o) {
    for (const auto& [var, c] : o.coeffs) add(var, c);
    return *this;
  }
  LinearExpr& operator-=(const LinearExpr& o) {
    for (const auto& [var, c] : o.coeffs) add(var, -c);
    return *this;
  }
  void add(int var, const Rational& c) {
    auto [it, inserted] = coeffs.emplace(var, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs.erase(it);
    }
  }
  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(const Rational& s, const LinearExpr& a) {
    LinearExpr out;
    if (s == 0) return out;
    for (const auto& [var, c] : a.coeffs) out.coeffs.emplace(var, s * c);
    return out;
  }
};

template <typename T>
T scale(const Rational& s, const T& v);
template <>
Rational scale(const Rational& s, const Rational& v) { return s * v; }
template <>
LinearExpr scale(const Rational& s, const LinearExpr& v) { return s * v; }

// Variable layout of the 2-flip system: A entries, then R, Y, A0, W.
struct VarLayout {
  int edge_count = 0, n = 0, k = 0;
  int pairs() const { return k * (k - 1) / 2; }
  int a_base() const { return 0; }
  int r_base() const { return edge_count * k * k; }
  int y_base() const { return r_base() + n * pairs(); }
  int a0_index() const { return y_base() + n * k; }
  int w_base() const { return a0_index() + 1; }
  int total() const { return w_base() + n * k; }

  int a_var(int e, int i, int j) const {
    return a_base() + e * k * k + (i - 1) * k + (j - 1);
  }
  int r_var(int u, int i, int j) const {
    return r_base() + u * pairs() + strategy_pair_index(i, j, k);
  }
  int y_var(int u, int i) const { return y_base() + u * k + (i - 1); }
  int w_var(int u, int i) const { return w_base() + u * k + (i - 1); }
};

// Numeric inputs.
struct ValueProvider {
  const GameInstance* game;
  const AuxRandomness* aux;
  Rational a(int e, int i, int j) const { return game->entry(e, i, j); }
  Rational y(int u, int i) const { return aux->y[u][i - 1]; }
  Rational w(int u, int i) const { return aux->w[u][i - 1]; }
  Rational r(int u, int i, int j) const {
    return aux->r[u][strategy_pair_index(i, j, game->strategy_count())];
  }
  Rational a0() const { return aux->a0; }
};

// Unit linear forms.
struct SymbolProvider {
  const VarLayout* layout;
  LinearExpr unit(int var) const {
    LinearExpr e;
    e.coeffs.emplace(var, rat(1));
    return e;
  }
  LinearExpr a(int e, int i, int j) const { return unit(layout->a_var(e, i, j)); }
  LinearExpr y(int u, int i) const { return unit(layout->y_var(u, i)); }
  LinearExpr w(int u, int i) const { return unit(layout->w_var(u, i)); }
  LinearExpr r(int u, int i, int j) const { return unit(layout->r_var(u, i, j)); }
  LinearExpr a0() const { return unit(layout->a0_index()); }
};

// All 2-flip edge weights in the fixed row order: game-edge pairs,
// same-player pairs, (u,i)-t, s-t, s-(u,i).
template <typename T>
struct TwoFlipBuild {
  std::vector<T> game_edge;
  std::vector<T> same_player;
  std::vector<T> node_to_t;
  std::vector<T> s_to_node;
  T s_to_t{};
};

template <typename T, typename Provider>
TwoFlipBuild<T> build_two_flip(const GameInstance& game, const Provider& p,
                               WeightConvention convention) {
  const int n = game.player_count();
  const int k = game.strategy_count();
  const long edge_count = game.edge_count();

  const T pi_empty = scale(rat(2 * edge_count), p.a0());
  auto pi_single = [&](int u, int i) -> T {
    const Rational two_deg = rat(2 * game.degree(u));
    return T(pi_empty + scale(two_deg, p.y(u, i)) - scale(two_deg, p.a0()));
  };
  auto same_player_weight = [&](int u, int i, int j) -> T {
    return scale(rat(1, 2), T(pi_single(u, i) + pi_single(u, j) - pi_empty -
                              scale(rat(2), p.r(u, i, j))));
  };
  auto cross = [&](int u, int i, int v, int j) -> T {
    const int e = game.edge_index(u, v);
    const T a_term = u < v ? T(p.a(e, i, j)) : T(p.a(e, j, i));
    if (convention == WeightConvention::kClaimStatement)
      return T(p.y(u, i) - p.y(v, j) - a_term - p.a0());
    return T(p.y(u, i) + p.y(v, j) - a_term - p.a0());
  };

  TwoFlipBuild<T> out;
  for (int e = 0; e < edge_count; ++e) {
    const auto& [u, v] = game.edges()[e];
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) out.game_edge.push_back(cross(u, i, v, j));
  }
  for (int u = 0; u < n; ++u)
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        out.same_player.push_back(same_player_weight(u, i, j));
  for (int u = 0; u < n; ++u)
    for (int i = 1; i <= k; ++i) {
      // closes the system: delta({s,(u,i)}) must equal pi({(u,i)})
      T w_ut = pi_single(u, i) - pi_empty + p.w(u, i);
      for (int j = 1; j <= k; ++j)
        if (j != i)
          w_ut -= same_player_weight(u, std::min(i, j), std::max(i, j));
      for (const auto& [v, e] : game.incident(u))
        for (int j = 1; j <= k; ++j) w_ut -= cross(u, i, v, j);
      out.node_to_t.push_back(std::move(w_ut));
    }
  {
    T w_st = pi_empty;
    for (int u = 0; u < n; ++u)
      for (int i = 1; i <= k; ++i) w_st -= p.w(u, i);
    out.s_to_t = std::move(w_st);
  }
  for (int u = 0; u < n; ++u)
    for (int i = 1; i <= k; ++i) out.s_to_node.push_back(p.w(u, i));
  return out;
}

std::vector<BigInt> expr_to_int_row(const LinearExpr& expr, int dimension,
                                    bool* integral) {
  std::vector<BigInt> row(dimension, 0);
  for (const auto& [var, c] : expr.coeffs) {
    if (c.get_den() != 1) *integral = false;
    row[var] = c.get_num();
  }
  return row;
}

void require_normalized(const GameInstance& game) {
  const Rational half = rat(1, 2);
  for (int e = 0; e < game.edge_count(); ++e)
    for (int i = 1; i <= game.strategy_count(); ++i)
      for (int j = 1; j <= game.strategy_count(); ++j)
        if (game.entry(e, i, j) < half || game.entry(e, i, j) > 1)
          throw InvalidInput("reduction needs payoffs in [1/2, 1]; normalize first");
}

}  // namespace

ReductionArtifacts reduce_k_to_2flip(
    std::shared_ptr<const GameInstance> normalized, const AuxRandomness& aux,
    WeightConvention convention) {
  if (!normalized) throw InvalidInput("null game");
  const GameInstance& game = *normalized;
  const int n = game.player_count();
  const int k = game.strategy_count();
  if (k < 2)
    throw InvalidInput(
        "1-strategy games are trivially at their unique PNE; reduction refused");
  require_normalized(game);
  aux.validate(n, k);

  ReductionArtifacts artifacts;
  artifacts.variant = ReductionArtifacts::Variant::kTwoFlip;
  artifacts.game = normalized;
  artifacts.aux = aux;
  artifacts.convention = convention;
  artifacts.normalization = {rat(1, 4), rat(3, 4)};

  const ValueProvider values{&game, &aux};
  const auto numeric = build_two_flip<Rational>(game, values, convention);

  auto node = [&](int u, int i) { return 2 + u * k + (i - 1); };
  std::vector<WeightedEdge> cut_edges;
  std::vector<std::string> row_labels;
  {
    std::size_t idx = 0;
    for (int e = 0; e < game.edge_count(); ++e) {
      const auto& [u, v] = game.edges()[e];
      for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) {
          cut_edges.push_back({node(u, i), node(v, j), numeric.game_edge[idx++]});
          row_labels.push_back("w((" + std::to_string(u) + "," + std::to_string(i) +
                               ")(" + std::to_string(v) + "," + std::to_string(j) +
                               "))");
        }
    }
    idx = 0;
    for (int u = 0; u < n; ++u)
      for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
          cut_edges.push_back({node(u, i), node(u, j), numeric.same_player[idx++]});
          row_labels.push_back("w((" + std::to_string(u) + "," + std::to_string(i) +
                               ")(" + std::to_string(u) + "," + std::to_string(j) +
                               "))");
        }
    idx = 0;
    for (int u = 0; u < n; ++u)
      for (int i = 1; i <= k; ++i) {
        cut_edges.push_back({node(u, i), 1, numeric.node_to_t[idx++]});
        row_labels.push_back("w((" + std::to_string(u) + "," + std::to_string(i) +
                             "),t)");
      }
    cut_edges.push_back({0, 1, numeric.s_to_t});
    row_labels.push_back("w(s,t)");
    idx = 0;
    for (int u = 0; u < n; ++u)
      for (int i = 1; i <= k; ++i) {
        cut_edges.push_back({0, node(u, i), numeric.s_to_node[idx++]});
        row_labels.push_back("w(s,(" + std::to_string(u) + "," +
                             std::to_string(i) + "))");
      }
  }
  artifacts.cut = std::make_shared<CutInstance>(n * k + 2, std::move(cut_edges),
                                                Terminals{0, 1});

  // symbolic pass: the same formulas over unit forms
  const VarLayout layout{game.edge_count(), n, k};
  const SymbolProvider symbols{&layout};
  const auto symbolic = build_two_flip<LinearExpr>(game, symbols, convention);
  bool integral = true;
  for (const auto& expr : symbolic.game_edge)
    artifacts.system.push_back(expr_to_int_row(expr, layout.total(), &integral));
  for (const auto& expr : symbolic.same_player)
    artifacts.system.push_back(expr_to_int_row(expr, layout.total(), &integral));
  for (const auto& expr : symbolic.node_to_t)
    artifacts.system.push_back(expr_to_int_row(expr, layout.total(), &integral));
  artifacts.system.push_back(
      expr_to_int_row(symbolic.s_to_t, layout.total(), &integral));
  for (const auto& expr : symbolic.s_to_node)
    artifacts.system.push_back(expr_to_int_row(expr, layout.total(), &integral));
  if (!integral)
    throw InvalidInput("reduction system has non-integer coefficients");

  artifacts.row_labels = std::move(row_labels);
  for (int e = 0; e < game.edge_count(); ++e)
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j)
        artifacts.var_labels.push_back("A[e" + std::to_string(e) + "](" +
                                       std::to_string(i) + "," +
                                       std::to_string(j) + ")");
  for (int u = 0; u < n; ++u)
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        artifacts.var_labels.push_back("R(" + std::to_string(u) + "," +
                                       std::to_string(i) + std::to_string(j) + ")");
  for (int u = 0; u < n; ++u)
    for (int i = 1; i <= k; ++i)
      artifacts.var_labels.push_back("Y(" + std::to_string(u) + "," +
                                     std::to_string(i) + ")");
  artifacts.var_labels.push_back("A0");
  for (int u = 0; u < n; ++u)
    for (int i = 1; i <= k; ++i)
      artifacts.var_labels.push_back("W(" + std::to_string(u) + "," +
                                     std::to_string(i) + ")");
  return artifacts;
}

ReductionArtifacts reduce_2_to_1flip(
    std::shared_ptr<const GameInstance> normalized,
    const std::vector<Rational>& player_w) {
  if (!normalized) throw InvalidInput("null game");
  const GameInstance& game = *normalized;
  const int n = game.player_count();
  if (game.strategy_count() != 2)
    throw InvalidInput("the 1-flip reduction needs a 2-strategy game");
  require_normalized(game);
  if (static_cast<int>(player_w.size()) != n)
    throw InvalidInput("one W value per player required");
  for (const auto& w : player_w)
    if (w < -1 || w >= 0) throw InvalidInput("W outside [-1, 0)");

  ReductionArtifacts artifacts;
  artifacts.variant = ReductionArtifacts::Variant::kOneFlip;
  artifacts.game = normalized;
  artifacts.player_w = player_w;
  artifacts.normalization = {rat(1, 4), rat(3, 4)};

  // pi(empty): every player on strategy 2, doubled
  Rational pi_empty = 0;
  for (int e = 0; e < game.edge_count(); ++e) pi_empty += 2 * game.entry(e, 2, 2);

  auto pair_weight = [&](int e) -> Rational {
    return game.entry(e, 1, 2) + game.entry(e, 2, 1) - game.entry(e, 1, 1) -
           game.entry(e, 2, 2);
  };

  auto node = [](int u) { return 2 + u; };
  std::vector<WeightedEdge> cut_edges;
  std::vector<std::string> labels;
  for (int e = 0; e < game.edge_count(); ++e) {
    const auto& [u, v] = game.edges()[e];
    cut_edges.push_back({node(u), node(v), pair_weight(e)});
    labels.push_back("w(" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  for (int u = 0; u < n; ++u) {
    // pi({u}) - pi(empty): u deviates to strategy 1 against all-2
    Rational diff = 0;
    for (const auto& [v, e] : game.incident(u)) {
      const Rational a12 =
          u < v ? game.entry(e, 1, 2) : game.entry(e, 2, 1);
      diff += 2 * (a12 - game.entry(e, 2, 2));
    }
    Rational w_ut = diff + player_w[u];
    for (const auto& [v, e] : game.incident(u)) w_ut -= pair_weight(e);
    cut_edges.push_back({node(u), 1, std::move(w_ut)});
    labels.push_back("w(" + std::to_string(u) + ",t)");
  }
  {
    Rational w_st = pi_empty;
    for (const auto& w : player_w) w_st -= w;
    cut_edges.push_back({0, 1, std::move(w_st)});
    labels.push_back("w(s,t)");
  }
  for (int u = 0; u < n; ++u) {
    cut_edges.push_back({0, node(u), player_w[u]});
    labels.push_back("w(s," + std::to_string(u) + ")");
  }
  artifacts.cut = std::make_shared<CutInstance>(n + 2, std::move(cut_edges),
                                                Terminals{0, 1});
  artifacts.row_labels = std::move(labels);

  // integer system over (A entries, W)
  const int a_vars = game.edge_count() * 4;
  const int dim = a_vars + n;
  auto a_var = [&](int e, int i, int j) { return e * 4 + (i - 1) * 2 + (j - 1); };
  auto blank = [&] { return std::vector<BigInt>(dim, 0); };
  for (int e = 0; e < game.edge_count(); ++e) {
    auto row = blank();
    row[a_var(e, 1, 2)] = 1;
    row[a_var(e, 2, 1)] = 1;
    row[a_var(e, 1, 1)] = -1;
    row[a_var(e, 2, 2)] = -1;
    artifacts.system.push_back(std::move(row));
  }
  for (int u = 0; u < n; ++u) {
    auto row = blank();
    for (const auto& [v, e] : game.incident(u)) {
      if (u < v)
        row[a_var(e, 1, 2)] += 2;
      else
        row[a_var(e, 2, 1)] += 2;
      row[a_var(e, 2, 2)] += -2;
      // minus the pair weight of the incident edge
      row[a_var(e, 1, 2)] += -1;
      row[a_var(e, 2, 1)] += -1;
      row[a_var(e, 1, 1)] += 1;
      row[a_var(e, 2, 2)] += 1;
    }
    row[a_vars + u] = 1;
    artifacts.system.push_back(std::move(row));
  }
  {
    auto row = blank();
    for (int e = 0; e < game.edge_count(); ++e) row[a_var(e, 2, 2)] = 2;
    for (int u = 0; u < n; ++u) row[a_vars + u] = -1;
    artifacts.system.push_back(std::move(row));
  }
  for (int u = 0; u < n; ++u) {
    auto row = blank();
    row[a_vars + u] = 1;
    artifacts.system.push_back(std::move(row));
  }
  for (int e = 0; e < game.edge_count(); ++e)
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        artifacts.var_labels.push_back("A[e" + std::to_string(e) + "](" +
                                       std::to_string(i) + "," +
                                       std::to_string(j) + ")");
  for (int u = 0; u < n; ++u)
    artifacts.var_labels.push_back("W(" + std::to_string(u) + ")");
  return artifacts;
}

LiftedProfile map_cut_to_profile(const ReductionArtifacts& artifacts,
                                 const VertexSet& s_side) {
  const CutInstance& cut = *artifacts.cut;
  if (static_cast<int>(s_side.size()) != cut.vertex_count())
    throw InvalidInput("vertex set size mismatch");
  if (!s_side[0] || s_side[1])
    throw InvalidInput("cut violates terminal placement (s inside, t outside)");

  const int n = artifacts.game->player_count();
  const int k = artifacts.game->strategy_count();
  LiftedProfile lifted;
  if (artifacts.variant == ReductionArtifacts::Variant::kOneFlip) {
    lifted.profile.resize(n);
    for (int u = 0; u < n; ++u) lifted.profile[u] = s_side[2 + u] ? 1 : 2;
    return lifted;
  }
  lifted.profile.assign(n, 0);
  for (int u = 0; u < n; ++u)
    for (int i = 1; i <= k; ++i)
      if (s_side[artifacts.node_of(u, i)]) {
        if (lifted.profile[u] != 0) lifted.valid = false;
        lifted.profile[u] = i;
      }
  return lifted;
}

namespace {

void validate_extended_profile(const ReductionArtifacts& artifacts,
                               const StrategyProfile& profile) {
  const int n = artifacts.game->player_count();
  const int k = artifacts.game->strategy_count();
  if (static_cast<int>(profile.size()) != n)
    throw InvalidInput("profile length does not match player count");
  const int lo = artifacts.variant == ReductionArtifacts::Variant::kTwoFlip ? 0 : 1;
  for (int s : profile)
    if (s < lo || s > k) throw InvalidInput("strategy out of extended range");
}

// Payoff entry of the extended game (dummy strategy 0 filled with Y / A0).
Rational extended_entry(const ReductionArtifacts& artifacts, int u, int su,
                        int v, int sv) {
  const GameInstance& game = *artifacts.game;
  if (su >= 1 && sv >= 1) return game.payoff_on_edge(u, su, v, sv);
  if (su >= 1) return artifacts.aux.y[u][su - 1];
  if (sv >= 1) return artifacts.aux.y[v][sv - 1];
  return artifacts.aux.a0;
}

}  // namespace

Rational extended_potential(const ReductionArtifacts& artifacts,
                            const StrategyProfile& profile) {
  validate_extended_profile(artifacts, profile);
  const GameInstance& game = *artifacts.game;
  Rational total = 0;
  for (const auto& [u, v] : game.edges())
    total += extended_entry(artifacts, u, profile[u], v, profile[v]);
  return total;
}

Rational extended_player_payoff(const ReductionArtifacts& artifacts,
                                const StrategyProfile& profile, int u) {
  validate_extended_profile(artifacts, profile);
  const GameInstance& game = *artifacts.game;
  if (u < 0 || u >= game.player_count())
    throw InvalidInput("player id out of range");
  Rational total = 0;
  for (const auto& [v, e] : game.incident(u))
    total += extended_entry(artifacts, u, profile[u], v, profile[v]);
  return total;
}

bool extended_is_pne(const ReductionArtifacts& artifacts,
                     const StrategyProfile& profile) {
  validate_extended_profile(artifacts, profile);
  const GameInstance& game = *artifacts.game;
  const int k = game.strategy_count();
  const int lo = artifacts.variant == ReductionArtifacts::Variant::kTwoFlip ? 0 : 1;
  for (int u = 0; u < game.player_count(); ++u) {
    const Rational current = extended_player_payoff(artifacts, profile, u);
    StrategyProfile deviated = profile;
    for (int i = lo; i <= k; ++i) {
      if (i == profile[u]) continue;
      deviated[u] = i;
      if (extended_player_payoff(artifacts, deviated, u) > current) return false;
    }
  }
  return true;
}

std::vector<StrategyProfile> extended_enumerate_pne(
    const ReductionArtifacts& artifacts, std::uint64_t profile_cap) {
  const int n = artifacts.game->player_count();
  const int k = artifacts.game->strategy_count();
  const int lo = artifacts.variant == ReductionArtifacts::Variant::kTwoFlip ? 0 : 1;
  const std::uint64_t base = static_cast<std::uint64_t>(k - lo + 1);
  std::uint64_t count = 1;
  for (int u = 0; u < n; ++u) {
    if (count > profile_cap / base)
      throw CapExceeded("extended profile space exceeds the oracle cap");
    count *= base;
  }
  std::vector<StrategyProfile> result;
  StrategyProfile profile(n, lo);
  for (std::uint64_t it = 0; it < count; ++it) {
    if (extended_is_pne(artifacts, profile)) result.push_back(profile);
    for (int u = n - 1; u >= 0; --u) {
      if (profile[u] < k) {
        ++profile[u];
        break;
      }
      profile[u] = lo;
    }
  }
  return result;
}

SmoothnessCertificate check_weak_smoothness(const ReductionArtifacts& artifacts) {
  SmoothnessCertificate cert;
  const IntMatrix& system = artifacts.system;
  cert.rows = static_cast<long>(system.size());
  cert.dimension = system.empty() ? 0 : static_cast<long>(system[0].size());
  cert.square = cert.rows == cert.dimension;
  cert.integral = true;  // rows are built integer; non-integers throw earlier
  cert.rank = exact_rank(system);
  cert.full_rank = cert.rank == cert.dimension;

  if (artifacts.variant == ReductionArtifacts::Variant::kOneFlip) {
    // weak reduction needs linearly independent weight rows, not a square map
    cert.triangular_after_row_ops = false;
    cert.pass = cert.integral && cert.rank == cert.rows;
    cert.detail = cert.pass ? "rows linearly independent"
                            : "dependent weight rows (isolated player?)";
    return cert;
  }

  const GameInstance& game = *artifacts.game;
  const int n = game.player_count();
  const int k = game.strategy_count();
  const long edge_rows = static_cast<long>(game.edge_count()) * k * k;
  const long same_rows = static_cast<long>(n) * k * (k - 1) / 2;

  // w-hat row op: add to each (u,i)-t row every (u,i)-incident row from the
  // first two groups, then check literal upper-triangularity under the
  // documented row/variable alignment.
  IntMatrix m = system;
  {
    long idx = 0;
    for (int e = 0; e < game.edge_count(); ++e) {
      const auto& [u, v] = game.edges()[e];
      for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j, ++idx) {
          const long ut_u = edge_rows + same_rows + long(u) * k + (i - 1);
          const long ut_v = edge_rows + same_rows + long(v) * k + (j - 1);
          for (std::size_t c = 0; c < m[idx].size(); ++c) {
            m[ut_u][c] += system[idx][c];
            m[ut_v][c] += system[idx][c];
          }
        }
    }
    idx = edge_rows;
    for (int u = 0; u < n; ++u)
      for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j, ++idx) {
          const long ut_i = edge_rows + same_rows + long(u) * k + (i - 1);
          const long ut_j = edge_rows + same_rows + long(u) * k + (j - 1);
          for (std::size_t c = 0; c < m[idx].size(); ++c) {
            m[ut_i][c] += system[idx][c];
            m[ut_j][c] += system[idx][c];
          }
        }
  }

  cert.triangular_after_row_ops = cert.square;
  if (cert.square) {
    for (long r = 0; r < cert.rows && cert.triangular_after_row_ops; ++r) {
      if (m[r][r] == 0) cert.triangular_after_row_ops = false;
      for (long c = 0; c < r; ++c)
        if (m[r][c] != 0) {
          cert.triangular_after_row_ops = false;
          break;
        }
    }
  }
  cert.diagonal_blocks = {
      "-Id over A entries (game-edge rows)",
      "-Id over R (same-player rows)",
      "2*deg(u)*Id over Y ((u,i)-t rows after the w-hat op)",
      "2|E| over A0 (s-t row)",
      "Id over W (s-(u,i) rows)"};

  cert.pass = cert.square && cert.integral && cert.full_rank;
  cert.detail = cert.pass ? "square, integer, full-rank"
                          : "certificate failed (degenerate topology or bug)";
  return cert;
}

}  // namespace netcoord
