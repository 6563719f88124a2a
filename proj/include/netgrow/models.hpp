#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netgrow/rate.hpp"
#include "netgrow/steady.hpp"

namespace netgrow {

// How the stochastic generator grows the network for a given model.
enum class GenerativeRule {
  DegreeProportional,    // ba: m distinct targets, weight k
  UniformTargets,        // random: m distinct uniform targets
  ShiftedLinearWeights,  // ll1: m distinct targets, weight (1-p)k + p
  PerLinkMixture,        // ll2: each link preferential w.p. 1-p, else uniform
  CliqueCompletion,      // collab: T-1 targets, then complete the T-clique
  CliqueRegistry,        // zrz: join a uniformly chosen registered m-clique
  GroupAggregation,      // kk: new group w.p. 1-p, else grow a group by size
  AttractivenessInflow,  // dms: m directed links, target weight H + in-degree
  LoopyPreferential,     // lcd: m sequential edges, self-loops allowed
};

struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;  // resolved values, defaults included
  BirthDistribution birth;
  StepRate rate;
  AffineLimit limit;
  std::optional<double> expected_gamma;  // absent for geometric limits
  bool multiple_links = false;
  GenerativeRule rule = GenerativeRule::DegreeProportional;
};

namespace detail {

inline void require_int_at_least(double v, double lo, const char* name) {
  if (!(v >= lo) || v != std::floor(v))
    throw std::invalid_argument(std::string(name) + " must be an integer >= " +
                                std::to_string(static_cast<long long>(lo)));
}

}  // namespace detail

// Preferential attachment with m new edges per step. Each edge lands on a
// degree-k vertex with probability k / (2mt), so the per-step increment
// rate is k / (2t) for every m; the tail exponent is 3.
inline ModelSpec build_ba(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("ba: m must be >= 1");
  ModelSpec spec;
  spec.name = "ba";
  spec.params = {{"m", static_cast<double>(m)}};
  spec.birth = make_birth({{m, 1.0}});
  spec.rate = {[](std::int64_t t, std::int64_t k) {
                 return static_cast<double>(k) / (2.0 * static_cast<double>(t));
               },
               "k/(2t)"};
  spec.limit = {0.5, 0.0, m};
  spec.expected_gamma = 3.0;
  spec.rule = GenerativeRule::DegreeProportional;
  return spec;
}

// Uniformly random attachment; the limit is geometric, not scale-free.
inline ModelSpec build_random(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("random: m must be >= 1");
  ModelSpec spec;
  spec.name = "random";
  spec.params = {{"m", static_cast<double>(m)}};
  spec.birth = make_birth({{m, 1.0}});
  const double md = static_cast<double>(m);
  spec.rate = {[md](std::int64_t t, std::int64_t) { return md / static_cast<double>(t); },
               "m/t"};
  spec.limit = {0.0, md, m};
  spec.rule = GenerativeRule::UniformTargets;
  return spec;
}

// Mixed attachment with target weight (1-p)k + p. p = 0 reproduces ba
// exactly; p = 1 is uniform attachment and the limit turns geometric.
inline ModelSpec build_ll1(std::int64_t m, double p) {
  if (m < 1) throw std::invalid_argument("ll1: m must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ll1: p must lie in [0,1]");
  ModelSpec spec;
  spec.name = "ll1";
  spec.params = {{"m", static_cast<double>(m)}, {"p", p}};
  spec.birth = make_birth({{m, 1.0}});
  const double md = static_cast<double>(m);
  const double norm = (1.0 - p) * 2.0 * md + p;
  spec.rate = {[md, p, norm](std::int64_t t, std::int64_t k) {
                 return md * ((1.0 - p) * static_cast<double>(k) + p) /
                        (norm * static_cast<double>(t));
               },
               "m((1-p)k+p)/(((1-p)2m+p)t)"};
  spec.limit = {md * (1.0 - p) / norm, md * p / norm, m};
  if (p < 1.0) spec.expected_gamma = 3.0 + p / (md * (1.0 - p));
  spec.rule = GenerativeRule::ShiftedLinearWeights;
  return spec;
}

// Per-link mixture: each of the m links is preferential with probability
// 1-p and uniform otherwise. m_0 and N_0 are the seed vertex count and seed
// total degree entering the finite-t rate.
inline ModelSpec build_ll2(std::int64_t m, double p, std::int64_t m0, std::int64_t N0) {
  if (m < 1) throw std::invalid_argument("ll2: m must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ll2: p must lie in [0,1]");
  if (m0 < 1) throw std::invalid_argument("ll2: m0 must be >= 1");
  if (N0 < 0) throw std::invalid_argument("ll2: N0 must be >= 0");
  ModelSpec spec;
  spec.name = "ll2";
  spec.params = {{"m", static_cast<double>(m)},
                 {"p", p},
                 {"m0", static_cast<double>(m0)},
                 {"N0", static_cast<double>(N0)}};
  spec.birth = make_birth({{m, 1.0}});
  const double md = static_cast<double>(m);
  const double m0d = static_cast<double>(m0);
  const double n0d = static_cast<double>(N0);
  spec.rate = {[md, p, m0d, n0d](std::int64_t t, std::int64_t k) {
                 const double td = static_cast<double>(t);
                 return md * (1.0 - p) * static_cast<double>(k) / (2.0 * md * td + n0d) +
                        md * p / (td + m0d);
               },
               "m(1-p)k/(2mt+N0) + mp/(t+m0)"};
  spec.limit = {(1.0 - p) / 2.0, md * p, m};
  if (p < 1.0) spec.expected_gamma = 1.0 + 2.0 / (1.0 - p);
  spec.rule = GenerativeRule::PerLinkMixture;
  return spec;
}

// Collaboration growth: a new vertex joins T-1 degree-proportional partners
// and the whole T-set is completed into a clique. New vertices are born with
// degree T-1; k_0 is the seed network's total degree.
inline ModelSpec build_collab(std::int64_t T, std::int64_t m0, std::int64_t k0) {
  if (T < 2) throw std::invalid_argument("collab: T must be >= 2");
  if (m0 < T - 1) throw std::invalid_argument("collab: m0 must be >= T-1");
  if (k0 < 0) throw std::invalid_argument("collab: k0 must be >= 0");
  ModelSpec spec;
  spec.name = "collab";
  spec.params = {{"T", static_cast<double>(T)},
                 {"m0", static_cast<double>(m0)},
                 {"k0", static_cast<double>(k0)}};
  spec.birth = make_birth({{T - 1, 1.0}});
  const double Td = static_cast<double>(T);
  const double k0d = static_cast<double>(k0);
  spec.rate = {[Td, k0d](std::int64_t t, std::int64_t k) {
                 return (Td - 1.0) * static_cast<double>(k) / (k0d + Td * static_cast<double>(t));
               },
               "(T-1)k/(k0+Tt)"};
  spec.limit = {(Td - 1.0) / Td, 0.0, T - 1};
  spec.expected_gamma = 1.0 + Td / (Td - 1.0);
  spec.rule = GenerativeRule::CliqueCompletion;
  return spec;
}

// Clique-joining growth: each step a registered m-clique is chosen uniformly
// and the new vertex connects to all of its members, spawning m fresh
// m-cliques. A vertex of degree k sits in (m-1)k - m(m-2) registered
// cliques, and the registry holds mt + 1 cliques at time t, so the scaled
// limit is F(k) = (m-1)k/m - (m-2).
inline ModelSpec build_zrz(std::int64_t m) {
  if (m < 3) throw std::invalid_argument("zrz: m must be >= 3");
  ModelSpec spec;
  spec.name = "zrz";
  spec.params = {{"m", static_cast<double>(m)}};
  spec.birth = make_birth({{m, 1.0}});
  const double md = static_cast<double>(m);
  spec.rate = {[md](std::int64_t t, std::int64_t k) {
                 return ((md - 1.0) * static_cast<double>(k) - md * (md - 2.0)) /
                        (md * static_cast<double>(t) + 1.0);
               },
               "((m-1)k - m(m-2))/(mt+1)"};
  spec.limit = {(md - 1.0) / md, -(md - 2.0), m};
  spec.expected_gamma = 1.0 + md / (md - 1.0);
  spec.rule = GenerativeRule::CliqueRegistry;
  return spec;
}

// Group aggregation: with probability p the new element joins an existing
// group chosen proportionally to size, otherwise it founds a new group.
// "Degree" is group size; steps that join leave a permanent size-0 chain,
// so births are d_0 = p, d_1 = 1-p and state 0 is absorbing.
inline ModelSpec build_kk(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("kk: p must lie in (0,1)");
  ModelSpec spec;
  spec.name = "kk";
  spec.params = {{"p", p}};
  spec.birth = make_birth({{0, p}, {1, 1.0 - p}});
  spec.rate = {[p](std::int64_t t, std::int64_t k) {
                 return p * static_cast<double>(k) / static_cast<double>(t);
               },
               "p*k/t"};
  spec.limit = {p, 0.0, 0};
  spec.expected_gamma = 1.0 + 1.0 / p;
  spec.rule = GenerativeRule::GroupAggregation;
  return spec;
}

// Directed growth with attractiveness: m links per step point to sites with
// weight H + in-degree. The chain tracks in-degree, so births sit at 0 and
// simultaneous multi-hits are possible. H = 0 freezes every new site at
// in-degree 0 (F(0) = 0 with all mass born there), so it is rejected unless
// explicitly forced.
inline ModelSpec build_dms(std::int64_t m, double H, bool allow_zero_attractiveness = false) {
  if (m < 1) throw std::invalid_argument("dms: m must be >= 1");
  if (!(H >= 0.0)) throw std::invalid_argument("dms: H must be >= 0");
  if (H == 0.0 && !allow_zero_attractiveness)
    throw std::invalid_argument("dms: H = 0 never grows a fresh site; pass the force flag to allow it");
  ModelSpec spec;
  spec.name = "dms";
  spec.params = {{"m", static_cast<double>(m)}, {"H", H}};
  spec.birth = make_birth({{0, 1.0}});
  const double md = static_cast<double>(m);
  spec.rate = {[md, H](std::int64_t t, std::int64_t k) {
                 return md * (static_cast<double>(k) + H) / ((md + H) * static_cast<double>(t));
               },
               "m(k+H)/((m+H)t)"};
  spec.limit = {md / (md + H), md * H / (md + H), 0};
  spec.expected_gamma = 2.0 + H / md;
  spec.multiple_links = true;
  spec.rule = GenerativeRule::AttractivenessInflow;
  return spec;
}

// Preferential attachment allowing loops and multiple edges: the m edges of
// a new vertex are placed one at a time, with the endpoint proportional to
// current degree including the new vertex's own dangling half-edge. Same
// steady distribution as ba.
inline ModelSpec build_lcd(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("lcd: m must be >= 1");
  ModelSpec spec;
  spec.name = "lcd";
  spec.params = {{"m", static_cast<double>(m)}};
  spec.birth = make_birth({{m, 1.0}});
  const double md = static_cast<double>(m);
  spec.rate = {[md](std::int64_t t, std::int64_t k) {
                 return md * static_cast<double>(k) / (2.0 * md * static_cast<double>(t) + md);
               },
               "mk/(2mt+m)"};
  spec.limit = {0.5, 0.0, m};
  spec.expected_gamma = 3.0;
  spec.multiple_links = true;
  spec.rule = GenerativeRule::LoopyPreferential;
  return spec;
}

struct ParamInfo {
  std::string name;
  bool required = false;
  double def = 0.0;           // meaningful when !required
  std::string constraint;
};

struct ModelInfo {
  std::string name;
  std::string summary;
  std::vector<ParamInfo> params;
  std::string gamma_formula;
  bool multiple_links = false;
};

inline const std::vector<ModelInfo>& list_models() {
  static const std::vector<ModelInfo> registry = {
      {"ba", "preferential attachment, m edges per step",
       {{"m", false, 1, "integer >= 1"}}, "3", false},
      {"random", "uniformly random attachment, m edges per step",
       {{"m", false, 1, "integer >= 1"}}, "none (geometric)", false},
      {"ll1", "mixed attachment with weight (1-p)k + p",
       {{"m", false, 1, "integer >= 1"}, {"p", false, 0.5, "in [0,1]"}},
       "3 + p/(m(1-p)) for p < 1", false},
      {"ll2", "per-link mixture: preferential w.p. 1-p, uniform w.p. p",
       {{"m", false, 1, "integer >= 1"},
        {"p", false, 0.5, "in [0,1]"},
        {"m0", false, 0, "integer >= 1 (default m+1)"},
        {"N0", false, 0, "integer >= 0 (default seed total degree)"}},
       "1 + 2/(1-p) for p < 1", false},
      {"collab", "new vertex joins T-1 partners, T-set completed to a clique",
       {{"T", false, 2, "integer >= 2"},
        {"m0", false, 0, "integer >= T-1 (default T)"},
        {"k0", false, 0, "integer >= 0 (default m0(m0-1))"}},
       "1 + T/(T-1)", false},
      {"zrz", "new vertex joins every member of a uniformly chosen m-clique",
       {{"m", false, 3, "integer >= 3"}}, "1 + m/(m-1)", false},
      {"kk", "group aggregation; degree = group size",
       {{"p", false, 0.5, "in (0,1)"}}, "1 + 1/p", false},
      {"dms", "m directed links per step, target weight H + in-degree",
       {{"m", false, 1, "integer >= 1"}, {"H", false, 1, "real > 0"}},
       "2 + H/m", true},
      {"lcd", "preferential attachment with loops and multi-edges",
       {{"m", false, 1, "integer >= 1"}}, "3", true},
  };
  return registry;
}

// Build a model from its CLI vocabulary name and a parameter map, applying
// per-model defaults and rejecting unknown keys.
inline ModelSpec build_model(const std::string& name,
                             const std::map<std::string, double>& given) {
  const ModelInfo* info = nullptr;
  for (const auto& entry : list_models())
    if (entry.name == name) info = &entry;
  if (info == nullptr) throw std::invalid_argument("unknown model '" + name + "'");

  for (const auto& [key, value] : given) {
    (void)value;
    bool known = false;
    for (const auto& p : info->params) known |= (p.name == key);
    if (!known) {
      std::string allowed;
      for (const auto& p : info->params) allowed += " --" + p.name;
      throw std::invalid_argument("model '" + name + "' does not take parameter '" + key +
                                  "'; schema:" + (allowed.empty() ? " (none)" : allowed));
    }
  }
  auto get = [&given](const std::string& key, double def) {
    auto it = given.find(key);
    return it == given.end() ? def : it->second;
  };

  if (name == "ba" || name == "random" || name == "zrz" || name == "lcd") {
    const double def = (name == "zrz") ? 3 : 1;
    const double m = get("m", def);
    detail::require_int_at_least(m, name == "zrz" ? 3 : 1, "m");
    const auto mi = static_cast<std::int64_t>(m);
    if (name == "ba") return build_ba(mi);
    if (name == "random") return build_random(mi);
    if (name == "zrz") return build_zrz(mi);
    return build_lcd(mi);
  }
  if (name == "ll1") {
    const double m = get("m", 1);
    detail::require_int_at_least(m, 1, "m");
    return build_ll1(static_cast<std::int64_t>(m), get("p", 0.5));
  }
  if (name == "ll2") {
    const double m = get("m", 1);
    detail::require_int_at_least(m, 1, "m");
    const auto mi = static_cast<std::int64_t>(m);
    // Defaults mirror the simulator's seed: a ring of m+1 vertices
    // (a single edge when m = 1).
    const std::int64_t seed_vertices = mi + 1;
    const std::int64_t seed_total_degree = (seed_vertices == 2) ? 2 : 2 * seed_vertices;
    const double m0 = get("m0", static_cast<double>(seed_vertices));
    const double N0 = get("N0", static_cast<double>(seed_total_degree));
    detail::require_int_at_least(m0, 1, "m0");
    detail::require_int_at_least(N0, 0, "N0");
    return build_ll2(mi, get("p", 0.5), static_cast<std::int64_t>(m0),
                     static_cast<std::int64_t>(N0));
  }
  if (name == "collab") {
    const double T = get("T", 2);
    detail::require_int_at_least(T, 2, "T");
    const auto Ti = static_cast<std::int64_t>(T);
    const double m0 = get("m0", static_cast<double>(Ti));
    detail::require_int_at_least(m0, 1, "m0");
    const auto m0i = static_cast<std::int64_t>(m0);
    const double k0 = get("k0", static_cast<double>(m0i * (m0i - 1)));
    detail::require_int_at_least(k0, 0, "k0");
    return build_collab(Ti, m0i, static_cast<std::int64_t>(k0));
  }
  if (name == "kk") return build_kk(get("p", 0.5));
  // dms
  const double m = get("m", 1);
  detail::require_int_at_least(m, 1, "m");
  return build_dms(static_cast<std::int64_t>(m), get("H", 1.0));
}

}  // namespace netgrow
