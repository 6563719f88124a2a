// Command-line front end: exact steady distributions, master-equation
// evolution, stochastic growth, and cross-validation for the model zoo.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "netgrow/analyze.hpp"
#include "netgrow/master.hpp"
#include "netgrow/models.hpp"
#include "netgrow/simulate.hpp"
#include "netgrow/steady.hpp"
#include "netgrow/version.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitThreshold = 4;

std::string sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct Cfg {
  std::string command;
  std::string model;
  std::map<std::string, double> params;  // only explicitly provided ones
  std::int64_t k_max = 10000;
  std::int64_t steps = 10000;
  std::int64_t N = 100000;
  std::uint64_t seed = 1;
  std::int64_t n_trials = 1;
  std::int64_t fit_lo = 50;
  std::int64_t fit_hi = 500;
  std::int64_t k_min = 10;
  double tv_max = 0.01;
  double gamma_tol = 0.1;
  bool self_check = false;
  std::string out;  // empty = stdout
  std::string format = "csv";
  std::string config_path;
  std::string sweep_param;
  std::string sweep_values;
};

json config_echo(const Cfg& cfg, const netgrow::ModelSpec* spec) {
  json j;
  j["command"] = cfg.command;
  if (spec != nullptr) {
    j["model"] = spec->name;
    json params;
    for (const auto& [k, v] : spec->params) params[k] = v;
    j["params"] = params;
  } else if (!cfg.model.empty()) {
    j["model"] = cfg.model;
  }
  if (cfg.command == "exact" || cfg.command == "evolve" || cfg.command == "compare" ||
      cfg.command == "sweep")
    j["k_max"] = cfg.k_max;
  if (cfg.command == "evolve") j["steps"] = cfg.steps;
  if (cfg.command == "simulate" || cfg.command == "compare") {
    j["N"] = cfg.N;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.n_trials;
  }
  if (cfg.command == "compare" || cfg.command == "sweep") {
    j["fit_lo"] = cfg.fit_lo;
    j["fit_hi"] = cfg.fit_hi;
  }
  if (cfg.command == "compare") {
    j["k_min"] = cfg.k_min;
    j["tv_max"] = cfg.tv_max;
    j["gamma_tol"] = cfg.gamma_tol;
    j["self"] = cfg.self_check;
  }
  if (cfg.command == "sweep") {
    j["param"] = cfg.sweep_param;
    j["values"] = cfg.sweep_values;
  }
  j["format"] = cfg.format;
  return j;
}

json provenance(const Cfg& cfg) {
  json j;
  j["rng"] = netgrow::Rng::id();
  j["seed"] = cfg.seed;
  j["version"] = netgrow::kVersion;
  return j;
}

// Resolves --out against NETGROW_OUT_DIR for relative paths; empty = stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    resolved_ = path;
    const char* dir = std::getenv("NETGROW_OUT_DIR");
    if (dir != nullptr && *dir != '\0' && path.front() != '/')
      resolved_ = std::string(dir) + "/" + path;
    file_.open(resolved_, std::ios::binary);
    if (!file_) throw std::invalid_argument("cannot open output file '" + resolved_ + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::string resolved_;
  std::ofstream file_;
};

netgrow::ModelSpec build_spec(const Cfg& cfg) {
  if (cfg.model.empty()) throw std::invalid_argument("--model is required");
  return netgrow::build_model(cfg.model, cfg.params);
}

int cmd_models(const Cfg&) {
  std::printf("%-8s %-12s %-22s %-6s %s\n", "name", "multi-link", "gamma", "", "parameters");
  for (const auto& info : netgrow::list_models()) {
    std::string params;
    for (const auto& p : info.params) {
      if (!params.empty()) params += ", ";
      params += p.name + " (" + p.constraint + ")";
    }
    std::printf("%-8s %-12s %-22s %-6s %s\n", info.name.c_str(),
                info.multiple_links ? "yes" : "no", info.gamma_formula.c_str(), "",
                params.c_str());
  }
  return kExitOk;
}

int cmd_exact(const Cfg& cfg) {
  const netgrow::ModelSpec spec = build_spec(cfg);
  const auto rec = netgrow::steady_by_recurrence(spec.birth, spec.limit, cfg.k_max);
  const netgrow::ChainClass cls = netgrow::classify(spec.limit.A, spec.limit.B);
  std::optional<netgrow::DegreeDistribution> closed;
  if (cls == netgrow::ChainClass::ScaleFree)
    closed = netgrow::steady_closed_form_affine(spec.birth, spec.limit, cfg.k_max);

  Output out(cfg.out);
  std::ostream& os = out.stream();
  json tail;
  tail["class"] = netgrow::to_string(cls);
  if (rec.tail) {
    if (rec.tail->gamma) tail["gamma"] = *rec.tail->gamma;
    if (rec.tail->prefactor) tail["prefactor"] = *rec.tail->prefactor;
    tail["truncated_mass"] = rec.tail->truncated_mass;
  }
  if (cfg.format == "json") {
    json j;
    j["config"] = config_echo(cfg, &spec);
    j["provenance"] = provenance(cfg);
    j["tail"] = tail;
    json data = json::array();
    for (std::int64_t k = rec.m; k <= rec.k_max(); ++k) {
      json row;
      row["k"] = k;
      row["P_recurrence"] = rec.at(k);
      if (closed) {
        row["P_closed_form"] = closed->at(k);
        row["abs_diff"] = std::abs(rec.at(k) - closed->at(k));
      }
      data.push_back(row);
    }
    j["data"] = data;
    os << j.dump(2) << "\n";
  } else {
    os << "# " << config_echo(cfg, &spec).dump() << "\n";
    os << "# tail " << tail.dump() << "\n";
    os << (closed ? "k,P_recurrence,P_closed_form,abs_diff" : "k,P_recurrence") << "\n";
    for (std::int64_t k = rec.m; k <= rec.k_max(); ++k) {
      os << k << "," << sig12(rec.at(k));
      if (closed)
        os << "," << sig12(closed->at(k)) << "," << sig12(std::abs(rec.at(k) - closed->at(k)));
      os << "\n";
    }
  }
  return kExitOk;
}

std::vector<std::int64_t> decade_snapshots(std::int64_t steps) {
  std::vector<std::int64_t> times;
  for (std::int64_t t = 10; t < steps; t *= 10) times.push_back(t);
  times.push_back(steps);
  return times;
}

int cmd_evolve(const Cfg& cfg) {
  const netgrow::ModelSpec spec = build_spec(cfg);
  const auto limit = netgrow::steady_by_recurrence(spec.birth, spec.limit, cfg.k_max);
  const auto trace = netgrow::evolve(spec, cfg.steps, cfg.k_max, decade_snapshots(cfg.steps));
  const auto metrics = netgrow::convergence_metrics(trace, limit);

  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    json j;
    j["config"] = config_echo(cfg, &spec);
    j["provenance"] = provenance(cfg);
    json data = json::array();
    for (std::size_t i = 0; i < trace.snapshots.size(); ++i) {
      json row;
      row["t"] = trace.snapshots[i].t;
      row["tv_to_limit"] = metrics[i].second;
      row["P_m_t"] = trace.snapshots[i].p.front();
      data.push_back(row);
    }
    j["data"] = data;
    os << j.dump(2) << "\n";
  } else {
    os << "# " << config_echo(cfg, &spec).dump() << "\n";
    os << "t,tv_to_limit,P_m_t\n";
    for (std::size_t i = 0; i < trace.snapshots.size(); ++i)
      os << trace.snapshots[i].t << "," << sig12(metrics[i].second) << ","
         << sig12(trace.snapshots[i].p.front()) << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const Cfg& cfg) {
  const netgrow::ModelSpec spec = build_spec(cfg);
  const auto result = netgrow::trials(spec, cfg.N, cfg.seed, cfg.n_trials);
  const auto emp = netgrow::empirical_distribution(result);

  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    json j;
    j["config"] = config_echo(cfg, &spec);
    json prov = provenance(cfg);
    prov["rng"] = result.rng_id;
    j["provenance"] = prov;
    j["N"] = result.n_vertices;
    j["trials"] = result.n_trials;
    json data = json::array();
    for (const auto& [k, c] : result.histogram) {
      json row;
      row["k"] = k;
      row["count"] = c;
      row["p_hat"] = emp.at(k);
      data.push_back(row);
    }
    j["data"] = data;
    os << j.dump(2) << "\n";
  } else {
    os << "# " << config_echo(cfg, &spec).dump() << "\n";
    os << "k,count,p_hat\n";
    for (const auto& [k, c] : result.histogram)
      os << k << "," << c << "," << sig12(emp.at(k)) << "\n";
  }
  return kExitOk;
}

int cmd_compare(const Cfg& cfg) {
  const netgrow::ModelSpec spec = build_spec(cfg);
  netgrow::CompareReport report;
  std::optional<double> gamma_mle;
  if (cfg.self_check) {
    // Exact route against exact route: the recurrence versus the Gamma
    // closed form (or versus itself for geometric limits).
    const auto rec = netgrow::steady_by_recurrence(spec.birth, spec.limit, cfg.k_max);
    const auto other = (spec.limit.A > 0.0)
                           ? netgrow::steady_closed_form_affine(spec.birth, spec.limit, cfg.k_max)
                           : rec;
    report = netgrow::compare_report(rec, other, cfg.fit_lo, cfg.fit_hi);
  } else {
    const auto result = netgrow::trials(spec, cfg.N, cfg.seed, cfg.n_trials);
    const auto emp = netgrow::empirical_distribution(result);
    const std::int64_t k_top = std::max(emp.k_max(), cfg.k_max);
    const auto exact = netgrow::steady_by_recurrence(spec.birth, spec.limit, k_top);
    report = netgrow::compare_report(exact, emp, cfg.fit_lo, cfg.fit_hi);
    try {
      gamma_mle = netgrow::tail_exponent_mle(result.histogram, cfg.k_min);
    } catch (const std::exception&) {
      gamma_mle = std::nullopt;
    }
  }

  Output out(cfg.out);
  std::ostream& os = out.stream();
  json body;
  body["tv"] = report.tv;
  body["ks"] = report.ks;
  body["head_abs_err"] = report.head_abs_err;
  if (report.gamma_exact) body["gamma_exact"] = *report.gamma_exact;
  if (report.gamma_fit) body["gamma_fit"] = *report.gamma_fit;
  if (gamma_mle) body["gamma_mle"] = *gamma_mle;
  body["fit_lo"] = report.fit_lo;
  body["fit_hi"] = report.fit_hi;
  if (cfg.format == "json") {
    json j;
    j["config"] = config_echo(cfg, &spec);
    j["provenance"] = provenance(cfg);
    j["report"] = body;
    os << j.dump(2) << "\n";
  } else {
    os << "# " << config_echo(cfg, &spec).dump() << "\n";
    os << "tv,ks,head_abs_err,gamma_exact,gamma_fit,gamma_mle,fit_lo,fit_hi\n";
    os << sig12(report.tv) << "," << sig12(report.ks) << "," << sig12(report.head_abs_err)
       << "," << (report.gamma_exact ? sig12(*report.gamma_exact) : "") << ","
       << (report.gamma_fit ? sig12(*report.gamma_fit) : "") << ","
       << (gamma_mle ? sig12(*gamma_mle) : "") << "," << report.fit_lo << "," << report.fit_hi
       << "\n";
  }

  bool failed = report.tv > cfg.tv_max;
  if (gamma_mle && report.gamma_exact &&
      std::abs(*gamma_mle - *report.gamma_exact) > cfg.gamma_tol)
    failed = true;
  return failed ? kExitThreshold : kExitOk;
}

int cmd_sweep(const Cfg& cfg) {
  if (cfg.model.empty()) throw std::invalid_argument("--model is required");
  if (cfg.sweep_param.empty()) throw std::invalid_argument("sweep: --param is required");
  std::vector<double> values;
  std::string token;
  std::stringstream ss(cfg.sweep_values);
  while (std::getline(ss, token, ','))
    if (!token.empty()) values.push_back(std::stod(token));
  if (values.empty()) throw std::invalid_argument("sweep: --values grid is empty");

  struct Row {
    double value;
    std::optional<double> gamma_exact;
    std::optional<double> gamma_fit;
  };
  std::vector<Row> rows;
  const std::int64_t k_need = std::max(cfg.k_max, 2 * cfg.fit_hi);
  for (double v : values) {
    auto params = cfg.params;
    params[cfg.sweep_param] = v;
    const auto spec = netgrow::build_model(cfg.model, params);
    Row row;
    row.value = v;
    row.gamma_exact = spec.expected_gamma;
    if (spec.expected_gamma) {
      const auto dist = netgrow::steady_by_recurrence(spec.birth, spec.limit, k_need);
      row.gamma_fit = netgrow::tail_slope_loglog(dist, cfg.fit_lo, cfg.fit_hi);
    }
    rows.push_back(row);
  }

  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    json j;
    j["config"] = config_echo(cfg, nullptr);
    j["provenance"] = provenance(cfg);
    json data = json::array();
    for (const auto& row : rows) {
      json r;
      r["value"] = row.value;
      if (row.gamma_exact) r["gamma_exact"] = *row.gamma_exact;
      if (row.gamma_fit) r["gamma_fit"] = *row.gamma_fit;
      data.push_back(r);
    }
    j["data"] = data;
    os << j.dump(2) << "\n";
  } else {
    os << "# " << config_echo(cfg, nullptr).dump() << "\n";
    os << "value,gamma_exact,gamma_fit\n";
    for (const auto& row : rows)
      os << sig12(row.value) << "," << (row.gamma_exact ? sig12(*row.gamma_exact) : "") << ","
         << (row.gamma_fit ? sig12(*row.gamma_fit) : "") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netgrow: exact and simulated degree distributions of growing networks"};
  app.require_subcommand(1);

  Cfg cfg;
  struct ParamOpts {
    double m = 0, p = 0, T = 0, H = 0, m0 = 0, N0 = 0, k0 = 0;
    CLI::Option *om = nullptr, *op = nullptr, *oT = nullptr, *oH = nullptr, *om0 = nullptr,
                *oN0 = nullptr, *ok0 = nullptr;
  };
  std::map<std::string, ParamOpts> model_opts;

  auto add_common = [&](CLI::App* sub, bool with_model) {
    if (with_model) {
      sub->add_option("--model", cfg.model, "model name (see `netgrow models`)");
      auto& po = model_opts[sub->get_name()];
      po.om = sub->add_option("--m", po.m, "edges per step / clique size");
      po.op = sub->add_option("--p", po.p, "mixing probability");
      po.oT = sub->add_option("--T", po.T, "collaboration team size");
      po.oH = sub->add_option("--H", po.H, "initial attractiveness");
      po.om0 = sub->add_option("--m0", po.m0, "seed vertex count");
      po.oN0 = sub->add_option("--N0", po.N0, "seed total degree");
      po.ok0 = sub->add_option("--k0", po.k0, "seed total degree (collab)");
    }
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", cfg.config_path, "JSON config file; flags take precedence");
  };

  CLI::App* s_exact = app.add_subcommand("exact", "exact steady distribution, both routes");
  add_common(s_exact, true);
  s_exact->add_option("--k-max", cfg.k_max, "largest tabulated degree");

  CLI::App* s_evolve = app.add_subcommand("evolve", "finite-time master-equation iteration");
  add_common(s_evolve, true);
  s_evolve->add_option("--k-max", cfg.k_max, "largest tracked degree");
  s_evolve->add_option("--steps", cfg.steps, "evolution horizon T");

  CLI::App* s_sim = app.add_subcommand("simulate", "stochastic growth runs");
  add_common(s_sim, true);
  s_sim->add_option("--N", cfg.N, "vertices per run");
  s_sim->add_option("--seed", cfg.seed, "base seed");
  s_sim->add_option("--trials", cfg.n_trials, "independent runs (seeded seed+i)");

  CLI::App* s_cmp = app.add_subcommand("compare", "exact vs simulation agreement report");
  add_common(s_cmp, true);
  s_cmp->add_option("--k-max", cfg.k_max, "exact tabulation depth");
  s_cmp->add_option("--N", cfg.N, "vertices per run");
  s_cmp->add_option("--seed", cfg.seed, "base seed");
  s_cmp->add_option("--trials", cfg.n_trials, "independent runs");
  s_cmp->add_option("--fit-lo", cfg.fit_lo, "slope fit lower degree");
  s_cmp->add_option("--fit-hi", cfg.fit_hi, "slope fit upper degree");
  s_cmp->add_option("--k-min", cfg.k_min, "MLE tail cutoff");
  s_cmp->add_option("--tv-max", cfg.tv_max, "threshold: exit 4 if tv exceeds this");
  s_cmp->add_option("--gamma-tol", cfg.gamma_tol, "threshold: exit 4 if |mle-exact| exceeds this");
  s_cmp->add_flag("--self", cfg.self_check, "compare the two exact routes instead of a simulation");

  CLI::App* s_sweep = app.add_subcommand("sweep", "exponent versus parameter table");
  add_common(s_sweep, true);
  s_sweep->add_option("--k-max", cfg.k_max, "exact tabulation depth");
  s_sweep->add_option("--fit-lo", cfg.fit_lo, "slope fit lower degree");
  s_sweep->add_option("--fit-hi", cfg.fit_hi, "slope fit upper degree");
  s_sweep->add_option("--param", cfg.sweep_param, "parameter to sweep");
  s_sweep->add_option("--values", cfg.sweep_values, "comma-separated grid");

  CLI::App* s_models = app.add_subcommand("models", "list the model zoo");
  add_common(s_models, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();

  try {
    // Optional JSON config file: command-line flags win, file fills the rest.
    json conf;
    if (!cfg.config_path.empty()) {
      std::ifstream in(cfg.config_path);
      if (!in) throw std::invalid_argument("cannot read config file '" + cfg.config_path + "'");
      in >> conf;
    }
    auto fill = [&](const char* key, auto& field, std::size_t explicit_count) {
      if (explicit_count == 0 && conf.contains(key))
        field = conf[key].get<std::decay_t<decltype(field)>>();
    };
    if (cfg.command != "models") {
      auto& po = model_opts[cfg.command];
      if (po.om->count()) cfg.params["m"] = po.m;
      if (po.op->count()) cfg.params["p"] = po.p;
      if (po.oT->count()) cfg.params["T"] = po.T;
      if (po.oH->count()) cfg.params["H"] = po.H;
      if (po.om0->count()) cfg.params["m0"] = po.m0;
      if (po.oN0->count()) cfg.params["N0"] = po.N0;
      if (po.ok0->count()) cfg.params["k0"] = po.k0;
      fill("model", cfg.model, chosen->count("--model"));
      for (const char* key : {"m", "p", "T", "H", "m0", "N0", "k0"})
        if (cfg.params.find(key) == cfg.params.end() && conf.contains(key))
          cfg.params[key] = conf[key].get<double>();
      if (chosen->get_option_no_throw("--k-max"))
        fill("k_max", cfg.k_max, chosen->count("--k-max"));
      if (chosen->get_option_no_throw("--steps")) fill("steps", cfg.steps, chosen->count("--steps"));
      if (chosen->get_option_no_throw("--N")) fill("N", cfg.N, chosen->count("--N"));
      if (chosen->get_option_no_throw("--seed")) fill("seed", cfg.seed, chosen->count("--seed"));
      if (chosen->get_option_no_throw("--trials"))
        fill("trials", cfg.n_trials, chosen->count("--trials"));
      if (chosen->get_option_no_throw("--fit-lo")) fill("fit_lo", cfg.fit_lo, chosen->count("--fit-lo"));
      if (chosen->get_option_no_throw("--fit-hi")) fill("fit_hi", cfg.fit_hi, chosen->count("--fit-hi"));
      if (chosen->get_option_no_throw("--k-min")) fill("k_min", cfg.k_min, chosen->count("--k-min"));
      fill("out", cfg.out, chosen->count("--out"));
      fill("format", cfg.format, chosen->count("--format"));
      if (cfg.command == "sweep") {
        fill("param", cfg.sweep_param, chosen->count("--param"));
        fill("values", cfg.sweep_values, chosen->count("--values"));
      }
    }

    if (cfg.command == "models") return cmd_models(cfg);
    if (cfg.command == "exact") return cmd_exact(cfg);
    if (cfg.command == "evolve") return cmd_evolve(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    std::cerr << "error: unknown command\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
