// Command-line front end: end-to-end simulations, parameter sweeps, the
// cyclic joint-encoding demo, and bound evaluation. Reports are JSON (one
// experiment) or CSV (sweeps). Exit codes: 0 success, 1 decode or
// verification failure, 2 configuration error.

#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "altic/altic.hpp"
#include "altic/report_io.hpp"
#include "altic/sweep.hpp"

namespace {

using altic::ConfigError;
using altic::Rational;

// ---- config file -----------------------------------------------------
// Flat "key = value" lines, '#' starts a comment. Keys are the long option
// names without the leading dashes. Command-line flags win over the file.

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = strip(stripped.substr(0, eq));
    const std::string val = strip(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    if (!kv.emplace(key, val).second) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": duplicate key " + key);
    }
  }
  return kv;
}

// Options are bound as raw strings; config-file merging happens before
// conversion so both sources go through the same parsers.
struct RawOption {
  std::string key;  // long name without dashes
  std::string* slot;
  CLI::Option* opt = nullptr;
};

class OptionSet {
 public:
  explicit OptionSet(CLI::App* sub) : sub_(sub) {}

  void add(const std::string& key, std::string* slot, const std::string& help) {
    CLI::Option* opt = sub_->add_option("--" + key, *slot, help);
    opt->capture_default_str();
    raw_.push_back(RawOption{key, slot, opt});
  }

  // Fills option slots from the config file for flags not given on the
  // command line; rejects keys that name no option of this subcommand.
  void apply_config(const std::map<std::string, std::string>& kv) const {
    std::set<std::string> known;
    for (const RawOption& r : raw_) known.insert(r.key);
    for (const auto& [k, v] : kv) {
      if (!known.count(k)) {
        throw ConfigError("config key '" + k + "' is not an option of '" +
                          sub_->get_name() + "'");
      }
    }
    for (const RawOption& r : raw_) {
      if (r.opt->count() == 0) {
        if (const auto it = kv.find(r.key); it != kv.end()) *r.slot = it->second;
      }
    }
  }

 private:
  CLI::App* sub_;
  std::vector<RawOption> raw_;
};

// ---- conversions ------------------------------------------------------

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    if (s.empty() || s[0] == '-') throw ConfigError("");
    const std::uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw ConfigError("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid " + what + ": '" + s + "'");
  }
}

std::uint32_t parse_u32(const std::string& s, const std::string& what) {
  const std::uint64_t v = parse_u64(s, what);
  if (v > 0xffffffffull) throw ConfigError(what + " out of range: " + s);
  return static_cast<std::uint32_t>(v);
}

altic::StateDistribution parse_dist(const std::string& text) {
  if (text == "uniform") return altic::StateDistribution::uniform();
  if (text == "max") return altic::StateDistribution::capacity_maximizing();
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != altic::kNumStates) {
    throw ConfigError("dist needs 7 comma-separated probabilities, got " +
                      std::to_string(parts.size()));
  }
  altic::StateDistribution d;
  for (int i = 0; i < altic::kNumStates; ++i) {
    d.prob[i] = Rational::parse(parts[i]);
  }
  d.validate();
  return d;
}

std::string double_str(double v) { return altic::Json(v).dump(); }

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + out_path);
  out << text;
}

unsigned thread_budget(std::size_t jobs) {
  unsigned t = 0;
  if (const char* env = std::getenv("SIM_THREADS"); env && *env) {
    t = parse_u32(env, "SIM_THREADS");
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  if (jobs > 0 && t > jobs) t = static_cast<unsigned>(jobs);
  return std::max(1u, t);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- subcommands ------------------------------------------------------

struct SimulateArgs {
  std::string p = "5";
  std::string dist = "uniform";
  std::string n = "0";
  std::string mode = "monte-carlo";
  std::string seed_trace = "1";
  std::string seed_channel = "2";
  std::string seed_msg = "3";
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  altic::ExperimentConfig cfg;
  cfg.p = parse_u32(a.p, "--p");
  cfg.dist = parse_dist(a.dist);
  cfg.n = parse_u64(a.n, "--n");
  cfg.mode = a.mode;
  cfg.seeds.trace = parse_u64(a.seed_trace, "--seed-trace");
  cfg.seeds.channel = parse_u64(a.seed_channel, "--seed-channel");
  cfg.seeds.message = parse_u64(a.seed_msg, "--seed-msg");
  cfg.threads = 1;

  const altic::Field field(cfg.p);
  const auto t0 = std::chrono::steady_clock::now();
  altic::RateReport rep;
  if (cfg.mode == "monte-carlo") {
    rep = altic::run_end_to_end(cfg.dist, cfg.n, field, cfg.seeds);
  } else if (cfg.mode == "proportional") {
    rep = altic::run_proportional(cfg.dist, cfg.n, field, cfg.seeds);
  } else {
    throw ConfigError("unknown mode '" + cfg.mode +
                      "' (expected monte-carlo or proportional)");
  }
  const altic::ReportRecord rec{1, cfg, rep, ms_since(t0)};
  write_output(a.out, altic::report_to_json(rec).dump(2) + "\n");
  return rep.decoded() ? 0 : 1;
}

struct SweepArgs {
  SimulateArgs sim;
  std::string vary = "G";
  std::string from = "0";
  std::string to = "1/2";
  std::string steps = "11";
};

int run_sweep(const SweepArgs& a) {
  const std::uint32_t p = parse_u32(a.sim.p, "--p");
  const altic::StateDistribution base = parse_dist(a.sim.dist);
  const std::size_t n = parse_u64(a.sim.n, "--n");
  const altic::SimSeeds seeds{parse_u64(a.sim.seed_trace, "--seed-trace"),
                              parse_u64(a.sim.seed_channel, "--seed-channel"),
                              parse_u64(a.sim.seed_msg, "--seed-msg")};
  if (a.sim.mode != "monte-carlo") {
    throw ConfigError("sweep supports monte-carlo mode only");
  }
  altic::SweepSpec spec;
  spec.vary = altic::state_from_name(a.vary);
  spec.from = Rational::parse(a.from);
  spec.to = Rational::parse(a.to);
  const std::uint64_t steps = parse_u64(a.steps, "--steps");
  if (steps == 0 || steps > 100000) {
    throw ConfigError("--steps must be between 1 and 100000");
  }
  spec.steps = static_cast<int>(steps);

  const altic::Field field(p);
  const auto tvals = altic::sweep_grid_values(spec);
  const auto grid = altic::sweep_grid(base, spec);

  // Rows are independent; each derives its own seeds from the base seeds
  // and its index, so results do not depend on the thread count.
  std::vector<altic::RateReport> rows(grid.size());
  const unsigned nthreads = thread_budget(grid.size());
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < grid.size(); i += nthreads) {
          const altic::SimSeeds row_seeds{altic::derive_seed(seeds.trace, i),
                                          altic::derive_seed(seeds.channel, i),
                                          altic::derive_seed(seeds.message, i)};
          rows[i] = altic::run_end_to_end(grid[i], n, field, row_seeds);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ostringstream csv;
  csv << "step,t,dist_A,dist_B,dist_C,dist_D,dist_E,dist_F,dist_G,lambda,"
         "capacity_spcu,capacity_bits,achieved_spcu,achieved_bits,"
         "genie_b_spcu,genie_rest_spcu,baseline_spcu,uses,blocks,"
         "fallback_uses,symbols,decoded\n";
  bool all_decoded = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const altic::RateReport& r = rows[i];
    csv << i << ',' << tvals[i].str();
    for (const Rational& q : grid[i].prob) csv << ',' << q.str();
    csv << ',' << altic::lambda_of(grid[i]).str() << ','
        << r.capacity_spcu.str() << ',' << double_str(r.capacity_bits) << ','
        << r.achieved_spcu.str() << ',' << double_str(r.achieved_bits) << ','
        << r.genie_b_spcu.str() << ',' << r.genie_rest_spcu.str() << ','
        << r.baseline_spcu.str() << ',' << r.uses << ',' << r.blocks << ','
        << r.fallback_uses << ',' << r.symbols << ','
        << (r.decoded() ? 1 : 0) << '\n';
    all_decoded = all_decoded && r.decoded();
  }
  write_output(a.sim.out, csv.str());
  return all_decoded ? 0 : 1;
}

struct JessArgs {
  std::string p = "5";
  std::string seed = "1";
  std::string out;
};

int run_jess(const JessArgs& a) {
  const std::uint32_t p = parse_u32(a.p, "--p");
  const std::uint64_t seed = parse_u64(a.seed, "--seed");
  const altic::Field field(p);
  const auto t0 = std::chrono::steady_clock::now();
  const altic::JessReport rep = altic::cyclic_jess_demo(field, seed);
  write_output(a.out,
               altic::jess_report_to_json(p, seed, rep, ms_since(t0)).dump(2) +
                   "\n");
  return rep.decoded_all ? 0 : 1;
}

struct BoundsArgs {
  std::string p = "5";
  std::string dist = "uniform";
  std::string out;
};

int run_bounds(const BoundsArgs& a) {
  const std::uint32_t p = parse_u32(a.p, "--p");
  const altic::StateDistribution dist = parse_dist(a.dist);
  altic::Field field(p);  // validates p
  write_output(a.out, altic::bounds_report_to_json(p, dist).dump(2) + "\n");
  return 0;
}

constexpr const char* kDistHelp =
    "state probabilities: 7 comma-separated rationals (e.g. "
    "2/9,2/9,1/9,1/9,1/9,1/9,1/9), or 'uniform' or 'max'";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "3-user interference channel with alternating connectivity: joint "
      "coding across states, converse bounds, and demos over GF(p)"};
  app.require_subcommand(1);

  std::string config_path;

  SimulateArgs sim;
  CLI::App* sub_sim = app.add_subcommand(
      "simulate", "run one end-to-end experiment and emit a JSON report");
  sub_sim->add_option("--config", config_path,
                      "flat key=value file; flags override it");
  OptionSet sim_opts(sub_sim);
  struct Bind {
    const char* key;
    std::string* slot;
    const char* help;
  };
  const Bind sim_binds[] = {
      {"p", &sim.p, "field order, an odd prime >= 3"},
      {"dist", &sim.dist, kDistHelp},
      {"n", &sim.n, "number of channel uses"},
      {"mode", &sim.mode, "monte-carlo (sampled trace) or proportional"},
      {"seed-trace", &sim.seed_trace, "seed for the connectivity trace"},
      {"seed-channel", &sim.seed_channel, "seed for channel coefficients"},
      {"seed-msg", &sim.seed_msg, "seed for message symbols"},
      {"out", &sim.out, "output path (default stdout)"},
  };
  for (const Bind& b : sim_binds) sim_opts.add(b.key, b.slot, b.help);

  SweepArgs sweep;
  CLI::App* sub_sweep = app.add_subcommand(
      "sweep", "vary one state's probability over a grid and emit CSV");
  sub_sweep->add_option("--config", config_path,
                        "flat key=value file; flags override it");
  OptionSet sweep_opts(sub_sweep);
  const Bind sweep_binds[] = {
      {"p", &sweep.sim.p, "field order, an odd prime >= 3"},
      {"dist", &sweep.sim.dist, kDistHelp},
      {"n", &sweep.sim.n, "channel uses per grid point"},
      {"mode", &sweep.sim.mode, "monte-carlo (the only sweep mode)"},
      {"seed-trace", &sweep.sim.seed_trace, "base seed for traces"},
      {"seed-channel", &sweep.sim.seed_channel, "base seed for coefficients"},
      {"seed-msg", &sweep.sim.seed_msg, "base seed for messages"},
      {"out", &sweep.sim.out, "output path (default stdout)"},
      {"vary", &sweep.vary, "state whose probability is swept (A..G)"},
      {"from", &sweep.from, "first grid value (rational in [0,1])"},
      {"to", &sweep.to, "last grid value (rational in [0,1])"},
      {"steps", &sweep.steps, "number of grid points"},
  };
  for (const Bind& b : sweep_binds) sweep_opts.add(b.key, b.slot, b.help);

  JessArgs jess;
  CLI::App* sub_jess = app.add_subcommand(
      "jess-demo",
      "cyclic joint-encoding demo: 9 symbols over 4 uses, JSON report");
  OptionSet jess_opts(sub_jess);
  const Bind jess_binds[] = {
      {"p", &jess.p, "field order, an odd prime >= 3"},
      {"seed", &jess.seed, "seed for coefficients and messages"},
      {"out", &jess.out, "output path (default stdout)"},
  };
  for (const Bind& b : jess_binds) jess_opts.add(b.key, b.slot, b.help);

  BoundsArgs bounds;
  CLI::App* sub_bounds = app.add_subcommand(
      "bounds", "evaluate capacity and converse bounds for a distribution");
  OptionSet bounds_opts(sub_bounds);
  const Bind bounds_binds[] = {
      {"p", &bounds.p, "field order, an odd prime >= 3"},
      {"dist", &bounds.dist, kDistHelp},
      {"out", &bounds.out, "output path (default stdout)"},
  };
  for (const Bind& b : bounds_binds) bounds_opts.add(b.key, b.slot, b.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      const auto kv = load_config_file(config_path);
      if (sub_sim->parsed()) sim_opts.apply_config(kv);
      if (sub_sweep->parsed()) sweep_opts.apply_config(kv);
    }
    if (sub_sim->parsed()) return run_simulate(sim);
    if (sub_sweep->parsed()) return run_sweep(sweep);
    if (sub_jess->parsed()) return run_jess(jess);
    if (sub_bounds->parsed()) return run_bounds(bounds);
    return 2;
  } catch (const altic::SingularSystem& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return 1;
  } catch (const altic::DecodeFailure& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return 1;
  } catch (const altic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
