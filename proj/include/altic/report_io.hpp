#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "bounds.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "jess.hpp"
#include "rational.hpp"
#include "simulation.hpp"

namespace altic {

// ordered_json keeps insertion order, so serialization is byte-stable.
using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::uint32_t p = 5;
  StateDistribution dist = StateDistribution::uniform();
  std::size_t n = 0;
  std::string mode = "monte-carlo";
  SimSeeds seeds;
  unsigned threads = 1;

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.p == b.p && a.dist.prob == b.dist.prob && a.n == b.n &&
           a.mode == b.mode && a.seeds.trace == b.seeds.trace &&
           a.seeds.channel == b.seeds.channel &&
           a.seeds.message == b.seeds.message && a.threads == b.threads;
  }
};

struct ReportRecord {
  int schema_version = 1;
  ExperimentConfig config;
  RateReport report;
  double wall_clock_ms = 0;

  friend bool operator==(const ReportRecord& a, const ReportRecord& b) {
    const RateReport &x = a.report, &y = b.report;
    return a.schema_version == b.schema_version && a.config == b.config &&
           a.wall_clock_ms == b.wall_clock_ms && x.uses == y.uses &&
           x.blocks == y.blocks && x.fallback_uses == y.fallback_uses &&
           x.symbols == y.symbols && x.achieved_spcu == y.achieved_spcu &&
           x.achieved_bits == y.achieved_bits &&
           x.capacity_spcu == y.capacity_spcu &&
           x.capacity_bits == y.capacity_bits &&
           x.genie_b_spcu == y.genie_b_spcu &&
           x.genie_rest_spcu == y.genie_rest_spcu &&
           x.baseline_spcu == y.baseline_spcu && x.verdicts == y.verdicts;
  }
};

inline Json rational_json(const Rational& r, double bits) {
  return Json{{"num", r.num()}, {"den", r.den()}, {"bits", bits}};
}

inline Json rational_json(const Rational& r) {
  return Json{{"num", r.num()}, {"den", r.den()}};
}

inline Rational rational_from_json(const Json& j) {
  return Rational(j.at("num").get<std::int64_t>(),
                  j.at("den").get<std::int64_t>());
}

inline Json dist_json(const StateDistribution& d) {
  Json arr = Json::array();
  for (const Rational& q : d.prob) arr.push_back(q.str());
  return arr;
}

inline StateDistribution dist_from_json(const Json& arr) {
  if (!arr.is_array() || arr.size() != kNumStates) {
    throw ConfigError("dist must be an array of 7 rationals");
  }
  StateDistribution d;
  for (int i = 0; i < kNumStates; ++i) {
    d.prob[i] = Rational::parse(arr.at(i).get<std::string>());
  }
  return d;
}

inline Json report_to_json(const ReportRecord& rec) {
  const ExperimentConfig& c = rec.config;
  const RateReport& r = rec.report;
  Json j;
  j["schema_version"] = rec.schema_version;
  j["config"] = Json{{"p", c.p},
                     {"dist", dist_json(c.dist)},
                     {"n", c.n},
                     {"mode", c.mode},
                     {"seeds",
                      Json{{"trace", c.seeds.trace},
                           {"channel", c.seeds.channel},
                           {"message", c.seeds.message}}},
                     {"threads", c.threads}};
  j["uses"] = r.uses;
  j["blocks"] = r.blocks;
  j["fallback_uses"] = r.fallback_uses;
  j["symbols"] = r.symbols;
  j["rate"] = rational_json(r.achieved_spcu, r.achieved_bits);
  j["capacity"] = rational_json(r.capacity_spcu, r.capacity_bits);
  j["bounds"] = Json::array(
      {Json{{"name", "genie_b"},
            {"num", r.genie_b_spcu.num()},
            {"den", r.genie_b_spcu.den()}},
       Json{{"name", "genie_rest"},
            {"num", r.genie_rest_spcu.num()},
            {"den", r.genie_rest_spcu.den()}},
       Json{{"name", "baseline_separate"},
            {"num", r.baseline_spcu.num()},
            {"den", r.baseline_spcu.den()}}});
  j["verdicts"] = Json::array({r.verdicts[0], r.verdicts[1], r.verdicts[2]});
  j["wall_clock_ms"] = rec.wall_clock_ms;
  return j;
}

inline ReportRecord report_from_json(const Json& j) {
  ReportRecord rec;
  rec.schema_version = j.at("schema_version").get<int>();
  const Json& c = j.at("config");
  rec.config.p = c.at("p").get<std::uint32_t>();
  rec.config.dist = dist_from_json(c.at("dist"));
  rec.config.n = c.at("n").get<std::size_t>();
  rec.config.mode = c.at("mode").get<std::string>();
  rec.config.seeds.trace = c.at("seeds").at("trace").get<std::uint64_t>();
  rec.config.seeds.channel = c.at("seeds").at("channel").get<std::uint64_t>();
  rec.config.seeds.message = c.at("seeds").at("message").get<std::uint64_t>();
  rec.config.threads = c.at("threads").get<unsigned>();

  RateReport& r = rec.report;
  r.uses = j.at("uses").get<std::size_t>();
  r.blocks = j.at("blocks").get<std::size_t>();
  r.fallback_uses = j.at("fallback_uses").get<std::size_t>();
  r.symbols = j.at("symbols").get<std::size_t>();
  r.achieved_spcu = rational_from_json(j.at("rate"));
  r.achieved_bits = j.at("rate").at("bits").get<double>();
  r.capacity_spcu = rational_from_json(j.at("capacity"));
  r.capacity_bits = j.at("capacity").at("bits").get<double>();
  for (const Json& b : j.at("bounds")) {
    const std::string name = b.at("name").get<std::string>();
    if (name == "genie_b") {
      r.genie_b_spcu = rational_from_json(b);
    } else if (name == "genie_rest") {
      r.genie_rest_spcu = rational_from_json(b);
    } else if (name == "baseline_separate") {
      r.baseline_spcu = rational_from_json(b);
    } else {
      throw ConfigError("unknown bound name in report: " + name);
    }
  }
  const Json& v = j.at("verdicts");
  for (int i = 0; i < 3; ++i) r.verdicts[i] = v.at(i).get<bool>();
  rec.wall_clock_ms = j.at("wall_clock_ms").get<double>();
  return rec;
}

inline Json jess_report_to_json(std::uint32_t p, std::uint64_t seed,
                                const JessReport& rep, double wall_ms) {
  const Field field(p);
  Json j;
  j["schema_version"] = 1;
  j["config"] = Json{{"p", p}, {"mode", "jess-demo"}, {"seed", seed}};
  j["symbols"] = rep.symbols;
  j["uses"] = rep.uses;
  j["rate"] = rational_json(rep.rate,
                            rep.rate.to_double() * field.bits_per_symbol());
  j["decoded"] = rep.decoded_all;
  j["decoded_without_resolver"] = rep.decoded_without_resolver;
  j["wall_clock_ms"] = wall_ms;
  return j;
}

inline Json bounds_report_to_json(std::uint32_t p,
                                  const StateDistribution& dist) {
  const Field field(p);
  const Rational lam = lambda_of(dist);
  Json j;
  j["schema_version"] = 1;
  j["config"] = Json{{"p", p}, {"dist", dist_json(dist)}, {"mode", "bounds"}};
  j["lambda"] = rational_json(lam);
  j["capacity"] = rational_json(sum_capacity_spcu(dist),
                                sum_capacity_bits(dist, field));
  j["bounds"] = Json::array(
      {Json{{"name", "genie_b"},
            {"num", genie_bound_b_spcu(dist).num()},
            {"den", genie_bound_b_spcu(dist).den()},
            {"bits", genie_bound_b_bits(dist, field)}},
       Json{{"name", "genie_rest"},
            {"num", genie_bound_rest_spcu(dist).num()},
            {"den", genie_bound_rest_spcu(dist).den()},
            {"bits", genie_bound_rest_bits(dist, field)}},
       Json{{"name", "combined"},
            {"num", combined_bound_spcu(dist).num()},
            {"den", combined_bound_spcu(dist).den()},
            {"bits", combined_bound_bits(dist, field)}},
       Json{{"name", "baseline_separate"},
            {"num", baseline_separate_spcu().num()},
            {"den", baseline_separate_spcu().den()},
            {"bits", baseline_separate_spcu().to_double() *
                         field.bits_per_symbol()}}});
  return j;
}

}  // namespace altic
