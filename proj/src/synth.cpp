#include "regimelens/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "regimelens/errors.hpp"

namespace regimelens {

namespace {

double raw_term_value(const std::vector<MonthlyRecord>& records, const Term& term,
                      std::size_t i) {
  switch (term.kind) {
    case Term::Kind::intercept:
      return 1.0;
    case Term::Kind::lagged:
      return records[i - static_cast<std::size_t>(term.lag)].value(term.var);
    case Term::Kind::dummy:
      return records[i].date < term.event ? 0.0 : 1.0;
    case Term::Kind::delta_quota:
      return records[i].n_quota - records[i - 1].n_quota;
  }
  return 0.0;
}

}  // namespace

MonthlySeries synthesize_series(const GeneratorConfig& config, std::uint64_t seed) {
  if (config.length == 0) throw ConfigError("generator length must be positive");
  if (config.spec.terms.size() != config.coefficients.size()) {
    throw ConfigError("coefficient list does not match generating spec");
  }
  config.spec.validate();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int warmup = config.spec.max_min_index();
  std::vector<MonthlyRecord> records;
  records.reserve(config.length);

  AuctionMonth month = config.start;
  double p_min_level = config.p_min_start;
  for (std::size_t t = 0; t < config.length; ++t) {
    while (std::find(config.skip.begin(), config.skip.end(), month) != config.skip.end()) {
      month = month.next();
    }

    MonthlyRecord r;
    r.date = month;
    p_min_level = std::max(1.0, p_min_level + config.p_min_walk_sd * gauss(rng));
    const double season =
        std::sin(2.0 * std::numbers::pi * static_cast<double>(month.month) / 12.0);
    r.n_quota = std::max(
        1.0, std::round(config.quota_base + config.quota_season_amp * season +
                        config.quota_sd * gauss(rng)));
    r.n_bidder = std::max(1.0, std::round(config.bidder_base + config.bidder_sd * gauss(rng)));

    const double noise = config.noise_sd * gauss(rng);
    double p_mean = 0;
    if (static_cast<int>(t) < warmup) {
      r.p_min = p_min_level;
      p_mean = p_min_level + 2000.0;
    } else {
      r.p_min = p_min_level;
      records.push_back(r);  // temporarily, so lag-0 terms see this row
      for (const auto& [term, coeff] : config.coefficients) {
        p_mean += coeff * raw_term_value(records, term, t);
      }
      for (const auto& brk : config.breaks) {
        if (!(month < brk.month)) {
          p_mean += brk.delta * raw_term_value(records, brk.term, t);
        }
      }
      p_mean += noise;
      records.pop_back();
    }
    r.p_mean = std::max(1.0, p_mean);
    r.p_min = std::min(r.p_min, r.p_mean);
    r.p_min = std::max(1.0, r.p_min);
    p_min_level = r.p_min;
    records.push_back(r);
    month = month.next();
  }
  return MonthlySeries(std::move(records));
}

namespace {

using json = nlohmann::ordered_json;

GeneratorConfig from_json(const json& j) {
  GeneratorConfig c;
  try {
    const auto length = j.at("length").get<long long>();
    if (length <= 0) throw ConfigError("generator length must be positive");
    c.length = static_cast<std::size_t>(length);
    if (j.contains("start")) c.start = parse_month(j.at("start").get<std::string>());
    if (j.contains("skip")) {
      for (const auto& s : j.at("skip")) c.skip.push_back(parse_month(s.get<std::string>()));
    }
    if (j.contains("noise_sd")) c.noise_sd = j.at("noise_sd").get<double>();
    if (j.contains("coefficients")) {
      for (const auto& [key, value] : j.at("coefficients").items()) {
        const Term term = parse_term(key);
        c.spec.terms.push_back(term);
        c.coefficients.emplace_back(term, value.get<double>());
      }
    }
    if (j.contains("breaks")) {
      for (const auto& b : j.at("breaks")) {
        BreakShift shift;
        shift.month = parse_month(b.at("month").get<std::string>());
        shift.term = b.contains("term") ? parse_term(b.at("term").get<std::string>())
                                        : Term::Intercept();
        shift.delta = b.at("delta").get<double>();
        c.breaks.push_back(shift);
      }
    }
    auto opt = [&](const char* key, double& field) {
      if (j.contains(key)) field = j.at(key).get<double>();
    };
    opt("p_min_start", c.p_min_start);
    opt("p_min_walk_sd", c.p_min_walk_sd);
    opt("quota_base", c.quota_base);
    opt("quota_season_amp", c.quota_season_amp);
    opt("quota_sd", c.quota_sd);
    opt("bidder_base", c.bidder_base);
    opt("bidder_sd", c.bidder_sd);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
  if (c.length == 0) throw ConfigError("generator length must be positive");
  if (c.noise_sd < 0) throw ConfigError("noise_sd must be non-negative");
  return c;
}

}  // namespace

GeneratorConfig parse_generator_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
  return from_json(j);
}

GeneratorConfig load_generator_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open generator config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_generator_config(ss.str());
}

GeneratorConfig reference_calendar_config() {
  GeneratorConfig c;
  c.length = 95;
  c.start = {2002, 1};
  c.skip = {{2008, 2}};
  return c;
}

}  // namespace regimelens
