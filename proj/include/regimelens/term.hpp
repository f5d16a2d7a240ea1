#pragma once

#include <compare>
#include <string>
#include <vector>

#include "regimelens/month.hpp"
#include "regimelens/series.hpp"

namespace regimelens {

// One regressor column. Lags count auction events, not calendar months.
struct Term {
  enum class Kind { intercept, lagged, dummy, delta_quota };

  Kind kind = Kind::intercept;
  Variable var = Variable::p_mean;  // lagged only
  int lag = 0;                      // lagged only
  AuctionMonth event;               // dummy only

  static Term Intercept() { return {Kind::intercept, Variable::p_mean, 0, {}}; }
  static Term Lagged(Variable v, int lag) { return {Kind::lagged, v, lag, {}}; }
  static Term Dummy(AuctionMonth event) { return {Kind::dummy, Variable::p_mean, 0, event}; }
  static Term DeltaQuota() { return {Kind::delta_quota, Variable::p_mean, 0, {}}; }

  auto operator<=>(const Term&) const = default;

  // Minimum event index at which this term is computable.
  int min_index() const {
    switch (kind) {
      case Kind::lagged: return lag;
      case Kind::delta_quota: return 1;
      default: return 0;
    }
  }

  std::string str() const;
};

// Parses the textual term form: "intercept", "lag(p_min,1)",
// "dummy(2004-05)", "dquota".
Term parse_term(const std::string& text);

struct ModelSpec {
  Variable response = Variable::p_mean;
  std::vector<Term> terms;

  bool has_intercept() const;
  bool has_term(const Term& t) const;
  int max_min_index() const;  // rows before this index are unusable
  void validate() const;      // distinct terms, at most one intercept
};

// Built-in model catalog. Ids: m1..m6, m10, simple, robust-simple.
ModelSpec model_by_id(const std::string& id);
std::vector<std::string> known_model_ids();

inline const AuctionMonth kDebateMonth{2004, 5};
inline const AuctionMonth kReformMonth{2008, 1};

}  // namespace regimelens
