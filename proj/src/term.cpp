#include "regimelens/term.hpp"

#include <algorithm>

#include "regimelens/errors.hpp"

namespace regimelens {

std::string Term::str() const {
  switch (kind) {
    case Kind::intercept: return "intercept";
    case Kind::lagged:
      return "lag(" + variable_name(var) + "," + std::to_string(lag) + ")";
    case Kind::dummy: return "dummy(" + event.str() + ")";
    case Kind::delta_quota: return "dquota";
  }
  return "?";
}

Term parse_term(const std::string& text) {
  if (text == "intercept") return Term::Intercept();
  if (text == "dquota") return Term::DeltaQuota();
  if (text.starts_with("lag(") && text.ends_with(")")) {
    const std::string inner = text.substr(4, text.size() - 5);
    auto comma = inner.find(',');
    if (comma == std::string::npos) throw ParseError("bad term '" + text + "'");
    Variable v = parse_variable(inner.substr(0, comma));
    int lag = 0;
    try {
      lag = std::stoi(inner.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("bad lag in term '" + text + "'");
    }
    if (lag < 0) throw ParseError("negative lag in term '" + text + "'");
    return Term::Lagged(v, lag);
  }
  if (text.starts_with("dummy(") && text.ends_with(")")) {
    return Term::Dummy(parse_month(text.substr(6, text.size() - 7)));
  }
  throw ParseError("unknown term '" + text + "'");
}

bool ModelSpec::has_intercept() const {
  return has_term(Term::Intercept());
}

bool ModelSpec::has_term(const Term& t) const {
  return std::find(terms.begin(), terms.end(), t) != terms.end();
}

int ModelSpec::max_min_index() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.min_index());
  return m;
}

void ModelSpec::validate() const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (terms[i] == terms[j]) {
        throw ValidationError("duplicate term " + terms[i].str() + " in model spec");
      }
    }
  }
}

namespace {

ModelSpec make(std::vector<Term> terms) {
  ModelSpec s;
  s.terms = std::move(terms);
  return s;
}

}  // namespace

ModelSpec model_by_id(const std::string& id) {
  const Term i = Term::Intercept();
  const Term pmin1 = Term::Lagged(Variable::p_min, 1);
  const Term q0 = Term::Lagged(Variable::n_quota, 0);
  const Term q1 = Term::Lagged(Variable::n_quota, 1);
  const Term b1 = Term::Lagged(Variable::n_bidder, 1);
  const Term d04 = Term::Dummy(kDebateMonth);
  const Term d08 = Term::Dummy(kReformMonth);

  if (id == "m1") return make({i, pmin1, q0, q1, b1});
  if (id == "m2") return make({i, pmin1, q0, q1});
  if (id == "m3") return make({i, pmin1, q0, q1, b1, d04, d08});
  if (id == "m4") return make({i, pmin1, q0, q1, d08});
  if (id == "m5") return make({i, pmin1, d04});
  if (id == "m6") return make({i, pmin1});
  if (id == "m10") return make({i, pmin1, Term::DeltaQuota(), d08});
  if (id == "simple" || id == "robust-simple") {
    return make({i, Term::Lagged(Variable::p_min, 0)});
  }
  throw LookupError("unknown model id '" + id + "' (valid: m1 m2 m3 m4 m5 m6 m10 simple robust-simple)");
}

std::vector<std::string> known_model_ids() {
  return {"m1", "m2", "m3", "m4", "m5", "m6", "m10", "simple", "robust-simple"};
}

}  // namespace regimelens
