#include "regimelens/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "regimelens/errors.hpp"

namespace regimelens {

std::string variable_name(Variable v) {
  switch (v) {
    case Variable::p_mean: return "p_mean";
    case Variable::p_min: return "p_min";
    case Variable::n_quota: return "n_quota";
    case Variable::n_bidder: return "n_bidder";
  }
  return "?";
}

Variable parse_variable(const std::string& name) {
  if (name == "p_mean") return Variable::p_mean;
  if (name == "p_min") return Variable::p_min;
  if (name == "n_quota") return Variable::n_quota;
  if (name == "n_bidder") return Variable::n_bidder;
  throw ParseError("unknown variable '" + name + "'");
}

namespace {

void validate_record(const MonthlyRecord& r) {
  const std::string at = " (row " + r.date.str() + ")";
  for (Variable v : {Variable::p_mean, Variable::p_min, Variable::n_quota,
                     Variable::n_bidder}) {
    const double x = r.value(v);
    if (!std::isfinite(x) || x <= 0) {
      throw ValidationError(variable_name(v) + " must be strictly positive" + at);
    }
  }
  if (r.p_mean < r.p_min) {
    throw ValidationError("p_mean < p_min" + at);
  }
}

}  // namespace

MonthlySeries::MonthlySeries(std::vector<MonthlyRecord> records)
    : records_(std::move(records)) {
  std::sort(records_.begin(), records_.end(),
            [](const MonthlyRecord& a, const MonthlyRecord& b) { return a.date < b.date; });
  for (std::size_t i = 0; i < records_.size(); ++i) {
    validate_record(records_[i]);
    if (i > 0 && records_[i].date == records_[i - 1].date) {
      throw ValidationError("duplicate date " + records_[i].date.str());
    }
  }
}

std::optional<std::size_t> MonthlySeries::index_of(AuctionMonth m) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), m,
                             [](const MonthlyRecord& r, AuctionMonth x) { return r.date < x; });
  if (it != records_.end() && it->date == m) {
    return static_cast<std::size_t>(it - records_.begin());
  }
  return std::nullopt;
}

std::vector<AuctionMonth> MonthlySeries::gaps() const {
  std::vector<AuctionMonth> out;
  for (std::size_t i = 1; i < records_.size(); ++i) {
    for (AuctionMonth m = records_[i - 1].date.next(); m < records_[i].date; m = m.next()) {
      out.push_back(m);
    }
  }
  return out;
}

namespace {

double parse_number(const std::string& field, int line) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  if (pos != field.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

MonthlySeries parse_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<MonthlyRecord> records;
  const std::vector<std::string> expected = {"date", "p_mean", "p_min", "n_quota",
                                             "n_bidder"};
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (!saw_header) {
      if (fields.size() != expected.size()) {
        throw ParseError("line 1: expected header date,p_mean,p_min,n_quota,n_bidder");
      }
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (fields[i] != expected[i]) {
          throw ParseError("line 1: missing or misnamed column '" + expected[i] + "'");
        }
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != 5) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 5 fields, got " +
                       std::to_string(fields.size()));
    }
    MonthlyRecord r;
    try {
      r.date = parse_month(fields[0]);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    r.p_mean = parse_number(fields[1], lineno);
    r.p_min = parse_number(fields[2], lineno);
    r.n_quota = parse_number(fields[3], lineno);
    r.n_bidder = parse_number(fields[4], lineno);
    records.push_back(r);
  }
  if (!saw_header) {
    throw ParseError("empty input: expected header date,p_mean,p_min,n_quota,n_bidder");
  }
  return MonthlySeries(std::move(records));
}

MonthlySeries parse_csv_text(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

MonthlySeries load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_csv(in);
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_csv(const MonthlySeries& series) {
  std::string out = "date,p_mean,p_min,n_quota,n_bidder\n";
  for (const auto& r : series.records()) {
    out += r.date.str() + ',' + format_number(r.p_mean) + ',' + format_number(r.p_min) +
           ',' + format_number(r.n_quota) + ',' + format_number(r.n_bidder) + '\n';
  }
  return out;
}

}  // namespace regimelens
