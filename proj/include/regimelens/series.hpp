#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "regimelens/month.hpp"

namespace regimelens {

enum class Variable { p_mean, p_min, n_quota, n_bidder };

std::string variable_name(Variable v);
Variable parse_variable(const std::string& name);

struct MonthlyRecord {
  AuctionMonth date;
  double p_mean = 0;
  double p_min = 0;
  double n_quota = 0;
  double n_bidder = 0;

  double value(Variable v) const {
    switch (v) {
      case Variable::p_mean: return p_mean;
      case Variable::p_min: return p_min;
      case Variable::n_quota: return n_quota;
      case Variable::n_bidder: return n_bidder;
    }
    return 0;
  }
};

// Strictly date-ordered auction events. Calendar gaps are allowed; lag
// arithmetic elsewhere runs over event positions, not calendar months.
class MonthlySeries {
 public:
  MonthlySeries() = default;
  // Sorts by date and validates all record invariants.
  explicit MonthlySeries(std::vector<MonthlyRecord> records);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const MonthlyRecord& at(std::size_t i) const { return records_.at(i); }
  const MonthlyRecord& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<MonthlyRecord>& records() const { return records_; }

  std::optional<std::size_t> index_of(AuctionMonth m) const;
  // Calendar months inside the covered span with no auction event.
  std::vector<AuctionMonth> gaps() const;

 private:
  std::vector<MonthlyRecord> records_;
};

// Expects header `date,p_mean,p_min,n_quota,n_bidder` and YYYY-MM dates.
MonthlySeries parse_csv(std::istream& in);
MonthlySeries parse_csv_text(const std::string& text);
MonthlySeries load_csv(const std::string& path);

std::string to_csv(const MonthlySeries& series);

}  // namespace regimelens
