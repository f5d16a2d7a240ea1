#pragma once

#include <compare>
#include <string>

namespace regimelens {

// Calendar month of an auction event, ordered lexicographically by (year, month).
struct AuctionMonth {
  int year = 0;
  int month = 1;  // 1..12

  auto operator<=>(const AuctionMonth&) const = default;

  AuctionMonth next() const {
    return month == 12 ? AuctionMonth{year + 1, 1} : AuctionMonth{year, month + 1};
  }

  std::string str() const;
};

// Parses "YYYY-MM"; throws ParseError on malformed input.
AuctionMonth parse_month(const std::string& text);

}  // namespace regimelens
