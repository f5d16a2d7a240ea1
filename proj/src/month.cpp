#include "regimelens/month.hpp"

#include <cctype>
#include <cstdio>

#include "regimelens/errors.hpp"

namespace regimelens {

std::string AuctionMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

AuctionMonth parse_month(const std::string& text) {
  if (text.size() != 7 || text[4] != '-') {
    throw ParseError("bad month '" + text + "': expected YYYY-MM");
  }
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("bad month '" + text + "': expected YYYY-MM");
    }
  }
  AuctionMonth m{std::stoi(text.substr(0, 4)), std::stoi(text.substr(5, 2))};
  if (m.month < 1 || m.month > 12) {
    throw ParseError("bad month '" + text + "': month out of range");
  }
  return m;
}

}  // namespace regimelens
