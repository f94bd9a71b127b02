#include "charpoly/format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "charpoly/errors.hpp"

namespace charpoly {

namespace {

// Splits "a+bi" into its two signed number parts.  The split point is a
// '+'/'-' that is not the leading sign and not part of an exponent.
bool split_at_sign(const std::string& s, std::size_t& pos) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      pos = i;
      return true;
    }
  }
  return false;
}

double parse_number(const std::string& s, const char* ctx) {
  if (s.empty()) throw UsageError(std::string(ctx) + ": empty number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string(ctx) + ": bad number '" + s + "'");
  }
  if (used != s.size()) throw UsageError(std::string(ctx) + ": trailing junk in '" + s + "'");
  return v;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw UsageError("parse_complex: empty literal");
  if (s.back() == 'i' || s.back() == 'I') {
    std::string body = s.substr(0, s.size() - 1);
    std::size_t pos = 0;
    if (split_at_sign(body, pos)) {
      const std::string re = body.substr(0, pos);
      std::string im = body.substr(pos);
      if (im == "+" || im == "-") im += "1";
      return {parse_number(re, "parse_complex"), parse_number(im, "parse_complex")};
    }
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, parse_number(body, "parse_complex")};
  }
  return {parse_number(s, "parse_complex"), 0.0};
}

std::vector<cplx> parse_complex_list(const std::string& csv) {
  std::vector<cplx> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(cplx z) {
  std::string out = format_double(z.real());
  out += (z.imag() < 0.0 || std::signbit(z.imag())) ? "-" : "+";
  out += format_double(std::abs(z.imag()));
  out += "i";
  return out;
}

}  // namespace charpoly
