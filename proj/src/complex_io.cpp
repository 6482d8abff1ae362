#include "cyclo/complex_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

double parse_double(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == nullptr || *end != '\0')
    throw DomainError("parse_complex: malformed number '" + s + "'");
  return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw DomainError("parse_complex: empty input");

  // Split at the last top-level '+'/'-' that is not an exponent sign.
  size_t split = std::string::npos;
  for (size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') &&
        s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;
  }
  if (s.back() == 'i' || s.back() == 'I') {
    const std::string im_text = s.substr(split == std::string::npos ? 0 : split,
                                         std::string::npos);
    const std::string re_text =
        split == std::string::npos ? "" : s.substr(0, split);
    const double im = parse_double(im_text.substr(0, im_text.size() - 1));
    const double re = re_text.empty() ? 0.0 : parse_double(re_text);
    return {re, im};
  }
  return {parse_double(s), 0.0};
}

std::string format_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace cyclo
