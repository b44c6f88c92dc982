#include "polycensus/census/parse.hpp"

#include <cctype>
#include <map>
#include <string>

#include "polycensus/error.hpp"

namespace polycensus::census {

using polyalg::Integer;

namespace {

constexpr long kMaxExponent = 10000;

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError(pos_, "polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
      skip();
    }
    term(negative);
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      if (peek() != '+' && peek() != '-') throw ParseError(pos_, "'+', '-' or end of input");
      negative = peek() == '-';
      ++pos_;
      skip();
      term(negative);
    }
    int top = terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first);
    std::vector<Integer> asc(static_cast<std::size_t>(top) + 1, 0);
    for (const auto& [e, c] : terms_) asc[static_cast<std::size_t>(e)] += c;
    return Polynomial::from_ascending(asc);
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  void term(bool negative) {
    Integer coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = Integer(digits());
      have_coeff = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (!std::isalpha(static_cast<unsigned char>(peek()))) throw ParseError(pos_, "variable");
      }
    }
    long exponent = 0;
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      char v = peek();
      if (var_ && v != var_) throw ParseError(pos_, std::string("variable ") + var_);
      var_ = v;
      ++pos_;
      exponent = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        std::size_t at = pos_;
        std::string e = digits();
        if (e.empty()) throw ParseError(at, "integer exponent");
        if (e.size() > 5 || std::stol(e) > kMaxExponent) throw ParseError(at, "exponent at most 10000");
        exponent = std::stol(e);
      }
    } else if (!have_coeff) {
      throw ParseError(pos_, "integer or variable");
    }
    terms_[exponent] += negative ? Integer(-coeff) : coeff;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  char var_ = 0;
  std::map<long, Integer> terms_;
};

Polynomial parse_list(std::string_view s) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  bool bracket = pos < s.size() && s[pos] == '[';
  if (bracket) ++pos;
  std::vector<Integer> coeffs;
  while (true) {
    skip();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits_at = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_at) throw ParseError(digits_at, "integer");
    std::string tok(s.substr(start, pos - start));
    if (tok.front() == '+') tok.erase(0, 1);
    coeffs.emplace_back(tok);
    skip();
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  if (bracket) {
    if (pos >= s.size() || s[pos] != ']') throw ParseError(pos, "']'");
    ++pos;
    skip();
  }
  if (pos != s.size()) throw ParseError(pos, "',' or end of input");
  return Polynomial(coeffs);
}

}  // namespace

Polynomial parse_poly(std::string_view text) {
  if (text.find(',') != std::string_view::npos || text.find('[') != std::string_view::npos) return parse_list(text);
  return ExpressionParser(text).parse();
}

}  // namespace polycensus::census
