#include "ovs/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ovs {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat(long num, long den) {
  if (den == 0) throw std::runtime_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& text) {
  const auto bad = [&] {
    return std::runtime_error("not a rational number: '" + text + "'");
  };
  std::string s = text;
  // strip surrounding whitespace
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw bad();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) throw bad();
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) throw bad();
    if (q.get_den() == 0) throw std::runtime_error("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.empty() || whole == "-" || whole == "+") throw bad();
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_integer_token(whole) || !is_integer_token("0" + frac)) throw bad();
    bool neg = whole[0] == '-';
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w(whole), f(frac);
    mpz_class num = w * scale + (neg ? -f : f);
    Rat q(num, scale);
    q.canonicalize();
    return q;
  }
  if (!is_integer_token(s)) throw bad();
  return Rat(mpz_class(s));
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string rat_decimal(const Rat& r, int digits) {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round(|r| * scale) with half away from zero
  mpq_class scaled = abs(r) * Rat(scale);
  mpz_class twice_num = 2 * scaled.get_num() + scaled.get_den();
  mpz_class rounded = twice_num / (2 * scaled.get_den());
  std::string s = rounded.get_str();
  std::string out = (sgn(r) < 0 && rounded != 0) ? "-" : "";
  if (digits == 0) return out + s;
  if (s.size() <= static_cast<std::size_t>(digits))
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return out + s;
}

}  // namespace ovs
