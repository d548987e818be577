#include "birat/ratpoly.hpp"

#include "birat/errors.hpp"

#include <cctype>
#include <sstream>

namespace birat {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

BigRational parse_decimal(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    const mpz_class e = parse_integer(s.substr(epos + 1), whole);
    if (!e.fits_slong_p() || abs(e) > 100000) {
      throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = e.get_si();
    s = s.substr(0, epos);
  }
  std::string digits;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto ip = s.substr(0, dot);
    const auto fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp))) {
      throw ParseError("malformed decimal '" + std::string(whole) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ParseError("malformed decimal '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  mpz_class mant(digits, 10);
  if (neg) mant = -mant;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  BigRational q = exponent < 0 ? BigRational(mant, scale) : BigRational(mant * scale);
  q.canonicalize();
  return q;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const mpz_class num = parse_integer(std::string_view(s).substr(0, slash), s);
    const mpz_class den = parse_integer(std::string_view(s).substr(slash + 1), s);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    BigRational q(num, den);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s, s);
}

std::string to_string(const BigRational& q) { return q.get_str(10); }

std::optional<BigRational> rational_sqrt(const BigRational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  BigRational r(sqrt(num), sqrt(den));
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(const BigRational& c) { add_term(Exponents{0, 0, 0}, c); }

MultiPoly::MultiPoly(long c) : MultiPoly(BigRational(c)) {}

MultiPoly MultiPoly::var(Var v) {
  Exponents e{0, 0, 0};
  e[v] = 1;
  return monomial(1, e);
}

MultiPoly MultiPoly::monomial(const BigRational& c, Exponents e) {
  MultiPoly p;
  p.add_term(e, c);
  return p;
}

BigRational MultiPoly::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? BigRational(0) : it->second;
}

unsigned MultiPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

std::optional<std::pair<MultiPoly::Exponents, BigRational>> MultiPoly::leading_term() const {
  if (terms_.empty()) return std::nullopt;
  return *terms_.begin();
}

void MultiPoly::add_term(const Exponents& e, const BigRational& c) {
  if (sgn(c) == 0) return;
  BigRational q = c;
  q.canonicalize();
  auto [it, inserted] = terms_.try_emplace(e, q);
  if (!inserted) {
    it->second += q;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, BigRational(-c));
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, BigRational(ca * cb));
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result(1L);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

BigRational MultiPoly::eval(const BigRational& x, const BigRational& y, const BigRational& h) const {
  const std::array<BigRational, 3> vals{x, y, h};
  BigRational sum = 0;
  for (const auto& [e, c] : terms_) {
    BigRational t = c;
    for (int v = 0; v < 3; ++v) {
      for (unsigned k = 0; k < e[v]; ++k) t *= vals[v];
    }
    sum += t;
  }
  return sum;
}

double MultiPoly::eval_double(double x, double y, double h) const {
  const std::array<double, 3> vals{x, y, h};
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int v = 0; v < 3; ++v) {
      for (unsigned k = 0; k < e[v]; ++k) t *= vals[v];
    }
    sum += t;
  }
  return sum;
}

std::string MultiPoly::to_string(const VarNames& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = sgn(c) < 0;
    const BigRational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = e[0] == 0 && e[1] == 0 && e[2] == 0;
    bool need_star = false;
    if (mag != 1 || is_const) {
      os << mag.get_str(10);
      need_star = true;
    }
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (need_star) os << "*";
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
      need_star = true;
    }
  }
  return os.str();
}

// --- parser ----------------------------------------------------------------

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string text) : s_(std::move(text)) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why +
                     " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  MultiPoly term() {
    MultiPoly p = unary();
    for (;;) {
      if (accept('*')) {
        p *= unary();
      } else if (accept('/')) {
        const MultiPoly d = unary();
        if (d.is_zero()) fail("division by zero");
        const auto lt = d.leading_term();
        if (d.num_terms() != 1 || lt->first != MultiPoly::Exponents{0, 0, 0}) {
          fail("division only by constants");
        }
        p *= MultiPoly(BigRational(1 / lt->second));
      } else {
        return p;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == 'x' || c == 'y' || c == 'h') {
      ++pos_;
      return MultiPoly::var(c == 'x' ? MultiPoly::X : c == 'y' ? MultiPoly::Y : MultiPoly::H);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t q = pos_ + 1;
        if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
        if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
          pos_ = q;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
      }
      return MultiPoly(parse_rational(s_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string normalize_minus(std::string_view text) {
  // U+2212 MINUS SIGN
  static constexpr std::string_view kMinus = "\xE2\x88\x92";
  std::string out(text);
  for (auto p = out.find(kMinus); p != std::string::npos; p = out.find(kMinus, p)) {
    out.replace(p, kMinus.size(), "-");
  }
  return out;
}

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) {
  return PolyParser(normalize_minus(text)).parse();
}

// --- square root -------------------------------------------------------------

std::optional<MultiPoly> is_perfect_square(const MultiPoly& p) {
  if (p.is_zero()) return MultiPoly{};

  MultiPoly::Exponents bound{};
  for (int v = 0; v < 3; ++v) {
    const unsigned d = p.degree(static_cast<MultiPoly::Var>(v));
    if (d % 2 != 0) return std::nullopt;
    bound[v] = d / 2;
  }

  const auto [lead_mono, lead_coef] = *p.leading_term();
  for (unsigned e : lead_mono) {
    if (e % 2 != 0) return std::nullopt;
  }
  const auto root_coef = rational_sqrt(lead_coef);
  if (!root_coef) return std::nullopt;

  const MultiPoly::Exponents root_mono{lead_mono[0] / 2, lead_mono[1] / 2, lead_mono[2] / 2};
  MultiPoly root = MultiPoly::monomial(*root_coef, root_mono);
  MultiPoly rem = p - root * root;
  MultiPoly::Exponents last = root_mono;
  const BigRational twice_lead = 2 * *root_coef;

  while (!rem.is_zero()) {
    const auto [mono, coef] = *rem.leading_term();
    MultiPoly::Exponents next{};
    for (int v = 0; v < 3; ++v) {
      if (mono[v] < root_mono[v]) return std::nullopt;
      next[v] = mono[v] - root_mono[v];
      if (next[v] > bound[v]) return std::nullopt;
    }
    // New terms of the root must come strictly after every term already fixed.
    if (!(std::greater<>{}(last, next))) return std::nullopt;
    const MultiPoly term = MultiPoly::monomial(BigRational(coef / twice_lead), next);
    rem -= MultiPoly(2L) * root * term + term * term;
    root += term;
    last = next;
  }

  if (!(root * root == p)) return std::nullopt;
  return root;
}

}  // namespace birat
