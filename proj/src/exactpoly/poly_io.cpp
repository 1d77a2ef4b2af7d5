#include "hurwitz/exactpoly/poly_io.hpp"

#include <cctype>
#include <sstream>

#include "hurwitz/permgroup/group_io.hpp"

namespace hurwitz {

namespace {

class ExpressionParser {
public:
  ExpressionParser(std::string_view text, const PolyMap &params, const std::string &var)
      : s_(text), params_(params), var_(var) {}

  QPoly parse() {
    QPoly r = sum();
    skip_space();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw InvalidArgument(what + " at position " + std::to_string(pos_ + 1) + " of expression");
  }
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QPoly sum() {
    QPoly r(Rational(0));
    bool first = true;
    for (;;) {
      bool neg = false;
      if (eat('-'))
        neg = true;
      else if (!first && !eat('+'))
        break;
      else if (first)
        eat('+');
      QPoly t = product();
      r = neg ? r - t : r + t;
      first = false;
      skip_space();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-'))
        break;
    }
    return r;
  }

  QPoly product() {
    QPoly r = power();
    for (;;) {
      if (eat('*')) {
        r = r * power();
      } else if (eat('/')) {
        QPoly d = power();
        if (d.degree() != 0)
          fail("division by a nonconstant or zero expression");
        r = r * (Rational(1) / d.lead());
      } else {
        return r;
      }
    }
  }

  QPoly power() {
    QPoly b = atom();
    if (eat('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      if (start == pos_)
        fail("exponent must be a nonnegative integer");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 100000)
        fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  QPoly atom() {
    skip_space();
    if (pos_ >= s_.size())
      fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QPoly r = sum();
      if (!eat(')'))
        fail("missing ')'");
      return r;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      QPoly r = power();
      return c == '-' ? -r : r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
          ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        else
          pos_ = save;
      }
      return QPoly::constant(parse_rational(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == var_)
        return QPoly::x(Rational(0));
      auto it = params_.find(name);
      if (it == params_.end()) {
        pos_ = start;
        fail("unknown name '" + name + "'");
      }
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const PolyMap &params_;
  std::string var_;
  std::size_t pos_ = 0;
};

} // namespace

QPoly parse_expression(std::string_view text, const PolyMap &polys, const std::string &var) {
  return ExpressionParser(text, polys, var).parse();
}

QPoly parse_expression(std::string_view text, const ParamMap &params, const std::string &var) {
  PolyMap polys;
  for (const auto &[k, v] : params)
    polys.emplace(k, QPoly::constant(v));
  return parse_expression(text, polys, var);
}

QPoly parse_polynomial(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  QPoly f(Rational(0));
  bool saw_coeffs = false, saw_terms = false;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty())
      continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    try {
      if (key == "term") {
        std::string c, e, extra;
        if (!(ls >> c >> e) || (ls >> extra))
          throw ParseError("term needs a coefficient and an exponent", line_no);
        if (e.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("exponent '" + e + "' is not a nonnegative integer", line_no);
        if (saw_coeffs)
          throw ParseError("term lines cannot follow a coeffs line", line_no);
        saw_terms = true;
        f += QPoly::monomial(parse_rational(c), std::stoul(e));
      } else if (key == "coeffs") {
        if (saw_coeffs || saw_terms)
          throw ParseError("coeffs must be the only polynomial line", line_no);
        saw_coeffs = true;
        std::vector<Rational> c;
        std::string tok;
        while (ls >> tok)
          c.push_back(parse_rational(tok));
        f = QPoly(std::move(c), Rational(0));
      } else {
        throw ParseError("unknown keyword '" + key + "'", line_no);
      }
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!saw_coeffs && !saw_terms)
    throw ParseError("polynomial file has no term or coeffs line", line_no);
  return f;
}

QPoly read_polynomial_file(const std::filesystem::path &path) {
  try {
    return parse_polynomial(read_text_file(path));
  } catch (const ParseError &e) {
    throw e.in_file(path.string());
  }
}

std::string format_polynomial(const QPoly &f) {
  std::string out;
  for (std::size_t i = f.coeffs().size(); i-- > 0;)
    if (!is_zero(f[i]))
      out += "term " + to_string(f[i]) + " " + std::to_string(i) + "\n";
  if (out.empty())
    out = "coeffs 0\n";
  return out;
}

} // namespace hurwitz
