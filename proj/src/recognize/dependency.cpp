#include "hurwitz/recognize/dependency.hpp"

#include <algorithm>
#include <sstream>

#include "hurwitz/error.hpp"
#include "hurwitz/permgroup/group_io.hpp"

namespace hurwitz {
namespace {

struct Monomial {
  std::size_t i, j; // beta^i gamma^j
};

// Ascending total degree, then ascending beta exponent.
std::vector<Monomial> monomials(std::size_t db, std::size_t dg) {
  std::vector<Monomial> out;
  for (std::size_t i = 0; i <= db; ++i)
    for (std::size_t j = 0; j <= dg; ++j)
      out.push_back({i, j});
  std::stable_sort(out.begin(), out.end(), [](const Monomial &a, const Monomial &b) {
    if (a.i + a.j != b.i + b.j)
      return a.i + a.j < b.i + b.j;
    return a.i < b.i;
  });
  return out;
}

Rational power(const Rational &x, std::size_t e) {
  Rational r = 1;
  for (std::size_t k = 0; k < e; ++k)
    r *= x;
  return r;
}

} // namespace

Rational BivariatePolynomial::eval(const Rational &beta, const Rational &gamma) const {
  Rational s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < coeffs[i].size(); ++j)
      if (coeffs[i][j] != 0)
        s += Rational(coeffs[i][j]) * power(beta, i) * power(gamma, j);
  return s;
}

bool BivariatePolynomial::is_zero() const {
  for (const auto &row : coeffs)
    for (const auto &c : row)
      if (c != 0)
        return false;
  return true;
}

std::size_t BivariatePolynomial::total_degree() const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < coeffs[i].size(); ++j)
      if (coeffs[i][j] != 0)
        d = std::max(d, i + j);
  return d;
}

std::string BivariatePolynomial::to_string(const std::string &b, const std::string &g) const {
  std::vector<Monomial> ms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < coeffs[i].size(); ++j)
      if (coeffs[i][j] != 0)
        ms.push_back({i, j});
  if (ms.empty())
    return "0";
  std::sort(ms.begin(), ms.end(), [](const Monomial &x, const Monomial &y) {
    if (x.i + x.j != y.i + y.j)
      return x.i + x.j > y.i + y.j;
    return x.i > y.i;
  });
  auto factor = [](const std::string &v, std::size_t e) {
    return e == 0 ? std::string() : e == 1 ? v : v + "^" + std::to_string(e);
  };
  std::string out;
  for (const auto &m : ms) {
    mpz_class c = coeffs[m.i][m.j];
    bool neg = c < 0;
    mpz_class a = abs(c);
    std::string mono = factor(b, m.i);
    std::string gv = factor(g, m.j);
    if (!gv.empty())
      mono = mono.empty() ? gv : mono + "*" + gv;
    std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

BivariatePolynomial interpolate_dependency(const std::vector<Sample> &samples, std::size_t deg_beta,
                                           std::size_t deg_gamma) {
  const auto mons = monomials(deg_beta, deg_gamma);
  const std::size_t m = mons.size(), n = samples.size();
  if (n == 0)
    throw InvalidArgument("no samples");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c)
      a[r][c] = power(samples[r].first, mons[c].i) * power(samples[r].second, mons[c].j);

  // Reduced row echelon form.
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m && row < n; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c] == 0)
      ++p;
    if (p == n)
      continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto &x : a[row])
      x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][c] == 0)
        continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < m; ++k)
        a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::size_t> free;
  for (std::size_t c = 0, k = 0; c < m; ++c) {
    if (k < pivots.size() && pivots[k] == c)
      ++k;
    else
      free.push_back(c);
  }
  if (free.empty())
    throw InvalidArgument("no relation with degree bounds (" + std::to_string(deg_beta) + ", " +
                          std::to_string(deg_gamma) + "); try (" + std::to_string(deg_beta + 1) + ", " +
                          std::to_string(deg_gamma) + ") or (" + std::to_string(deg_beta) + ", " +
                          std::to_string(deg_gamma + 1) + ")");
  if (free.size() > 1 && n + 1 < m)
    throw InvalidArgument(std::to_string(free.size()) + " independent relations fit " + std::to_string(n) +
                          " samples; at least " + std::to_string(m - 1) + " samples are needed");

  // Basis vector of the first free column: lowest leading monomial.
  const std::size_t f = free.front();
  std::vector<Rational> v(m, Rational(0));
  v[f] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] < f)
      v[pivots[r]] = -a[r][f];
  mpz_class l = 1;
  for (const auto &x : v)
    l = lcm(l, mpz_class(x.get_den()));
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto &x : v) {
    mpz_class c = mpz_class(x.get_num()) * (l / x.get_den());
    ints.push_back(c);
    g = gcd(g, c);
  }
  if (ints[f] < 0)
    g = -g;
  BivariatePolynomial out;
  out.coeffs.assign(deg_beta + 1, std::vector<mpz_class>(deg_gamma + 1, mpz_class(0)));
  for (std::size_t c = 0; c < m; ++c)
    out.coeffs[mons[c].i][mons[c].j] = ints[c] / g;
  for (const auto &s : samples)
    if (out.eval(s.first, s.second) != 0)
      throw Error("interpolated relation does not vanish on a sample");
  return out;
}

std::vector<Sample> parse_samples(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::vector<Sample> out;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty())
      continue;
    std::istringstream words(line);
    std::string key, b, g, extra;
    words >> key >> b >> g;
    if (key != "sample")
      throw ParseError("unknown keyword '" + key + "'", line_no);
    if (g.empty() || (words >> extra))
      throw ParseError("expected 'sample <beta> <gamma>'", line_no);
    try {
      out.emplace_back(parse_rational(b), parse_rational(g));
    } catch (const std::exception &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

std::vector<Sample> read_samples_file(const std::filesystem::path &path) {
  try {
    return parse_samples(read_text_file(path));
  } catch (const ParseError &e) {
    throw e.in_file(path.string());
  }
}

} // namespace hurwitz
