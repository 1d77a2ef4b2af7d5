#include "hurwitz/recognize/lll.hpp"

#include "hurwitz/error.hpp"

namespace hurwitz {
namespace {

struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> B; // squared norms of the orthogonalised vectors
};

GramSchmidt gram_schmidt(const std::vector<IntVector> &b) {
  const std::size_t n = b.size();
  GramSchmidt g;
  g.mu.assign(n, std::vector<Rational>(n));
  g.B.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = Rational(dot(b[i], b[j]));
      for (std::size_t k = 0; k < j; ++k)
        s -= g.mu[j][k] * g.mu[i][k] * g.B[k];
      g.mu[i][j] = s / g.B[j];
    }
    Rational s = Rational(dot(b[i], b[i]));
    for (std::size_t j = 0; j < i; ++j)
      s -= g.mu[i][j] * g.mu[i][j] * g.B[j];
    if (s == 0)
      throw InvalidArgument("lattice vectors are linearly dependent (vector " + std::to_string(i + 1) + ")");
    g.B[i] = s;
  }
  return g;
}

mpz_class round_nearest(const Rational &x) {
  mpz_class r;
  mpz_class num = 2 * x.get_num() + x.get_den(), den = 2 * x.get_den();
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

void check_shape(const IntegerLattice &l) {
  for (const auto &v : l.basis)
    if (v.size() != l.dimension())
      throw InvalidArgument("lattice vectors have different lengths");
}

} // namespace

mpz_class dot(const IntVector &a, const IntVector &b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

IntegerLattice lll_reduce(const IntegerLattice &lattice, const Rational &delta) {
  if (!(delta > Rational(1, 4) && delta < 1))
    throw InvalidArgument("LLL parameter delta must lie in (1/4, 1)");
  check_shape(lattice);
  std::vector<IntVector> b = lattice.basis;
  const std::size_t n = b.size();
  if (n == 0)
    return lattice;
  GramSchmidt g = gram_schmidt(b);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      mpz_class r = round_nearest(g.mu[k][j]);
      if (r == 0)
        continue;
      for (std::size_t c = 0; c < b[k].size(); ++c)
        b[k][c] -= r * b[j][c];
      for (std::size_t i = 0; i < j; ++i)
        g.mu[k][i] -= Rational(r) * g.mu[j][i];
      g.mu[k][j] -= Rational(r);
    }
    if (g.B[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      g = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return {b};
}

bool is_lll_reduced(const IntegerLattice &lattice, const Rational &delta) {
  check_shape(lattice);
  const auto &b = lattice.basis;
  if (b.size() < 2)
    return true;
  GramSchmidt g = gram_schmidt(b);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(g.mu[i][j]) > Rational(1, 2))
        return false;
  for (std::size_t k = 1; k < b.size(); ++k)
    if (g.B[k] < (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1])
      return false;
  return true;
}

} // namespace hurwitz
