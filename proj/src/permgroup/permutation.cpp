#include "hurwitz/permgroup/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hurwitz/error.hpp"

namespace hurwitz {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  if (degree > kMaxDegree)
    throw InvalidArgument("permutation degree exceeds 65535");
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p])
      throw InvalidArgument("image list is not a bijection");
    seen[p] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<unsigned>> &cycles) {
  Permutation result(degree);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto &cyc = *it;
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      unsigned a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      if (a < 1 || a > degree || b < 1 || b > degree)
        throw InvalidArgument("cycle point " + std::to_string(a) + " outside 1.." +
                              std::to_string(degree));
      if (used[a - 1])
        throw InvalidArgument("point " + std::to_string(a) + " repeated in a cycle");
      used[a - 1] = true;
      img[a - 1] = static_cast<Point>(b - 1);
    }
    result = compose(result, Permutation(std::move(img)));
  }
  return result;
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::vector<std::vector<unsigned>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw InvalidArgument("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<unsigned> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size())
        throw InvalidArgument("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InvalidArgument("unexpected character '" + std::string(1, text[i]) +
                              "' in cycle notation");
      unsigned long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        if (v > kMaxDegree)
          throw InvalidArgument("point out of range in cycle notation");
        ++i;
      }
      cyc.push_back(static_cast<unsigned>(v));
    }
    if (cyc.size() > 1)
      cycles.push_back(std::move(cyc));
    else if (cyc.size() == 1 && (cyc[0] < 1 || cyc[0] > degree))
      throw InvalidArgument("point outside degree in cycle notation");
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[images_[i]] = static_cast<Point>(i);
  return from_images_unchecked(std::move(inv));
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  for (const auto &c : cycles()) {
    std::uint64_t len = c.size();
    std::uint64_t g = std::gcd(result, len);
    std::uint64_t factor = len / g;
    if (result > UINT64_MAX / factor)
      throw Error("permutation order overflows 64 bits");
    result *= factor;
  }
  return result;
}

std::vector<std::vector<Permutation::Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i])
      continue;
    std::vector<Point> cyc;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      cyc.push_back(static_cast<Point>(j));
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::size_t Permutation::num_cycles() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i])
      continue;
    ++count;
    for (std::size_t j = i; !seen[j]; j = images_[j])
      seen[j] = true;
  }
  return count;
}

std::size_t Permutation::num_fixed_points() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i)
    count += images_[i] == i;
  return count;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (const auto &c : cycles()) {
    if (c.size() < 2)
      continue;
    any = true;
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k)
      os << (k ? "," : "") << c[k] + 1;
    os << ')';
  }
  if (!any)
    os << "()";
  return os.str();
}

std::size_t Permutation::hash() const {
  // FNV-1a over the image array.
  std::size_t h = 1469598103934665603ull;
  for (Point p : images_) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return h;
}

Permutation compose(const Permutation &p, const Permutation &q) {
  if (p.degree() != q.degree())
    throw InvalidArgument("degree mismatch in compose: " + std::to_string(p.degree()) +
                          " vs " + std::to_string(q.degree()));
  std::vector<Permutation::Point> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = p[q[i]];
  return Permutation::from_images_unchecked(std::move(img));
}

Permutation conjugate(const Permutation &s, const Permutation &g) {
  if (s.degree() != g.degree())
    throw InvalidArgument("degree mismatch in conjugate");
  std::vector<Permutation::Point> img(s.degree());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[g[i]] = g[s[i]];
  return Permutation::from_images_unchecked(std::move(img));
}

Permutation power(const Permutation &p, long long exponent) {
  Permutation base = exponent < 0 ? p.inverse() : p;
  unsigned long long e = exponent < 0 ? 0ull - static_cast<unsigned long long>(exponent)
                                      : static_cast<unsigned long long>(exponent);
  Permutation result(p.degree());
  while (e) {
    if (e & 1)
      result = compose(result, base);
    base = compose(base, base);
    e >>= 1;
  }
  return result;
}

Permutation product(const std::vector<Permutation> &ps, std::size_t degree) {
  Permutation r(degree);
  for (const auto &p : ps)
    r = compose(r, p);
  return r;
}

std::ostream &operator<<(std::ostream &os, const Permutation &p) {
  return os << p.to_string();
}

} // namespace hurwitz
