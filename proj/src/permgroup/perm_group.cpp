#include "hurwitz/permgroup/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include "hurwitz/error.hpp"

namespace hurwitz {

using Point = Permutation::Point;

namespace {

bool fixes_all(const Permutation &g, const std::vector<Point> &points) {
  return std::all_of(points.begin(), points.end(), [&](Point p) { return g[p] == p; });
}

Point first_moved_point(const Permutation &g) {
  for (std::size_t i = 0; i < g.degree(); ++i)
    if (g[i] != i)
      return static_cast<Point>(i);
  throw Error("identity has no moved point");
}

void build_level(Bsgs::Level &level, std::size_t degree) {
  level.orbit.clear();
  level.transversal.assign(degree, std::nullopt);
  level.transversal_inverse.assign(degree, std::nullopt);
  level.orbit.push_back(level.base_point);
  level.transversal[level.base_point] = Permutation(degree);
  level.transversal_inverse[level.base_point] = Permutation(degree);
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    Point b = level.orbit[k];
    for (const auto &s : level.generators) {
      Point c = s[b];
      if (level.transversal[c])
        continue;
      Permutation u = compose(s, *level.transversal[b]);
      level.transversal_inverse[c] = u.inverse();
      level.transversal[c] = std::move(u);
      level.orbit.push_back(c);
    }
  }
}

/// Strips g through levels [from, end).
std::pair<Permutation, std::size_t> strip_from(const Bsgs &chain, Permutation g,
                                               std::size_t from) {
  for (std::size_t i = from; i < chain.levels.size(); ++i) {
    const auto &lvl = chain.levels[i];
    Point b = g[lvl.base_point];
    if (!lvl.transversal[b])
      return {std::move(g), i};
    g = compose(*lvl.transversal_inverse[b], g);
  }
  return {std::move(g), chain.levels.size()};
}

} // namespace

mpz_class Bsgs::order() const {
  mpz_class r = 1;
  for (const auto &l : levels)
    r *= static_cast<unsigned long>(l.orbit.size());
  return r;
}

std::pair<Permutation, std::size_t> Bsgs::strip(const Permutation &g) const {
  return strip_from(*this, g, 0);
}

bool Bsgs::contains(const Permutation &g) const {
  if (g.degree() != degree)
    return false;
  auto [h, level] = strip(g);
  return level == levels.size() && h.is_identity();
}

Bsgs schreier_sims(std::size_t degree, const std::vector<Permutation> &generators) {
  Bsgs chain;
  chain.degree = degree;
  std::vector<Point> base;
  std::vector<Permutation> strong;
  for (const auto &g : generators) {
    if (g.degree() != degree)
      throw InvalidArgument("generator degree mismatch");
    if (g.is_identity())
      continue;
    strong.push_back(g);
    if (fixes_all(g, base))
      base.push_back(first_moved_point(g));
  }

  auto refresh_level = [&](std::size_t i) {
    auto &lvl = chain.levels[i];
    lvl.base_point = base[i];
    lvl.generators.clear();
    std::vector<Point> prefix(base.begin(), base.begin() + static_cast<long>(i));
    for (const auto &s : strong)
      if (fixes_all(s, prefix))
        lvl.generators.push_back(s);
    build_level(lvl, degree);
  };

  chain.levels.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    refresh_level(i);

  long i = static_cast<long>(base.size()) - 1;
  std::vector<Point> buf(degree);
  while (i >= 0) {
    auto &lvl = chain.levels[static_cast<std::size_t>(i)];
    bool restarted = false;
    for (std::size_t k = 0; k < lvl.orbit.size() && !restarted; ++k) {
      Point b = lvl.orbit[k];
      for (std::size_t gi = 0; gi < lvl.generators.size(); ++gi) {
        const auto &s = lvl.generators[gi];
        const auto &ub = *lvl.transversal[b];
        const auto &usb_inv = *lvl.transversal_inverse[s[b]];
        bool trivial = true;
        for (std::size_t x = 0; x < degree; ++x) {
          buf[x] = usb_inv[s[ub[x]]];
          trivial &= buf[x] == x;
        }
        if (trivial)
          continue;
        auto [h, j] = strip_from(chain, Permutation::from_images_unchecked(buf),
                                 static_cast<std::size_t>(i) + 1);
        if (j == chain.levels.size() && h.is_identity())
          continue;
        if (j == chain.levels.size()) {
          base.push_back(first_moved_point(h));
          chain.levels.emplace_back();
        }
        strong.push_back(std::move(h));
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l)
          refresh_level(l);
        i = static_cast<long>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted)
      --i;
  }
  return chain;
}

struct PermGroup::Cache {
  std::once_flag once;
  Bsgs chain;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, GroupLimits limits)
    : degree_(degree), generators_(std::move(generators)), limits_(limits),
      cache_(std::make_shared<Cache>()) {
  if (degree == 0)
    throw InvalidArgument("group degree must be positive");
  for (const auto &g : generators_)
    if (g.degree() != degree)
      throw InvalidArgument("generator degree " + std::to_string(g.degree()) +
                            " does not match group degree " + std::to_string(degree));
}

const Bsgs &PermGroup::bsgs() const {
  std::call_once(cache_->once, [&] { cache_->chain = schreier_sims(degree_, generators_); });
  return cache_->chain;
}

mpz_class PermGroup::order() const { return bsgs().order(); }

bool PermGroup::contains(const Permutation &g) const { return bsgs().contains(g); }

void PermGroup::for_each_element(const std::function<bool(const Permutation &)> &visit) const {
  const auto &chain = bsgs();
  if (chain.order() > limits_.element_cap)
    throw BudgetExceeded("group order " + chain.order().get_str() + " exceeds element cap " +
                         std::to_string(limits_.element_cap));
  const std::size_t depth = chain.levels.size();
  if (depth == 0) {
    visit(Permutation(degree_));
    return;
  }
  // Iterative DFS over transversal choices: g = u_0 ∘ u_1 ∘ ... ∘ u_{k-1}.
  std::vector<std::size_t> choice(depth, 0);
  std::vector<Permutation> prefix(depth + 1, Permutation(degree_));
  std::size_t level = 0;
  for (;;) {
    const auto &lvl = chain.levels[level];
    prefix[level + 1] = compose(prefix[level], *lvl.transversal[lvl.orbit[choice[level]]]);
    if (level + 1 == depth) {
      if (!visit(prefix[depth]))
        return;
      // advance
      while (true) {
        if (++choice[level] < chain.levels[level].orbit.size())
          break;
        choice[level] = 0;
        if (level == 0)
          return;
        --level;
      }
    } else {
      ++level;
    }
  }
}

std::vector<Permutation> PermGroup::elements() const {
  std::vector<Permutation> out;
  for_each_element([&](const Permutation &g) {
    out.push_back(g);
    return true;
  });
  return out;
}

Permutation PermGroup::random_element(std::mt19937_64 &rng) const {
  const auto &chain = bsgs();
  Permutation g(degree_);
  for (const auto &lvl : chain.levels) {
    std::uniform_int_distribution<std::size_t> pick(0, lvl.orbit.size() - 1);
    g = compose(g, *lvl.transversal[lvl.orbit[pick(rng)]]);
  }
  return g;
}

std::vector<Point> orbit_of(Point start, const std::vector<Permutation> &generators,
                            std::size_t degree) {
  std::vector<bool> seen(degree, false);
  std::vector<Point> orbit{start};
  seen[start] = true;
  for (std::size_t k = 0; k < orbit.size(); ++k)
    for (const auto &g : generators) {
      Point c = g[orbit[k]];
      if (!seen[c]) {
        seen[c] = true;
        orbit.push_back(c);
      }
    }
  return orbit;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree_, false);
  for (std::size_t p = 0; p < degree_; ++p) {
    if (seen[p])
      continue;
    auto orb = orbit_of(static_cast<Point>(p), generators_, degree_);
    for (Point q : orb)
      seen[q] = true;
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive() const {
  return orbit_of(0, generators_, degree_).size() == degree_;
}

bool PermGroup::is_2_transitive() const {
  if (!is_transitive())
    return false;
  if (degree_ <= 2)
    return true;
  const auto &chain = bsgs();
  if (chain.levels.size() < 2)
    return false;
  const auto &stab_gens = chain.levels[1].generators;
  Point fixed = chain.levels[0].base_point;
  Point other = fixed == 0 ? 1 : 0;
  return orbit_of(other, stab_gens, degree_).size() == degree_ - 1;
}

std::vector<Permutation> PermGroup::center() const {
  std::vector<Permutation> out;
  auto commutes_with_all = [&](const Permutation &c) {
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const Permutation &g) { return compose(c, g) == compose(g, c); });
  };
  if (is_transitive()) {
    // An element centralising a transitive group is fixed by its value at 0:
    // c(g(0)) = g(c(0)).
    std::vector<Point> order{0};
    std::vector<std::pair<std::size_t, std::size_t>> parent(degree_, {SIZE_MAX, 0});
    std::vector<bool> seen(degree_, false);
    seen[0] = true;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
        Point c = generators_[gi][order[k]];
        if (!seen[c]) {
          seen[c] = true;
          parent[c] = {order[k], gi};
          order.push_back(c);
        }
      }
    for (std::size_t j = 0; j < degree_; ++j) {
      std::vector<Point> img(degree_);
      img[0] = static_cast<Point>(j);
      for (std::size_t k = 1; k < order.size(); ++k) {
        Point p = order[k];
        auto [par, gi] = parent[p];
        img[p] = generators_[gi][img[par]];
      }
      std::vector<bool> hit(degree_, false);
      bool bijective = true;
      for (Point v : img) {
        if (hit[v]) {
          bijective = false;
          break;
        }
        hit[v] = true;
      }
      if (!bijective)
        continue;
      Permutation c(std::move(img));
      if (commutes_with_all(c) && contains(c))
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  for_each_element([&](const Permutation &g) {
    if (commutes_with_all(g))
      out.push_back(g);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool generates(const std::vector<Permutation> &elements, const PermGroup &ambient) {
  if (ambient.is_transitive() &&
      orbit_of(0, elements, ambient.degree()).size() != ambient.degree())
    return false;
  return schreier_sims(ambient.degree(), elements).order() == ambient.order();
}

} // namespace hurwitz
