#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "hurwitz/permgroup/group_io.hpp"
#include "hurwitz/permgroup/perm_group.hpp"

namespace hurwitz::testing {

inline std::string data_path(const std::string &name) {
  return std::string(HURWITZ_DATA_DIR) + "/" + name;
}

inline PermGroup load_group(const std::string &name) {
  return read_group_file(data_path(name));
}

inline Permutation cyc(std::size_t n, const std::string &text) {
  return Permutation::parse(text, n);
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Permutation::Point> img(n);
  for (std::size_t i = 0; i < n; ++i)
    img[i] = static_cast<Permutation::Point>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

/// Independent oracle: closure of the generators under right multiplication,
/// elements stored as byte strings.
inline std::uint64_t closure_size(std::size_t n, const std::vector<Permutation> &gens) {
  auto key = [&](const std::vector<std::uint8_t> &v) { return std::string(v.begin(), v.end()); };
  std::vector<std::uint8_t> id(n);
  for (std::size_t i = 0; i < n; ++i)
    id[i] = static_cast<std::uint8_t>(i);
  std::unordered_set<std::string> seen{key(id)};
  std::vector<std::vector<std::uint8_t>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint8_t>> next;
    for (const auto &e : frontier)
      for (const auto &g : gens) {
        std::vector<std::uint8_t> h(n);
        for (std::size_t i = 0; i < n; ++i)
          h[i] = e[g[i]];
        if (seen.insert(key(h)).second)
          next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

/// Small groups used by the property suites.
inline std::vector<PermGroup> small_groups() {
  return {
      PermGroup(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")}),
      PermGroup(4, {cyc(4, "(1,2)"), cyc(4, "(1,2,3,4)")}),
      PermGroup(4, {cyc(4, "(1,2,3,4)"), cyc(4, "(1,3)")}),
      PermGroup(5, {cyc(5, "(1,2,3)"), cyc(5, "(1,2,3,4,5)")}),
      PermGroup(5, {cyc(5, "(1,2)"), cyc(5, "(1,2,3,4,5)")}),
      PermGroup(6, {cyc(6, "(1,2)(3,4)"), cyc(6, "(1,2,3,4,5,6)")}),
      PermGroup(7, {cyc(7, "(1,2,3,4,5,6,7)"), cyc(7, "(2,3,5)(4,7,6)")}),
      PermGroup(7, {cyc(7, "(1,2,3,4,5,6,7)"), cyc(7, "(2,3)(4,7)")}),
      PermGroup(6, {cyc(6, "(1,2,3,4,5)"), cyc(6, "(1,6)(2,5)")}),
  };
}

} // namespace hurwitz::testing
