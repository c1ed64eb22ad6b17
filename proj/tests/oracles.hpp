#pragma once

// Brute-force reference implementations used as oracles. Everything here is
// deliberately independent of the library's algorithms: closure by
// Floyd-Warshall, chain lengths by exhaustive enumeration, numbering counts
// by filtering all permutations, components by breadth-first traversal.

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "mse/diagram.hpp"

namespace oracle {

// strict[l][u] == true iff O_l precedes O_u; Floyd-Warshall closure of the
// raw edge list.
inline std::vector<std::vector<bool>> closure(const mse::Diagram& d) {
  const std::size_t n = d.orbits.size();
  std::vector<std::vector<bool>> strict(n, std::vector<bool>(n, false));
  for (const auto& e : d.edges) {
    auto u = d.index_of(e.upper);
    auto l = d.index_of(e.lower);
    if (u && l && *u != *l) strict[*l][*u] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (strict[i][k] && strict[k][j]) strict[i][j] = true;
  return strict;
}

// Maximum length of a chain lower = p0 < p1 < ... < pk = upper of pairwise
// distinct orbits, enumerating every chain; 0 when none exists.
inline int max_chain(const std::vector<std::vector<bool>>& strict, std::size_t lower,
                     std::size_t upper) {
  const std::size_t n = strict.size();
  int best = 0;
  std::vector<bool> used(n, false);
  used[lower] = true;

  struct Frame {
    std::size_t node;
    std::size_t next = 0;
  };
  std::vector<Frame> frames{{lower, 0}};
  while (!frames.empty()) {
    Frame& f = frames.back();
    if (f.node == upper && frames.size() >= 2)
      best = std::max(best, static_cast<int>(frames.size()) - 1);
    bool descended = false;
    while (f.next < n) {
      const std::size_t y = f.next++;
      if (!used[y] && strict[f.node][y]) {
        used[y] = true;
        frames.push_back({y, 0});
        descended = true;
        break;
      }
    }
    if (!descended) {
      used[f.node] = false;
      frames.pop_back();
    }
  }
  return best;
}

inline int behaviour(const mse::Diagram& d, const std::string& upper, const std::string& lower) {
  auto strict = closure(d);
  return max_chain(strict, *d.index_of(lower), *d.index_of(upper));
}

inline int behaviour_index(const mse::Diagram& d, const std::string& orbit) {
  auto strict = closure(d);
  int best = 0;
  for (const auto& o : d.orbits)
    if (o.is_sink())
      best = std::max(best, max_chain(strict, *d.index_of(o.id), *d.index_of(orbit)));
  return best;
}

// Counts permutations of the orbits satisfying the two dynamical-numbering
// conditions, checking each of the n! candidates directly.
inline unsigned long long count_numberings(const mse::Diagram& d) {
  const std::size_t n = d.orbits.size();
  std::vector<int> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = behaviour_index(d, d.orbits[i].id);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  unsigned long long count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        const int qi = d.orbits[perm[i]].index, qj = d.orbits[perm[j]].index;
        if (qi < qj && !(i < j)) ok = false;
        if (qi == qj && b[perm[i]] < b[perm[j]] && !(i < j)) ok = false;
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Connected components by BFS over an explicit edge list on 0..n-1.
inline long long components(std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  long long comps = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++comps;
    std::queue<std::size_t> queue;
    queue.push(start);
    seen[start] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop();
      for (std::size_t w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          queue.push(w);
        }
    }
  }
  return comps;
}

}  // namespace oracle
