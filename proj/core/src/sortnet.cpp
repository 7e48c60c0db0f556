// SPDX-License-Identifier: Apache-2.0

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccard/encode.hpp"

namespace ccard {

namespace {

// Batcher odd-even mergesort over a power-of-two wire count. `comp(a, b)`
// is a compare-exchange that leaves the maximum on the lower index a, so the
// network sorts descending.
template <typename F>
void oe_merge(std::size_t lo, std::size_t n, std::size_t r, F& comp) {
  std::size_t m = r * 2;
  if (m < n) {
    oe_merge(lo, n, m, comp);
    oe_merge(lo + r, n, m, comp);
    for (std::size_t i = lo + r; i + r < lo + n; i += m) comp(i, i + r);
  } else {
    comp(lo, lo + r);
  }
}

template <typename F>
void oe_sort(std::size_t lo, std::size_t n, F& comp) {
  if (n <= 1) return;
  oe_sort(lo, n / 2, comp);
  oe_sort(lo + n / 2, n / 2, comp);
  oe_merge(lo, n, 1, comp);
}

}  // namespace

SortingNetwork append_sorting_network(Cnf& cnf, VarPool& pool,
                                      std::span<const Lit> inputs,
                                      std::optional<Var> guard_all,
                                      const std::string& aux_prefix) {
  SortingNetwork net;
  const std::size_t n = inputs.size();
  if (n == 0) return net;
  if (n == 1) {
    net.outputs = {inputs[0]};
    return net;
  }
  std::size_t padded = 1;
  while (padded < n) padded *= 2;

  // Wires are literals; code 0 marks a constant-false padding wire.
  // A comparator with a constant-false input degenerates to plain wiring.
  std::vector<Lit> wire(inputs.begin(), inputs.end());
  wire.resize(padded, Lit{0});

  auto add = [&](std::vector<Lit> lits) {
    if (guard_all) lits.push_back(neg(*guard_all));
    cnf.add_clause(std::move(lits));
  };
  auto comp = [&](std::size_t a, std::size_t b) {
    Lit wa = wire[a], wb = wire[b];
    if (wb.code == 0) return;  // (wa, false) is already in order
    if (wa.code == 0) {
      wire[a] = wb;
      wire[b] = Lit{0};
      return;
    }
    ++net.comparators;
    Var hi = pool.fresh(aux_prefix + "[" + std::to_string(net.comparators) + "][1]");
    Var lo = pool.fresh(aux_prefix + "[" + std::to_string(net.comparators) + "][2]");
    net.auxiliaries.push_back(hi);
    net.auxiliaries.push_back(lo);
    add({~wa, pos(hi)});
    add({~wb, pos(hi)});
    add({~wa, ~wb, pos(lo)});
    wire[a] = pos(hi);
    wire[b] = pos(lo);
  };

  oe_sort(0, padded, comp);

  net.outputs.assign(wire.begin(), wire.begin() + static_cast<std::ptrdiff_t>(n));
  for (Lit l : net.outputs)
    if (l.code == 0) throw std::logic_error("real output wire collapsed to constant");
  return net;
}

}  // namespace ccard
