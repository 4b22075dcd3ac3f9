// Union-find with the default variant (union-by-size, path compression), then
// the same operations replayed under the checking harness.
#include <iostream>

#include "ufpot/ufpot.hpp"

int main() {
  ufpot::disjoint_set d(8);
  d.unite(0, 1);
  d.unite(2, 3);
  d.unite(0, 2);
  std::cout << "root of 3: " << d.find(3) << ", set size: " << d.stored_size(d.find(3)) << '\n';

  const ufpot::trace t = ufpot::gen_random(64, 500, 7, 0.5);
  const ufpot::run_report r = ufpot::run_trace(t);
  std::cout << "checked " << r.find_paths << " find paths: " << (r.passed() ? "all checks passed" : "violations found")
            << '\n';
  for (const auto& s : r.summaries)
    std::cout << "  " << s.kind.name() << ": union increase " << s.gross_increase << ", find decrease "
              << s.total_delta_phi << '\n';
  return r.passed() ? 0 : 1;
}
