// Kostant partition function of B2: decomposition, chambers and one formula per chamber.
#include <iostream>

#include "vpf/vpf.hpp"

int main() {
  using namespace vpf;
  const RootSystem b2 = positive_roots('B', 2);
  const FractionSum gf = kostant_input('B', 2);

  const PfdResult pfd = decompose(gf, Strategy::classical('B', 2));
  std::cout << fraction_sum_latex(pfd.fractions) << "\n";

  const ChamberComplex cx = chambers(b2.positive_roots);
  const auto formulas = all_chamber_formulas(b2.positive_roots, Strategy::min_abs(), &cx);
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    std::cout << "chamber " << i << ":";
    for (const auto& g : formulas[i].chamber.generators) std::cout << " " << g.str();
    std::cout << "\n  " << formulas[i].formula.latex() << "\n";
  }
  const IntVector gamma{4, 6};
  std::cout << "P(4,6) = " << vpf_bruteforce(b2.positive_roots, gamma).get_str() << "\n";
}
