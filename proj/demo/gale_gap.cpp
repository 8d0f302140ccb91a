// Walks the semi-infinite gale family: closed-form values, the positive gap
// at beta = 0, finite truncations (ordinary LPs, so gap-free), and the
// slice witness.
#include <iostream>

#include "conicdual/conicdual.hpp"

using namespace conicdual;

int main() {
  std::cout << std::boolalpha;
  const std::pair<Rational, Rational> params[] = {{1, 0}, {Rational(5) / 2, 0}, {Rational(5) / 2, 1}, {3, 3}};

  std::cout << "alpha   beta   val(P)   val(D)   gap\n";
  for (const auto& [a, b] : params) {
    DualityReport r = gale_values(gale_problem(a, b));
    std::cout << to_string(a) << "\t" << to_string(b) << "\t" << r.primal.value.str() << "\t " << r.dual.value.str()
              << "\t  " << r.gap.str() << "\n";
  }

  // Truncating to x_0..x_n gives an ordinary LP. With beta = 0 its value
  // is alpha for every n; with beta > 0 it drops to 0 once n >= alpha/beta.
  Problem g = gale_problem(Rational(5) / 2, 1);
  std::cout << "\ntruncations of alpha = 5/2, beta = 1:\n";
  for (std::size_t n = 1; n <= 5; ++n)
    std::cout << "  n = " << n << "  val = " << val_primal(gale_truncate(g, n)).value.str() << "\n";

  // At beta = 0 the slice of H over z = 0 misses the point of N at height
  // v_D(0): the Farkas alternative breaks exactly there.
  Problem gap = gale_problem(1, 0);
  ConditionVerdict v = check_condition_D(gap);
  std::cout << "\ncondition on gale(1, 0): " << tri_name(v.holds) << " (" << justification_name(v.justification)
            << ")\n";
  if (v.witness)
    std::cout << "  witness " << v.witness->str() << ": in N " << member_N(gap, *v.witness) << ", in H "
              << member_H(gap, *v.witness) << "\n";

  FarkasVerdict f = farkas1(gap, gap.zero_z(), 0);
  std::cout << "  alternative at level 0: (a) " << f.a_holds << ", (b) " << f.b_holds << "\n";
}
