// A two-variable LP read as a conic pair: perturbed values, membership in
// the value-function sets, a separating hyperplane and a Farkas certificate.
#include <iostream>

#include "conicdual/conicdual.hpp"

using namespace conicdual;

int main() {
  std::cout << std::boolalpha;
  // min x1 + 2 x2  s.t.  x1 + x2 >= 2,  x >= 0.
  Problem p = Problem::finite(LinearMap::matrix({Vector::dense({1, 1})}, 2), Vector::dense({2}),
                              Vector::dense({1, 2}), Cone::orthant(2), Cone::orthant(1));

  DualityReport r = strong_duality1(p, p.zero_z());
  std::cout << "val(P) = " << r.primal.value.str() << ", val(D) = " << r.dual.value.str() << ", gap "
            << r.gap.str() << "\n";

  // Shifting the row by z moves the optimum: v_D(z) = max(0, 2 + z).
  for (int k = -2; k <= 2; ++k) {
    Vector z = Vector::dense({Rational(k)});
    std::cout << "  v_D(" << k << ") = " << v_D(p, z).value.str() << "\n";
  }

  SetPoint below{Vector::dense({1}), 1};
  std::cout << "\npoint " << below.str() << ": in N " << member_N(p, below) << ", in H " << member_H(p, below)
            << "\n";
  Separator s = separate_from_N(p, below);
  std::cout << "  separator functional " << s.functional.str() << ", beta " << to_string(s.beta) << ", gamma "
            << to_string(s.gamma) << ", verified " << verify_separator_N(p, below, s) << "\n";

  // Level 3 sits at the optimum: (b) holds and returns a primal point.
  FarkasVerdict f = farkas1(p, p.zero_z(), 3);
  std::cout << "\nlevel 3: (a) " << f.a_holds << ", (b) " << f.b_holds;
  if (f.b_witness) std::cout << ", primal point " << f.b_witness->str();
  std::cout << "\n";
  f = farkas1(p, p.zero_z(), 1);
  std::cout << "level 1: (a) " << f.a_holds << ", (b) " << f.b_holds;
  if (f.a_failure) std::cout << ", dual point beating it " << f.a_failure->str();
  std::cout << "\n";
}
