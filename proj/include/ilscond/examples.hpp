#pragma once

#include <map>
#include <string>
#include <utility>

#include "ilscond/problem.hpp"

namespace ilscond {

// A named closed-form value attached to a generated problem. Exact entries
// hold at every alpha; asymptotic entries are the alpha -> 0 limits and only
// approach the pipeline values as alpha shrinks.
enum class FormKind { Exact, Asymptotic };

struct ClosedForm {
  double value = 0.0;
  FormKind kind = FormKind::Exact;
};

struct ExampleExpectation {
  double alpha = 0.0;
  std::map<std::string, ClosedForm> values;
};

// The m=2, n=1 family: A = (cos(pi/4 - alpha), sin(pi/4 - alpha))^t,
// b = (1,1), J = diag(1,-1), norm_b = 0 (perturbations to A only). The
// published coefficient B = 2 csc(2 alpha) overestimates the true condition
// number chi_A = sec(alpha) by an arbitrarily large factor as alpha -> 0.
// Valid for 0 < alpha <= pi/4.
std::pair<IlsProblem, ExampleExpectation> example1(double alpha);

// The m=3, n=2 family with column scaling diag(1, 1/alpha), b = (1,1,1),
// J = diag(1,1,-1) and the customary normalizers. Here both lambda1 and
// lambda2 grow like 1/alpha, so bound (iv) uniformly overestimates even
// joint (A, b) perturbations. Valid for 0 < alpha <= pi/4.
std::pair<IlsProblem, ExampleExpectation> example2(double alpha);

}  // namespace ilscond
