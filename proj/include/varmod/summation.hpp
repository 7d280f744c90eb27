#pragma once

#include <complex>

namespace varmod {

// Kahan compensated accumulator. Summation order is part of the numerical
// contract: callers feed terms in grid node order so repeated evaluation is
// bit-identical.
class KahanSum {
 public:
  void add(double term) {
    const double y = term - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplexSum {
 public:
  void add(std::complex<double> term) {
    re_.add(term.real());
    im_.add(term.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

}  // namespace varmod
