#pragma once

#include "kz/real.hpp"
#include "kz/series.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace kz {

// A periodic integer-valued sequence given by its residue table mod `modulus`.
class PeriodicCharacter {
 public:
  PeriodicCharacter(std::string name, std::vector<int> table);

  static const PeriodicCharacter& chi12();
  static const PeriodicCharacter& chi60_1();
  static const PeriodicCharacter& chi60_2();

  int operator()(std::int64_t n) const {
    std::int64_t r = n % modulus_;
    if (r < 0) r += modulus_;
    return table_[static_cast<std::size_t>(r)];
  }
  int modulus() const noexcept { return modulus_; }
  const std::string& name() const noexcept { return name_; }
  // max over N of |sum_{n<=N} chi(n)|; finite because each period sums to zero
  int partial_sum_bound() const noexcept { return partial_bound_; }
  bool is_odd() const;
  bool is_even() const;

 private:
  std::string name_;
  int modulus_;
  std::vector<int> table_;
  int partial_bound_ = 0;
};

int chi12(std::int64_t n);
int chi60(int which, std::int64_t n);  // which = 1 or 2

// L(2n+2, chi12) = coefficient * pi^{2n+2} / sqrt(3).
struct PiPowerMultiple {
  Rational coefficient;
  unsigned pi_power = 0;

  template <class R>
  R value() const;
};

PiPowerMultiple l_value_exact(unsigned n);

template <class R>
struct PartialSum {
  R value{0};
  R tail_bound{0};      // bound on the omitted terms n > terms
  R rounding_bound{0};  // bound on the accumulated rounding error
  R total_bound() const { return tail_bound + rounding_bound; }
};

// sum_{n=1}^{terms} chi(n) n^{-s}, s > 1.
template <class R>
PartialSum<R> l_series_partial(const PeriodicCharacter& chi, R s, std::uint64_t terms);

}  // namespace kz
