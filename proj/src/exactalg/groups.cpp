#include <sstream>

#include "bkd/exactalg.hpp"

namespace bkd {

const Int& ExtNat::value() const {
  if (!value_) throw std::logic_error("value of an infinite quantity");
  return *value_;
}

std::string ExtNat::to_string() const { return value_ ? value_->get_str() : "INFINITE"; }

FinAbGroup FinAbGroup::from_cyclic_orders(const IntVector& orders) {
  FinAbGroup g;
  IntVector finite;
  for (const Int& d : orders) {
    if (d == 0)
      ++g.free_rank_;
    else if (abs(d) != 1)
      finite.push_back(abs(d));
  }
  if (finite.empty()) return g;
  // Smith form of the diagonal matrix puts the factors in divisibility order.
  for (const Int& d : smith_invariants(IntMatrix::diagonal(finite)))
    if (d != 1) g.torsion_.push_back(d);
  return g;
}

ExtNat FinAbGroup::order() const {
  if (free_rank_) return ExtNat::infinite();
  return ExtNat(torsion_order());
}

Int FinAbGroup::torsion_order() const {
  Int o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

FinAbGroup FinAbGroup::local_part(const Int& ell) const {
  IntVector orders;
  for (const auto& d : torsion_) orders.push_back(prime_part(d, ell));
  FinAbGroup g = from_cyclic_orders(orders);
  g.free_rank_ = free_rank_;
  return g;
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < free_rank_; ++i) {
    os << (first ? "" : " + ") << "Z";
    first = false;
  }
  for (const auto& d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  IntVector orders = a.torsion_;
  orders.insert(orders.end(), b.torsion_.begin(), b.torsion_.end());
  FinAbGroup g = FinAbGroup::from_cyclic_orders(orders);
  g.free_rank_ = a.free_rank_ + b.free_rank_;
  return g;
}

unsigned valuation(const Int& value, const Int& prime) {
  if (value == 0) throw std::logic_error("valuation of zero");
  Int v = abs(value);
  unsigned k = 0;
  while (mpz_divisible_p(v.get_mpz_t(), prime.get_mpz_t())) {
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prime.get_mpz_t());
    ++k;
  }
  return k;
}

Int prime_part(const Int& value, const Int& prime) {
  if (value == 0) return 0;
  Int r;
  mpz_pow_ui(r.get_mpz_t(), prime.get_mpz_t(), valuation(value, prime));
  return r;
}

Int prime_to_part(const Int& value, const Int& prime) {
  if (value == 0) return 0;
  Int r;
  mpz_divexact(r.get_mpz_t(), Int(abs(value)).get_mpz_t(), prime_part(value, prime).get_mpz_t());
  return r;
}

bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::optional<long> prime_power_exponent(const Rat& q, const Int& prime) {
  if (q <= 0) return std::nullopt;
  const Int& num = q.get_num();
  const Int& den = q.get_den();
  if (num != 1 && den != 1) return std::nullopt;
  if (num == 1 && den == 1) return 0L;
  const Int& m = num == 1 ? den : num;
  unsigned k = valuation(m, prime);
  if (prime_part(m, prime) != m) return std::nullopt;
  return num == 1 ? -static_cast<long>(k) : static_cast<long>(k);
}

Rat rat_power(const Int& base, long exponent) {
  Int p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rat(Int(1), p) : Rat(p);
}

std::vector<Int> prime_divisors(Int n) {
  n = abs(n);
  std::vector<Int> out;
  if (n == 0) return out;
  for (Int d = 2; d * d <= n; ++d) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      out.push_back(d);
      while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace bkd
