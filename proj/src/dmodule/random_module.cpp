#include <algorithm>

#include "bkd/dmodule.hpp"

namespace bkd {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& w : s_) w = splitmix64(seed);
}

std::uint64_t Rng::next() {
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

long Rng::uniform(long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

namespace {

enum class Block { One, Eps, Regular, PermReflection, PermRotation, IndEpsReflection, Omega, OmegaEps, OmegaAug };

std::size_t block_rank(Block b, int p) {
  switch (b) {
    case Block::One:
    case Block::Eps:
      return 1;
    case Block::Regular:
      return static_cast<std::size_t>(2 * p);
    case Block::PermReflection:
    case Block::IndEpsReflection:
      return static_cast<std::size_t>(p);
    case Block::PermRotation:
      return 2;
    case Block::Omega:
    case Block::OmegaEps:
    case Block::OmegaAug:
      return static_cast<std::size_t>(p - 1);
  }
  return 0;
}

DModule make_block(Block b, int p, const Coefficients& ring) {
  switch (b) {
    case Block::One:
      return trivial_module(p, ring);
    case Block::Eps:
      return sign_module(p, ring);
    case Block::Regular:
      return regular_module(p, ring);
    case Block::PermReflection:
      return reflection_permutation_module(p, ring);
    case Block::PermRotation:
      return rotation_permutation_module(p, ring);
    case Block::IndEpsReflection: {
      DModule perm = reflection_permutation_module(p, ring);
      return DModule(p, ring, perm.relations().basis(), perm.T(), perm.S().scaled(-1));
    }
    case Block::Omega:
      return omega_module(p, ring);
    case Block::OmegaEps: {
      DModule om = omega_module(p, ring);
      return DModule(p, ring, om.relations().basis(), om.T(), om.S().scaled(-1));
    }
    case Block::OmegaAug: {
      DModule perm = reflection_permutation_module(p, ring);
      auto n = static_cast<std::size_t>(p);
      IntMatrix gens(n, n - 1);
      for (std::size_t i = 1; i < n; ++i) {
        gens(0, i - 1) = -1;
        gens(i, i - 1) = 1;
      }
      return submodule_as_module(perm, Lattice::span(gens));
    }
  }
  throw std::logic_error("unknown block");
}

IntVector random_vector(Rng& rng, std::size_t n, long bound) {
  IntVector v(n);
  for (auto& x : v) x = rng.uniform(-bound, bound);
  return v;
}

// Product of random elementary matrices.
IntMatrix random_unimodular(Rng& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    u.add_col_multiple(i, j, Int(rng.uniform(-2, 2)));
  }
  return u;
}

bool has(const std::vector<Constraint>& cs, Constraint c) { return std::find(cs.begin(), cs.end(), c) != cs.end(); }

// A prime-power or composite exponent for the torsion, bounded by `bound`.
Int torsion_exponent(Rng& rng, const GeneratorOptions& o) {
  long bound = std::max(2L, o.torsion_bound);
  if (o.ring.ell) {
    Int e = *o.ring.ell;
    while (e * *o.ring.ell <= bound && rng.coin()) e *= *o.ring.ell;
    return e;
  }
  // Bias towards p and 2, which are the primes where the action matters.
  switch (rng.uniform(0, 3)) {
    case 0: {
      Int e = o.p;
      while (e * o.p <= bound && rng.coin()) e *= o.p;
      return e;
    }
    case 1:
      return std::min<long>(bound, 2L << rng.uniform(0, 2));
    case 2:
      return std::min<long>(bound, 2L * o.p);
    default:
      return rng.uniform(2, bound);
  }
}

}  // namespace

DModule random_dmodule(const GeneratorOptions& o, std::uint64_t seed) {
  const auto& cs = o.constraints;
  bool finite = has(cs, Constraint::Finite);
  bool torsion_free = has(cs, Constraint::TorsionFree);
  if (finite && torsion_free) throw InputError("constraints FINITE and TORSION_FREE cannot both hold");
  int p = o.p;
  Rng rng(seed);

  // 1. Direct sum of standard lattices.
  static const Block kBlocks[] = {Block::One,          Block::Eps,
                                  Block::Regular,      Block::PermReflection,
                                  Block::PermRotation, Block::IndEpsReflection,
                                  Block::Omega,        Block::OmegaEps,
                                  Block::OmegaAug};
  std::size_t bound = std::max<std::size_t>(o.rank_bound, 1);
  std::vector<Block> chosen;
  std::size_t rank = 0;
  long attempts = rng.uniform(1, 4);
  for (long a = 0; a < 3 * attempts && static_cast<long>(chosen.size()) < attempts; ++a) {
    Block b = kBlocks[rng.uniform(0, 8)];
    if (rank + block_rank(b, p) > bound) continue;
    chosen.push_back(b);
    rank += block_rank(b, p);
  }
  if (chosen.empty()) chosen.push_back(rng.coin() ? Block::One : Block::Eps);

  DModule m = make_block(chosen[0], p, o.ring);
  for (std::size_t i = 1; i < chosen.size(); ++i) m = direct_sum(m, make_block(chosen[i], p, o.ring));
  std::size_t n = m.generators();

  // 2. Sometimes pass to a D-stable sublattice of finite index.
  if (rng.uniform(0, 2) == 0) {
    IntMatrix gens(n, 1);
    gens.set_column(0, random_vector(rng, n, 2));
    Int c = rng.coin() ? Int(p) : Int(2);
    Lattice sub = generated_submodule(m, hstack(gens, IntMatrix::identity(n).scaled(c)));
    m = submodule_as_module(m, sub);
  }

  // 3. Relations R = e W + (D-span of random vectors of W), W saturated and D-stable.
  IntMatrix rel(n, 0);
  if (!torsion_free) {
    Lattice w;
    if (finite) {
      w = Lattice::full(n);
    } else {
      IntMatrix seeds(n, 0);
      long k = rng.uniform(0, 2);
      for (long i = 0; i < k; ++i) {
        IntMatrix v(n, 1);
        v.set_column(0, random_vector(rng, n, 2));
        seeds = hstack(seeds, v);
      }
      w = saturation(generated_submodule(m, seeds));
    }
    if (w.rank()) {
      Int e = torsion_exponent(rng, o);
      IntMatrix extra(n, 0);
      long k = rng.uniform(0, 2);
      for (long i = 0; i < k; ++i) {
        IntVector c = random_vector(rng, w.rank(), 3);
        IntMatrix v(n, 1);
        v.set_column(0, w.basis() * c);
        extra = hstack(extra, v);
      }
      Lattice r = generated_submodule(m, hstack(w.basis().scaled(e), extra));
      rel = r.basis();
    }
  }
  DModule cur(p, Coefficients::integers(), rel, m.T(), m.S());

  auto add_relations = [&](const IntMatrix& more) {
    cur = DModule(p, Coefficients::integers(), hstack(cur.relations().basis(), more), cur.T(), cur.S());
  };

  // 4. Enforce the torsion constraints.
  if (o.ring.ell && cur.relations().rank()) {
    FinAbGroup tor = torsion_part(cur);
    if (!tor.torsion().empty()) {
      Int a = prime_part(tor.torsion().back(), *o.ring.ell);
      add_relations(torsion_lattice(cur).basis().scaled(a));
    }
  }
  if (has(cs, Constraint::TorsionGTrivial) && cur.relations().rank()) {
    IntMatrix id = IntMatrix::identity(n);
    add_relations((cur.T() - id) * torsion_lattice(cur).basis());
  }
  if (has(cs, Constraint::TorsionCyclic) && cur.relations().rank()) {
    if (!has(cs, Constraint::TorsionGTrivial)) {
      IntMatrix id = IntMatrix::identity(n);
      add_relations((cur.T() - id) * torsion_lattice(cur).basis());
    }
    FinAbGroup tor = torsion_part(cur);
    if (!tor.torsion().empty()) {
      // Make sigma act on the p-part by a scalar, then keep one cyclic factor.
      Int cof = prime_to_part(tor.torsion().back(), Int(p));
      long sign = rng.coin() ? 1 : -1;
      IntMatrix id = IntMatrix::identity(n);
      add_relations((id - cur.S().scaled(sign)) * torsion_lattice(cur).basis().scaled(cof));
      Subquotient sq(torsion_lattice(cur), cur.relations());
      std::vector<std::size_t> ppart;
      for (std::size_t i = 0; i < sq.orders().size(); ++i)
        if (sq.orders()[i] % p == 0) ppart.push_back(i);
      if (ppart.size() > 1) {
        IntMatrix kill(n, ppart.size() - 1);
        for (std::size_t k = 0; k + 1 < ppart.size(); ++k) {
          std::size_t i = ppart[k];
          Int c = prime_to_part(sq.orders()[i], Int(p));
          kill.set_column(k, sq.generators().scaled(c).column(i));
        }
        add_relations(kill);
      }
    }
  }

  // 5. Random change of presentation.
  IntMatrix u = random_unimodular(rng, n);
  DModule out = change_of_basis(cur, u);
  return DModule(p, o.ring, out.relations().basis(), out.T(), out.S());
}

}  // namespace bkd
