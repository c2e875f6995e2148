#include "bkd/arith.hpp"

namespace bkd {

std::string place_kind_name(PlaceKind k) {
  switch (k) {
    case PlaceKind::Real:
      return "real";
    case PlaceKind::Complex:
      return "complex";
    case PlaceKind::Finite:
      return "finite";
  }
  return "?";
}

void PlaceData::validate(int p) const {
  int order = decomposition.order(p);
  switch (kind) {
    case PlaceKind::Real:
      if (order > 2)
        throw InputError("archimedean place with decomposition group " + decomposition.name() + " of order > 2");
      break;
    case PlaceKind::Complex:
      if (decomposition.kind != SubgroupKind::Trivial)
        throw InputError("complex place must have trivial decomposition group, got " + decomposition.name());
      break;
    case PlaceKind::Finite:
      if (ramified) throw InputError("ramified finite places are not supported");
      if (!is_prime(ell)) throw InputError("residue characteristic " + ell.get_str() + " is not prime");
      if (f < 1) throw InputError("residue degree f must be positive");
      if (!decomposition.is_cyclic())
        throw InputError("decomposition group of an unramified place must be cyclic, got " + decomposition.name());
      break;
  }
}

Subgroup fixing_subgroup(FieldId e) {
  switch (e) {
    case FieldId::k:
      return Subgroup::full();
    case FieldId::F:
      return Subgroup::rotation();
    case FieldId::K:
      return Subgroup::reflection(0);
    case FieldId::L:
      return Subgroup::trivial();
  }
  return Subgroup::trivial();
}

std::string field_name(FieldId e) {
  switch (e) {
    case FieldId::k:
      return "k";
    case FieldId::F:
      return "F";
    case FieldId::K:
      return "K";
    case FieldId::L:
      return "L";
  }
  return "?";
}

const std::vector<FieldId>& all_fields() {
  static const std::vector<FieldId> f{FieldId::k, FieldId::F, FieldId::K, FieldId::L};
  return f;
}

std::vector<int> residue_degrees(const DihedralGroup& d, const PlaceData& v, const Subgroup& h) {
  v.validate(d.p());
  return orbits_on_cosets(d, h, v.decomposition);
}

namespace {

void check_finite(const DihedralGroup& d, const PlaceData& v, long m) {
  if (v.kind != PlaceKind::Finite) throw InputError("local factors need a finite place");
  v.validate(d.p());
  if (v.ell == d.p()) throw InputError("place above p belongs to S'");
  if (m < 2) throw InputError("local factors need weight m >= 2");
}

Int residue_term(const PlaceData& v, int f_rel, long m) {
  Int x;
  mpz_pow_ui(x.get_mpz_t(), v.ell.get_mpz_t(), static_cast<unsigned long>(v.f * f_rel * (m - 1)));
  return x - 1;
}

template <typename Factor>
Rat assemble(const DihedralGroup& d, const RelationVector& rel, const Factor& factor) {
  Rat out = 1;
  for (const Subgroup& h : subgroup_class_representatives()) {
    long c = rel.coefficient(h.kind);
    if (c == 0) continue;
    Int x = factor(h);
    Int xc;
    mpz_pow_ui(xc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(c < 0 ? -c : c));
    out *= c < 0 ? Rat(Int(1), xc) : Rat(xc);
  }
  (void)d;
  return out;
}

}  // namespace

Int local_factor(const DihedralGroup& d, const PlaceData& v, const Subgroup& h, long m) {
  check_finite(d, v, m);
  Int out = 1;
  Int p = d.p();
  for (int f : residue_degrees(d, v, h)) out *= prime_part(residue_term(v, f, m), p);
  return out;
}

Int full_local_factor(const DihedralGroup& d, const PlaceData& v, const Subgroup& h, long m) {
  check_finite(d, v, m);
  Int out = 1;
  for (int f : residue_degrees(d, v, h)) out *= residue_term(v, f, m);
  return out;
}

Rat relation_product(const DihedralGroup& d, const PlaceData& v, long m, const RelationVector& rel) {
  return assemble(d, rel, [&](const Subgroup& h) { return local_factor(d, v, h, m); });
}

Rat full_relation_product(const DihedralGroup& d, const PlaceData& v, long m, const RelationVector& rel) {
  return assemble(d, rel, [&](const Subgroup& h) { return full_local_factor(d, v, h, m); });
}

const FieldSignature& SignatureReport::of(FieldId e) const {
  switch (e) {
    case FieldId::k:
      return k;
    case FieldId::F:
      return F;
    case FieldId::K:
      return K;
    case FieldId::L:
      return L;
  }
  return k;
}

long borel_rank(long r1, long r2, long m) {
  if (m == 1) return r1 + r2 - 1;
  return m % 2 ? r1 + r2 : r2;
}

long t_value(long r1, long r2, long m) {
  switch (((m % 4) + 4) % 4) {
    case 1:
      return 1;
    case 2:
      return r1 + r2;
    case 3:
      return r1;
    default:
      return r2;
  }
}

SignatureReport signatures(const DihedralGroup& d, const std::vector<PlaceData>& arch_places, long m) {
  if (m < 1) throw InputError("weight m must be positive");
  SignatureReport rep;
  rep.m = m;
  auto fill = [&](FieldId e, FieldSignature& sig) {
    Subgroup h = fixing_subgroup(e);
    for (const PlaceData& v : arch_places) {
      if (v.kind == PlaceKind::Finite) continue;
      v.validate(d.p());
      if (v.kind == PlaceKind::Complex) {
        sig.r2 += subgroup_index(d, h);
        continue;
      }
      for (int size : orbits_on_cosets(d, h, v.decomposition)) (size == 1 ? sig.r1 : sig.r2) += 1;
    }
    sig.rank = borel_rank(sig.r1, sig.r2, m);
    sig.t = t_value(sig.r1, sig.r2, m);
  };
  fill(FieldId::k, rep.k);
  fill(FieldId::F, rep.F);
  fill(FieldId::K, rep.K);
  fill(FieldId::L, rep.L);
  for (const PlaceData& v : arch_places)
    if (v.kind == PlaceKind::Real && v.decomposition.kind == SubgroupKind::Reflection) ++rep.r_F_over_k;
  return rep;
}

bool check_sign_cancellation(const SignatureReport& sig, const RelationVector& rel) {
  long total = rel.c_trivial * sig.L.t + rel.c_reflection * sig.K.t + rel.c_rotation * sig.F.t + rel.c_full * sig.k.t;
  return total % 2 == 0;
}

long alpha_from_signatures(const SignatureReport& sig) { return sig.F.rank - sig.k.rank; }

RatMultiplicities higher_dirichlet_decomposition(const DihedralGroup& d, const std::vector<PlaceData>& arch_places,
                                                 long m) {
  RatMultiplicities out;
  auto add = [&](long a, long b, long c) {
    out.m_triv += a;
    out.m_sign += b;
    out.m_omega += c;
  };
  for (const PlaceData& v : arch_places) {
    if (v.kind == PlaceKind::Finite) continue;
    v.validate(d.p());
    bool split = v.decomposition.kind == SubgroupKind::Trivial;
    if (m % 2) {
      // Ind from D_v of the trivial character
      split ? add(1, 1, 2) : add(1, 0, 1);
    } else if (v.kind == PlaceKind::Complex) {
      add(1, 1, 2);
    } else if (!split) {
      add(0, 1, 1);  // Ind of the sign character of D_v
    }
  }
  if (m == 1) {
    if (out.m_triv == 0) throw InputError("no archimedean places given");
    --out.m_triv;
  }
  return out;
}

Int w_number_part(const Int& ell, const Int& kappa, long precision, long m) {
  if (ell == 2) throw InputError("2-parts of w-numbers must be supplied directly");
  if (!is_prime(ell)) throw InputError(ell.get_str() + " is not an odd prime");
  if (precision < 1 || m < 1) throw InputError("precision and m must be positive");
  if (kappa % ell == 0) throw InputError("kappa must be a unit modulo " + ell.get_str());
  Int mod;
  mpz_pow_ui(mod.get_mpz_t(), ell.get_mpz_t(), static_cast<unsigned long>(precision));
  Int x;
  mpz_powm_ui(x.get_mpz_t(), kappa.get_mpz_t(), static_cast<unsigned long>(m), mod.get_mpz_t());
  x -= 1;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  if (x == 0)
    throw InputError("increase precision: kappa^m = 1 modulo " + ell.get_str() + "^" + std::to_string(precision));
  return prime_part(x, ell);
}

}  // namespace bkd
