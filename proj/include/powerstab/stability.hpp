#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "powerstab/coefficients.hpp"
#include "powerstab/ideal.hpp"

namespace powerstab {

/// Index of the main variable X of a stability ring R[X]. Throws UsageError
/// when the ring has no main variable or has free variables.
std::size_t require_stability_ring(const Ring& ring);

/// Generators of I^t ∩ R. Over ZZ this is principal: `d` holds the
/// non-negative generator (0 when the contraction is zero).
struct ContractionResult {
  Ring ring;
  unsigned power = 1;
  std::vector<Polynomial> generators;
  std::optional<Integer> d;

  Ideal as_ideal(const GroebnerOptions& options = {}) const { return Ideal(ring, generators, options); }
};

ContractionResult contract_power(const Ideal& ideal, unsigned t);

struct Verdict {
  enum class Kind { StableUpTo, UnstableAt };
  Kind kind = Kind::StableUpTo;
  unsigned t = 0;

  /// "STABLE_UP_TO(4)" / "UNSTABLE_AT(2)".
  std::string to_string() const;
  static Verdict parse(std::string_view text);
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct PowerRecord {
  unsigned t = 0;
  std::vector<Polynomial> contraction;  // I^t ∩ R
  std::vector<Polynomial> base_power;   // reduced basis of (I ∩ R)^t
  bool equal = false;
};

struct StabilityReport {
  Ideal ideal;
  unsigned bound = 0;
  std::vector<PowerRecord> records;
  Verdict verdict;
  std::optional<Polynomial> witness;
  /// Names of certificates that license stability for all t ("monic", "regular-image").
  std::vector<std::string> certificates;

  bool stable() const { return verdict.kind == Verdict::Kind::StableUpTo; }
};

/// Compares I^t ∩ R with (I ∩ R)^t for t = 1..T and stops at the first
/// failure. With jobs > 1 the powers are computed concurrently; the report
/// is identical to the sequential one.
StabilityReport check_power_stable(const Ideal& ideal, unsigned T = 4, unsigned jobs = 1);

/// Re-checks a failure witness: w ∈ I^t, w free of X, w ∉ (I ∩ R)^t.
bool verify_witness(const Ideal& ideal, unsigned t, const Polynomial& witness);

struct CriterionRecord {
  unsigned n = 0;
  bool holds = true;
  std::optional<Polynomial> witness;  // in J^n ∩ I^{n+1} ∩ R but not in J^{n+1}
};

struct GradedCriterionReport {
  Ideal ideal;
  unsigned bound = 0;
  std::vector<CriterionRecord> records;

  bool holds() const;
  std::optional<unsigned> first_failure() const;
};

/// J^n ∩ (I^{n+1} ∩ R) = J^{n+1} for n = 0..N, with J = I ∩ R. Stops at
/// the first failure. n = 0 holds by definition of J.
GradedCriterionReport graded_criterion(const Ideal& ideal, unsigned N);

struct MonicCertificate {
  std::vector<Polynomial> base_generators;  // J
  Polynomial f;                             // monic in X, degree >= 1
  std::vector<std::string> transcript;
};

/// Looks for a generator f monic in X with every other generator in
/// id(J, f), J = the generators free of X. Sound, not complete.
std::optional<MonicCertificate> monic_certificate(const Ideal& ideal);

struct RegularImageCertificate {
  Integer d;
  Polynomial h;
  /// Smallest c > 0 with c*h ≡ 0 mod d equals d exactly when h is regular.
  Integer annihilator_bound;
  std::vector<std::string> transcript;
};

/// ZZ only: I = id(d, h) with d = I ∩ ZZ, and h regular in (ZZ/d)[X].
/// `reason` receives an explanation when no certificate is returned.
std::optional<RegularImageCertificate> regular_image_certificate(const Ideal& ideal, std::string* reason = nullptr);

/// Smallest c > 0 with c*h_i ≡ 0 mod d for every coefficient, i.e.
/// lcm_i(d / gcd(d, h_i)). For d = 0 returns 0 when h != 0.
Integer mccoy_annihilator(const Integer& d, const Polynomial& h);

struct ObstructionCertificate {
  Polynomial w;
  Polynomial q;
  unsigned t = 0;
  bool verified = false;  // w*q ∈ P^t, w ∉ P, q ∉ P^t all re-checked
};

/// Searches w in `witnesses` (ring variables when empty) with w ∉ P and a
/// generator q of (P^t : w) outside P^t. None means no obstruction found.
std::optional<ObstructionCertificate> primary_obstruction(const Ideal& prime, unsigned t,
                                                          std::vector<Polynomial> witnesses = {});

}  // namespace powerstab
