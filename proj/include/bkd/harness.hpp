#pragma once

// Randomized property suite over all verifiers. Trials run on a thread pool
// but reports come out in a fixed order, so the output depends only on the
// options.

#include <cstdint>
#include <string>
#include <vector>

#include "bkd/io.hpp"

namespace bkd {

/// Identifiers accepted by the lemma filter, in report order.
const std::vector<std::string>& lemma_ids();

struct HarnessOptions {
  std::vector<int> primes{3};
  long trials = 100;
  std::uint64_t seed = 0;
  std::vector<std::string> lemmas;  // empty: all
  unsigned threads = 0;             // 0: hardware concurrency
  std::string witness_dir;          // failures are also written here when set
  bool explore_hypotheses = false;  // also run the torsion-hypothesis lemmas without the hypothesis
};

struct HarnessResult {
  std::vector<Json> lines;
  long checks = 0;
  long failures = 0;
  long skipped = 0;
  long violations = 0;  // exploratory runs only; never failures
};

HarnessResult run_lemma_suite(const HarnessOptions& opts);

/// A random finite abelian group B = Z^n / diag(d), subgroup generators and a
/// well-defined homomorphism into Z^n' / diag(e).
struct IndexInstance {
  IntMatrix relations;
  IntMatrix c_gens;
  IntMatrix f;
  IntMatrix target_relations;
};
IndexInstance random_index_instance(std::uint64_t seed, long max_order = 512);

std::string constraint_name(Constraint c);
Json generator_to_json(const GeneratorOptions& o);
GeneratorOptions generator_from_json(const Json& j);

/// Seed of one trial, mixed from the run seed and the trial coordinates.
std::uint64_t trial_seed(std::uint64_t seed, int p, std::size_t lemma, long trial);

}  // namespace bkd
