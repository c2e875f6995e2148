#include "bkd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <thread>

namespace bkd {

namespace {

enum class Status { Pass, Fail, Skip, Error, Holds, Violation };

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skip:
      return "skip";
    case Status::Error:
      return "error";
    case Status::Holds:
      return "holds";
    case Status::Violation:
      return "violation";
  }
  return "?";
}

struct Outcome {
  Status status = Status::Pass;
  Json line;
};

struct Job {
  int p;
  std::size_t lemma;
  long trial;
};

int other_odd_prime(int p) { return p == 3 ? 5 : 3; }

GeneratorOptions options_for(const std::string& lemma, int p) {
  GeneratorOptions o;
  o.p = p;
  o.rank_bound = static_cast<std::size_t>(2 * p + 4);
  o.torsion_bound = 27;
  o.ring = Coefficients::local(p);
  if (lemma == "tate-order-ratio" || lemma == "fixed-point-sequence") {
    o.constraints = {Constraint::Finite};
  } else if (lemma == "cohomology-indices" || lemma == "augmentation-fixed") {
    o.constraints = {Constraint::TorsionGTrivial};
  } else if (lemma == "cohomology-indices:explore" || lemma == "augmentation-fixed:explore") {
    o.constraints = {};
  } else if (lemma == "coprime-index") {
    o.ring = Coefficients::local(other_odd_prime(p));
  } else if (lemma == "restriction") {
    o.ring = Coefficients::local(2);
    o.constraints = {Constraint::Finite};
    o.rank_bound = 6;
    o.torsion_bound = 4;
  } else if (lemma == "oracle") {
    o.ring = Coefficients::integers();
    o.constraints = {Constraint::Finite};
    o.rank_bound = p == 3 ? 8 : 6;
    o.torsion_bound = 12;
  } else if (lemma == "regulator-constant" || lemma == "pairing-independence") {
    o.ring = Coefficients::integers();
    o.constraints = {Constraint::TorsionFree};
  } else if (lemma == "lambda-2part" || lemma == "unit-index-lambda:explore") {
    o.ring = Coefficients::integers();
  } else if (lemma == "unit-index-lambda" || lemma == "u-p-power") {
    o.ring = Coefficients::integers();
    o.constraints = {Constraint::TorsionCyclic};
  }
  return o;
}

const std::vector<std::string>& exploratory_ids() {
  static const std::vector<std::string> ids{"cohomology-indices:explore", "augmentation-fixed:explore",
                                            "unit-index-lambda:explore"};
  return ids;
}

Json instance_to_json(const IndexInstance& x) {
  auto cols = [](const IntMatrix& m) {
    Json out = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Json v = Json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) v.push_back(int_to_json(m(r, c)));
      out.push_back(std::move(v));
    }
    return out;
  };
  Json j;
  j["relations"] = cols(x.relations);
  j["subgroup"] = cols(x.c_gens);
  j["f"] = cols(x.f);
  j["target_relations"] = cols(x.target_relations);
  return j;
}

// Runs one verifier; the reports it produces share the trial metadata.
std::vector<Outcome> run_job(const std::string& lemma, int p, long trial, std::uint64_t seed) {
  bool exploratory = lemma.find(':') != std::string::npos;
  Json base;
  base["lemma"] = lemma;
  base["p"] = p;
  base["trial"] = trial;
  base["seed"] = std::to_string(seed);

  std::vector<LemmaReport> reports;
  std::optional<Json> subject;
  try {
    if (lemma == "index") {
      IndexInstance x = random_index_instance(seed);
      subject = instance_to_json(x);
      reports.push_back(verify_index_lemma(x.relations, x.c_gens, x.f, x.target_relations));
    } else {
      GeneratorOptions o = options_for(lemma, p);
      base["generator"] = generator_to_json(o);
      DModule m = random_dmodule(o, seed);
      subject = module_to_json(m);
      if (lemma == "tate-order-ratio") {
        for (long j = -2; j <= 2; ++j) reports.push_back(verify_tate_order_ratio(m, j));
      } else if (lemma == "reflection-span") {
        reports.push_back(verify_reflection_span(m));
      } else if (lemma == "fixed-pth-powers") {
        reports.push_back(verify_fixed_pth_powers(m));
      } else if (lemma == "fixed-point-sequence") {
        reports.push_back(verify_fixed_point_sequence(m));
      } else if (lemma == "cohomology-indices" || lemma == "cohomology-indices:explore") {
        reports.push_back(verify_cohomology_indices(m, !exploratory));
      } else if (lemma == "augmentation-fixed" || lemma == "augmentation-fixed:explore") {
        reports.push_back(verify_augmentation_fixed(m, !exploratory));
      } else if (lemma == "coprime-index") {
        reports.push_back(verify_coprime_index(m));
      } else if (lemma == "restriction") {
        reports.push_back(verify_restriction(m));
      } else if (lemma == "oracle") {
        reports.push_back(verify_cohomology_oracle(m));
      } else if (lemma == "regulator-constant") {
        reports.push_back(verify_regulator_index(invariant_pairing_from_seed(m, seed)));
      } else if (lemma == "pairing-independence") {
        reports.push_back(verify_pairing_independence(m, seed, seed ^ 0x5bd1e995ULL));
      } else if (lemma == "lambda-2part") {
        reports.push_back(verify_lambda_2part(m));
      } else if (lemma == "unit-index-lambda") {
        reports.push_back(verify_unit_index_lambda(m));
      } else if (lemma == "unit-index-lambda:explore") {
        reports.push_back(verify_unit_index_lambda(m, false));
      } else if (lemma == "u-p-power") {
        reports.push_back(verify_u_m(m, seed));
      } else {
        throw std::logic_error("unknown lemma " + lemma);
      }
    }
  } catch (const SizeBoundExceeded& e) {
    Outcome o{Status::Skip, base};
    o.line["status"] = status_name(Status::Skip);
    o.line["reason"] = e.what();
    return {o};
  } catch (const std::exception& e) {
    // exploratory runs may hit inputs outside a verifier's domain
    Status s = exploratory ? Status::Skip : Status::Error;
    Outcome o{s, base};
    o.line["status"] = status_name(s);
    o.line["reason"] = e.what();
    if (subject && s == Status::Error) o.line["subject"] = *subject;
    return {o};
  }

  std::vector<Outcome> out;
  for (const LemmaReport& r : reports) {
    Status s = exploratory ? (r.pass ? Status::Holds : Status::Violation) : (r.pass ? Status::Pass : Status::Fail);
    Outcome o{s, base};
    Json rj = report_to_json(r);
    o.line["status"] = status_name(s);
    o.line["lhs"] = rj["lhs"];
    o.line["rhs"] = rj["rhs"];
    o.line["details"] = rj["details"];
    if (!r.pass && subject) o.line["subject"] = *subject;
    out.push_back(std::move(o));
  }
  return out;
}

void write_witness(const std::string& dir, const Json& line, std::size_t index) {
  std::filesystem::create_directories(dir);
  std::string name = line["lemma"].get<std::string>();
  std::replace(name.begin(), name.end(), ':', '-');
  name += "-p" + std::to_string(line["p"].get<int>()) + "-t" + std::to_string(line["trial"].get<long>()) + "-" +
          std::to_string(index) + ".json";
  std::ofstream f(std::filesystem::path(dir) / name);
  if (!f) throw InputError("cannot write witness file in " + dir);
  f << line.dump(2) << "\n";
}

}  // namespace

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"index",
                                            "tate-order-ratio",
                                            "reflection-span",
                                            "fixed-pth-powers",
                                            "fixed-point-sequence",
                                            "cohomology-indices",
                                            "augmentation-fixed",
                                            "coprime-index",
                                            "restriction",
                                            "oracle",
                                            "regulator-constant",
                                            "pairing-independence",
                                            "lambda-2part",
                                            "unit-index-lambda",
                                            "u-p-power"};
  return ids;
}

std::string constraint_name(Constraint c) {
  switch (c) {
    case Constraint::Finite:
      return "FINITE";
    case Constraint::TorsionGTrivial:
      return "TORSION_G_TRIVIAL";
    case Constraint::TorsionFree:
      return "TORSION_FREE";
    case Constraint::TorsionCyclic:
      return "TORSION_CYCLIC";
  }
  return "?";
}

Json generator_to_json(const GeneratorOptions& o) {
  Json j;
  j["p"] = o.p;
  j["ring"] = o.ring.name();
  j["rank_bound"] = o.rank_bound;
  j["torsion_bound"] = o.torsion_bound;
  Json cs = Json::array();
  for (Constraint c : o.constraints) cs.push_back(constraint_name(c));
  j["constraints"] = std::move(cs);
  return j;
}

GeneratorOptions generator_from_json(const Json& j) {
  GeneratorOptions o;
  if (!j.is_object()) throw InputError("generator options: expected an object");
  if (j.contains("p")) o.p = static_cast<int>(int_from_json(j.at("p"), "generator.p").get_si());
  if (j.contains("ring")) o.ring = ring_from_string(j.at("ring").get<std::string>());
  if (j.contains("rank_bound")) o.rank_bound = int_from_json(j.at("rank_bound"), "generator.rank_bound").get_ui();
  if (j.contains("torsion_bound"))
    o.torsion_bound = int_from_json(j.at("torsion_bound"), "generator.torsion_bound").get_si();
  if (j.contains("constraints")) {
    for (const Json& c : j.at("constraints")) {
      std::string s = c.is_string() ? c.get<std::string>() : "";
      bool found = false;
      for (Constraint k :
           {Constraint::Finite, Constraint::TorsionGTrivial, Constraint::TorsionFree, Constraint::TorsionCyclic})
        if (constraint_name(k) == s) {
          o.constraints.push_back(k);
          found = true;
        }
      if (!found) throw InputError("unknown constraint '" + s + "'");
    }
  }
  return o;
}

std::uint64_t trial_seed(std::uint64_t seed, int p, std::size_t lemma, long trial) {
  Rng mix(seed);
  std::uint64_t x = mix.next();
  x ^= (static_cast<std::uint64_t>(p) << 48) ^ (static_cast<std::uint64_t>(lemma) << 32) ^
       static_cast<std::uint64_t>(trial);
  return Rng(x).next();
}

IndexInstance random_index_instance(std::uint64_t seed, long max_order) {
  Rng rng(seed);
  auto n = static_cast<std::size_t>(rng.uniform(1, 3));
  IntVector d(n);
  Int order = 1;
  for (auto& x : d) {
    long bound = std::max(1L, std::min(16L, max_order / static_cast<long>(order.get_si())));
    x = rng.uniform(1, bound);
    order *= x;
  }
  auto n2 = static_cast<std::size_t>(rng.uniform(1, 3));
  IntVector e(n2);
  for (auto& x : e) x = rng.uniform(1, 16);

  IndexInstance out;
  out.relations = IntMatrix::diagonal(d);
  out.target_relations = IntMatrix::diagonal(e);
  auto k = static_cast<std::size_t>(rng.uniform(0, 3));
  out.c_gens = IntMatrix(n, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) out.c_gens(r, c) = rng.uniform(0, 15);
  out.f = IntMatrix(n2, n);
  for (std::size_t r = 0; r < n2; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Int g = gcd(e[r], d[c]);
      out.f(r, c) = Int(e[r] / g) * rng.uniform(0, e[r].get_si());
    }
  return out;
}

HarnessResult run_lemma_suite(const HarnessOptions& opts) {
  for (int p : opts.primes)
    if (p != 3 && p != 5 && p != 7 && p != 11 && p != 13)
      throw InputError("p must be one of 3, 5, 7, 11, 13 (got " + std::to_string(p) + ")");
  std::vector<std::string> selected;
  for (const std::string& id : lemma_ids())
    if (opts.lemmas.empty() || std::find(opts.lemmas.begin(), opts.lemmas.end(), id) != opts.lemmas.end())
      selected.push_back(id);
  for (const std::string& id : opts.lemmas)
    if (std::find(lemma_ids().begin(), lemma_ids().end(), id) == lemma_ids().end())
      throw InputError("unknown lemma '" + id + "'");
  if (opts.explore_hypotheses)
    for (const std::string& id : exploratory_ids()) {
      std::string root = id.substr(0, id.find(':'));
      if (opts.lemmas.empty() || std::find(opts.lemmas.begin(), opts.lemmas.end(), root) != opts.lemmas.end())
        selected.push_back(id);
    }
  if (opts.trials < 0) throw InputError("trials must be nonnegative");

  std::vector<Job> jobs;
  for (int p : opts.primes)
    for (long t = 0; t < opts.trials; ++t)
      for (std::size_t l = 0; l < selected.size(); ++l) jobs.push_back({p, l, t});

  std::vector<std::vector<Outcome>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      const std::string& id = selected[job.lemma];
      // seeds are keyed by the lemma's position in the full list, so
      // filtering does not change them
      auto pos = static_cast<std::size_t>(std::find(lemma_ids().begin(), lemma_ids().end(), id) - lemma_ids().begin());
      if (pos == lemma_ids().size())
        pos = 100 + static_cast<std::size_t>(std::find(exploratory_ids().begin(), exploratory_ids().end(), id) -
                                             exploratory_ids().begin());
      results[i] = run_job(id, job.p, job.trial, trial_seed(opts.seed, job.p, pos, job.trial));
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  HarnessResult out;
  for (auto& group : results)
    for (std::size_t k = 0; k < group.size(); ++k) {
      Outcome& o = group[k];
      switch (o.status) {
        case Status::Pass:
          ++out.checks;
          break;
        case Status::Fail:
        case Status::Error:
          ++out.checks;
          ++out.failures;
          if (!opts.witness_dir.empty()) write_witness(opts.witness_dir, o.line, k);
          break;
        case Status::Skip:
          ++out.skipped;
          break;
        case Status::Holds:
          break;
        case Status::Violation:
          ++out.violations;
          break;
      }
      out.lines.push_back(std::move(o.line));
    }
  return out;
}

}  // namespace bkd
