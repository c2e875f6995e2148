// Command-line front end. Reads input files and hands them to the C API.

#include "bkd/bkd.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string output;
  std::string format;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

bkd_format format_or(const Globals& g, bkd_format fallback) {
  if (g.format.empty()) return fallback;
  return g.format == "json" ? BKD_FORMAT_JSON : BKD_FORMAT_TEXT;
}

// Prints or writes the result and the error message, returns the exit code.
int finish(const Globals& g, bkd_status st, char* out) {
  std::string text = out ? out : "";
  bkd_string_free(out);
  if (st == BKD_INPUT_ERROR || st == BKD_INTERNAL_ERROR) {
    std::cerr << "error: " << bkd_last_error() << "\n";
    return st;
  }
  if (g.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.output, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << g.output << "\n";
      return BKD_INPUT_ERROR;
    }
    f << text;
  }
  return st;
}

int missing(const std::string& path) {
  std::cerr << "error: cannot read " << path << "\n";
  return BKD_INPUT_ERROR;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dihedral module cohomology and class number relation checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--output", g.output, "Write the report to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify-lemmas", "Run the randomized lemma suites (JSONL by default)");
  std::vector<int> primes{3};
  long trials = 100;
  std::vector<std::string> lemmas;
  unsigned threads = 0;
  std::string witness_dir;
  bool explore = false;
  verify->add_option("--p", primes, "Primes p (3, 5, 7, 11, 13)")->delimiter(',')->capture_default_str();
  verify->add_option("--trials", trials, "Trials per lemma and prime")->capture_default_str();
  verify->add_option("--lemma", lemmas, "Restrict to these lemma ids")->delimiter(',');
  verify->add_option("--threads", threads, "Worker threads (0: all cores)");
  verify->add_option("--witness-dir", witness_dir, "Directory for failure witness files");
  verify->add_flag("--explore-hypotheses", explore, "Also sample modules violating the torsion hypothesis");

  auto* regconst = app.add_subcommand("regconst", "Regulator constant of a paired lattice");
  std::string lattice_file;
  regconst->add_option("lattice", lattice_file, "Paired lattice JSON file")->required();

  auto* bk = app.add_subcommand("bk-check", "Check a field invariant bundle");
  std::string bundle_file;
  std::string tolerance = "1e-6";
  bk->add_option("bundle", bundle_file, "Bundle JSON file")->required();
  bk->add_option("--tolerance", tolerance, "Relative tolerance for the regulator checks")->capture_default_str();

  auto* split = app.add_subcommand("splitting", "Residue degrees, local factors and relation products");
  std::string places_file;
  int p = 3;
  long m = 2;
  std::vector<long> relation{1, -2, -1, 2};
  split->add_option("places", places_file, "Place list JSON file")->required();
  split->add_option("--p", p, "The prime p")->capture_default_str();
  split->add_option("--m", m, "Weight m")->capture_default_str();
  split->add_option("--relation", relation, "Coefficients on {1}, <sigma>, G, D")
      ->delimiter(',')
      ->expected(4)
      ->capture_default_str();

  auto* wnum = app.add_subcommand("wnum", "ell-part of a w-number from a cyclotomic character value");
  std::string ell;
  std::string kappa;
  long precision = 64;
  long wm = 1;
  wnum->add_option("--ell", ell, "The prime ell")->required();
  wnum->add_option("--kappa", kappa, "Value of the cyclotomic character")->required();
  wnum->add_option("--precision", precision, "Working precision in powers of ell")->capture_default_str();
  wnum->add_option("--m", wm, "Weight m")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : BKD_INPUT_ERROR;
  }

  char* out = nullptr;
  if (*verify) {
    nlohmann::json opts;
    opts["p"] = primes;
    opts["trials"] = trials;
    opts["seed"] = std::to_string(g.seed);
    opts["lemmas"] = lemmas;
    opts["threads"] = threads;
    opts["witness_dir"] = witness_dir;
    opts["explore_hypotheses"] = explore;
    bkd_status st = bkd_run_verify_lemmas(opts.dump().c_str(), format_or(g, BKD_FORMAT_JSON), &out);
    return finish(g, st, out);
  }
  if (*regconst) {
    std::string text;
    if (!read_file(lattice_file, text)) return missing(lattice_file);
    bkd_status st = bkd_run_regconst(text.c_str(), format_or(g, BKD_FORMAT_TEXT), &out);
    return finish(g, st, out);
  }
  if (*bk) {
    std::string text;
    if (!read_file(bundle_file, text)) return missing(bundle_file);
    bkd_status st = bkd_run_bk_check(text.c_str(), tolerance.c_str(), format_or(g, BKD_FORMAT_TEXT), &out);
    return finish(g, st, out);
  }
  if (*split) {
    std::string text;
    if (!read_file(places_file, text)) return missing(places_file);
    long rel[4] = {relation[0], relation[1], relation[2], relation[3]};
    bkd_status st = bkd_run_splitting(text.c_str(), p, m, rel, format_or(g, BKD_FORMAT_TEXT), &out);
    return finish(g, st, out);
  }
  bkd_status st = bkd_run_wnum(ell.c_str(), kappa.c_str(), precision, wm, format_or(g, BKD_FORMAT_TEXT), &out);
  return finish(g, st, out);
}
