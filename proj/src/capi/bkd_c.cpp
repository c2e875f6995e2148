#include <cstdlib>
#include <cstring>
#include <string>

#include "bkd/bkd.h"
#include "bkd/commands.hpp"
#include "bkd/tate.hpp"

struct bkd_module {
  bkd::DModule value;
};
struct bkd_lattice {
  bkd::PairedLattice value;
};
struct bkd_bundle {
  bkd::FieldInvariantBundle value;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, translating exceptions into status codes and the thread's last error.
template <typename F>
bkd_status call(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const bkd::InputError& e) {
    last_error = e.what();
    return BKD_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BKD_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return BKD_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw bkd::InputError(std::string(what) + " is null");
}

// Checks an out-parameter and clears it, so failed calls leave nothing to free.
template <typename T>
void clear(T** out, const char* what) {
  need(out, what);
  *out = nullptr;
}

std::string text(const char* s, const char* what) {
  need(s, what);
  return s;
}

bkd::Json group_json(const bkd::FinAbGroup& g) {
  bkd::Json j;
  j["group"] = g.to_string();
  j["free_rank"] = g.free_rank();
  bkd::Json t = bkd::Json::array();
  for (const bkd::Int& d : g.torsion()) t.push_back(bkd::int_to_json(d));
  j["torsion"] = std::move(t);
  j["order"] = g.order().to_string();
  return j;
}

bkd_status emit(const bkd::CommandOutput& r, char** out) {
  *out = dup(r.out);
  return static_cast<bkd_status>(r.code);
}

bkd::Format format_of(bkd_format f) { return f == BKD_FORMAT_JSON ? bkd::Format::Json : bkd::Format::Text; }

bkd::HarnessOptions harness_options(const bkd::Json& j) {
  bkd::HarnessOptions o;
  if (!j.is_object()) throw bkd::InputError("options: expected an object");
  if (j.contains("p")) {
    o.primes.clear();
    for (const bkd::Json& p : j.at("p")) o.primes.push_back(static_cast<int>(bkd::int_from_json(p, "p").get_si()));
  }
  if (j.contains("trials")) o.trials = bkd::int_from_json(j.at("trials"), "trials").get_si();
  if (j.contains("seed")) o.seed = std::stoull(bkd::int_from_json(j.at("seed"), "seed").get_str());
  if (j.contains("lemmas"))
    for (const bkd::Json& l : j.at("lemmas")) {
      if (!l.is_string()) throw bkd::InputError("lemmas: expected strings");
      o.lemmas.push_back(l.get<std::string>());
    }
  if (j.contains("threads")) o.threads = static_cast<unsigned>(bkd::int_from_json(j.at("threads"), "threads").get_ui());
  if (j.contains("witness_dir")) o.witness_dir = j.at("witness_dir").get<std::string>();
  if (j.contains("explore_hypotheses")) o.explore_hypotheses = j.at("explore_hypotheses").get<bool>();
  return o;
}

}  // namespace

extern "C" {

const char* bkd_last_error(void) { return last_error.c_str(); }
const char* bkd_version(void) { return "0.1.0"; }
void bkd_string_free(char* s) { std::free(s); }

bkd_status bkd_module_from_json(const char* json, bkd_module** out) {
  return call([&] {
    clear(out, "out");
    auto m = bkd::module_from_json(bkd::parse_json(text(json, "json"), "module"));
    *out = new bkd_module{std::move(m)};
    return BKD_OK;
  });
}

bkd_status bkd_module_random(const char* generator_json, uint64_t seed, bkd_module** out) {
  return call([&] {
    clear(out, "out");
    auto opts = bkd::generator_from_json(bkd::parse_json(text(generator_json, "generator_json"), "generator"));
    *out = new bkd_module{bkd::random_dmodule(opts, seed)};
    return BKD_OK;
  });
}

bkd_status bkd_module_to_json(const bkd_module* m, char** out) {
  return call([&] {
    need(m, "module");
    clear(out, "out");
    *out = dup(bkd::module_to_json(m->value).dump());
    return BKD_OK;
  });
}

void bkd_module_free(bkd_module* m) { delete m; }

bkd_status bkd_module_tate_dihedral(const bkd_module* m, long j, char** out) {
  return call([&] {
    need(m, "module");
    clear(out, "out");
    bkd::FinAbGroup g;
    try {
      g = bkd::tate_dihedral(m->value, j).structure;
    } catch (const bkd::InfiniteTateGroup& e) {
      throw bkd::InputError(e.what());
    }
    *out = dup(group_json(g).dump());
    return BKD_OK;
  });
}

bkd_status bkd_module_tate_cyclic(const bkd_module* m, const char* subgroup_json, long j, char** out) {
  return call([&] {
    need(m, "module");
    clear(out, "out");
    auto h = bkd::subgroup_from_json(bkd::parse_json(text(subgroup_json, "subgroup_json"), "subgroup"), m->value.p());
    if (!h.is_cyclic()) throw bkd::InputError("tate_cyclic needs a cyclic subgroup");
    *out = dup(group_json(bkd::tate_cyclic(m->value, h, j).structure).dump());
    return BKD_OK;
  });
}

bkd_status bkd_module_cohomology_oracle(const bkd_module* m, const char* subgroup_json, int j, char** out) {
  return call([&] {
    need(m, "module");
    clear(out, "out");
    auto h = bkd::subgroup_from_json(bkd::parse_json(text(subgroup_json, "subgroup_json"), "subgroup"), m->value.p());
    if (j < 0 || j > 3) throw bkd::InputError("oracle degree must be in 0..3");
    try {
      *out = dup(group_json(bkd::bar_resolution_oracle(m->value, h, j)).dump());
    } catch (const bkd::SizeBoundExceeded& e) {
      throw bkd::InputError(e.what());
    }
    return BKD_OK;
  });
}

bkd_status bkd_lattice_from_json(const char* json, bkd_lattice** out) {
  return call([&] {
    clear(out, "out");
    auto l = bkd::paired_lattice_from_json(bkd::parse_json(text(json, "json"), "lattice"));
    *out = new bkd_lattice{std::move(l)};
    return BKD_OK;
  });
}

void bkd_lattice_free(bkd_lattice* l) { delete l; }

bkd_status bkd_lattice_regulator_constant(const bkd_lattice* l, char** out) {
  return call([&] {
    need(l, "lattice");
    clear(out, "out");
    *out = dup(bkd::regulator_constant(l->value).get_str());
    return BKD_OK;
  });
}

bkd_status bkd_lattice_index_check(const bkd_lattice* l, char** report_json) {
  return call([&] {
    need(l, "lattice");
    clear(report_json, "report_json");
    bkd::RegulatorIndexCheck b = bkd::regulator_index_identity(l->value);
    bkd::Json j;
    j["C"] = b.regulator_constant.get_str();
    j["exponent"] = b.exponent;
    j["index"] = b.index.to_string();
    j["holds"] = b.holds;
    *report_json = dup(j.dump());
    return b.holds ? BKD_OK : BKD_CHECK_FAILED;
  });
}

bkd_status bkd_bundle_from_json(const char* json, bkd_bundle** out) {
  return call([&] {
    clear(out, "out");
    auto b = bkd::bundle_from_json(bkd::parse_json(text(json, "json"), "bundle"));
    *out = new bkd_bundle{std::move(b)};
    return BKD_OK;
  });
}

bkd_status bkd_bundle_to_json(const bkd_bundle* b, char** out) {
  return call([&] {
    need(b, "bundle");
    clear(out, "out");
    *out = dup(bkd::bundle_to_json(b->value).dump());
    return BKD_OK;
  });
}

void bkd_bundle_free(bkd_bundle* b) { delete b; }

bkd_status bkd_bundle_check(const bkd_bundle* b, const char* tolerance, char** report_json) {
  return call([&] {
    need(b, "bundle");
    clear(report_json, "report_json");
    bkd::CheckReport r = bkd::check_bundle(b->value, bkd::parse_decimal(tolerance ? tolerance : "1e-6"));
    *report_json = dup(bkd::check_report_to_json(r).dump());
    switch (r.overall()) {
      case bkd::Verdict::Pass:
        return BKD_OK;
      case bkd::Verdict::Fail:
        return BKD_CHECK_FAILED;
      case bkd::Verdict::Inconclusive:
        return BKD_INCONCLUSIVE;
    }
    return BKD_INTERNAL_ERROR;
  });
}

bkd_status bkd_run_verify_lemmas(const char* options_json, bkd_format fmt, char** out) {
  return call([&] {
    clear(out, "out");
    bkd::Json j = options_json ? bkd::parse_json(options_json, "options") : bkd::Json::object();
    return emit(bkd::cmd_verify_lemmas(harness_options(j), format_of(fmt)), out);
  });
}

bkd_status bkd_run_regconst(const char* lattice_json, bkd_format fmt, char** out) {
  return call([&] {
    clear(out, "out");
    return emit(bkd::cmd_regconst(text(lattice_json, "lattice_json"), format_of(fmt)), out);
  });
}

bkd_status bkd_run_bk_check(const char* bundle_json, const char* tolerance, bkd_format fmt, char** out) {
  return call([&] {
    clear(out, "out");
    return emit(bkd::cmd_bk_check(text(bundle_json, "bundle_json"), tolerance ? tolerance : "1e-6", format_of(fmt)),
                out);
  });
}

bkd_status bkd_run_splitting(const char* places_json, int p, long m, const long relation[4], bkd_format fmt,
                             char** out) {
  return call([&] {
    clear(out, "out");
    bkd::RelationVector rel = bkd::RelationVector::canonical();
    if (relation) rel = {relation[0], relation[1], relation[2], relation[3]};
    return emit(bkd::cmd_splitting(text(places_json, "places_json"), p, m, rel, format_of(fmt)), out);
  });
}

bkd_status bkd_run_wnum(const char* ell, const char* kappa, long precision, long m, bkd_format fmt, char** out) {
  return call([&] {
    clear(out, "out");
    return emit(bkd::cmd_wnum(text(ell, "ell"), text(kappa, "kappa"), precision, m, format_of(fmt)), out);
  });
}

}  // extern "C"
