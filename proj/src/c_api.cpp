#include "csmaa/csmaa.h"

#include <cstdio>
#include <new>
#include <string>

#include "csmaa/error.hpp"
#include "csmaa/lp.hpp"
#include "csmaa/pipeline.hpp"
#include "csmaa/preferences.hpp"
#include "csmaa/version.hpp"

struct cs_hierarchy {
  csmaa::Hierarchy h;
};
struct cs_table {
  csmaa::PerformanceTable t;
  bool normalized = false;
};
struct cs_constraints {
  csmaa::ConstraintSet c;
};
struct cs_samples {
  csmaa::SampleSet s;
};

namespace {

thread_local std::string last_error;

cs_status to_status(csmaa::ErrorCode c) {
  switch (c) {
    case csmaa::ErrorCode::Io: return CS_ERR_IO;
    case csmaa::ErrorCode::Parse: return CS_ERR_PARSE;
    case csmaa::ErrorCode::InvalidArgument: return CS_ERR_INVALID_ARGUMENT;
    case csmaa::ErrorCode::Infeasible: return CS_ERR_INFEASIBLE;
    case csmaa::ErrorCode::Numeric: return CS_ERR_NUMERIC;
  }
  return CS_ERR_INTERNAL;
}

template <class F>
cs_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return CS_OK;
  } catch (const csmaa::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return CS_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) throw csmaa::Error(csmaa::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

void emit(cs_line_callback cb, void* user, const std::string& line) {
  if (cb) cb(line.c_str(), user);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

extern "C" {

const char* cs_last_error(void) { return last_error.c_str(); }
const char* cs_version(void) { return csmaa::kVersion; }

const char* cs_status_name(cs_status s) {
  switch (s) {
    case CS_OK: return "ok";
    case CS_ERR_IO: return "io error";
    case CS_ERR_PARSE: return "parse error";
    case CS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CS_ERR_INFEASIBLE: return "infeasible";
    case CS_ERR_NUMERIC: return "numeric error";
    case CS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cs_status cs_hierarchy_load(const char* path, cs_hierarchy** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new cs_hierarchy{csmaa::load_hierarchy(path)};
  });
}

void cs_hierarchy_free(cs_hierarchy* h) { delete h; }
size_t cs_hierarchy_leaf_count(const cs_hierarchy* h) { return h ? h->h.leaf_count() : 0; }
size_t cs_hierarchy_levels(const cs_hierarchy* h) { return h ? h->h.levels() : 0; }

size_t cs_mobius_dimension(const cs_hierarchy* h) {
  return h ? csmaa::MobiusLayout(h->h.leaf_count()).dimension() : 0;
}

cs_status cs_hierarchy_resolve(const cs_hierarchy* h, const char* name, size_t* out) {
  return guard([&] {
    need(h, "hierarchy");
    need(name, "name");
    need(out, "out");
    *out = h->h.resolve(name);
  });
}

cs_status cs_table_load(const cs_hierarchy* h, const char* path, cs_table** out) {
  return guard([&] {
    need(h, "hierarchy");
    need(path, "path");
    need(out, "out");
    *out = new cs_table{csmaa::load_table_file(path, h->h), false};
  });
}

cs_status cs_table_normalize(const cs_table* raw, const cs_hierarchy* h, cs_table** out) {
  return guard([&] {
    need(raw, "table");
    need(h, "hierarchy");
    need(out, "out");
    *out = new cs_table{csmaa::normalize(raw->t, h->h), true};
  });
}

void cs_table_free(cs_table* t) { delete t; }
size_t cs_table_rows(const cs_table* t) { return t ? t->t.rows() : 0; }
size_t cs_table_columns(const cs_table* t) { return t ? t->t.columns() : 0; }

const char* cs_table_alternative(const cs_table* t, size_t row) {
  if (!t || row >= t->t.rows()) return nullptr;
  return t->t.alternatives()[row].c_str();
}

cs_status cs_table_value(const cs_table* t, size_t row, size_t column, double* out) {
  return guard([&] {
    need(t, "table");
    need(out, "out");
    if (row >= t->t.rows() || column >= t->t.columns())
      throw csmaa::Error(csmaa::ErrorCode::InvalidArgument, "cell index out of range");
    *out = t->t.at(row, column);
  });
}

cs_status cs_choquet(const cs_hierarchy* h, const cs_table* normalized, size_t row, size_t node,
                     const double* mobius, size_t dim, double* out) {
  return guard([&] {
    need(h, "hierarchy");
    need(normalized, "table");
    need(mobius, "mobius");
    need(out, "out");
    if (!normalized->normalized)
      throw csmaa::Error(csmaa::ErrorCode::InvalidArgument, "table is not normalized");
    if (row >= normalized->t.rows() || node >= h->h.nodes().size())
      throw csmaa::Error(csmaa::ErrorCode::InvalidArgument, "index out of range");
    const std::size_t n = h->h.leaf_count();
    if (dim != csmaa::MobiusLayout(n).dimension())
      throw csmaa::Error(csmaa::ErrorCode::InvalidArgument, "Möbius dimension mismatch");
    const csmaa::MobiusVector m(n, std::vector<double>(mobius, mobius + dim));
    *out = csmaa::choquet(m, h->h, node, normalized->t.row(row));
  });
}

cs_status cs_constraints_base(const cs_hierarchy* h, cs_constraints** out) {
  return guard([&] {
    need(h, "hierarchy");
    need(out, "out");
    *out = new cs_constraints{csmaa::base_constraints(h->h)};
  });
}

cs_status cs_constraints_add_profile(cs_constraints* c, const cs_hierarchy* h,
                                     const cs_table* normalized, const char* prefs_path) {
  return guard([&] {
    need(c, "constraints");
    need(h, "hierarchy");
    need(prefs_path, "path");
    std::vector<std::string> alts;
    const csmaa::NormalizedTable* table = nullptr;
    csmaa::NormalizedTable copy;
    if (normalized) {
      alts = normalized->t.alternatives();
      copy = csmaa::NormalizedTable(normalized->t);
      table = &copy;
    }
    const auto profile = csmaa::load_profile(prefs_path, h->h, alts);
    c->c.append(csmaa::compile(profile, h->h, table));
  });
}

void cs_constraints_free(cs_constraints* c) { delete c; }
size_t cs_constraints_rows(const cs_constraints* c) { return c ? c->c.rows.size() : 0; }

cs_status cs_solve(const cs_constraints* c, double* epsilon_star, int* compatible) {
  return guard([&] {
    need(c, "constraints");
    const auto sol = csmaa::solve_epsilon_max(c->c);
    if (epsilon_star) *epsilon_star = sol.epsilon_star;
    if (compatible) *compatible = sol.compatible() ? 1 : 0;
  });
}

cs_status cs_diagnose(const cs_constraints* c, cs_line_callback cb, void* user) {
  return guard([&] {
    need(c, "constraints");
    for (const auto& id : csmaa::diagnose(c->c)) emit(cb, user, id);
  });
}

cs_status cs_sample(const cs_constraints* c, size_t n, uint64_t seed, size_t burn_in,
                    size_t thinning, size_t chains, cs_samples** out) {
  return guard([&] {
    need(c, "constraints");
    need(out, "out");
    csmaa::SamplerOptions opts;
    opts.burn_in = burn_in;
    opts.thinning = thinning;
    opts.chains = chains;
    opts.threads = csmaa::default_threads();
    *out = new cs_samples{csmaa::sample(c->c, n, seed, opts)};
  });
}

void cs_samples_free(cs_samples* s) { delete s; }
size_t cs_samples_count(const cs_samples* s) { return s ? s->s.vectors.size() : 0; }

size_t cs_samples_dimension(const cs_samples* s) {
  return s && !s->s.vectors.empty() ? s->s.vectors.front().dimension() : 0;
}

cs_status cs_samples_get(const cs_samples* s, size_t index, double* out, size_t dim) {
  return guard([&] {
    need(s, "samples");
    need(out, "out");
    if (index >= s->s.vectors.size())
      throw csmaa::Error(csmaa::ErrorCode::InvalidArgument, "sample index out of range");
    const auto c = s->s.vectors[index].coefficients();
    if (dim != c.size())
      throw csmaa::Error(csmaa::ErrorCode::InvalidArgument, "dimension mismatch");
    std::copy(c.begin(), c.end(), out);
  });
}

void cs_run_options_init(cs_run_options* opts) {
  if (!opts) return;
  const csmaa::RunConfig d;
  *opts = cs_run_options{};
  opts->samples = d.samples;
  opts->seed = d.seed;
  opts->burn_in = d.burn_in;
  opts->thinning = d.thinning;
  opts->chains = d.chains;
  opts->out_dir = "out";
}

cs_status cs_run(const cs_run_options* opts, cs_line_callback cb, void* user) {
  return guard([&] {
    need(opts, "options");
    need(opts->hierarchy_path, "hierarchy path");
    need(opts->data_path, "data path");
    csmaa::RunConfig cfg;
    cfg.hierarchy_path = opts->hierarchy_path;
    cfg.data_path = opts->data_path;
    for (size_t i = 0; i < opts->prefs_count; ++i) {
      need(opts->prefs_paths[i], "preference path");
      cfg.prefs_paths.emplace_back(opts->prefs_paths[i]);
    }
    cfg.samples = opts->samples;
    cfg.seed = opts->seed;
    cfg.burn_in = opts->burn_in;
    cfg.thinning = opts->thinning;
    cfg.chains = opts->chains;
    if (opts->out_dir) cfg.out_dir = opts->out_dir;
    for (size_t i = 0; i < opts->nodes_count; ++i) {
      need(opts->nodes[i], "node name");
      cfg.nodes.emplace_back(opts->nodes[i]);
    }
    cfg.emit_samples = opts->emit_samples != 0;
    cfg.emit_lp = opts->emit_lp != 0;
    cfg.threads = opts->threads;
    csmaa::run(cfg, [&](const std::string& line) { emit(cb, user, line); });
  });
}

cs_status cs_verify(const char* hierarchy_path, const char* raw_path, const char* golden_path,
                    double tolerance, cs_line_callback cb, void* user, int* passed) {
  return guard([&] {
    need(hierarchy_path, "hierarchy path");
    need(raw_path, "data path");
    need(golden_path, "golden path");
    const auto rep = csmaa::verify(hierarchy_path, raw_path, golden_path, tolerance);
    for (const auto& c : rep.columns)
      emit(cb, user,
           std::string(c.pass ? "PASS " : "FAIL ") + c.column + fmt(" max_error=%.4f", c.max_error));
    if (!rep.pass) {
      emit(cb, user, "worst cells:");
      for (const auto& w : rep.worst) {
        if (w.error <= tolerance) break;
        emit(cb, user, "  " + w.alternative + " " + w.column + fmt(" expected=%.4f", w.expected) +
                           fmt(" actual=%.4f", w.actual) + fmt(" error=%.4f", w.error));
      }
    }
    emit(cb, user,
         std::string(rep.pass ? "PASS" : "FAIL") + ": " + std::to_string(rep.cells) + " cells, " +
             std::to_string(rep.failed_cells) + " out of tolerance" +
             fmt(" (tolerance %.4f", tolerance) + fmt(", max error %.4f)", rep.max_error));
    if (passed) *passed = rep.pass ? 1 : 0;
  });
}

}  // extern "C"
