#include "tvlp/tvlp.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "tvlp/analytic.hpp"
#include "tvlp/bregman.hpp"
#include "tvlp/decompose.hpp"
#include "tvlp/error.hpp"
#include "tvlp/io.hpp"
#include "tvlp/metrics.hpp"
#include "tvlp/phantom.hpp"
#include "tvlp/prox.hpp"
#include "tvlp/solver.hpp"

struct tvlp_image {
  tvlp::Image2D image;
};

struct tvlp_report {
  tvlp::SolveReport report;
};

struct tvlp_bregman_result {
  tvlp::BregmanResult result;
  std::vector<tvlp_image> iterates;
};

struct tvlp_step_solution {
  tvlp::StepAnalytic analytic;
};

struct tvlp_table {
  tvlp::CsvTable table;
};

namespace {

thread_local std::string last_error;

tvlp_status fail(tvlp_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
tvlp_status guarded(F&& body) {
  try {
    body();
    return TVLP_OK;
  } catch (const tvlp::InvalidArgument& e) {
    return fail(TVLP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const tvlp::NonFinite& e) {
    return fail(TVLP_ERR_NON_FINITE, e.what());
  } catch (const tvlp::IoError& e) {
    return fail(TVLP_ERR_IO, e.what());
  } catch (const tvlp::ParseError& e) {
    return fail(TVLP_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TVLP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TVLP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TVLP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw tvlp::InvalidArgument(message);
}

tvlp::SolveParams to_params(const tvlp_params* p) {
  require(p != nullptr, "params must not be NULL");
  tvlp::SolveParams out;
  out.alpha = p->alpha;
  out.beta = p->beta;
  out.p = p->p;
  if (p->lambda > 0.0) out.lambda = p->lambda;
  out.mode = p->mode == TVLP_MODE_P_HOM ? tvlp::Homogeneity::PHomogeneous : tvlp::Homogeneity::OneHomogeneous;
  out.tol = p->tol;
  out.max_outer = p->max_outer;
  out.inner_fp_iters = p->inner_fp_iters;
  out.norm = p->norm == TVLP_NORM_QUADRATURE ? tvlp::NormConvention::Quadrature
             : p->norm == TVLP_NORM_DISCRETE ? tvlp::NormConvention::Discrete
                                             : tvlp::NormConvention::Auto;
  out.w_update = p->w_update == TVLP_W_EXACT ? tvlp::WUpdate::Exact : tvlp::WUpdate::FixedPoint;
  return out;
}

tvlp::StepProblem to_problem(const tvlp_step_problem* p) {
  require(p != nullptr, "problem must not be NULL");
  return {p->h, p->L, p->alpha, p->beta, p->p,
          p->model == TVLP_STEP_TWO_HOM ? tvlp::StepModel::TwoHom : tvlp::StepModel::OneHom};
}

const tvlp::Image2D& image_of(const tvlp_image* image) {
  require(image != nullptr, "image must not be NULL");
  return image->image;
}

tvlp_image* wrap(tvlp::Image2D image) { return new tvlp_image{std::move(image)}; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tvlp::PhantomKind to_kind(tvlp_phantom_kind kind) {
  switch (kind) {
    case TVLP_PHANTOM_STEP_1D:
      return tvlp::PhantomKind::Step1D;
    case TVLP_PHANTOM_AFFINE_STEP_1D:
      return tvlp::PhantomKind::AffineStep1D;
    case TVLP_PHANTOM_PIECEWISE_MIX_1D:
      return tvlp::PhantomKind::PiecewiseMix1D;
    case TVLP_PHANTOM_RAMP_SQUARE_2D:
      return tvlp::PhantomKind::RampSquare2D;
    case TVLP_PHANTOM_RADIAL_SPIKE_2D:
      return tvlp::PhantomKind::RadialSpike2D;
  }
  throw tvlp::InvalidArgument("unknown phantom kind");
}

}  // namespace

extern "C" {

const char* tvlp_last_error(void) { return last_error.c_str(); }

const char* tvlp_status_name(tvlp_status status) {
  switch (status) {
    case TVLP_OK:
      return "ok";
    case TVLP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case TVLP_ERR_NON_FINITE:
      return "non-finite iterate";
    case TVLP_ERR_IO:
      return "i/o error";
    case TVLP_ERR_PARSE:
      return "parse error";
    case TVLP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* tvlp_version(void) { return "1.0.0"; }

void tvlp_string_free(char* s) { std::free(s); }

tvlp_status tvlp_image_create(size_t rows, size_t cols, double spacing, const double* values, tvlp_image** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    tvlp::Image2D image = values ? tvlp::Image2D(rows, cols, std::vector<double>(values, values + rows * cols), spacing)
                                 : tvlp::Image2D(rows, cols, spacing);
    *out = wrap(std::move(image));
  });
}

void tvlp_image_destroy(tvlp_image* image) { delete image; }
size_t tvlp_image_rows(const tvlp_image* image) { return image ? image->image.rows() : 0; }
size_t tvlp_image_cols(const tvlp_image* image) { return image ? image->image.cols() : 0; }
double tvlp_image_spacing(const tvlp_image* image) { return image ? image->image.spacing() : 0.0; }
const double* tvlp_image_data(const tvlp_image* image) { return image ? image->image.vector().data() : nullptr; }

void tvlp_params_default(tvlp_params* params) {
  if (!params) return;
  const tvlp::SolveParams d;
  params->alpha = d.alpha;
  params->beta = d.beta;
  params->p = d.p;
  params->lambda = 0.0;
  params->mode = TVLP_MODE_ONE_HOM;
  params->tol = d.tol;
  params->max_outer = d.max_outer;
  params->inner_fp_iters = d.inner_fp_iters;
  params->norm = TVLP_NORM_AUTO;
  params->w_update = TVLP_W_FIXED_POINT;
}

void tvlp_report_destroy(tvlp_report* report) { delete report; }
int tvlp_report_iterations(const tvlp_report* report) { return report ? report->report.iterations() : 0; }
int tvlp_report_converged(const tvlp_report* report) {
  return report && report->report.terminated_by == tvlp::Termination::Tolerance ? 1 : 0;
}
double tvlp_report_wall_time(const tvlp_report* report) { return report ? report->report.wall_time : 0.0; }
double tvlp_report_lambda(const tvlp_report* report) { return report ? report->report.lambda : 0.0; }

double tvlp_report_residual(const tvlp_report* report, int iteration) {
  if (!report || iteration < 0 || iteration >= report->report.iterations()) return std::nan("");
  return report->report.relative_residuals[static_cast<std::size_t>(iteration)];
}

double tvlp_report_objective(const tvlp_report* report, int iteration) {
  if (!report || iteration < 0 || iteration >= report->report.iterations()) return std::nan("");
  return report->report.objective_trace[static_cast<std::size_t>(iteration)];
}

char* tvlp_report_to_json(const tvlp_report* report) {
  if (!report) return nullptr;
  try {
    return dup_string(tvlp::report_to_json(report->report).dump());
  } catch (...) {
    return nullptr;
  }
}

tvlp_status tvlp_denoise(const tvlp_image* f, const tvlp_params* params, tvlp_image** u, tvlp_image** w1,
                         tvlp_image** w2, tvlp_report** report) {
  return guarded([&] {
    require(u != nullptr, "u must not be NULL");
    tvlp::DenoiseResult r = tvlp::denoise(image_of(f), to_params(params));
    *u = wrap(std::move(r.u));
    if (w1) *w1 = wrap(r.w.comp1());
    if (w2) *w2 = wrap(r.w.comp2());
    if (report) *report = new tvlp_report{std::move(r.report)};
  });
}

tvlp_status tvlp_denoise_rof(const tvlp_image* f, double alpha, const tvlp_params* controls, tvlp_image** u,
                             tvlp_report** report) {
  return guarded([&] {
    require(u != nullptr, "u must not be NULL");
    tvlp_params defaults;
    tvlp_params_default(&defaults);
    tvlp::SolveParams p = to_params(controls ? controls : &defaults);
    p.alpha = alpha;
    tvlp::DenoiseResult r = tvlp::denoise_rof(image_of(f), alpha, p);
    *u = wrap(std::move(r.u));
    if (report) *report = new tvlp_report{std::move(r.report)};
  });
}

tvlp_status tvlp_tvlp_value(const tvlp_image* u, const tvlp_params* params, double* value) {
  return guarded([&] {
    require(value != nullptr, "value must not be NULL");
    const tvlp::SolveParams p = to_params(params);
    const tvlp::Image2D& image = image_of(u);
    *value = tvlp::tvlp_value(image, p, p.quadrature_for(image));
  });
}

tvlp_status tvlp_huber_tv_value(const tvlp_image* u, double alpha, double beta, int quadrature, double* value) {
  return guarded([&] {
    require(value != nullptr, "value must not be NULL");
    *value = tvlp::huber_tv_value(image_of(u), {alpha, beta}, quadrature != 0);
  });
}

tvlp_status tvlp_bregman(const tvlp_image* f, const tvlp_params* params, int outer_k, const tvlp_image* reference,
                         double peak, tvlp_bregman_result** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    std::optional<tvlp::Image2D> ref;
    if (reference) ref = reference->image;
    tvlp::BregmanOptions options;
    options.peak = peak;
    auto* result = new tvlp_bregman_result{tvlp::bregmanized_denoise(image_of(f), to_params(params), outer_k, ref, options), {}};
    for (const auto& u : result->result.iterates) result->iterates.push_back(tvlp_image{u});
    *out = result;
  });
}

void tvlp_bregman_destroy(tvlp_bregman_result* result) { delete result; }

int tvlp_bregman_count(const tvlp_bregman_result* result) {
  return result ? static_cast<int>(result->iterates.size()) : 0;
}

const tvlp_image* tvlp_bregman_iterate(const tvlp_bregman_result* result, int k) {
  if (!result || k < 0 || k >= tvlp_bregman_count(result)) return nullptr;
  return &result->iterates[static_cast<std::size_t>(k)];
}

double tvlp_bregman_psnr(const tvlp_bregman_result* result, int k) {
  if (!result || k < 0 || static_cast<std::size_t>(k) >= result->result.trace.psnr.size()) return std::nan("");
  return result->result.trace.psnr[static_cast<std::size_t>(k)];
}

double tvlp_bregman_ssim(const tvlp_bregman_result* result, int k) {
  if (!result || k < 0 || static_cast<std::size_t>(k) >= result->result.trace.ssim.size()) return std::nan("");
  return result->result.trace.ssim[static_cast<std::size_t>(k)];
}

int tvlp_bregman_best(const tvlp_bregman_result* result) {
  if (!result || result->result.trace.psnr.empty()) return -1;
  return static_cast<int>(result->result.best_by_ssim());
}

char* tvlp_bregman_to_json(const tvlp_bregman_result* result) {
  if (!result) return nullptr;
  try {
    nlohmann::json j;
    j["iterations"] = nlohmann::json::array();
    for (const auto& r : result->result.trace.reports) j["iterations"].push_back(tvlp::report_to_json(r));
    j["psnr"] = result->result.trace.psnr;
    j["ssim"] = result->result.trace.ssim;
    j["best"] = tvlp_bregman_best(result);
    return dup_string(j.dump());
  } catch (...) {
    return nullptr;
  }
}

tvlp_status tvlp_decompose(const tvlp_image* f, const tvlp_params* params, tvlp_image** u, tvlp_image** v,
                           tvlp_report** report) {
  return guarded([&] {
    require(u != nullptr && v != nullptr, "u and v must not be NULL");
    tvlp::Decomposition d = tvlp::decompose(image_of(f), to_params(params));
    *u = wrap(std::move(d.u_part));
    *v = wrap(std::move(d.v_part));
    if (report) *report = new tvlp_report{std::move(d.report)};
  });
}

tvlp_status tvlp_decompose_uniqueness(const tvlp_image* f, const tvlp_params* params, int n_restarts,
                                      double* max_sum_deviation, double* mu, double* mu_residual) {
  return guarded([&] {
    const tvlp::UniquenessReport r = tvlp::check_decomposition_uniqueness(image_of(f), to_params(params), n_restarts);
    if (max_sum_deviation) *max_sum_deviation = r.max_sum_deviation;
    for (std::size_t k = 0; k < r.mu.size(); ++k) {
      if (mu) mu[k] = r.mu[k];
      if (mu_residual) mu_residual[k] = r.mu_residual[k];
    }
  });
}

const char* tvlp_regime_name(tvlp_regime regime) {
  return tvlp::to_string(static_cast<tvlp::StepRegime>(regime));
}

tvlp_status tvlp_step_classify(const tvlp_step_problem* problem, tvlp_regime* regime) {
  return guarded([&] {
    require(regime != nullptr, "regime must not be NULL");
    *regime = static_cast<tvlp_regime>(tvlp::classify_step(to_problem(problem)));
  });
}

tvlp_status tvlp_step_exact(const tvlp_step_problem* problem, tvlp_step_solution** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = new tvlp_step_solution{tvlp::step_exact(to_problem(problem))};
  });
}

void tvlp_step_destroy(tvlp_step_solution* solution) { delete solution; }

tvlp_regime tvlp_step_regime(const tvlp_step_solution* solution) {
  return static_cast<tvlp_regime>(solution->analytic.regime());
}
double tvlp_step_k(const tvlp_step_solution* solution) { return solution->analytic.k(); }
double tvlp_step_c1(const tvlp_step_solution* solution) { return solution->analytic.c1(); }
double tvlp_step_c2(const tvlp_step_solution* solution) { return solution->analytic.c2(); }
double tvlp_step_beta_2hom(const tvlp_step_solution* solution) { return solution->analytic.beta_2hom(); }

void tvlp_step_eval(const tvlp_step_solution* solution, double x, double* u, double* w, double* phi) {
  if (!solution) return;
  if (u) *u = solution->analytic.u(x);
  if (w) *w = solution->analytic.w(x);
  if (phi) *phi = solution->analytic.phi(x);
}

tvlp_status tvlp_step_w_norm_2hom(const tvlp_step_problem* problem, double* norm) {
  return guarded([&] {
    require(norm != nullptr, "norm must not be NULL");
    *norm = tvlp::w_norm_2hom(to_problem(problem));
  });
}

tvlp_status tvlp_beta_map(double beta_phom, double w_norm, double p, double* beta_1hom) {
  return guarded([&] {
    require(beta_1hom != nullptr, "output must not be NULL");
    *beta_1hom = tvlp::beta_map(beta_phom, w_norm, p);
  });
}

tvlp_status tvlp_beta_map_inverse_step(double h, double L, double alpha, double beta_1hom, double* beta_2hom) {
  return guarded([&] {
    require(beta_2hom != nullptr, "output must not be NULL");
    *beta_2hom = tvlp::beta_map_inverse_step(h, L, alpha, beta_1hom);
  });
}

tvlp_status tvlp_taylor_beta_boundary(double alpha, double h, double L, double* beta) {
  return guarded([&] {
    require(beta != nullptr, "output must not be NULL");
    *beta = tvlp::taylor_beta_boundary(alpha, h, L);
  });
}

tvlp_status tvlp_rof_region(double alpha, double beta, double p, double omega_measure, int* holds) {
  return guarded([&] {
    require(holds != nullptr, "output must not be NULL");
    *holds = tvlp::rof_region(alpha, beta, p, omega_measure) ? 1 : 0;
  });
}

tvlp_status tvlp_mean_region(const double* f, size_t n, double spacing, double alpha, double beta, double q,
                             int* holds) {
  return guarded([&] {
    require(f != nullptr && holds != nullptr, "arguments must not be NULL");
    const tvlp::Grid1D grid(std::vector<double>(f, f + n), spacing);
    *holds = tvlp::mean_region(grid, alpha, beta, q) ? 1 : 0;
  });
}

tvlp_status tvlp_verify_optimality_1d(const double* u, const double* w, const double* f, size_t n, double spacing,
                                      const tvlp_params* params, double eps_support, tvlp_certificate* out) {
  return guarded([&] {
    require(u && w && f && out, "arguments must not be NULL");
    const tvlp::Grid1D gu(std::vector<double>(u, u + n), spacing);
    const tvlp::Grid1D gw(std::vector<double>(w, w + n), spacing);
    const tvlp::Grid1D gf(std::vector<double>(f, f + n), spacing);
    std::optional<double> eps;
    if (eps_support > 0.0) eps = eps_support;
    const tvlp::OptimalityCertificate c = tvlp::verify_optimality_1d(gu, gw, gf, to_params(params), eps);
    *out = {c.boundary_residual, c.dual_bound_excess, c.support_residual, c.w_residual, c.w_is_zero ? 1 : 0};
  });
}

tvlp_status tvlp_psnr(const tvlp_image* u, const tvlp_image* reference, double peak, double* value) {
  return guarded([&] {
    require(value != nullptr, "value must not be NULL");
    *value = tvlp::psnr(image_of(u), image_of(reference), peak);
  });
}

tvlp_status tvlp_ssim(const tvlp_image* u, const tvlp_image* reference, double dynamic_range, double* value) {
  return guarded([&] {
    require(value != nullptr, "value must not be NULL");
    *value = tvlp::ssim(image_of(u), image_of(reference), dynamic_range);
  });
}

void tvlp_phantom_spec_default(tvlp_phantom_kind kind, tvlp_phantom_spec* spec) {
  if (!spec) return;
  const tvlp::PhantomSpec d;
  *spec = {kind, d.h, d.L, d.n, d.ramp_slope, d.size, d.cols, d.lo, d.hi};
}

tvlp_status tvlp_phantom_kind_from_name(const char* name, tvlp_phantom_kind* kind) {
  return guarded([&] {
    require(name != nullptr && kind != nullptr, "arguments must not be NULL");
    *kind = static_cast<tvlp_phantom_kind>(tvlp::phantom_kind_from_string(name));
  });
}

const char* tvlp_phantom_kind_name(tvlp_phantom_kind kind) {
  try {
    return tvlp::to_string(to_kind(kind));
  } catch (...) {
    return "unknown";
  }
}

tvlp_status tvlp_phantom_generate(const tvlp_phantom_spec* spec, tvlp_image** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "arguments must not be NULL");
    tvlp::PhantomSpec s;
    s.kind = to_kind(spec->kind);
    s.h = spec->h;
    s.L = spec->L;
    s.n = spec->n;
    s.ramp_slope = spec->ramp_slope;
    s.size = spec->size;
    s.cols = spec->cols;
    s.lo = spec->lo;
    s.hi = spec->hi;
    *out = wrap(tvlp::generate(s));
  });
}

tvlp_status tvlp_add_noise(const tvlp_image* u, double variance, uint64_t seed, tvlp_image** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = wrap(tvlp::add_gaussian_noise(image_of(u), {variance, seed}));
  });
}

tvlp_status tvlp_read_pgm(const char* path, double lo, double hi, tvlp_image** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "arguments must not be NULL");
    *out = wrap(tvlp::read_pgm(path, lo, hi));
  });
}

tvlp_status tvlp_write_pgm(const tvlp_image* image, const char* path, double lo, double hi, int binary) {
  return guarded([&] {
    require(path != nullptr, "path must not be NULL");
    tvlp::write_pgm(image_of(image), path, lo, hi, binary ? tvlp::PgmFormat::Binary : tvlp::PgmFormat::Ascii);
  });
}

tvlp_status tvlp_read_csv(const char* path, tvlp_table** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "arguments must not be NULL");
    *out = new tvlp_table{tvlp::read_csv(path)};
  });
}

void tvlp_table_destroy(tvlp_table* table) { delete table; }
size_t tvlp_table_columns(const tvlp_table* table) { return table ? table->table.names.size() : 0; }
size_t tvlp_table_rows(const tvlp_table* table) { return table ? table->table.rows() : 0; }

const char* tvlp_table_name(const tvlp_table* table, size_t column) {
  if (!table || column >= table->table.names.size()) return nullptr;
  return table->table.names[column].c_str();
}

const double* tvlp_table_column(const tvlp_table* table, const char* name) {
  if (!table || !name || !table->table.has(name)) return nullptr;
  return table->table.column(name).data();
}

tvlp_status tvlp_write_csv(const char* path, const char* const* names, const double* const* columns, size_t n_columns,
                           size_t n_rows) {
  return guarded([&] {
    require(path && names && columns, "arguments must not be NULL");
    tvlp::CsvTable table;
    for (size_t c = 0; c < n_columns; ++c) {
      require(names[c] && columns[c], "column name and data must not be NULL");
      table.names.emplace_back(names[c]);
      table.columns.emplace_back(columns[c], columns[c] + n_rows);
    }
    tvlp::write_csv(table, path);
  });
}

}  // extern "C"
