// Command-line front end. Talks to the library only through tvlp/tvlp.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvlp/tvlp.h"

using nlohmann::json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNonFinite = 3;

struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

void check(tvlp_status status) {
  if (status == TVLP_OK) return;
  const int code = status == TVLP_ERR_NON_FINITE ? kExitNonFinite : status == TVLP_ERR_INTERNAL ? 1 : kExitInvalid;
  throw Failure(code, std::string(tvlp_status_name(status)) + ": " + tvlp_last_error());
}

struct ImageDeleter {
  void operator()(tvlp_image* p) const { tvlp_image_destroy(p); }
};
struct ReportDeleter {
  void operator()(tvlp_report* p) const { tvlp_report_destroy(p); }
};
struct TableDeleter {
  void operator()(tvlp_table* p) const { tvlp_table_destroy(p); }
};
struct BregmanDeleter {
  void operator()(tvlp_bregman_result* p) const { tvlp_bregman_destroy(p); }
};
struct StepDeleter {
  void operator()(tvlp_step_solution* p) const { tvlp_step_destroy(p); }
};
using Image = std::unique_ptr<tvlp_image, ImageDeleter>;
using Report = std::unique_ptr<tvlp_report, ReportDeleter>;
using Table = std::unique_ptr<tvlp_table, TableDeleter>;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

json parse_owned(char* text) {
  if (!text) throw Failure(1, "library returned no report");
  json j = json::parse(text);
  tvlp_string_free(text);
  return j;
}

json report_json(const tvlp_report* report) { return parse_owned(tvlp_report_to_json(report)); }

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Failure(kExitInvalid, "cannot write report '" + path + "'");
  out << j.dump(2) << '\n';
}

// Where a 1D signal sits: the origin is kept so outputs line up with inputs.
struct Placement {
  double origin = 0.0;
};

// Images: .pgm for 2D, .csv (x plus a value column) for 1D signals.
struct Loaded {
  Image image;
  Placement placement;
};

Loaded load(const std::string& path, const std::string& column, double lo, double hi) {
  Loaded out;
  if (ends_with(path, ".csv")) {
    tvlp_table* raw = nullptr;
    check(tvlp_read_csv(path.c_str(), &raw));
    Table table(raw);
    const std::size_t n = tvlp_table_rows(table.get());
    const double* values = tvlp_table_column(table.get(), column.c_str());
    if (!values) {
      for (const char* fallback : {"u", "f"}) {
        if ((values = tvlp_table_column(table.get(), fallback))) break;
      }
    }
    if (!values && tvlp_table_columns(table.get()) >= 2) {
      values = tvlp_table_column(table.get(), tvlp_table_name(table.get(), 1));
    }
    if (!values) throw Failure(kExitInvalid, path + ": no value column");
    double spacing = 1.0;
    const double* x = tvlp_table_column(table.get(), "x");
    if (x && n >= 2) {
      spacing = x[1] - x[0];
      out.placement.origin = x[0] - spacing / 2.0;
    } else {
      out.placement.origin = -static_cast<double>(n) * spacing / 2.0;
    }
    tvlp_image* img = nullptr;
    check(tvlp_image_create(n, 1, spacing, values, &img));
    out.image.reset(img);
    return out;
  }
  if (ends_with(path, ".pgm")) {
    tvlp_image* img = nullptr;
    check(tvlp_read_pgm(path.c_str(), lo, hi, &img));
    out.image.reset(img);
    return out;
  }
  throw Failure(kExitInvalid, path + ": expected a .pgm or .csv file");
}

void save(const tvlp_image* image, const std::string& path, const Placement& placement, double lo, double hi,
          bool ascii, const std::vector<std::pair<std::string, const tvlp_image*>>& extra = {}) {
  if (ends_with(path, ".csv")) {
    if (tvlp_image_cols(image) != 1) throw Failure(kExitInvalid, path + ": CSV output holds 1D signals only");
    const std::size_t n = tvlp_image_rows(image);
    const double t = tvlp_image_spacing(image);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = placement.origin + (static_cast<double>(i) + 0.5) * t;
    std::vector<std::string> names{"x", "u"};
    std::vector<const double*> columns{x.data(), tvlp_image_data(image)};
    for (const auto& [name, img] : extra) {
      names.push_back(name);
      columns.push_back(tvlp_image_data(img));
    }
    std::vector<const char*> cnames;
    for (const auto& s : names) cnames.push_back(s.c_str());
    check(tvlp_write_csv(path.c_str(), cnames.data(), columns.data(), columns.size(), n));
    return;
  }
  if (ends_with(path, ".pgm")) {
    check(tvlp_write_pgm(image, path.c_str(), lo, hi, ascii ? 0 : 1));
    return;
  }
  throw Failure(kExitInvalid, path + ": expected a .pgm or .csv file");
}

struct SolverFlags {
  double alpha = 1.0;
  double beta = 1.0;
  double p = 2.0;
  std::string mode = "1hom";
  std::optional<double> lambda;
  double tol = 1e-6;
  int max_iter = 5000;
  int inner_iters = 5;
  bool quadrature = false;
  bool discrete = false;
  std::string w_update = "fixed-point";

  void add(CLI::App* cmd, bool with_model = true) {
    if (with_model) {
      cmd->add_option("--alpha", alpha, "TV weight")->required();
      cmd->add_option("--beta", beta, "L^p weight")->required();
      cmd->add_option("--p", p, "exponent in (1, inf)")->capture_default_str();
      cmd->add_option("--mode", mode, "1hom or phom")->check(CLI::IsMember({"1hom", "phom"}))->capture_default_str();
      cmd->add_option("--w-update", w_update, "fixed-point or exact")
          ->check(CLI::IsMember({"fixed-point", "exact"}))
          ->capture_default_str();
      cmd->add_option("--inner-iters", inner_iters, "fixed-point sweeps per iteration")->capture_default_str();
    }
    cmd->add_option("--lambda", lambda, "penalty (default: heuristic)");
    cmd->add_option("--tol", tol, "relative residual tolerance")->capture_default_str();
    cmd->add_option("--max-iter", max_iter, "outer iteration cap")->capture_default_str();
    auto* q = cmd->add_flag("--quadrature", quadrature, "weight norms by t^d");
    cmd->add_flag("--discrete", discrete, "plain sums in the norms")->excludes(q);
  }

  tvlp_params params() const {
    tvlp_params out;
    tvlp_params_default(&out);
    out.alpha = alpha;
    out.beta = beta;
    out.p = p;
    out.lambda = lambda.value_or(0.0);
    out.mode = mode == "phom" ? TVLP_MODE_P_HOM : TVLP_MODE_ONE_HOM;
    out.tol = tol;
    out.max_outer = max_iter;
    out.inner_fp_iters = inner_iters;
    out.norm = quadrature ? TVLP_NORM_QUADRATURE : discrete ? TVLP_NORM_DISCRETE : TVLP_NORM_AUTO;
    out.w_update = w_update == "exact" ? TVLP_W_EXACT : TVLP_W_FIXED_POINT;
    return out;
  }

  json to_json() const {
    json j{{"alpha", alpha}, {"beta", beta}, {"p", p}, {"mode", mode}, {"tol", tol}, {"max_iter", max_iter},
           {"inner_iters", inner_iters}, {"w_update", w_update},
           {"norm", quadrature ? "quadrature" : discrete ? "discrete" : "auto"}};
    j["lambda"] = lambda ? json(*lambda) : json(nullptr);
    return j;
  }
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  bool ascii = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--lo", lo, "PGM black level")->capture_default_str();
    cmd->add_option("--hi", hi, "PGM white level")->capture_default_str();
    cmd->add_flag("--ascii", ascii, "write P2 instead of P5");
  }
};

std::string report_path(const std::string& explicit_path, const std::string& primary) {
  return explicit_path.empty() ? primary + ".report.json" : explicit_path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TV-L^p denoising, decomposition and closed-form step solutions"};
  app.require_subcommand(1);
  // --h is the jump height, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");
  std::string report;
  app.add_option("--report", report, "JSON report path (default: <output>.report.json)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a phantom");
  gen->set_help_flag("--help", "print this help and exit");
  std::string gen_kind;
  std::string gen_out;
  tvlp_phantom_spec spec;
  tvlp_phantom_spec_default(TVLP_PHANTOM_STEP_1D, &spec);
  Range gen_range;
  gen->add_option("--kind", gen_kind, "step1d, affine-step1d, piecewise-mix1d, ramp-square2d, radial-spike2d")
      ->required();
  gen->add_option("--out", gen_out, "output .csv (1D) or .pgm (2D)")->required();
  gen->add_option("--h", spec.h, "1D jump height")->capture_default_str();
  gen->add_option("--L", spec.L, "1D half-domain length")->capture_default_str();
  gen->add_option("--n", spec.n, "1D sample count")->capture_default_str();
  gen->add_option("--slope", spec.ramp_slope, "affine-step slope")->capture_default_str();
  gen->add_option("--size", spec.size, "2D rows (and columns unless --cols)")->capture_default_str();
  gen->add_option("--cols", spec.cols, "2D columns");
  gen->add_option("--intensity-lo", spec.lo, "2D intensity minimum")->capture_default_str();
  gen->add_option("--intensity-hi", spec.hi, "2D intensity maximum")->capture_default_str();
  gen_range.add(gen);

  // noise
  auto* noise = app.add_subcommand("noise", "add seeded Gaussian noise");
  std::string noise_in, noise_out;
  double variance = 0.01;
  std::uint64_t seed = 42;
  Range noise_range;
  noise->add_option("--in", noise_in)->required();
  noise->add_option("--out", noise_out)->required();
  noise->add_option("--variance", variance)->capture_default_str();
  noise->add_option("--seed", seed)->capture_default_str();
  noise_range.add(noise);

  // denoise
  auto* den = app.add_subcommand("denoise", "L^2-TVL^p denoising");
  std::string den_in, den_out, den_out_w;
  SolverFlags den_flags;
  Range den_range;
  den->add_option("--in", den_in)->required();
  den->add_option("--out", den_out)->required();
  den->add_option("--out-w", den_out_w, "CSV output of w (1D signals only)");
  den_flags.add(den);
  den_range.add(den);

  // rof
  auto* rof = app.add_subcommand("rof", "ROF denoising (w = 0)");
  std::string rof_in, rof_out;
  double rof_alpha = 1.0;
  SolverFlags rof_flags;
  Range rof_range;
  rof->add_option("--in", rof_in)->required();
  rof->add_option("--out", rof_out)->required();
  rof->add_option("--alpha", rof_alpha)->required();
  rof_flags.add(rof, false);
  rof_range.add(rof);

  // bregman
  auto* breg = app.add_subcommand("bregman", "Bregmanised TVL^p iteration");
  std::string breg_in, breg_out, breg_ref;
  int breg_iters = 1;
  double breg_peak = 1.0;
  SolverFlags breg_flags;
  Range breg_range;
  breg->add_option("--in", breg_in)->required();
  breg->add_option("--out", breg_out, "best iterate by SSIM with --ref, last iterate otherwise")->required();
  breg->add_option("--iters", breg_iters, "outer iterations K")->required();
  breg->add_option("--ref", breg_ref, "clean reference for PSNR/SSIM");
  breg->add_option("--peak", breg_peak)->capture_default_str();
  breg_flags.add(breg);
  breg_range.add(breg);

  // decompose
  auto* dec = app.add_subcommand("decompose", "f ~ u + v with u in BV and v in W^{1,p}");
  std::string dec_in, dec_out_u, dec_out_v;
  SolverFlags dec_flags;
  Range dec_range;
  dec->add_option("--in", dec_in)->required();
  dec->add_option("--out-u", dec_out_u)->required();
  dec->add_option("--out-v", dec_out_v)->required();
  dec_flags.add(dec);
  dec_range.add(dec);

  // analytic
  auto* ana = app.add_subcommand("analytic", "closed-form solution for step data");
  ana->set_help_flag("--help", "print this help and exit");
  tvlp_step_problem problem{100.0, 1.0, 20.0, 450.0, 2.0, TVLP_STEP_TWO_HOM};
  std::string model = "2hom";
  std::size_t ana_n = 2000;
  std::string ana_out;
  ana->add_option("--h", problem.h)->capture_default_str();
  ana->add_option("--L", problem.L)->capture_default_str();
  ana->add_option("--alpha", problem.alpha)->required();
  ana->add_option("--beta", problem.beta)->required();
  ana->add_option("--p", problem.p)->capture_default_str();
  ana->add_option("--model", model, "1hom or 2hom")->check(CLI::IsMember({"1hom", "2hom"}))->capture_default_str();
  ana->add_option("--n", ana_n, "samples")->capture_default_str();
  ana->add_option("--out-csv", ana_out, "profile with columns x,u,w,f")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "dual-certificate check of a 1D candidate");
  std::string ver_u, ver_w, ver_f, ver_mode = "1hom";
  double ver_alpha = 1.0, ver_beta = 1.0, ver_p = 2.0, ver_eps = 0.0;
  std::optional<double> ver_threshold;
  bool ver_discrete = false;
  ver->add_option("--u", ver_u, "CSV with column u")->required();
  ver->add_option("--w", ver_w, "CSV with column w")->required();
  ver->add_option("--f", ver_f, "CSV with column f")->required();
  ver->add_option("--alpha", ver_alpha)->required();
  ver->add_option("--beta", ver_beta)->required();
  ver->add_option("--p", ver_p)->capture_default_str();
  ver->add_option("--mode", ver_mode)->check(CLI::IsMember({"1hom", "phom"}))->capture_default_str();
  ver->add_option("--threshold", ver_threshold, "pass threshold (default 1e-3 alpha)");
  ver->add_option("--eps-support", ver_eps, "support cut-off (default max(1e-6 max|grad u - w|, 1e-3 max|grad f|))");
  ver->add_flag("--discrete", ver_discrete, "plain sums instead of quadrature");

  // metrics
  auto* met = app.add_subcommand("metrics", "PSNR and SSIM against a reference");
  std::string met_in, met_ref;
  double met_peak = 1.0;
  Range met_range;
  met->add_option("--in", met_in)->required();
  met->add_option("--ref", met_ref)->required();
  met->add_option("--peak", met_peak)->capture_default_str();
  met_range.add(met);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    json rep;
    rep["command"] = app.get_subcommands().front()->get_name();
    rep["library_version"] = tvlp_version();

    if (*gen) {
      tvlp_phantom_kind kind;
      check(tvlp_phantom_kind_from_name(gen_kind.c_str(), &kind));
      spec.kind = kind;
      tvlp_image* raw = nullptr;
      check(tvlp_phantom_generate(&spec, &raw));
      Image img(raw);
      const bool one_d = kind <= TVLP_PHANTOM_PIECEWISE_MIX_1D;
      save(img.get(), gen_out, Placement{one_d ? -spec.L : 0.0}, gen_range.lo, gen_range.hi, gen_range.ascii);
      rep["kind"] = gen_kind;
      rep["rows"] = tvlp_image_rows(img.get());
      rep["cols"] = tvlp_image_cols(img.get());
      rep["spacing"] = tvlp_image_spacing(img.get());
      write_json(report_path(report, gen_out), rep);
    } else if (*noise) {
      Loaded in = load(noise_in, "u", noise_range.lo, noise_range.hi);
      tvlp_image* raw = nullptr;
      check(tvlp_add_noise(in.image.get(), variance, seed, &raw));
      Image out(raw);
      save(out.get(), noise_out, in.placement, noise_range.lo, noise_range.hi, noise_range.ascii);
      rep["variance"] = variance;
      rep["seed"] = seed;
      write_json(report_path(report, noise_out), rep);
    } else if (*den) {
      Loaded in = load(den_in, "u", den_range.lo, den_range.hi);
      const tvlp_params params = den_flags.params();
      tvlp_image *u = nullptr, *w1 = nullptr, *w2 = nullptr;
      tvlp_report* r = nullptr;
      check(tvlp_denoise(in.image.get(), &params, &u, &w1, &w2, &r));
      Image uu(u), ww1(w1), ww2(w2);
      Report rr(r);
      std::vector<std::pair<std::string, const tvlp_image*>> extra;
      if (ends_with(den_out, ".csv")) extra = {{"w", ww1.get()}, {"f", in.image.get()}};
      save(uu.get(), den_out, in.placement, den_range.lo, den_range.hi, den_range.ascii, extra);
      if (!den_out_w.empty()) {
        if (!ends_with(den_out_w, ".csv")) throw Failure(kExitInvalid, "--out-w expects a .csv path");
        save(ww1.get(), den_out_w, in.placement, den_range.lo, den_range.hi, den_range.ascii);
      }
      rep["params"] = den_flags.to_json();
      rep["solve"] = report_json(rr.get());
      write_json(report_path(report, den_out), rep);
    } else if (*rof) {
      Loaded in = load(rof_in, "u", rof_range.lo, rof_range.hi);
      const tvlp_params params = rof_flags.params();
      tvlp_image* u = nullptr;
      tvlp_report* r = nullptr;
      check(tvlp_denoise_rof(in.image.get(), rof_alpha, &params, &u, &r));
      Image uu(u);
      Report rr(r);
      save(uu.get(), rof_out, in.placement, rof_range.lo, rof_range.hi, rof_range.ascii);
      rep["params"] = rof_flags.to_json();
      rep["params"]["alpha"] = rof_alpha;
      rep["solve"] = report_json(rr.get());
      write_json(report_path(report, rof_out), rep);
    } else if (*breg) {
      Loaded in = load(breg_in, "u", breg_range.lo, breg_range.hi);
      std::optional<Loaded> ref;
      if (!breg_ref.empty()) ref = load(breg_ref, "u", breg_range.lo, breg_range.hi);
      const tvlp_params params = breg_flags.params();
      tvlp_bregman_result* raw = nullptr;
      check(tvlp_bregman(in.image.get(), &params, breg_iters, ref ? ref->image.get() : nullptr, breg_peak, &raw));
      std::unique_ptr<tvlp_bregman_result, BregmanDeleter> result(raw);
      const int best = tvlp_bregman_best(result.get());
      const int chosen = best >= 0 ? best : tvlp_bregman_count(result.get()) - 1;
      save(tvlp_bregman_iterate(result.get(), chosen), breg_out, in.placement, breg_range.lo, breg_range.hi,
           breg_range.ascii);
      rep["params"] = breg_flags.to_json();
      rep["outer_iterations"] = breg_iters;
      rep["selected_iterate"] = chosen + 1;
      rep["bregman"] = parse_owned(tvlp_bregman_to_json(result.get()));
      write_json(report_path(report, breg_out), rep);
    } else if (*dec) {
      Loaded in = load(dec_in, "u", dec_range.lo, dec_range.hi);
      const tvlp_params params = dec_flags.params();
      tvlp_image *u = nullptr, *v = nullptr;
      tvlp_report* r = nullptr;
      check(tvlp_decompose(in.image.get(), &params, &u, &v, &r));
      Image uu(u), vv(v);
      Report rr(r);
      save(uu.get(), dec_out_u, in.placement, dec_range.lo, dec_range.hi, dec_range.ascii);
      // v has mean zero; PGM output shifts it to the middle of the range.
      save(vv.get(), dec_out_v, in.placement, dec_range.lo - (dec_range.hi - dec_range.lo) / 2.0,
           dec_range.hi - (dec_range.hi - dec_range.lo) / 2.0, dec_range.ascii);
      rep["params"] = dec_flags.to_json();
      rep["solve"] = report_json(rr.get());
      write_json(report_path(report, dec_out_u), rep);
    } else if (*ana) {
      problem.model = model == "1hom" ? TVLP_STEP_ONE_HOM : TVLP_STEP_TWO_HOM;
      tvlp_step_solution* raw = nullptr;
      check(tvlp_step_exact(&problem, &raw));
      std::unique_ptr<tvlp_step_solution, StepDeleter> sol(raw);
      if (ana_n < 2) throw Failure(kExitInvalid, "--n must be at least 2");
      const double t = 2.0 * problem.L / static_cast<double>(ana_n);
      std::vector<double> x(ana_n), u(ana_n), w(ana_n), f(ana_n);
      for (std::size_t i = 0; i < ana_n; ++i) {
        x[i] = -problem.L + (static_cast<double>(i) + 0.5) * t;
        tvlp_step_eval(sol.get(), x[i], &u[i], nullptr, nullptr);
        // w lives where the forward difference u_{i+1} - u_i does.
        tvlp_step_eval(sol.get(), x[i] + t / 2.0, nullptr, &w[i], nullptr);
        f[i] = x[i] > 0.0 ? problem.h : 0.0;
      }
      w[ana_n - 1] = 0.0;
      const char* names[] = {"x", "u", "w", "f"};
      const double* cols[] = {x.data(), u.data(), w.data(), f.data()};
      check(tvlp_write_csv(ana_out.c_str(), names, cols, 4, ana_n));
      const tvlp_regime regime = tvlp_step_regime(sol.get());
      std::cout << tvlp_regime_name(regime) << '\n';
      rep["problem"] = {{"h", problem.h}, {"L", problem.L}, {"alpha", problem.alpha}, {"beta", problem.beta},
                        {"p", problem.p}, {"model", model}, {"n", ana_n}};
      rep["regime"] = tvlp_regime_name(regime);
      rep["k"] = tvlp_step_k(sol.get());
      rep["c1"] = tvlp_step_c1(sol.get());
      rep["c2"] = tvlp_step_c2(sol.get());
      rep["beta_2hom"] = tvlp_step_beta_2hom(sol.get());
      write_json(report_path(report, ana_out), rep);
    } else if (*ver) {
      Loaded u = load(ver_u, "u", 0.0, 1.0);
      Loaded w = load(ver_w, "w", 0.0, 1.0);
      Loaded f = load(ver_f, "f", 0.0, 1.0);
      const std::size_t n = tvlp_image_rows(f.image.get());
      if (tvlp_image_rows(u.image.get()) != n || tvlp_image_rows(w.image.get()) != n) {
        throw Failure(kExitInvalid, "u, w and f must have the same length");
      }
      tvlp_params params;
      tvlp_params_default(&params);
      params.alpha = ver_alpha;
      params.beta = ver_beta;
      params.p = ver_p;
      params.mode = ver_mode == "phom" ? TVLP_MODE_P_HOM : TVLP_MODE_ONE_HOM;
      params.norm = ver_discrete ? TVLP_NORM_DISCRETE : TVLP_NORM_QUADRATURE;
      tvlp_certificate cert;
      check(tvlp_verify_optimality_1d(tvlp_image_data(u.image.get()), tvlp_image_data(w.image.get()),
                                      tvlp_image_data(f.image.get()), n, tvlp_image_spacing(f.image.get()), &params,
                                      ver_eps, &cert));
      const double threshold = ver_threshold.value_or(1e-3 * ver_alpha);
      const double worst = std::max({cert.boundary_residual, cert.dual_bound_excess, cert.support_residual,
                                     cert.w_residual});
      rep["boundary_residual"] = cert.boundary_residual;
      rep["dual_bound_excess"] = cert.dual_bound_excess;
      rep["support_residual"] = cert.support_residual;
      rep["w_residual"] = cert.w_residual;
      rep["w_is_zero"] = cert.w_is_zero != 0;
      rep["threshold"] = threshold;
      rep["pass"] = worst <= threshold;
      std::cout << rep.dump(2) << '\n';
      if (!report.empty()) write_json(report, rep);
      return worst <= threshold ? 0 : 1;
    } else if (*met) {
      Loaded in = load(met_in, "u", met_range.lo, met_range.hi);
      Loaded ref = load(met_ref, "u", met_range.lo, met_range.hi);
      double p = 0.0;
      check(tvlp_psnr(in.image.get(), ref.image.get(), met_peak, &p));
      rep["psnr"] = std::isinf(p) ? json("inf") : json(p);
      double s = 0.0;
      if (tvlp_ssim(in.image.get(), ref.image.get(), met_peak, &s) == TVLP_OK) {
        rep["ssim"] = s;
      } else {
        rep["ssim"] = nullptr;
      }
      std::cout << rep.dump(2) << '\n';
      if (!report.empty()) write_json(report, rep);
    }
    return 0;
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
