#include "rdmt/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rdmt/distributions.hpp"
#include "rdmt/io.hpp"
#include "rdmt/spectral.hpp"
#include "rdmt/verify.hpp"
#include "rdmt/version.hpp"

namespace rdmt {

namespace {

// Configuration problems detected after argument parsing.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string subcommand;
  std::string dist;
  std::optional<int> beta;
  std::optional<long long> m;
  std::optional<long long> n;
  std::optional<double> nu;
  std::optional<double> rho;
  std::string params_path;
  std::optional<std::string> seed_text;
  long long count = 1;
  std::string out_path;
  std::string format;  // jsonl for sample, csv for spectrum
  std::string method;
  std::string form = "primal";
  std::string orientation;
  std::string points_path;
  std::string grid_path;
  int grid_points = 50;
  double grid_max = 0.0;
  std::string suite = "default";
  std::string report_path;
  int jobs = 1;
  bool timings = false;
};

const std::vector<std::string> kFamilies = {
    "matric-t", "matrix-mt", "wishart",  "beta2-matric",
    "beta2-mv", "gamma",     "gaussian", "elliptical-t"};

std::uint64_t parse_seed(const std::string& text, const char* source) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(std::string("invalid seed from ") + source + ": \"" +
                      text + "\"");
  }
  return value;
}

std::optional<std::uint64_t> resolve_seed(const Config& c) {
  if (c.seed_text) return parse_seed(*c.seed_text, "--seed");
  if (const char* env = std::getenv("RDMT_SEED")) {
    return parse_seed(env, "RDMT_SEED");
  }
  return std::nullopt;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError("\"" + path + "\": " + e.what());
  }
}

// Parameter record: the --params file overlaid with explicit flags.
Json raw_params(const Config& c) {
  Json j = c.params_path.empty() ? Json::object() : read_json_file(c.params_path);
  if (!j.is_object()) throw FormatError("parameter file must hold a JSON object");
  if (c.beta) j["beta"] = *c.beta;
  if (c.m) j["m"] = *c.m;
  if (c.n) j["n"] = *c.n;
  if (c.nu) j["nu"] = *c.nu;
  if (c.rho) j["rho"] = *c.rho;
  if (!c.orientation.empty()) j["orientation"] = c.orientation;
  if (!j.contains("beta")) j["beta"] = 1;
  return j;
}

// Resolved parameters of every family, stored as JSON plus the typed record.
struct Family {
  std::string name;
  Json resolved;
  std::optional<MatricTParams> matric_t;
  std::optional<MatrixMTParams> matrix_mt;
  std::optional<WishartParams> wishart;
  std::optional<BetaIIParams> beta2;
  std::optional<GammaScalarParams> gamma;
  std::optional<ScaleMixtureSpec> mixture;
  AlgebraTag tag = AlgebraTag::real();
  Index m = 1;
  Index n = 1;
  int nu_int = 0;
};

Index require_index(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("missing --") + key + " (or \"" + key +
                      "\" in the parameter file)");
  }
  if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 1) {
    throw ConfigError(std::string("--") + key + " must be a positive integer");
  }
  return static_cast<Index>(j.at(key).get<long long>());
}

Family resolve_family(const Config& c) {
  if (c.dist.empty()) throw ConfigError("--dist is required");
  if (std::find(kFamilies.begin(), kFamilies.end(), c.dist) == kFamilies.end()) {
    throw ConfigError("unknown --dist \"" + c.dist + "\"");
  }
  Json j = raw_params(c);
  Family f;
  f.name = c.dist;
  if (c.dist == "matric-t") {
    f.matric_t = matric_t_params_from_json(j);
    f.resolved = to_json(*f.matric_t);
    f.tag = f.matric_t->tag;
    f.m = f.matric_t->m;
    f.n = f.matric_t->n;
  } else if (c.dist == "matrix-mt") {
    f.matrix_mt = matrix_mt_params_from_json(j);
    f.resolved = to_json(*f.matrix_mt);
    f.tag = f.matrix_mt->tag;
    f.m = f.matrix_mt->m;
    f.n = f.matrix_mt->n;
  } else if (c.dist == "wishart") {
    f.wishart = wishart_params_from_json(j);
    f.resolved = to_json(*f.wishart);
    f.tag = f.wishart->tag;
    f.m = f.n = f.wishart->m;
  } else if (c.dist == "beta2-matric" || c.dist == "beta2-mv") {
    f.beta2 = beta2_params_from_json(j);
    f.resolved = to_json(*f.beta2);
    f.tag = f.beta2->tag;
    f.m = f.beta2->m;
    f.n = f.beta2->n;
  } else if (c.dist == "gamma") {
    f.gamma = gamma_params_from_json(j);
    f.resolved = to_json(*f.gamma);
    f.tag = f.gamma->tag;
  } else if (c.dist == "gaussian") {
    f.tag = AlgebraTag::from_beta(j.at("beta").get<int>());
    f.m = require_index(j, "m");
    f.n = require_index(j, "n");
    if (f.tag.beta() == 8 && (f.m > 1 || f.n > 1)) {
      throw Unsupported("gaussian: octonion matrices are limited to m = n = 1");
    }
    f.resolved = {{"beta", f.tag.beta()}, {"m", f.m}, {"n", f.n}};
  } else {  // elliptical-t
    f.tag = AlgebraTag::from_beta(j.at("beta").get<int>());
    f.m = require_index(j, "m");
    f.n = require_index(j, "n");
    if (!j.contains("nu") || !j.at("nu").is_number() ||
        j.at("nu").get<double>() != std::round(j.at("nu").get<double>())) {
      throw ConfigError("elliptical-t needs an integer --nu");
    }
    f.nu_int = static_cast<int>(j.at("nu").get<double>());
    if (f.tag.beta() == 8) {
      throw Unsupported("elliptical-t: octonion matrices are not supported");
    }
    if (f.nu_int < static_cast<int>(f.m)) {
      throw ConfigError("elliptical-t needs integer nu >= m");
    }
    f.mixture = j.contains("weights")
                    ? mixture_from_json(j)
                    : ScaleMixtureSpec{{1.0}, {1.0}};
    f.resolved = {{"beta", f.tag.beta()}, {"m", f.m},
                  {"n", f.n},             {"nu", f.nu_int},
                  {"weights", f.mixture->weights},
                  {"scales", f.mixture->scales}};
  }
  return f;
}

MatricTMethod matric_t_method(const Config& c) {
  if (c.method.empty() || c.method == "wishart-root") {
    return MatricTMethod::wishart_root;
  }
  if (c.method == "inverse-root") return MatricTMethod::inverse_root;
  throw ConfigError("--method for matric-t must be wishart-root or inverse-root");
}

WishartMethod wishart_method(const Config& c) {
  if (c.method.empty() || c.method == "bartlett") return WishartMethod::bartlett;
  if (c.method == "gram") return WishartMethod::gram;
  throw ConfigError("--method for wishart must be bartlett or gram");
}

// One draw of the family; scalar families return a 1 x 1 real matrix.
DivMatrix draw(const Family& f, const Config& c, RngStream& rng) {
  if (f.matric_t) return sample_matric_t(rng, *f.matric_t, matric_t_method(c));
  if (f.matrix_mt) return sample_matrix_mt(rng, *f.matrix_mt);
  if (f.wishart) return sample_wishart(rng, *f.wishart, wishart_method(c)).mat();
  if (f.beta2) {
    return f.name == "beta2-matric" ? sample_beta2_matric(rng, *f.beta2).mat()
                                    : sample_beta2_multivariate(rng, *f.beta2).mat();
  }
  if (f.gamma) {
    DivMatrix s(AlgebraTag::real(), 1, 1);
    s.entry(0, 0)[0] = sample_gamma_scalar(rng, *f.gamma);
    return s;
  }
  if (f.mixture) return sample_elliptical_t(rng, f.tag, f.m, f.n, f.nu_int, *f.mixture);
  return sample_gaussian(rng, f.tag, f.m, f.n);
}

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void emit_record(std::ostream& err, const Config& c,
                 std::optional<std::uint64_t> seed, const Json& params) {
  Json rec{{"record", "run"},
           {"version", kVersion},
           {"subcommand", c.subcommand}};
  rec["seed"] = seed ? Json(*seed) : Json(nullptr);
  if (!c.dist.empty()) rec["dist"] = c.dist;
  if (!c.method.empty()) rec["method"] = c.method;
  rec["params"] = params;
  err << rec.dump() << '\n';
}

// Output sink: a file when a path is given, the provided stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write \"" + path + "\"");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::uint64_t require_seed(const Config& c) {
  const auto seed = resolve_seed(c);
  if (!seed) throw ConfigError("a seed is required: pass --seed or set RDMT_SEED");
  return *seed;
}

void check_count(const Config& c) {
  if (c.count < 0) throw ConfigError("--count must be >= 0");
}

int cmd_sample(const Config& c, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = require_seed(c);
  check_count(c);
  if (!c.format.empty() && c.format != "jsonl" && c.format != "csv") {
    throw ConfigError("--format must be jsonl or csv");
  }
  const Family f = resolve_family(c);
  if (f.matric_t) matric_t_method(c);
  if (f.wishart) wishart_method(c);
  emit_record(err, c, seed, f.resolved);
  RngStream rng(seed, 0);
  Sink sink(c.out_path, out);
  for (long long i = 0; i < c.count; ++i) {
    const DivMatrix x = draw(f, c, rng);
    if (c.format != "csv") {
      sink.get() << matrix_to_json(x).dump() << '\n';
      continue;
    }
    if (i == 0) {
      const auto k = x.raw().size();
      for (std::size_t j = 0; j < k; ++j) {
        sink.get() << (j ? "," : "") << 'c' << j + 1;
      }
      sink.get() << '\n';
    }
    const auto raw = x.raw();
    for (std::size_t j = 0; j < raw.size(); ++j) {
      sink.get() << (j ? "," : "") << format_double(raw[j]);
    }
    sink.get() << '\n';
  }
  sink.finish();
  return kExitOk;
}

int cmd_density(const Config& c, std::ostream& out, std::ostream& err) {
  const Family f = resolve_family(c);
  DensityForm form;
  if (c.form == "primal") {
    form = DensityForm::primal;
  } else if (c.form == "dual") {
    form = DensityForm::dual;
  } else {
    throw ConfigError("--form must be primal or dual");
  }
  if (c.form == "dual" && !f.matric_t) {
    throw ConfigError("--form dual applies to matric-t only");
  }
  if (!f.matric_t && !f.matrix_mt && !f.beta2) {
    throw ConfigError("density supports matric-t, matrix-mt, beta2-matric and "
                      "beta2-mv");
  }
  if (c.points_path.empty()) throw ConfigError("--points is required");
  std::ifstream file;
  std::istream* in = &std::cin;
  if (c.points_path != "-") {
    file.open(c.points_path);
    if (!file) throw ConfigError("cannot open \"" + c.points_path + "\"");
    in = &file;
  }
  // Parse every point before writing anything.
  std::vector<DivMatrix> points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(*in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      points.push_back(matrix_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw FormatError("points line " + std::to_string(lineno) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("points line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  emit_record(err, c, resolve_seed(c), f.resolved);
  Sink sink(c.out_path, out);
  for (const DivMatrix& x : points) {
    double v;
    if (f.matric_t) {
      v = logpdf_matric_t(*f.matric_t, x, form);
    } else if (f.matrix_mt) {
      v = logpdf_matrix_mt(*f.matrix_mt, x);
    } else if (f.name == "beta2-matric") {
      v = logpdf_beta2_matric(*f.beta2, x);
    } else {
      v = logpdf_beta2_multivariate(*f.beta2, x);
    }
    sink.get() << format_double(v) << '\n';
  }
  sink.finish();
  return kExitOk;
}

bool is_identity(const HermitianPD& a) {
  const DivMatrix d = a.mat() - DivMatrix::identity(a.tag(), a.size());
  return d.max_abs_coeff() == 0.0;
}

void write_grid(const Config& c, const Family& f, SpectralFamily family,
                double vmax) {
  const int m = static_cast<int>(f.m);
  const int n = static_cast<int>(f.n);
  double nu = 0.0;
  if (f.matric_t) {
    nu = f.matric_t->nu;
    if (f.matric_t->mu.max_abs_coeff() != 0.0 || !is_identity(f.matric_t->Xi) ||
        !is_identity(f.matric_t->Sigma)) {
      throw ConfigError("--grid needs standard parameters (mu = 0, identity scales)");
    }
  } else if (f.matrix_mt) {
    nu = f.matrix_mt->nu;
    if (f.matrix_mt->mu.max_abs_coeff() != 0.0 || !is_identity(f.matrix_mt->Delta) ||
        !is_identity(f.matrix_mt->Lambda) || f.matrix_mt->rho != 1.0) {
      throw ConfigError(
          "--grid needs standard parameters (mu = 0, identity scales, rho = 1)");
    }
  } else {
    nu = f.beta2->nu;
    if (f.beta2->orientation != Orientation::gram || f.beta2->scale) {
      throw ConfigError("--grid needs the unscaled gram orientation");
    }
  }
  if (m > 2) throw ConfigError("--grid is available for m <= 2");
  if (n < m) throw ConfigError("--grid needs n >= m");
  if (c.grid_points < 2) throw ConfigError("--grid-points must be >= 2");
  const SpectrumKind kind = f.beta2 ? SpectrumKind::eigen : SpectrumKind::singular;
  std::ofstream g(c.grid_path);
  if (!g) throw std::runtime_error("cannot write \"" + c.grid_path + "\"");
  const int k = c.grid_points;
  const auto at = [&](int i) { return vmax * i / k; };
  if (m == 1) {
    g << "v1,logpdf\n";
    for (int i = 1; i <= k; ++i) {
      const SpectrumSample s({at(i)}, kind);
      g << format_double(at(i)) << ','
        << format_double(log_joint_spectrum(family, f.tag, m, n, nu, s)) << '\n';
    }
  } else {
    g << "v1,v2,logpdf\n";
    for (int i = 2; i <= k; ++i) {
      for (int j = 1; j < i; ++j) {
        const SpectrumSample s({at(i), at(j)}, kind);
        g << format_double(at(i)) << ',' << format_double(at(j)) << ','
          << format_double(log_joint_spectrum(family, f.tag, m, n, nu, s))
          << '\n';
      }
    }
  }
  if (!g) throw std::runtime_error("write failed for \"" + c.grid_path + "\"");
}

int cmd_spectrum(const Config& c, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = require_seed(c);
  check_count(c);
  if (!c.format.empty() && c.format != "csv") {
    throw ConfigError("spectrum writes --format csv only");
  }
  const Family f = resolve_family(c);
  if (f.gamma) throw ConfigError("spectrum needs a matrix family");
  if (f.tag.beta() == 8) {
    throw Unsupported("spectrum: octonion matrices are not supported");
  }
  if (f.matric_t) matric_t_method(c);
  if (f.wishart) wishart_method(c);
  const bool eigen = f.beta2 || f.wishart;
  const SpectralFamily family = f.matrix_mt || f.name == "beta2-mv"
                                    ? SpectralFamily::matrix_mt
                                    : SpectralFamily::matric_t;
  const bool analytic = f.matric_t || f.matrix_mt || f.beta2;
  if (!c.grid_path.empty() && !analytic) {
    throw ConfigError("--grid is available for matric-t, matrix-mt, beta2-matric "
                      "and beta2-mv");
  }
  emit_record(err, c, seed, f.resolved);
  RngStream rng(seed, 0);
  Sink sink(c.out_path, out);
  double vmax = 0.0;
  bool header = false;
  for (long long i = 0; i < c.count; ++i) {
    const DivMatrix x = draw(f, c, rng);
    const SpectrumSample s = empirical_spectrum(
        x, eigen ? SpectrumKind::eigen : SpectrumKind::singular);
    if (!header) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        sink.get() << (j ? "," : "") << 'v' << j + 1;
      }
      sink.get() << '\n';
      header = true;
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
      sink.get() << (j ? "," : "") << format_double(s.values()[j]);
    }
    sink.get() << '\n';
    vmax = std::max(vmax, s.values().front());
  }
  sink.finish();
  if (!c.grid_path.empty()) {
    write_grid(c, f, family, c.grid_max > 0.0 ? c.grid_max : (vmax > 0.0 ? vmax : 5.0));
  }
  return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = require_seed(c);
  if (c.jobs < 1) throw ConfigError("--jobs must be >= 1");
  const std::vector<CheckSpec> suite =
      c.suite == "default" ? default_suite() : suite_from_json(read_json_file(c.suite));
  emit_record(err, c, seed,
              Json{{"suite", c.suite}, {"checks", suite.size()}, {"jobs", c.jobs}});
  SuiteOptions opts;
  opts.jobs = c.jobs;
  opts.include_timings = c.timings;
  const VerifyReport report = run_suite(suite, seed, opts);
  for (const CheckResult& r : report.checks) {
    err << (r.pass ? "PASS " : "FAIL ") << r.name << "  statistic="
        << format_double(r.statistic) << " threshold=" << format_double(r.threshold)
        << " attempts=" << r.attempts << " time=" << std::fixed
        << std::setprecision(2) << r.wall_seconds << "s" << std::defaultfloat
        << '\n';
  }
  Sink sink(c.report_path, out);
  sink.get() << to_json(report, c.timings).dump(2) << '\n';
  sink.finish();
  return report.pass ? kExitOk : kExitRuntime;
}

void add_family_flags(CLI::App* sub, Config& c) {
  sub->add_option("--dist", c.dist,
                  "Family: matric-t, matrix-mt, wishart, beta2-matric, "
                  "beta2-mv, gamma, gaussian, elliptical-t");
  sub->add_option("--beta", c.beta, "Algebra dimension 1, 2, 4 or 8");
  sub->add_option("--m", c.m, "Rows");
  sub->add_option("--n", c.n, "Columns");
  sub->add_option("--nu", c.nu, "Degrees of freedom");
  sub->add_option("--rho", c.rho, "Gamma scale (matrix-mt, gamma)");
  sub->add_option("--params", c.params_path, "JSON parameter record");
  sub->add_option("--orientation", c.orientation,
                  "Beta II orientation: gram (F = T T*) or cogram (F = T* T)");
  sub->add_option("--out", c.out_path, "Output file (default stdout)");
  sub->add_option("--seed", c.seed_text, "Seed (falls back to RDMT_SEED)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Config c;
  CLI::App app{"Random matrix T and beta II distributions over R, C, H and O",
               "rdmt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CLI::App* sample = app.add_subcommand("sample", "Draw matrices");
  add_family_flags(sample, c);
  sample->add_option("--count", c.count, "Number of draws");
  sample->add_option("--format", c.format, "jsonl or csv");
  sample->add_option("--method", c.method,
                     "matric-t: wishart-root|inverse-root; wishart: bartlett|gram");

  CLI::App* density = app.add_subcommand("density", "Evaluate log densities");
  add_family_flags(density, c);
  density->add_option("--points", c.points_path,
                      "JSONL matrices, one per line ('-' for stdin)");
  density->add_option("--form", c.form, "matric-t density form: primal or dual");

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Singular values or eigenvalues of draws");
  add_family_flags(spectrum, c);
  spectrum->add_option("--count", c.count, "Number of draws");
  spectrum->add_option("--format", c.format, "csv");
  spectrum->add_option("--method", c.method, "Construction, as for sample");
  spectrum->add_option("--grid", c.grid_path,
                       "Write the closed-form log density on a grid (m <= 2)");
  spectrum->add_option("--grid-points", c.grid_points, "Grid points per axis");
  spectrum->add_option("--grid-max", c.grid_max,
                       "Upper end of the grid (default: largest sampled value)");

  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("--suite", c.suite, "'default' or a JSON suite file");
  verify->add_option("--seed", c.seed_text, "Seed (falls back to RDMT_SEED)");
  verify->add_option("--report", c.report_path, "Report file (default stdout)");
  verify->add_option("--jobs", c.jobs, "Worker threads");
  verify->add_flag("--timings", c.timings, "Include wall times in the report");

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-' &&
      app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "error: unknown subcommand \"" << args.front() << "\"\n"
        << app.help();
    return kExitConfig;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    if (dynamic_cast<const CLI::RequiredError*>(&e) ||
        dynamic_cast<const CLI::ExtrasError*>(&e)) {
      err << app.help();
    }
    return kExitConfig;
  }

  try {
    if (sample->parsed()) {
      c.subcommand = "sample";
      return cmd_sample(c, out, err);
    }
    if (density->parsed()) {
      c.subcommand = "density";
      return cmd_density(c, out, err);
    }
    if (spectrum->parsed()) {
      c.subcommand = "spectrum";
      return cmd_spectrum(c, out, err);
    }
    c.subcommand = "verify";
    return cmd_verify(c, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NotPositiveDefinite& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace rdmt
