#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncbeta/densities.hpp"
#include "ncbeta/errors.hpp"
#include "ncbeta/moments.hpp"
#include "ncbeta/rng.hpp"
#include "ncbeta/table_io.hpp"
#include "ncbeta/validation.hpp"
#include "ncbeta/version.hpp"

namespace {

using namespace ncbeta;

// A flag value the user spelled wrong; reported on stderr with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOpts {
  std::string format = "csv";
  std::string out = "-";
  std::uint64_t seed = 20260815;
  int precision = 5;
  SeriesControl ctrl;

  OutputSpec output_spec() const {
    OutputSpec spec;
    spec.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    spec.path = out;
    spec.precision = precision;
    return spec;
  }
};

// "1..4", "2", or "1,3,4" -> list of orders.
std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> orders;
  auto parse_int = [&](const std::string& s) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      throw UsageError("--orders: '" + s + "' is not an integer");
    }
    if (pos != s.size()) {
      throw UsageError("--orders: '" + s + "' is not an integer");
    }
    return v;
  };
  size_t dots = text.find("..");
  if (dots != std::string::npos) {
    int lo = parse_int(text.substr(0, dots));
    int hi = parse_int(text.substr(dots + 2));
    if (lo > hi) throw UsageError("--orders: empty range " + text);
    for (int r = lo; r <= hi; ++r) orders.push_back(r);
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) orders.push_back(parse_int(part));
  }
  if (orders.empty()) throw UsageError("--orders: no orders given");
  for (int r : orders) {
    if (r < 1 || r > kMaxMomentOrder) {
      throw UsageError("--orders: order " + std::to_string(r) +
                       " outside [1, " + std::to_string(kMaxMomentOrder) + "]");
    }
  }
  return orders;
}

std::vector<double> parse_vec(const std::string& text, size_t expect,
                              const char* shape) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &pos);
    } catch (const std::exception&) {
      throw UsageError(std::string("--vec: '") + part + "' is not a number");
    }
    if (pos != part.size()) {
      throw UsageError(std::string("--vec: '") + part + "' is not a number");
    }
    values.push_back(v);
  }
  if (values.size() != expect) {
    throw UsageError(std::string("--vec: expected ") + shape + ", got '" +
                     text + "'");
  }
  return values;
}

double require_flag(const std::optional<double>& v, const char* flag,
                    const char* model) {
  if (!v) {
    throw UsageError(std::string("missing ") + flag + " (required for --model " +
                     model + ")");
  }
  return *v;
}

// Domain violations in user-supplied parameters are usage errors, not
// runtime failures.
NcChiSqParams make_chisq_params(double g_in, double lambda) {
  try {
    return NcChiSqParams(g_in, lambda);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
}

DNcBParams make_dncb_params(double a1, double a2, double l1, double l2) {
  try {
    return DNcBParams(a1, a2, l1, l2);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
}

long long checked_count(long v) { return static_cast<long long>(v); }

// ---------------------------------------------------------------- moments

struct MomentsOpts {
  std::string model;
  std::optional<double> df, lambda, alpha1, alpha2, lambda1, lambda2;
  std::string orders = "1..4";
  std::string method = "auto";
};

int cmd_moments(const GlobalOpts& g, const MomentsOpts& o) {
  std::vector<int> orders = parse_orders(o.orders);
  Table table;
  std::map<std::string, std::string> meta{{"command", "moments"},
                                          {"model", o.model}};

  if (o.model == "ncchisq") {
    NcChiSqParams p = make_chisq_params(
        require_flag(o.df, "--df", "ncchisq"),
        require_flag(o.lambda, "--lambda", "ncchisq"));
    std::string method = o.method;
    if (method == "auto") method = p.g > 0.0 ? "classic" : "zero-df";
    if ((method == "classic" || method == "stirling") && p.g <= 0.0) {
      throw UsageError("--method " + method +
                       " needs --df > 0; use zero-df when --df is 0");
    }
    if (method == "zero-df" && p.g > 0.0) {
      throw UsageError("--method zero-df needs --df 0");
    }
    table.columns = {"g", "lambda", "r", "method", "value", "terms"};
    for (int r : orders) {
      MomentResult m;
      if (method == "classic") {
        m = ncchisq_moment_classic(p, r);
      } else if (method == "stirling") {
        m = ncchisq_moment_stirling(p, r);
      } else if (method == "zero-df") {
        m = ncchisq_moment_zero_df(p, r);
      } else if (method == "closed") {
        m = ncchisq_moment_closed(p, r);
      } else {
        throw UsageError("--method: unknown ncchisq method '" + method + "'");
      }
      table.rows.push_back({p.g, p.lambda, static_cast<long long>(r),
                            std::string(moment_method_name(m.method)), m.value,
                            checked_count(m.terms_used)});
    }
  } else if (o.model == "dncb") {
    DNcBParams p = make_dncb_params(
        require_flag(o.alpha1, "--alpha1", "dncb"),
        require_flag(o.alpha2, "--alpha2", "dncb"),
        require_flag(o.lambda1, "--lambda1", "dncb"),
        require_flag(o.lambda2, "--lambda2", "dncb"));
    std::string method = o.method == "auto" ? "sum" : o.method;
    table.columns = {"alpha1", "alpha2", "lambda1", "lambda2",
                     "r",      "method", "value",   "terms"};
    for (int r : orders) {
      MomentResult m;
      if (method == "sum") {
        m = dncb_moment_sum(p, r, g.ctrl);
      } else if (method == "one-series") {
        m = dncb_moment_one_series(p, r, g.ctrl);
      } else if (method == "double-series") {
        m = dncb_moment_double_series(p, r, g.ctrl);
      } else if (method == "reduced") {
        if (r > 2) {
          throw UsageError("--method reduced covers orders 1 and 2 only");
        }
        m.order = r;
        m.value = r == 1 ? dncb_mean_reduced(p, g.ctrl)
                         : dncb_second_moment_reduced(p, g.ctrl);
        m.method = MomentMethod::kReduced;
        m.terms_used = 0;
      } else {
        throw UsageError("--method: unknown dncb method '" + method + "'");
      }
      table.rows.push_back({p.alpha1, p.alpha2, p.lambda1, p.lambda2,
                            static_cast<long long>(r),
                            std::string(moment_method_name(m.method)), m.value,
                            checked_count(m.terms_used)});
    }
  } else if (o.model == "ncb1" || o.model == "ncb2") {
    double a1 = require_flag(o.alpha1, "--alpha1", o.model.c_str());
    double a2 = require_flag(o.alpha2, "--alpha2", o.model.c_str());
    double l = require_flag(o.lambda, "--lambda", o.model.c_str());
    make_dncb_params(a1, a2, l, 0.0);  // flag domain check only
    table.columns = {"alpha1", "alpha2", "lambda", "r",
                     "method", "value",  "terms"};
    std::string method = o.method;
    for (int r : orders) {
      MomentResult m;
      if (o.model == "ncb2") {
        if (method != "auto") {
          throw UsageError("--method does not apply to ncb2");
        }
        m = ncb2_moment(a1, a2, l, r, g.ctrl);
      } else if (method == "auto" || method == "sum") {
        m = ncb1_moment(a1, a2, l, r, g.ctrl);
      } else if (method == "definitional") {
        m = ncb1_moment_definitional(a1, a2, l, r, g.ctrl);
      } else {
        throw UsageError("--method: unknown ncb1 method '" + method + "'");
      }
      table.rows.push_back({a1, a2, l, static_cast<long long>(r),
                            std::string(moment_method_name(m.method)), m.value,
                            checked_count(m.terms_used)});
    }
  } else {
    throw UsageError("--model: unknown model '" + o.model + "'");
  }

  write_output(table, g.output_spec(), meta, g.seed);
  return 0;
}

// ---------------------------------------------------------------- density

struct DensityOpts {
  std::string model;
  std::optional<double> alpha1, alpha2, lambda1, lambda2, lambda;
  int grid = 401;
  std::string representation = "both";
  bool representation_set = false;
};

int cmd_density(const GlobalOpts& g, const DensityOpts& o) {
  if (o.grid < 1) throw UsageError("--grid must be >= 1");
  Table table;
  std::map<std::string, std::string> meta{{"command", "density"},
                                          {"model", o.model}};

  auto grid_x = [&](int i) {
    return static_cast<double>(i) / static_cast<double>(o.grid + 1);
  };

  if (o.model == "dncb") {
    DNcBParams p = make_dncb_params(
        require_flag(o.alpha1, "--alpha1", "dncb"),
        require_flag(o.alpha2, "--alpha2", "dncb"),
        require_flag(o.lambda1, "--lambda1", "dncb"),
        require_flag(o.lambda2, "--lambda2", "dncb"));
    if (o.representation == "both") {
      table.columns = {"x", "mixture", "perturbation"};
      for (int i = 1; i <= o.grid; ++i) {
        double x = grid_x(i);
        table.rows.push_back({x, dncb_density_mixture(x, p, g.ctrl),
                              dncb_density_perturbation(x, p, g.ctrl)});
      }
    } else if (o.representation == "mixture" ||
               o.representation == "perturbation") {
      bool mix = o.representation == "mixture";
      table.columns = {"x", "density"};
      for (int i = 1; i <= o.grid; ++i) {
        double x = grid_x(i);
        table.rows.push_back(
            {x, mix ? dncb_density_mixture(x, p, g.ctrl)
                    : dncb_density_perturbation(x, p, g.ctrl)});
      }
    } else {
      throw UsageError("--representation: unknown form '" + o.representation +
                       "'");
    }
  } else if (o.model == "ncb1") {
    if (o.representation_set) {
      throw UsageError("--representation applies to --model dncb only");
    }
    double a1 = require_flag(o.alpha1, "--alpha1", "ncb1");
    double a2 = require_flag(o.alpha2, "--alpha2", "ncb1");
    double l = require_flag(o.lambda, "--lambda", "ncb1");
    make_dncb_params(a1, a2, l, 0.0);  // flag domain check only
    table.columns = {"x", "density"};
    for (int i = 1; i <= o.grid; ++i) {
      double x = grid_x(i);
      table.rows.push_back({x, ncb1_density(x, a1, a2, l, g.ctrl)});
    }
  } else {
    throw UsageError("--model: unknown model '" + o.model + "'");
  }

  write_output(table, g.output_spec(), meta, g.seed);
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string model;
  std::optional<double> df, lambda, alpha1, alpha2, lambda1, lambda2;
  int draws = 10000;
  int bins = 0;
  std::string representation = "mixture";
};

void append_binned(Table& table, const std::vector<double>& draws, double lo,
                   double hi, int bins) {
  table.columns = {"bin_lower", "bin_upper", "count", "density"};
  std::vector<long long> counts(static_cast<size_t>(bins), 0);
  double width = (hi - lo) / static_cast<double>(bins);
  for (double d : draws) {
    int b = static_cast<int>((d - lo) / width);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    ++counts[static_cast<size_t>(b)];
  }
  double n = static_cast<double>(draws.size());
  for (int b = 0; b < bins; ++b) {
    double left = lo + width * static_cast<double>(b);
    table.rows.push_back(
        {left, left + width, counts[static_cast<size_t>(b)],
         static_cast<double>(counts[static_cast<size_t>(b)]) / (n * width)});
  }
}

int cmd_simulate(const GlobalOpts& g, const SimulateOpts& o) {
  if (o.draws < 1) throw UsageError("--draws must be >= 1");
  if (o.bins < 0) throw UsageError("--bins must be >= 0");
  Table table;
  std::map<std::string, std::string> meta{{"command", "simulate"},
                                          {"model", o.model}};
  RngStream rng(g.seed, 0);

  if (o.model == "ncchisq") {
    NcChiSqParams p = make_chisq_params(
        require_flag(o.df, "--df", "ncchisq"),
        require_flag(o.lambda, "--lambda", "ncchisq"));
    bool mixture = o.representation == "mixture";
    if (!mixture && o.representation != "additive") {
      throw UsageError("--representation: unknown form '" + o.representation +
                       "'");
    }
    std::vector<double> draws(static_cast<size_t>(o.draws));
    for (double& d : draws) {
      d = mixture ? sample_ncchisq_mixture(p, rng)
                  : sample_ncchisq_additive(p, rng);
    }
    if (o.bins > 0) {
      double hi = *std::max_element(draws.begin(), draws.end());
      append_binned(table, draws, 0.0, hi, o.bins);
    } else {
      table.columns = {"draw"};
      for (double d : draws) table.rows.push_back({d});
    }
  } else if (o.model == "dncb") {
    DNcBParams p = make_dncb_params(
        require_flag(o.alpha1, "--alpha1", "dncb"),
        require_flag(o.alpha2, "--alpha2", "dncb"),
        require_flag(o.lambda1, "--lambda1", "dncb"),
        require_flag(o.lambda2, "--lambda2", "dncb"));
    if (o.bins > 0) {
      std::vector<double> xs(static_cast<size_t>(o.draws));
      for (double& x : xs) x = sample_dncb(p, rng).x;
      append_binned(table, xs, 0.0, 1.0, o.bins);
    } else {
      table.columns = {"draw", "m_plus", "i_star"};
      for (int i = 0; i < o.draws; ++i) {
        DncbDraw d = sample_dncb(p, rng);
        table.rows.push_back({d.x, checked_count(d.latent.m_plus),
                              checked_count(d.latent.i_star)});
      }
    }
  } else {
    throw UsageError("--model: unknown model '" + o.model + "'");
  }

  write_output(table, g.output_spec(), meta, g.seed);
  return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateOpts {
  std::string model;
  std::vector<std::string> vecs;
  int series = 30;
  int draws = 10000;
  std::string orders = "1..4";
  double alpha = 0.01;
  double mu0_bias = 0.0;
};

int cmd_validate(const GlobalOpts& g, const ValidateOpts& o) {
  ValidationConfig cfg;
  cfg.n_series = o.series;
  cfg.draws_per_series = o.draws;
  cfg.orders = parse_orders(o.orders);
  cfg.seed = g.seed;
  cfg.series = g.ctrl;
  cfg.mu0_relative_bias = o.mu0_bias;

  Table table;
  std::map<std::string, std::string> meta{{"command", "validate"},
                                          {"model", o.model}};
  ValidationReport report;

  if (o.model == "ncchisq") {
    std::vector<NcChiSqParams> vecs;
    if (o.vecs.empty()) {
      vecs = {{2.0, 4.0}, {4.5, 2.0}, {3.0, 1.5}, {6.0, 3.5}};
    } else {
      for (const std::string& s : o.vecs) {
        std::vector<double> v = parse_vec(s, 2, "g,lambda");
        vecs.push_back(make_chisq_params(v[0], v[1]));
      }
    }
    report = run_moment_validation(vecs, cfg);
    table.columns = {"g",           "lambda",    "r", "moment",
                     "sample_mean", "sample_sd", "z", "p_value"};
  } else if (o.model == "dncb") {
    std::vector<DNcBParams> vecs;
    if (o.vecs.empty()) {
      vecs = {{0.5, 0.5, 4.0, 4.0},
              {0.5, 0.5, 4.0, 7.0},
              {1.0, 1.0, 2.0, 4.0},
              {2.0, 5.0, 0.5, 7.0}};
    } else {
      for (const std::string& s : o.vecs) {
        std::vector<double> v = parse_vec(s, 4, "alpha1,alpha2,lambda1,lambda2");
        vecs.push_back(make_dncb_params(v[0], v[1], v[2], v[3]));
      }
    }
    report = run_moment_validation(vecs, cfg);
    table.columns = {"alpha1", "alpha2", "lambda1",     "lambda2",
                     "r",      "moment", "sample_mean", "sample_sd",
                     "z",      "p_value"};
  } else {
    throw UsageError("--model: unknown model '" + o.model + "'");
  }

  for (const ValidationRow& row : report.rows) {
    std::vector<Cell> cells;
    for (double p : row.params) cells.push_back(p);
    cells.push_back(static_cast<long long>(row.order));
    cells.push_back(row.theoretical);
    cells.push_back(row.sample_mean);
    cells.push_back(row.sample_sd);
    cells.push_back(row.z);
    cells.push_back(row.p);
    table.rows.push_back(std::move(cells));
  }

  write_output(table, g.output_spec(), meta, g.seed);
  return report.all_above(o.alpha) ? 0 : 1;
}

// ---------------------------------------------------------------- bench

struct BenchOpts {
  std::vector<std::string> vecs;
  int series = 30;
  std::string orders = "1..4";
};

int cmd_bench(const GlobalOpts& g, const BenchOpts& o) {
  ValidationConfig cfg;
  cfg.n_series = o.series;
  cfg.orders = parse_orders(o.orders);
  cfg.seed = g.seed;
  cfg.series = g.ctrl;

  std::vector<DNcBParams> vecs;
  if (o.vecs.empty()) {
    vecs = {{0.5, 0.5, 4.0, 4.0},
            {0.5, 0.5, 4.0, 7.0},
            {1.0, 1.0, 2.0, 4.0},
            {2.0, 5.0, 0.5, 7.0}};
  } else {
    for (const std::string& s : o.vecs) {
      std::vector<double> v = parse_vec(s, 4, "alpha1,alpha2,lambda1,lambda2");
      vecs.push_back(make_dncb_params(v[0], v[1], v[2], v[3]));
    }
  }

  TimingReport report = run_timing_benchmark(vecs, cfg);
  Table table;
  table.columns = {"alpha1",       "alpha2",     "lambda1", "lambda2",
                   "formula",      "mean_seconds", "sd_seconds",
                   "z",            "p_value",    "speedup",
                   "value_rel_diff"};
  for (const TimingRow& row : report.rows) {
    std::vector<Cell> cells;
    for (double p : row.params) cells.push_back(p);
    cells.push_back(row.label);
    cells.push_back(row.mean_seconds);
    cells.push_back(row.sd_seconds);
    cells.push_back(row.z);
    cells.push_back(row.p);
    cells.push_back(row.speedup);
    cells.push_back(row.max_value_rel_diff);
    table.rows.push_back(std::move(cells));
  }

  std::map<std::string, std::string> meta{{"command", "bench"},
                                          {"model", "dncb"}};
  write_output(table, g.output_spec(), meta, g.seed);
  return 0;
}

// ---------------------------------------------------------------- selfcheck

int cmd_selfcheck(const GlobalOpts& g, bool wide) {
  std::ostringstream lines;
  SelfcheckOptions opts;
  opts.wide = wide;
  bool ok = run_selfcheck(lines, opts);

  if (g.out == "-") {
    std::cout << lines.str();
    std::cout.flush();
  } else {
    std::ofstream file(g.out, std::ios::binary);
    if (!file) throw Error("cannot open " + g.out);
    file << lines.str();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;

  // environment override for the series term budget
  if (const char* env = std::getenv("NCB_MAX_TERMS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) {
      std::cerr << "error: NCB_MAX_TERMS must be a positive integer, got '"
                << env << "'\n";
      return 2;
    }
    g.ctrl.max_terms = v;
  }

  CLI::App app{"moments, densities, samplers, and validation harness for "
               "noncentral chi-squared and doubly noncentral beta families"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(ncbeta::kVersion));

  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "output path, '-' for stdout");
  app.add_option("--seed", g.seed, "master seed for stochastic commands");
  app.add_option("--precision", g.precision, "decimal places in output")
      ->check(CLI::Range(0, 17));

  MomentsOpts mo;
  CLI::App* moments = app.add_subcommand("moments", "raw moments by formula");
  moments->add_option("--model", mo.model, "ncchisq, dncb, ncb1, or ncb2")
      ->required();
  moments->add_option("-g,--df", mo.df, "degrees of freedom (ncchisq)");
  moments->add_option("-l,--lambda", mo.lambda,
                      "noncentrality (ncchisq, ncb1, ncb2)");
  moments->add_option("--alpha1", mo.alpha1, "first shape");
  moments->add_option("--alpha2", mo.alpha2, "second shape");
  moments->add_option("--lambda1", mo.lambda1, "numerator noncentrality");
  moments->add_option("--lambda2", mo.lambda2, "denominator noncentrality");
  moments->add_option("-r,--orders", mo.orders, "orders, e.g. 1..4 or 2,4");
  moments->add_option("--method", mo.method, "formula variant");

  DensityOpts do_;
  CLI::App* density = app.add_subcommand("density", "density on an x grid");
  density->add_option("--model", do_.model, "dncb or ncb1")->required();
  density->add_option("--alpha1", do_.alpha1, "first shape");
  density->add_option("--alpha2", do_.alpha2, "second shape");
  density->add_option("--lambda1", do_.lambda1, "numerator noncentrality");
  density->add_option("--lambda2", do_.lambda2, "denominator noncentrality");
  density->add_option("-l,--lambda", do_.lambda, "noncentrality (ncb1)");
  density->add_option("--grid", do_.grid, "number of interior grid points");
  density
      ->add_option("--representation", do_.representation,
                   "mixture, perturbation, or both (dncb)")
      ->each([&do_](const std::string&) { do_.representation_set = true; });

  SimulateOpts so;
  CLI::App* simulate = app.add_subcommand("simulate", "random draws");
  simulate->add_option("--model", so.model, "ncchisq or dncb")->required();
  simulate->add_option("-g,--df", so.df, "degrees of freedom (ncchisq)");
  simulate->add_option("-l,--lambda", so.lambda, "noncentrality (ncchisq)");
  simulate->add_option("--alpha1", so.alpha1, "first shape");
  simulate->add_option("--alpha2", so.alpha2, "second shape");
  simulate->add_option("--lambda1", so.lambda1, "numerator noncentrality");
  simulate->add_option("--lambda2", so.lambda2, "denominator noncentrality");
  simulate->add_option("--draws", so.draws, "number of draws");
  simulate->add_option("--bins", so.bins,
                       "histogram bins; 0 emits the raw draws");
  simulate->add_option("--representation", so.representation,
                       "mixture or additive (ncchisq)");

  ValidateOpts vo;
  CLI::App* validate =
      app.add_subcommand("validate", "simulation check of the moment formulas");
  validate->add_option("--model", vo.model, "ncchisq or dncb")->required();
  validate->add_option("--vec", vo.vecs,
                       "parameter vector 'g,lambda' or 'a1,a2,l1,l2'; "
                       "repeatable, defaults to the standard benchmark set");
  validate->add_option("--series", vo.series, "independent series per vector");
  validate->add_option("--draws", vo.draws, "draws per series");
  validate->add_option("-r,--orders", vo.orders, "orders, e.g. 1..4");
  validate->add_option("--alpha", vo.alpha, "rejection level for exit status");
  validate->add_option("--mu0-bias", vo.mu0_bias,
                       "relative shift of the null moment (power check)")
      ->group("");

  BenchOpts bo;
  CLI::App* bench =
      app.add_subcommand("bench", "timing comparison of the two dncb formulas");
  bench->add_option("--vec", bo.vecs,
                    "dncb parameter vector 'a1,a2,l1,l2'; repeatable");
  bench->add_option("--series", bo.series, "timed repetitions per vector");
  bench->add_option("-r,--orders", bo.orders, "orders per batch");

  bool wide = false;
  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "internal consistency suites");
  selfcheck->add_flag("--wide", wide, "denser grids and more random probes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (moments->parsed()) return cmd_moments(g, mo);
    if (density->parsed()) return cmd_density(g, do_);
    if (simulate->parsed()) return cmd_simulate(g, so);
    if (validate->parsed()) return cmd_validate(g, vo);
    if (bench->parsed()) return cmd_bench(g, bo);
    if (selfcheck->parsed()) return cmd_selfcheck(g, wide);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ncbeta::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
