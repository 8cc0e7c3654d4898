#pragma once

// Command-line front end: subcommands over the library plus CSV/JSON/SVG
// emission. dispatch() is stream-parameterized so the whole surface is
// testable in-process.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "divlab/divisor.hpp"
#include "divlab/experiments.hpp"
#include "divlab/numkernel.hpp"
#include "divlab/stochastic.hpp"
#include "divlab/svg.hpp"

namespace divlab::cli {

/// Exit codes: 0 success, 1 runtime error, 2 usage error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { kCsv, kJson };

/// Sweep-facing configuration assembled from flags.
struct RunConfig {
  std::uint64_t n_max = 0;
  std::vector<std::uint64_t> checkpoints;  // empty => powers of 10
  experiments::PsiSpec psi;
  double mu1w_constant = 1.0 / 12.0;
  std::string out_dir;
  stochastic::RngSeed seed;
  unsigned workers = 1;
  OutputFormat format = OutputFormat::kCsv;
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("DIVLAB_OUT")) {
    if (*env != '\0') return env;
  }
  throw UsageError("output location required: pass --out or set DIVLAB_OUT");
}

inline experiments::PsiSpec parse_psi(const std::string& text) {
  try {
    return experiments::PsiSpec::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline nlohmann::ordered_json record_to_json(const experiments::SweepRecord& rec) {
  nlohmann::ordered_json j;
  j["n"] = rec.n;
  j["d"] = rec.d;
  j["r"] = rec.r;
  j["abs_r"] = rec.abs_r;
  j["s_centered"] = rec.s_centered;
  j["mu1w"] = rec.mu1w;
  j["dev_w"] = rec.dev_w;
  j["abs_dev_w"] = rec.abs_dev_w;
  return j;
}

/// Streaming JSON sink mirroring the CSV columns, one object per record.
class JsonRecordWriter {
 public:
  explicit JsonRecordWriter(const std::string& path)
      : out_(experiments::detail::open_for_write(path)) {
    out_ << "[";
  }
  void operator()(const experiments::SweepRecord& rec) {
    out_ << (first_ ? "\n" : ",\n") << record_to_json(rec).dump();
    first_ = false;
  }
  void close() {
    out_ << "\n]\n";
    out_.close();
    if (!out_) throw std::runtime_error("write failure while closing records JSON");
  }

 private:
  std::ofstream out_;
  bool first_ = true;
};

inline void write_aggregates_json(const experiments::AggregateSeries& agg,
                                  const std::string& path) {
  std::ofstream out = experiments::detail::open_for_write(path);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < agg.checkpoints.size(); ++i) {
    nlohmann::ordered_json j;
    j["n_max"] = agg.checkpoints[i];
    j["delta_r"] = agg.delta_r[i];
    j["delta_w"] = agg.delta_w[i];
    j["d_r"] = agg.d_r[i];
    j["d_w"] = agg.d_w[i];
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << "\n";
  out.close();
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

inline void run_sweep_command(const RunConfig& config, std::ostream& out) {
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  experiments::SweepConfig sweep;
  sweep.n_max = config.n_max;
  sweep.checkpoints = config.checkpoints;
  sweep.mu1w_constant = config.mu1w_constant;
  sweep.workers = config.workers;

  experiments::AggregateSeries agg;
  std::string records_path, aggregates_path;
  if (config.format == OutputFormat::kCsv) {
    records_path = (dir / "records.csv").string();
    aggregates_path = (dir / "aggregates.csv").string();
    experiments::CsvRecordWriter writer(records_path);
    agg = experiments::run_sweep(sweep, std::ref(writer));
    writer.close();
    experiments::write_aggregates_csv(agg, aggregates_path);
  } else {
    records_path = (dir / "records.json").string();
    aggregates_path = (dir / "aggregates.json").string();
    JsonRecordWriter writer(records_path);
    agg = experiments::run_sweep(sweep, std::ref(writer));
    writer.close();
    write_aggregates_json(agg, aggregates_path);
  }
  out << "records: " << records_path << "\n";
  out << "aggregates: " << aggregates_path << "\n";
  const std::size_t last = agg.checkpoints.size() - 1;
  out << "N=" << agg.checkpoints[last] << " delta_r=" << fmt17(agg.delta_r[last])
      << " delta_w=" << fmt17(agg.delta_w[last]) << " d_r=" << fmt17(agg.d_r[last])
      << " d_w=" << fmt17(agg.d_w[last]) << "\n";
}

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet divisor-problem laboratory"};
  app.require_subcommand(1);

  std::uint64_t n_arg = 0;
  std::uint64_t x_arg = 0;
  std::uint64_t a_arg = 1, b_arg = 1;
  std::uint64_t m_arg = 1;
  std::uint64_t n_max = 0;
  std::uint64_t k_max = 10'000;
  std::uint64_t mc_samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double c_const = 1.0 / 12.0;
  std::string out_flag;
  std::string psi_text = "loglog";
  std::string format_text = "csv";
  std::string kind_text = "figure1";
  std::string input_path;
  bool have_x = false;

  auto* dn = app.add_subcommand("dn", "divisor summatory function D(n)");
  dn->add_option("n", n_arg, "argument n")->required();
  dn->callback([&] { out << divisor::d_hyperbola(n_arg) << "\n"; });

  auto* rn = app.add_subcommand("rn", "signed Dirichlet remainder r(n)");
  rn->add_option("n", n_arg, "argument n")->required();
  rn->callback([&] { out << detail::fmt17(divisor::remainder_r(n_arg)) << "\n"; });

  auto* sweep = app.add_subcommand("sweep", "per-n records and cumulative aggregates");
  sweep->add_option("--n-max", n_max, "sweep upper bound")->required();
  sweep->add_option("--out", out_flag, "output directory (fallback: DIVLAB_OUT)");
  sweep->add_option("--c", c_const, "constant in the model expectation (default 1/12)");
  sweep->add_option("--workers", workers, "worker thread count");
  sweep->add_option("--format", format_text, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->callback([&] {
    RunConfig config;
    config.n_max = n_max;
    config.mu1w_constant = c_const;
    config.workers = workers == 0 ? 1 : workers;
    config.format = format_text == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    config.out_dir = detail::resolve_out_dir(out_flag);
    detail::run_sweep_command(config, out);
  });

  auto* cov = app.add_subcommand("cov", "covariance of (w_a, w_b): closed form and period oracle");
  cov->add_option("a", a_arg, "first modulus")->required();
  cov->add_option("b", b_arg, "second modulus")->required();
  cov->callback([&] {
    const auto spec = stochastic::make_covariance_spec(a_arg, b_arg);
    out << "a=" << spec.a << " b=" << spec.b << " gcd=" << spec.g << " lcm=" << spec.l << "\n";
    out << "analytic=" << spec.analytic.str() << "\n";
    out << "oracle=" << spec.oracle.str() << "\n";
    out << "match=" << (spec.analytic == spec.oracle ? "yes" : "NO") << "\n";
  });

  auto* toth = app.add_subcommand("toth", "gcd/lcm double sum T(m)");
  toth->add_option("m", m_arg, "summation bound")->required();
  toth->callback([&] {
    const double mobius = stochastic::toth_sum(m_arg, stochastic::TothMethod::kMobius);
    out << "m=" << m_arg << "\n";
    out << "toth_mobius=" << detail::fmt17(mobius) << "\n";
    if (m_arg <= stochastic::kTothBruteLimit) {
      out << "toth_brute=" << detail::fmt17(stochastic::toth_sum(m_arg,
                                                                 stochastic::TothMethod::kBrute))
          << "\n";
    }
    out << "ratio_to_m=" << detail::fmt17(mobius / static_cast<double>(m_arg)) << "\n";
  });

  auto* moments = app.add_subcommand("moments", "model moments at n (plus optional Monte Carlo)");
  moments->add_option("n", n_arg, "argument n")->required();
  moments->add_option("--mc-samples", mc_samples, "Monte Carlo sample count (0 = off)");
  moments->add_option("--seed", seed, "Monte Carlo seed");
  moments->callback([&] {
    const auto ms = stochastic::make_moment_summary(n_arg);
    out << "n=" << n_arg << " s=" << ms.s << "\n";
    out << "mu1_r=" << detail::fmt17(ms.mu1_r) << "\n";
    out << "mu2_r_exact=" << detail::fmt17(ms.mu2_r_exact) << "\n";
    out << "mu2_r_asymptotic=" << detail::fmt17(ms.mu2_r_asym) << "\n";
    out << "toth_s=" << detail::fmt17(ms.toth) << "\n";
    // independent-draw variance, for contrast with the correlated double sum
    CompensatedAccumulator ind;
    for (std::uint64_t x = 1; x <= ms.s; ++x) ind.add(stochastic::LatticeUniform{x}.variance());
    out << "mu2_independent=" << detail::fmt17(ind.value()) << "\n";
    if (mc_samples > 0) {
      CompensatedAccumulator mean_acc, sq_acc;
      for (std::uint64_t i = 0; i < mc_samples; ++i) {
        const double v = stochastic::sample_w_deviation(n_arg, stochastic::RngSeed{seed, i});
        mean_acc.add(v);
        sq_acc.add(v * v);
      }
      const double mean = mean_acc.value() / static_cast<double>(mc_samples);
      const double var = (sq_acc.value() - static_cast<double>(mc_samples) * mean * mean) /
                         static_cast<double>(mc_samples - 1);
      out << "mc_samples=" << mc_samples << " mc_seed=" << seed << "\n";
      out << "mc_mean=" << detail::fmt17(mean) << "\n";
      out << "mc_variance=" << detail::fmt17(var) << "\n";
    }
  });

  auto* kub = app.add_subcommand("kubilius", "concentration-inequality frequency");
  kub->add_option("--n-max", n_max, "upper bound")->required();
  kub->add_option("--psi", psi_text, "loglog|log|power:<eps> (default loglog)");
  kub->callback([&] {
    const auto psi = detail::parse_psi(psi_text);
    const auto report = experiments::kubilius_frequency(n_max, psi);
    out << "n_max=" << report.n_max << " psi=" << psi.name() << "\n";
    out << "frequency_centered=" << detail::fmt17(report.frequency)
        << " count=" << report.count_within << "\n";
    out << "frequency_uncentered=" << detail::fmt17(report.frequency_uncentered)
        << " count=" << report.count_within_uncentered << "\n";
    for (const auto& dec : report.decades) {
      out << "decade " << dec.lo << ".." << dec.hi << ": total=" << dec.total
          << " centered=" << dec.within_centered << " uncentered=" << dec.within_uncentered
          << "\n";
    }
  });

  auto* uni = app.add_subcommand("uniformity", "chi-square test of residues n mod x");
  uni->add_option("x", x_arg, "modulus")->required();
  uni->add_option("--n-max", n_max, "upper bound")->required();
  uni->callback([&] {
    const auto res = experiments::chi_square_residues(x_arg, n_max);
    out << "x=" << x_arg << " n_max=" << n_max << "\n";
    out << "chi_square=" << detail::fmt17(res.statistic) << "\n";
    out << "critical_99=" << detail::fmt17(res.critical_99) << "\n";
    out << "flagged=" << (res.flagged ? "yes" : "no") << "\n";
  });

  auto* fourier = app.add_subcommand("fourier", "truncated sawtooth series for {n/x} - 1/2");
  fourier->add_option("n", n_arg, "argument n")->required();
  auto* x_opt = fourier->add_option("--x", x_arg, "single denominator x (omit for full sum)");
  fourier->add_option("--k-max", k_max, "series truncation (default 10^4)");
  fourier->callback([&] {
    have_x = x_opt->count() > 0;
    if (have_x) {
      const double series = divisor::fourier_centered_frac(n_arg, x_arg, k_max);
      out << "n=" << n_arg << " x=" << x_arg << " k_max=" << k_max << "\n";
      out << "series=" << detail::fmt17(series) << "\n";
      if (n_arg % x_arg == 0) {
        out << "exact_centered_frac=-0.5\n";
        out << "note: x divides n; the series converges to 0 there, not to the "
               "centered fractional part -1/2\n";
      } else {
        const double exact =
            static_cast<double>(n_arg % x_arg) / static_cast<double>(x_arg) - 0.5;
        out << "exact_centered_frac=" << detail::fmt17(exact) << "\n";
        out << "abs_error=" << detail::fmt17(std::abs(series - exact)) << "\n";
      }
    } else {
      const auto rem = divisor::fourier_remainder(n_arg, k_max);
      out << "n=" << n_arg << " k_max=" << k_max << " s=" << isqrt(n_arg) << "\n";
      out << "raw=" << detail::fmt17(rem.raw) << "\n";
      out << "divisor_terms=" << rem.divisor_terms
          << " (each contributes 0 to the series but -1/2 exactly)\n";
      out << "corrected=" << detail::fmt17(rem.corrected) << "\n";
      out << "centered_frac_sum=" << detail::fmt17(divisor::centered_frac_sum(n_arg)) << "\n";
    }
  });

  auto* fitc = app.add_subcommand("fit-c", "fit C in F(n) ~ C*floor(sqrt n)");
  fitc->add_option("--n-max", n_max, "upper bound")->required();
  fitc->callback([&] {
    const auto fit = experiments::constant_c_fit(n_max);
    out << "n_max=" << n_max << " window=[" << fit.lo << "," << fit.hi << "]\n";
    out << "c_hat=" << detail::fmt17(fit.c_hat) << "\n";
    out << "spread=" << detail::fmt17(fit.spread) << "\n";
  });

  auto* probe = app.add_subcommand("eq2-probe", "regression of S(n) on r(n)");
  probe->add_option("--n-max", n_max, "upper bound")->required();
  probe->callback([&] {
    const auto p = experiments::eq2_factor_probe(n_max);
    out << "n_max=" << p.n_max << "\n";
    out << "slope=" << detail::fmt17(p.slope) << "\n";
    out << "intercept=" << detail::fmt17(p.intercept) << "\n";
    out << "mean_abs_s_plus_half_r=" << detail::fmt17(p.mean_abs_s_plus_half_r) << "\n";
    out << "mean_abs_s_minus_r=" << detail::fmt17(p.mean_abs_s_minus_r) << "\n";
  });

  auto* plot = app.add_subcommand("plot", "render aggregates CSV as SVG");
  plot->add_option("input", input_path, "aggregates CSV path")->required();
  plot->add_option("--kind", kind_text, "figure1|figure2 (default figure1)")
      ->check(CLI::IsMember({"figure1", "figure2"}));
  plot->add_option("--out", out_flag, "output SVG path (fallback: DIVLAB_OUT directory)");
  plot->callback([&] {
    const auto kind =
        kind_text == "figure2" ? svg::FigureKind::kFigure2 : svg::FigureKind::kFigure1;
    std::string target = out_flag;
    if (target.empty()) {
      const std::filesystem::path dir(detail::resolve_out_dir(""));
      std::filesystem::create_directories(dir);
      target = (dir / (kind_text + ".svg")).string();
    }
    svg::render_svg_file(input_path, kind, target);
    out << "svg: " << target << "\n";
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("divlab");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace divlab::cli
