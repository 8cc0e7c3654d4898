#pragma once

// Sweep engine over n = 1..n_max (per-n divisor data, cumulative error
// aggregates), the concentration-frequency test, residue uniformity tests,
// the C-fit, the S(n)-vs-r(n) regression probe, and CSV/JSON persistence.

#include <atomic>
#include <cinttypes>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "divlab/divisor.hpp"
#include "divlab/numkernel.hpp"
#include "divlab/stochastic.hpp"

namespace divlab::experiments {

// ---------------------------------------------------------------------------
// Sweep records and aggregates
// ---------------------------------------------------------------------------

struct SweepRecord {
  std::uint64_t n = 0;
  std::uint64_t d = 0;        // exact D(n)
  double r = 0.0;             // signed remainder
  double abs_r = 0.0;
  double s_centered = 0.0;    // S(n)
  double mu1w = 0.0;          // model expectation of D(n)
  double dev_w = 0.0;         // d - mu1w
  double abs_dev_w = 0.0;
};

/// Cumulative error functions at each checkpoint N:
///   delta_r = sum |r(n)|, delta_w = sum |D(n) - mu1w(n)|,
///   d_r = sum r(n),       d_w = sum (D(n) - mu1w(n)).
struct AggregateSeries {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> delta_r;
  std::vector<double> delta_w;
  std::vector<double> d_r;
  std::vector<double> d_w;
};

inline constexpr std::uint64_t kSweepLimit = 10'000'000;

inline std::vector<std::uint64_t> default_checkpoints(std::uint64_t n_max) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t c = 1; c <= n_max; c *= 10) {
    cps.push_back(c);
    if (c > n_max / 10) break;  // next multiply would overflow past n_max anyway
  }
  if (cps.empty() || cps.back() != n_max) cps.push_back(n_max);
  return cps;
}

struct SweepConfig {
  std::uint64_t n_max = 0;
  std::vector<std::uint64_t> checkpoints;  // empty => default_checkpoints(n_max)
  double mu1w_constant = 1.0 / 12.0;
  unsigned workers = 1;
};

namespace detail {

// Records for n in [lo, hi]. The harmonic value passed to mu1w is always the
// canonical ascending compensated sum 1/1 + ... + 1/s, so a block computes
// exactly the same bits no matter where it starts.
inline void sweep_block(std::uint64_t lo, std::uint64_t hi, double c,
                        std::vector<SweepRecord>& out) {
  out.clear();
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  std::uint64_t s = isqrt(lo);
  CompensatedAccumulator h;
  for (std::uint64_t k = 1; k <= s; ++k) h.add(1.0 / static_cast<double>(k));
  for (std::uint64_t n = lo; n <= hi; ++n) {
    while ((s + 1) * (s + 1) <= n) {
      ++s;
      h.add(1.0 / static_cast<double>(s));
    }
    SweepRecord rec;
    rec.n = n;
    rec.d = divisor::d_hyperbola(n);
    const double nd = static_cast<double>(n);
    rec.r = static_cast<double>(rec.d) - nd * std::log(nd) - (2.0 * euler_gamma() - 1.0) * nd;
    rec.abs_r = std::abs(rec.r);
    rec.s_centered = divisor::centered_frac_sum(n);
    const double sd = static_cast<double>(s);
    rec.mu1w = (2.0 * nd + 1.0) * h.value() - sd * sd - sd + c;
    rec.dev_w = static_cast<double>(rec.d) - rec.mu1w;
    rec.abs_dev_w = std::abs(rec.dev_w);
    out.push_back(rec);
  }
}

}  // namespace detail

using RecordSink = std::function<void(const SweepRecord&)>;

/// Runs the sweep, emitting records in ascending n to `sink` (which may be
/// empty) and returning cumulative aggregates at the checkpoints.
///
/// Workers partition [1, n_max] into fixed blocks claimed from an atomic
/// counter; the caller's thread merges finished blocks strictly in order and
/// owns every aggregate update, so output is byte-identical for any worker
/// count.
inline AggregateSeries run_sweep(const SweepConfig& config, const RecordSink& sink = {}) {
  const std::uint64_t n_max = config.n_max;
  if (n_max < 1) throw std::invalid_argument("run_sweep: n_max must be >= 1");
  if (n_max > kSweepLimit) {
    throw std::domain_error("run_sweep: n_max = " + std::to_string(n_max) + " exceeds limit " +
                            std::to_string(kSweepLimit));
  }
  std::vector<std::uint64_t> cps =
      config.checkpoints.empty() ? default_checkpoints(n_max) : config.checkpoints;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 1 || cps[i] > n_max || (i > 0 && cps[i] <= cps[i - 1])) {
      throw std::invalid_argument("run_sweep: checkpoints must be ascending and within [1, n_max]");
    }
  }

  AggregateSeries agg;
  agg.checkpoints = cps;
  CompensatedAccumulator acc_delta_r, acc_delta_w, acc_d_r, acc_d_w;
  std::size_t next_cp = 0;
  auto emit = [&](const SweepRecord& rec) {
    acc_delta_r.add(rec.abs_r);
    acc_delta_w.add(rec.abs_dev_w);
    acc_d_r.add(rec.r);
    acc_d_w.add(rec.dev_w);
    if (next_cp < cps.size() && rec.n == cps[next_cp]) {
      agg.delta_r.push_back(acc_delta_r.value());
      agg.delta_w.push_back(acc_delta_w.value());
      agg.d_r.push_back(acc_d_r.value());
      agg.d_w.push_back(acc_d_w.value());
      ++next_cp;
    }
    if (sink) sink(rec);
  };

  const unsigned workers = config.workers == 0 ? 1 : config.workers;
  if (workers == 1) {
    constexpr std::uint64_t kChunk = 1 << 16;
    std::vector<SweepRecord> block;
    for (std::uint64_t lo = 1; lo <= n_max; lo += kChunk) {
      const std::uint64_t hi = std::min(n_max, lo + kChunk - 1);
      detail::sweep_block(lo, hi, config.mu1w_constant, block);
      for (const SweepRecord& rec : block) emit(rec);
    }
    return agg;
  }

  constexpr std::uint64_t kBlock = 8192;
  const std::uint64_t num_blocks = (n_max + kBlock - 1) / kBlock;
  const std::uint64_t window = 4ull * workers + 8;  // bounds buffered blocks
  std::atomic<std::uint64_t> next_claim{0};
  std::uint64_t emitted_blocks = 0;
  std::map<std::uint64_t, std::vector<SweepRecord>> ready;
  std::mutex mu;
  std::condition_variable cv_ready, cv_space;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      for (;;) {
        const std::uint64_t blk = next_claim.fetch_add(1, std::memory_order_relaxed);
        if (blk >= num_blocks) return;
        {
          std::unique_lock lk(mu);
          cv_space.wait(lk, [&] { return blk < emitted_blocks + window || failure; });
          if (failure) return;
        }
        std::vector<SweepRecord> recs;
        detail::sweep_block(blk * kBlock + 1, std::min(n_max, (blk + 1) * kBlock),
                            config.mu1w_constant, recs);
        {
          std::lock_guard lk(mu);
          ready.emplace(blk, std::move(recs));
        }
        cv_ready.notify_all();
      }
    } catch (...) {
      {
        std::lock_guard lk(mu);
        if (!failure) failure = std::current_exception();
      }
      cv_ready.notify_all();
      cv_space.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

  try {
    for (std::uint64_t blk = 0; blk < num_blocks; ++blk) {
      std::vector<SweepRecord> recs;
      {
        std::unique_lock lk(mu);
        cv_ready.wait(lk, [&] { return ready.count(blk) != 0 || failure; });
        if (failure) break;
        recs = std::move(ready[blk]);
        ready.erase(blk);
        ++emitted_blocks;
      }
      cv_space.notify_all();
      for (const SweepRecord& rec : recs) emit(rec);
    }
  } catch (...) {
    {
      std::lock_guard lk(mu);
      if (!failure) failure = std::current_exception();
    }
    cv_space.notify_all();
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return agg;
}

struct SweepResult {
  std::vector<SweepRecord> records;
  AggregateSeries aggregates;
};

/// Materializing convenience wrapper for test- and small-scale use.
inline SweepResult run_sweep_collect(SweepConfig config) {
  SweepResult result;
  result.records.reserve(static_cast<std::size_t>(config.n_max));
  result.aggregates =
      run_sweep(config, [&](const SweepRecord& rec) { result.records.push_back(rec); });
  return result;
}

// ---------------------------------------------------------------------------
// Concentration frequency (the almost-everywhere inequality test)
// ---------------------------------------------------------------------------

/// Unboundedly increasing weight function psi.
struct PsiSpec {
  enum class Kind { kLogLog, kLog, kPower };
  Kind kind = Kind::kLogLog;
  double eps = 0.25;  // used by kPower only

  double operator()(double n) const {
    switch (kind) {
      case Kind::kLogLog:
        return std::log(std::log(n + std::exp(1.0)));
      case Kind::kLog:
        return std::log(n + 1.0);
      case Kind::kPower:
        return std::pow(n, eps);
    }
    return 0.0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::kLogLog:
        return "loglog";
      case Kind::kLog:
        return "log";
      case Kind::kPower: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "power:%g", eps);
        return buf;
      }
    }
    return "?";
  }

  /// Parses "loglog" | "log" | "power:<eps>".
  static PsiSpec parse(const std::string& text) {
    PsiSpec psi;
    if (text == "loglog") {
      psi.kind = Kind::kLogLog;
    } else if (text == "log") {
      psi.kind = Kind::kLog;
    } else if (text.rfind("power:", 0) == 0) {
      psi.kind = Kind::kPower;
      char* end = nullptr;
      const std::string arg = text.substr(6);
      psi.eps = std::strtod(arg.c_str(), &end);
      if (end == arg.c_str() || *end != '\0' || !(psi.eps > 0.0)) {
        throw std::invalid_argument("psi: bad exponent in '" + text + "'");
      }
    } else {
      throw std::invalid_argument("psi: unknown kind '" + text + "' (loglog|log|power:<eps>)");
    }
    return psi;
  }
};

/// Frequency of n <= n_max satisfying |r(n) - mu1| <= psi(n) sqrt(s/4), with
/// mu1 = -(1/2) H_s. The uncentered variant drops the mu1 shift; both are
/// reported because the source convention is ambiguous.
struct FrequencyReport {
  struct Decade {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t total = 0;
    std::uint64_t within_centered = 0;
    std::uint64_t within_uncentered = 0;
  };

  std::uint64_t n_max = 0;
  PsiSpec psi;
  std::uint64_t count_within = 0;             // centered convention
  double frequency = 0.0;                     // count_within / n_max
  std::uint64_t count_within_uncentered = 0;
  double frequency_uncentered = 0.0;
  std::vector<Decade> decades;
};

inline FrequencyReport kubilius_frequency(std::uint64_t n_max, const PsiSpec& psi) {
  if (n_max < 10) throw std::invalid_argument("kubilius_frequency: n_max must be >= 10");
  FrequencyReport report;
  report.n_max = n_max;
  report.psi = psi;
  std::uint64_t s = 1;
  CompensatedAccumulator h;
  h.add(1.0);
  std::uint64_t decade_lo = 1;
  FrequencyReport::Decade decade{1, std::min<std::uint64_t>(9, n_max), 0, 0, 0};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (n >= decade_lo * 10) {
      report.decades.push_back(decade);
      decade_lo *= 10;
      decade = {decade_lo, std::min(decade_lo * 10 - 1, n_max), 0, 0, 0};
    }
    while ((s + 1) * (s + 1) <= n) {
      ++s;
      h.add(1.0 / static_cast<double>(s));
    }
    const double r = divisor::remainder_r(n);
    const double mu1 = -h.value() / 2.0;
    const double bound = psi(static_cast<double>(n)) * std::sqrt(static_cast<double>(s) / 4.0);
    const bool in_centered = std::abs(r - mu1) <= bound;
    const bool in_uncentered = std::abs(r) <= bound;
    ++decade.total;
    if (in_centered) {
      ++decade.within_centered;
      ++report.count_within;
    }
    if (in_uncentered) {
      ++decade.within_uncentered;
      ++report.count_within_uncentered;
    }
  }
  report.decades.push_back(decade);
  report.frequency = static_cast<double>(report.count_within) / static_cast<double>(n_max);
  report.frequency_uncentered =
      static_cast<double>(report.count_within_uncentered) / static_cast<double>(n_max);
  return report;
}

// ---------------------------------------------------------------------------
// Residue uniformity (chi-square)
// ---------------------------------------------------------------------------

struct ChiSquareResult {
  double statistic = 0.0;
  double critical_99 = 0.0;  // 99th percentile for x-1 degrees of freedom
  bool flagged = false;      // statistic exceeds critical_99
};

/// Wilson-Hilferty cube approximation to the chi-square quantile.
inline double chi_square_critical_99(std::uint64_t df) {
  const double k = static_cast<double>(df);
  const double z99 = 2.3263478740408408;  // Phi^{-1}(0.99)
  const double t = 1.0 - 2.0 / (9.0 * k) + z99 * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

/// Chi-square statistic of the residues n mod x over n = 1..n_max against
/// the uniform law with mass 1/x. Counts come from the exact closed form
/// floor(n_max/x) + [1 <= k <= n_max mod x].
inline ChiSquareResult chi_square_residues(std::uint64_t x, std::uint64_t n_max) {
  if (x < 2 || x > 10'000) throw std::invalid_argument("chi_square_residues: need 2 <= x <= 10^4");
  if (n_max < 10 * x) throw std::invalid_argument("chi_square_residues: need n_max >= 10x");
  const std::uint64_t base = n_max / x;
  const std::uint64_t rem = n_max % x;
  const double expected = static_cast<double>(n_max) / static_cast<double>(x);
  CompensatedAccumulator acc;
  for (std::uint64_t k = 0; k < x; ++k) {
    const std::uint64_t observed = base + ((k >= 1 && k <= rem) ? 1 : 0);
    const double diff = static_cast<double>(observed) - expected;
    acc.add(diff * diff / expected);
  }
  ChiSquareResult result;
  result.statistic = acc.value();
  result.critical_99 = chi_square_critical_99(x - 1);
  result.flagged = result.statistic > result.critical_99;
  return result;
}

/// Chi-square for arbitrary observed counts (used to test generator
/// equidistribution against the same uniform expectation).
inline ChiSquareResult chi_square_counts(std::span<const std::uint64_t> counts,
                                         std::uint64_t total) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_counts: need >= 2 classes");
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  CompensatedAccumulator acc;
  for (std::uint64_t observed : counts) {
    const double diff = static_cast<double>(observed) - expected;
    acc.add(diff * diff / expected);
  }
  ChiSquareResult result;
  result.statistic = acc.value();
  result.critical_99 = chi_square_critical_99(counts.size() - 1);
  result.flagged = result.statistic > result.critical_99;
  return result;
}

// ---------------------------------------------------------------------------
// Constant fit for F(n) ~ C * floor(sqrt n)
// ---------------------------------------------------------------------------

struct CFitResult {
  double c_hat = 0.0;   // mean of F(n)/floor(sqrt n) over the window
  double spread = 0.0;  // sample standard deviation of the same ratios
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

inline CFitResult constant_c_fit(std::uint64_t n_max) {
  if (n_max < 100) throw std::invalid_argument("constant_c_fit: n_max must be >= 100");
  CFitResult fit;
  fit.lo = n_max / 2;
  fit.hi = n_max;
  CompensatedAccumulator sum, sum_sq;
  std::uint64_t count = 0;
  for (std::uint64_t n = fit.lo; n <= fit.hi; ++n) {
    const double ratio = divisor::frac_part_sum_float(n) / static_cast<double>(isqrt(n));
    sum.add(ratio);
    sum_sq.add(ratio * ratio);
    ++count;
  }
  const double mean = sum.value() / static_cast<double>(count);
  fit.c_hat = mean;
  const double var =
      (sum_sq.value() - static_cast<double>(count) * mean * mean) / static_cast<double>(count - 1);
  fit.spread = var > 0.0 ? std::sqrt(var) : 0.0;
  return fit;
}

// ---------------------------------------------------------------------------
// S(n) against r(n) regression probe
// ---------------------------------------------------------------------------

/// Least-squares slope/intercept of S(n) on r(n) over n <= n_max, plus the
/// mean absolute residuals of the two competing identifications S ~ -r/2 and
/// S ~ r. The slope adjudicates between them; nothing here asserts a winner.
struct Eq2Probe {
  std::uint64_t n_max = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double mean_abs_s_plus_half_r = 0.0;  // |S + r/2| averaged
  double mean_abs_s_minus_r = 0.0;      // |S - r| averaged
};

inline Eq2Probe eq2_factor_probe(std::uint64_t n_max) {
  if (n_max < 100) throw std::invalid_argument("eq2_factor_probe: n_max must be >= 100");
  CompensatedAccumulator sum_r, sum_s, sum_rr, sum_rs, sum_abs1, sum_abs2;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double r = divisor::remainder_r(n);
    const double s = divisor::centered_frac_sum(n);
    sum_r.add(r);
    sum_s.add(s);
    sum_rr.add(r * r);
    sum_rs.add(r * s);
    sum_abs1.add(std::abs(s + r / 2.0));
    sum_abs2.add(std::abs(s - r));
  }
  const double count = static_cast<double>(n_max);
  Eq2Probe probe;
  probe.n_max = n_max;
  const double denom = count * sum_rr.value() - sum_r.value() * sum_r.value();
  probe.slope = (count * sum_rs.value() - sum_r.value() * sum_s.value()) / denom;
  probe.intercept = (sum_s.value() - probe.slope * sum_r.value()) / count;
  probe.mean_abs_s_plus_half_r = sum_abs1.value() / count;
  probe.mean_abs_s_minus_r = sum_abs2.value() / count;
  return probe;
}

// ---------------------------------------------------------------------------
// CSV / JSON persistence
// ---------------------------------------------------------------------------

inline constexpr const char* kRecordsCsvHeader = "n,d,r,abs_r,s_centered,mu1w,dev_w,abs_dev_w";
inline constexpr const char* kAggregatesCsvHeader = "n_max,delta_r,delta_w,d_r,d_w";

namespace detail {

// %.17g round-trips every double exactly.
inline std::string format_record_row(const SweepRecord& rec) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%" PRIu64 ",%" PRIu64 ",%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                rec.n, rec.d, rec.r, rec.abs_r, rec.s_centered, rec.mu1w, rec.dev_w,
                rec.abs_dev_w);
  return buf;
}

inline std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

inline double parse_double_field(const std::string& field, const std::string& path,
                                 std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": bad numeric field '" +
                             field + "'");
  }
  return v;
}

inline std::uint64_t parse_u64_field(const std::string& field, const std::string& path,
                                     std::size_t line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0') {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": bad integer field '" +
                             field + "'");
  }
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace detail

/// Streaming CSV sink for sweep records.
class CsvRecordWriter {
 public:
  explicit CsvRecordWriter(const std::string& path) : out_(detail::open_for_write(path)) {
    out_ << kRecordsCsvHeader << "\n";
  }
  void operator()(const SweepRecord& rec) { out_ << detail::format_record_row(rec); }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("write failure while closing records CSV");
  }

 private:
  std::ofstream out_;
};

inline void write_records_csv(std::span<const SweepRecord> records, const std::string& path) {
  CsvRecordWriter writer(path);
  for (const SweepRecord& rec : records) writer(rec);
  writer.close();
}

inline void write_aggregates_csv(const AggregateSeries& agg, const std::string& path) {
  std::ofstream out = detail::open_for_write(path);
  out << kAggregatesCsvHeader << "\n";
  for (std::size_t i = 0; i < agg.checkpoints.size(); ++i) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%.17g,%.17g,%.17g,%.17g\n", agg.checkpoints[i],
                  agg.delta_r[i], agg.delta_w[i], agg.d_r[i], agg.d_w[i]);
    out << buf;
  }
  out.close();
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

inline std::vector<SweepRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kRecordsCsvHeader) {
    throw std::runtime_error(path + ":1: expected header '" + kRecordsCsvHeader + "'");
  }
  std::vector<SweepRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 8) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 8 fields, got " +
                               std::to_string(fields.size()));
    }
    SweepRecord rec;
    rec.n = detail::parse_u64_field(fields[0], path, lineno);
    rec.d = detail::parse_u64_field(fields[1], path, lineno);
    rec.r = detail::parse_double_field(fields[2], path, lineno);
    rec.abs_r = detail::parse_double_field(fields[3], path, lineno);
    rec.s_centered = detail::parse_double_field(fields[4], path, lineno);
    rec.mu1w = detail::parse_double_field(fields[5], path, lineno);
    rec.dev_w = detail::parse_double_field(fields[6], path, lineno);
    rec.abs_dev_w = detail::parse_double_field(fields[7], path, lineno);
    records.push_back(rec);
  }
  return records;
}

inline AggregateSeries read_aggregates_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kAggregatesCsvHeader) {
    throw std::runtime_error(path + ":1: expected header '" + kAggregatesCsvHeader + "'");
  }
  AggregateSeries agg;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 5) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 5 fields, got " +
                               std::to_string(fields.size()));
    }
    agg.checkpoints.push_back(detail::parse_u64_field(fields[0], path, lineno));
    agg.delta_r.push_back(detail::parse_double_field(fields[1], path, lineno));
    agg.delta_w.push_back(detail::parse_double_field(fields[2], path, lineno));
    agg.d_r.push_back(detail::parse_double_field(fields[3], path, lineno));
    agg.d_w.push_back(detail::parse_double_field(fields[4], path, lineno));
  }
  return agg;
}

}  // namespace divlab::experiments
