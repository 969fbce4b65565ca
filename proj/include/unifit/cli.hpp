// Copyright 2026 The unifit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 2 validation or usage
// error, 1 anything else.

#ifndef UNIFIT_CLI_HPP
#define UNIFIT_CLI_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "unifit/alternatives.hpp"
#include "unifit/efficiency.hpp"
#include "unifit/error.hpp"
#include "unifit/montecarlo.hpp"
#include "unifit/sample.hpp"
#include "unifit/spectral.hpp"
#include "unifit/statistics.hpp"
#include "unifit/timeseries.hpp"

namespace unifit::cli {

inline constexpr std::string_view version = "0.1.0";
inline constexpr std::string_view csv_schema = "1";

/// Six significant digits, %g style.
inline std::string num(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

inline double round6(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(num(x));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "not a number: '" + s + "'");
  }
  if (pos != s.size()) throw Error(Errc::ParseError, "not a number: '" + s + "'");
  return v;
}

inline std::uint64_t parse_seed(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos, 0);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad seed '" + s + "'");
  }
  if (pos != s.size() || s.front() == '-') throw Error(Errc::ParseError, "bad seed '" + s + "'");
  return v;
}

/// Flag, then UNIFIT_SEED, then the built-in default.
inline std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag);
  if (const char* env = std::getenv("UNIFIT_SEED"); env && *env) return parse_seed(env);
  return default_seed;
}

inline std::vector<double> read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  return read_observations(in);
}

struct Options {
  std::optional<std::string> seed;
  std::size_t reps = 10000;
  double alpha = 0.1;
  std::size_t workers = 1;
  std::string format = "csv";
  std::string output;
};

class Runner {
 public:
  Runner(std::vector<std::string> args, std::ostream& out, std::ostream& err)
      : args_(std::move(args)), out_(out), err_(err) {}

  int run() {
    CLI::App app{"Uniformity tests based on order-statistic moment characterisations", "unifit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));
    setup_test(app);
    setup_critical(app);
    setup_power(app);
    setup_efficiency(app);
    setup_eigen(app);
    setup_whitenoise(app);

    std::vector<std::string> rev(args_.rbegin(), args_.rend());
    try {
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? 0 : 2;
    }
    try {
      action_();
      flush();
    } catch (const Error& e) {
      err_ << "unifit: " << to_string(e.code()) << ": " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err_ << "unifit: internal error: " << e.what() << "\n";
      return 1;
    }
    return 0;
  }

 private:
  CLI::Option* add_common(CLI::App* sub, bool mc) {
    if (mc) {
      sub->add_option("--seed", opts_.seed, "master seed (default: $UNIFIT_SEED, then built-in)");
      sub->add_option("--reps", opts_.reps, "Monte Carlo replicates")->capture_default_str();
      sub->add_option("--alpha", opts_.alpha, "significance level")->capture_default_str();
      sub->add_option("--workers", opts_.workers, "worker threads")->capture_default_str();
    }
    auto* format = sub->add_option("--format", opts_.format, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}))
                       ->capture_default_str();
    sub->add_option("--output,-o", opts_.output, "write to file instead of stdout");
    return format;
  }

  McConfig mc_config(std::size_t n) const {
    McConfig c;
    c.replicates = opts_.reps;
    c.alpha = opts_.alpha;
    c.n = n;
    c.seed = resolve_seed(opts_.seed);
    c.workers = opts_.workers;
    c.hs_max_n = hs_max_n_;
    validate(c);
    return c;
  }

  std::string joined_args() const {
    std::string s;
    for (const auto& a : args_) {
      if (!s.empty()) s += ' ';
      s += a;
    }
    return s;
  }

  std::string meta_line(std::optional<std::uint64_t> seed) const {
    std::ostringstream s;
    s << "# unifit " << version << " schema=" << csv_schema << " rng=" << rng_algorithm;
    if (seed) s << " seed=" << *seed;
    s << " args=" << joined_args() << "\n";
    return s.str();
  }

  nlohmann::ordered_json meta_json(std::optional<std::uint64_t> seed) const {
    nlohmann::ordered_json m;
    m["version"] = version;
    m["schema"] = csv_schema;
    m["rng"] = rng_algorithm;
    if (seed) m["seed"] = *seed;
    m["args"] = args_;
    return m;
  }

  void flush() {
    const std::string text = buffer_.str();
    if (opts_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(opts_.output, std::ios::binary);
    if (!f) throw Error(Errc::ParseError, "cannot write '" + opts_.output + "'");
    f << text;
  }

  void emit_json(const nlohmann::ordered_json& j) { buffer_ << j.dump(2) << "\n"; }

  // test ------------------------------------------------------------------

  void setup_test(CLI::App& app) {
    auto* sub = app.add_subcommand("test", "apply one statistic to a data file, Monte Carlo p-value");
    sub->add_option("--statistic,--test", statistic_, "t1, t2, hs, ks, ad, cvm or qc")->required();
    sub->add_option("file", file_, "observations in [0,1], one or more per line")->required();
    sub->add_option("--hs-max-n", hs_max_n_, "largest n simulated for HS")->capture_default_str();
    add_common(sub, true);
    sub->callback([this] { action_ = [this] { do_test(); }; });
  }

  void do_test() {
    const TestId id = parse_test_id(statistic_);
    const Sample sample(read_series_file(file_));
    const McConfig c = mc_config(sample.size());
    const TestOutcome r = p_value(id, sample, c);
    const char* decision = r.reject ? "reject" : "retain";
    if (opts_.format == "json") {
      nlohmann::ordered_json j;
      j["meta"] = meta_json(c.seed);
      j["test"] = to_string(id);
      j["n"] = r.n;
      j["statistic"] = round6(r.statistic);
      j["p_value"] = round6(r.p_value);
      j["alpha"] = r.alpha;
      j["decision"] = decision;
      emit_json(j);
      return;
    }
    buffer_ << meta_line(c.seed) << "test,n,statistic,p_value,alpha,replicates,decision\n"
            << to_string(id) << ',' << r.n << ',' << num(r.statistic) << ',' << num(r.p_value) << ','
            << num(r.alpha) << ',' << c.replicates << ',' << decision << "\n";
  }

  // critical-values -------------------------------------------------------

  void setup_critical(CLI::App& app) {
    auto* sub = app.add_subcommand("critical-values", "simulated null critical values");
    sub->add_option("--tests", tests_, "comma-separated test list")->capture_default_str();
    sub->add_option("--n", n_list_, "comma-separated sample sizes")->required();
    sub->add_option("--hs-max-n", hs_max_n_, "largest n simulated for HS")->capture_default_str();
    add_common(sub, true);
    sub->callback([this] { action_ = [this] { do_critical(); }; });
  }

  void do_critical() {
    const auto tests = parse_test_list(tests_);
    std::vector<std::size_t> sizes;
    for (const auto& s : split(n_list_, ',')) {
      const double v = parse_double(s);
      if (!(v >= 1.0) || v != std::floor(v)) throw Error(Errc::BadParameter, "bad sample size '" + s + "'");
      sizes.push_back(static_cast<std::size_t>(v));
    }
    if (sizes.empty()) throw Error(Errc::BadParameter, "empty --n list");
    const McConfig base = mc_config(sizes.front());
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream csv;
    csv << "test,n,alpha,replicates,critical_value,seed\n";
    for (TestId id : tests) {
      for (std::size_t n : sizes) {
        McConfig c = base;
        c.n = n;
        const double cv = critical_value(id, n, c.alpha, c);
        csv << to_string(id) << ',' << n << ',' << num(c.alpha) << ',' << c.replicates << ',' << num(cv)
            << ',' << c.seed << "\n";
        rows.push_back({{"test", to_string(id)},
                        {"n", n},
                        {"alpha", c.alpha},
                        {"replicates", c.replicates},
                        {"critical_value", round6(cv)},
                        {"seed", c.seed}});
      }
    }
    if (opts_.format == "json") {
      emit_json({{"meta", meta_json(base.seed)}, {"critical_values", rows}});
    } else {
      buffer_ << meta_line(base.seed) << csv.str();
    }
  }

  // power -----------------------------------------------------------------

  void setup_power(CLI::App& app) {
    auto* sub = app.add_subcommand("power", "power curves against an alternative family");
    sub->add_option("--test,--tests", tests_, "comma-separated test list")->capture_default_str();
    sub->add_option("--family", family_, "g1, g2, g3:beta=B, g4, loc-gauss, loc-cauchy, lo:m=M:c=C")
        ->required();
    sub->add_option("--theta-grid", theta_grid_, "comma-separated theta values")->required();
    sub->add_option("--n", n_, "sample size")->required();
    sub->add_option("--hs-max-n", hs_max_n_, "largest n simulated for HS")->capture_default_str();
    add_common(sub, true);
    sub->callback([this] { action_ = [this] { do_power(); }; });
  }

  void do_power() {
    const auto tests = parse_test_list(tests_);
    const AlternativeFamily fam = parse_family(family_);
    std::vector<double> grid;
    for (const auto& s : split(theta_grid_, ',')) grid.push_back(parse_double(s));
    const McConfig c = mc_config(n_);
    const auto curves = power_study(tests, fam, grid, c);
    if (opts_.format == "json") {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& pc : curves) {
        nlohmann::ordered_json j;
        j["test"] = to_string(pc.test);
        j["family"] = pc.family;
        j["n"] = pc.n;
        j["alpha"] = pc.alpha;
        j["replicates"] = pc.replicates;
        j["critical_value"] = round6(pc.critical_value);
        j["theta"] = pc.theta_grid;
        std::vector<double> p, se;
        for (double v : pc.power) p.push_back(round6(v));
        for (double v : pc.se) se.push_back(round6(v));
        j["power"] = p;
        j["se"] = se;
        arr.push_back(j);
      }
      emit_json({{"meta", meta_json(c.seed)}, {"curves", arr}});
      return;
    }
    buffer_ << meta_line(c.seed) << "test,family,theta,n,alpha,replicates,power,se,seed\n";
    for (const auto& pc : curves) {
      for (std::size_t i = 0; i < pc.theta_grid.size(); ++i) {
        buffer_ << to_string(pc.test) << ',' << pc.family << ',' << num(pc.theta_grid[i]) << ',' << pc.n
                << ',' << num(pc.alpha) << ',' << pc.replicates << ',' << num(pc.power[i]) << ','
                << num(pc.se[i]) << ',' << pc.seed << "\n";
      }
    }
  }

  // efficiency ------------------------------------------------------------

  void setup_efficiency(CLI::App& app) {
    auto* sub = app.add_subcommand("efficiency", "local Bahadur efficiencies");
    sub->add_option("--tests", tests_, "comma-separated test list")->capture_default_str();
    sub->add_option("--families", families_, "comma-separated family list")->capture_default_str();
    sub->add_option("--order", quad_order_, "Gauss-Legendre order per triangle")->capture_default_str();
    sub->add_option("--layout", layout_, "long (one row per cell) or table (tests by families)")
        ->check(CLI::IsMember({"long", "table"}))
        ->capture_default_str();
    add_common(sub, false);
    sub->callback([this] { action_ = [this] { do_efficiency(); }; });
  }

  static std::string join_notes(const std::vector<std::string>& notes) {
    std::string s;
    for (const auto& n : notes) {
      if (!s.empty()) s += "; ";
      s += n;
    }
    return s;
  }

  static std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }

  void do_efficiency() {
    const auto tests = parse_test_list(tests_);
    std::vector<AlternativeFamily> fams;
    for (const auto& f : split(families_, ',')) fams.push_back(parse_family(f));
    if (fams.empty()) throw Error(Errc::BadParameter, "empty --families list");
    EfficiencyOptions eo;
    eo.quad_order = quad_order_;
    const auto table = efficiency_table(tests, fams, eo);
    if (opts_.format == "json") {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : table) {
        nlohmann::ordered_json j;
        j["test"] = to_string(r.test);
        j["family"] = r.family;
        j["computed"] = r.ok ? nlohmann::ordered_json(round6(r.efficiency)) : nlohmann::ordered_json();
        j["paper_value"] = r.published ? nlohmann::ordered_json(*r.published) : nlohmann::ordered_json();
        if (r.ok && r.published) j["abs_diff"] = round6(std::abs(r.efficiency - *r.published));
        if (r.alternate) j["alternate"] = round6(*r.alternate);
        j["notes"] = r.notes;
        arr.push_back(j);
      }
      emit_json({{"meta", meta_json(std::nullopt)}, {"efficiency", arr}});
      return;
    }
    buffer_ << meta_line(std::nullopt);
    if (layout_ == "table") {
      // Tabular layout: one row per test, computed (published) per family column.
      buffer_ << "test";
      for (const auto& f : fams) buffer_ << ',' << f.name();
      buffer_ << "\n";
      for (std::size_t i = 0; i < tests.size(); ++i) {
        buffer_ << to_string(tests[i]);
        for (std::size_t k = 0; k < fams.size(); ++k) {
          const auto& r = table[i * fams.size() + k];
          buffer_ << ',' << (r.ok ? num(r.efficiency) : std::string("error"));
          if (r.published) buffer_ << " (" << num(*r.published) << ')';
        }
        buffer_ << "\n";
      }
      return;
    }
    buffer_ << "test,family,computed,paper_value,abs_diff,notes\n";
    for (const auto& r : table) {
      buffer_ << to_string(r.test) << ',' << r.family << ',' << (r.ok ? num(r.efficiency) : std::string())
              << ',' << (r.published ? num(*r.published) : std::string()) << ','
              << (r.ok && r.published ? num(std::abs(r.efficiency - *r.published)) : std::string())
              << ',' << csv_quote(join_notes(r.notes)) << "\n";
    }
  }

  // eigen -----------------------------------------------------------------

  void setup_eigen(CLI::App& app) {
    auto* sub = app.add_subcommand("eigen", "principal eigenvalue and eigenfunction");
    auto* m = sub->add_option("--m", m_, "kernel order of the boundary problem");
    sub->add_flag("--hs", hs_, "smallest root of the HS characteristic equation")->excludes(m);
    sub->add_option("--points", points_, "eigenfunction grid points in the dump (0: none)")
        ->capture_default_str();
    add_common(sub, false);
    sub->callback([this] { action_ = [this] { do_eigen(); }; });
  }

  void do_eigen() {
    if (hs_) {
      const double root = solve_hs_root();
      if (opts_.format == "json") {
        emit_json({{"meta", meta_json(std::nullopt)}, {"problem", "hs"}, {"lambda1", round6(root)}});
      } else {
        buffer_ << meta_line(std::nullopt) << "problem,lambda1\nhs," << num(root) << "\n";
      }
      return;
    }
    if (m_ < 1) throw Error(Errc::BadParameter, "--m must be >= 1");
    const SpectralSolution sol = solve_tm_eigen(m_);
    std::vector<double> t, f;
    if (points_ == 1) throw Error(Errc::BadParameter, "--points must be 0 or >= 2");
    for (std::size_t i = 0; i < points_; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(points_ - 1);
      t.push_back(x);
      f.push_back(sol.eigenfunction(x));
    }
    if (opts_.format == "json") {
      std::vector<double> fr;
      for (double v : f) fr.push_back(round6(v));
      emit_json({{"meta", meta_json(std::nullopt)},
                 {"m", m_},
                 {"lambda1", round6(sol.lambda1)},
                 {"t", t},
                 {"f", fr}});
      return;
    }
    buffer_ << meta_line(std::nullopt) << "# m=" << m_ << " lambda1=" << num(sol.lambda1) << "\n";
    buffer_ << "t,f\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
      // Clean up signed zeros and round-off at the Dirichlet end.
      const double v = std::abs(f[i]) < 1e-12 ? 0.0 : f[i];
      buffer_ << num(t[i]) << ',' << num(v) << "\n";
    }
  }

  // whitenoise ------------------------------------------------------------

  void setup_whitenoise(CLI::App& app) {
    auto* sub = app.add_subcommand("whitenoise", "hidden periodicity test on a series file");
    sub->add_option("file", file_, "series values, one or more per line")->required();
    sub->add_option("--test,--statistic", statistic_, "uniformity statistic")->capture_default_str();
    wn_format_ = add_common(sub, true);
    sub->callback([this] { action_ = [this] { do_whitenoise(); }; });
  }

  void do_whitenoise() {
    const TestId id = parse_test_id(statistic_);
    const auto series = read_series_file(file_);
    const McConfig c = mc_config(series.size());
    const WhitenoiseOutcome w = whitenoise_test(series, id, c);
    const char* decision = w.outcome.reject ? "reject" : "retain";
    // JSON unless csv was asked for explicitly.
    if (wn_format_->count() == 0 || opts_.format == "json") {
      nlohmann::ordered_json j;
      j["statistic"] = round6(w.outcome.statistic);
      j["p_value"] = round6(w.outcome.p_value);
      j["decision"] = decision;
      j["q"] = w.q;
      j["test"] = to_string(id);
      j["meta"] = meta_json(c.seed);
      emit_json(j);
      return;
    }
    buffer_ << meta_line(c.seed) << "test,statistic,p_value,decision,q\n"
            << to_string(id) << ',' << num(w.outcome.statistic) << ',' << num(w.outcome.p_value) << ','
            << decision << ',' << w.q << "\n";
  }

  std::vector<std::string> args_;
  std::ostream& out_;
  std::ostream& err_;
  std::ostringstream buffer_;
  std::function<void()> action_;
  Options opts_;

  std::string statistic_ = "t1";
  std::string file_;
  std::string tests_ = "t1,t2,hs,ks,ad,cvm,qc";
  std::string n_list_;
  std::string family_;
  std::string families_ = "g1,g2,g3:beta=3,g4";
  std::string theta_grid_;
  std::string layout_ = "long";
  std::size_t n_ = 50;
  std::size_t hs_max_n_ = 50;
  std::size_t quad_order_ = 60;
  std::size_t points_ = 101;
  int m_ = 1;
  bool hs_ = false;
  CLI::Option* wn_format_ = nullptr;
};

/// args excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  return Runner(std::move(args), out, err).run();
}

}  // namespace unifit::cli

#endif  // UNIFIT_CLI_HPP
