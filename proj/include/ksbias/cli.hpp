// Copyright 2026 The ksbias Authors.
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

// Command-line front end. `run` parses arguments, executes one subcommand and
// writes a single output record (command, parameters, results, provenance) as
// a table, JSON or CSV.
//
// Exit codes:
//   0 success            3 domain error        5 numerical failure
//   1 internal error     4 bad input file      6 verification failed
//   2 usage error

#ifndef KSBIAS_CLI_HPP_
#define KSBIAS_CLI_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ksbias/alpha_ladder.hpp"
#include "ksbias/alternative.hpp"
#include "ksbias/bias_analysis.hpp"
#include "ksbias/errors.hpp"
#include "ksbias/exact.hpp"
#include "ksbias/null_distribution.hpp"
#include "ksbias/simulation.hpp"
#include "ksbias/statistic.hpp"
#include "ksbias/verification.hpp"

namespace ksbias::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDomain = 3,
  kInput = 4,
  kNumerical = 5,
  kVerifyFailed = 6,
};

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

using Json = nlohmann::ordered_json;

struct Record {
  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  Json provenance = Json::object();
  bool failed = false;  // set by verify when a check fails

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["results"] = results;
    j["provenance"] = provenance;
    return j;
  }
};

inline Json exact_json(const Rational& r, int digits) {
  return Json{{"fraction", to_fraction_string(r)}, {"decimal", to_decimal_string(r, digits)}};
}

inline bool is_exact_json(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("fraction") && j.contains("decimal");
}

inline std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

namespace detail {

inline std::string render_scalar(const Json& v, int digits, bool with_fraction) {
  if (v.is_null()) return "";
  if (is_exact_json(v)) {
    const auto frac = v["fraction"].get<std::string>();
    const auto dec = v["decimal"].get<std::string>();
    if (!with_fraction || frac == dec) return dec;
    return frac + " (" + dec + ")";
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_double(v.get<double>(), digits);
  return v.dump();
}

// Nested result objects become dotted keys ("estimate.power").
inline void flatten_into(const std::string& prefix, const Json& value, Json& out) {
  if (value.is_object() && !is_exact_json(value)) {
    for (const auto& [key, child] : value.items()) flatten_into(prefix.empty() ? key : prefix + "." + key, child, out);
  } else {
    out[prefix] = value;
  }
}

inline Json flat_results(const Json& results) {
  Json out = Json::object();
  for (const auto& [key, value] : results.items()) {
    if (key == "rows") continue;
    flatten_into(key, value, out);
  }
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Rows flattened for CSV: exact values become a decimal column plus a
// "<name>_fraction" column.
inline std::vector<std::pair<std::string, std::string>> flatten_row(const Json& row, int digits) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, value] : row.items()) {
    if (is_exact_json(value)) {
      out.emplace_back(key, value["decimal"].get<std::string>());
      out.emplace_back(key + "_fraction", value["fraction"].get<std::string>());
    } else {
      out.emplace_back(key, render_scalar(value, digits, false));
    }
  }
  return out;
}

inline void render_table(const Record& rec, int digits, std::ostream& out) {
  out << "# " << rec.command << "\n";
  for (const auto& [key, value] : rec.parameters.items())
    out << "#   " << key << " = " << render_scalar(value, digits, true) << "\n";
  const Json flat = flat_results(rec.results);
  std::size_t width = 0;
  for (const auto& [key, value] : flat.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : flat.items()) {
    out << key << std::string(width - key.size() + 2, ' ') << render_scalar(value, digits, true) << "\n";
  }
  if (rec.results.contains("rows") && !rec.results["rows"].empty()) {
    const Json& rows = rec.results["rows"];
    std::vector<std::string> header;
    for (const auto& [key, value] : rows.front().items()) header.push_back(key);
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> widths;
    for (const auto& h : header) widths.push_back(h.size());
    for (const auto& row : rows) {
      std::vector<std::string> line;
      std::size_t c = 0;
      for (const auto& [key, value] : row.items()) {
        // Long fractions would swamp the columns; the decimal is kept.
        const bool short_fraction = !is_exact_json(value) || value["fraction"].get<std::string>().size() <= 12;
        line.push_back(render_scalar(value, digits, short_fraction));
        if (c < widths.size()) widths[c] = std::max(widths[c], line.back().size());
        ++c;
      }
      cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        out << line[c];
        if (c + 1 < line.size()) out << std::string(widths[c] - line[c].size() + 2, ' ');
      }
      out << "\n";
    };
    emit(header);
    for (const auto& line : cells) emit(line);
  }
  for (const auto& [key, value] : rec.provenance.items())
    out << "# " << key << " = " << render_scalar(value, digits, true) << "\n";
}

inline void render_csv(const Record& rec, int digits, std::ostream& out) {
  if (rec.results.contains("rows")) {
    const Json& rows = rec.results["rows"];
    bool first = true;
    for (const auto& row : rows) {
      const auto flat = flatten_row(row, digits);
      if (first) {
        for (std::size_t c = 0; c < flat.size(); ++c) out << (c ? "," : "") << csv_escape(flat[c].first);
        out << "\n";
        first = false;
      }
      for (std::size_t c = 0; c < flat.size(); ++c) out << (c ? "," : "") << csv_escape(flat[c].second);
      out << "\n";
    }
    return;
  }
  out << "key,value\n";
  const Json flat = flat_results(rec.results);
  for (const auto& [key, value] : flat.items()) {
    if (is_exact_json(value)) {
      out << csv_escape(key) << "," << value["decimal"].get<std::string>() << "\n";
      out << csv_escape(key + "_fraction") << "," << value["fraction"].get<std::string>() << "\n";
    } else {
      out << csv_escape(key) << "," << csv_escape(render_scalar(value, digits, false)) << "\n";
    }
  }
}

}  // namespace detail

inline void render(const Record& rec, const std::string& format, int digits, std::ostream& out) {
  if (format == "json") {
    out << rec.to_json().dump(2) << "\n";
  } else if (format == "csv") {
    detail::render_csv(rec, digits, out);
  } else {
    detail::render_table(rec, digits, out);
  }
}

// One observation per line, plain decimal text. Blank lines are skipped.
inline std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v))
      throw InputError(path + ":" + std::to_string(line_no) + ": not a finite decimal number: '" + token + "'");
    values.push_back(v);
  }
  if (values.empty()) throw InputError("'" + path + "' contains no observations");
  return values;
}

// "uniform", "two-point", "point-mass", "most-biased[:rank]", or a theta given
// as a decimal or fraction ("0.9", "49/19").
inline Alternative parse_alternative(const std::string& spec, int n, int m, int rank) {
  if (spec == "uniform") return OddsPowerCdf::uniform();
  if (spec == "two-point") return DegenerateAlternative{DegenerateKind::TwoPointZeroOne};
  if (spec == "point-mass") return DegenerateAlternative{DegenerateKind::PointMassHalf};
  if (spec == "most-biased") return most_biased_exponent(n, m, rank);
  if (spec.rfind("most-biased:", 0) == 0) {
    const std::string r = spec.substr(12);
    require(r == "1" || r == "2" || r == "3", "most-biased rank must be 1, 2 or 3");
    return most_biased_exponent(n, m, r[0] - '0');
  }
  const Rational theta = parse_rational(spec);
  require(theta > 0, "theta must be positive");
  const BigInt num = boost::multiprecision::numerator(theta);
  const BigInt den = boost::multiprecision::denominator(theta);
  const BigInt limit = BigInt(1) << 52;
  if (num < limit && den < limit) return OddsPowerCdf(Exponent{num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()});
  return OddsPowerCdf(to_double(theta));
}

inline std::string alternative_kind(const Alternative& g) {
  if (const auto* d = std::get_if<DegenerateAlternative>(&g)) return d->str();
  return std::get<OddsPowerCdf>(g).is_uniform() ? "uniform" : "odds-power";
}

inline Json alternative_json(const Alternative& g, int digits) {
  Json j;
  j["kind"] = alternative_kind(g);
  if (const auto* odds = std::get_if<OddsPowerCdf>(&g)) {
    if (odds->exact()) {
      j["theta"] = exact_json(Rational(odds->exact()->numerator, odds->exact()->denominator), digits);
    } else {
      j["theta"] = odds->theta();
    }
  } else {
    j["theta"] = std::get<DegenerateAlternative>(g).kind == DegenerateKind::TwoPointZeroOne ? "0" : "inf";
  }
  return j;
}

inline Json probability_json(const RejectionProbability& p, int digits) {
  Json j;
  j["value"] = p.value;
  j["quadrature_error"] = p.quadrature_error;
  j["exact"] = p.exact ? exact_json(*p.exact, digits) : Json(nullptr);
  return j;
}

inline Json estimate_json(const PowerEstimate& e, int digits) {
  Json j;
  j["power"] = e.power;
  j["standard_error"] = e.standard_error;
  j["rejections"] = e.rejections;
  j["replicates"] = e.replicates;
  j["threshold"] = exact_json(e.threshold(), digits);
  j["attained_level"] = exact_json(e.level_used, digits);
  return j;
}

inline Side parse_side(const std::string& s) {
  if (s == "two-sided") return Side::TwoSided;
  if (s == "x-above-y") return Side::XAboveY;
  if (s == "y-above-x") return Side::YAboveX;
  throw DomainError("unknown side '" + s + "'");
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite-sample properties of the two-sample Kolmogorov-Smirnov test.", "ksbias"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("ksbias ") + kVersion);

  std::string format = "table";
  int digits = 6;
  app.add_option("--format", format, "Output format: table, json or csv (null-dist and figure1 default to csv)")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--digits", digits, "Significant digits in decimal renderings")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();

  int n = 0;
  int m = 0;
  int rank = 1;
  double tol = 1e-12;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string alt_spec = "most-biased";

  auto add_sizes = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Size of the uniform (first) sample")->required();
    sub->add_option("--m", m, "Size of the second sample")->required();
  };
  auto add_rank = [&](CLI::App* sub) {
    sub->add_option("--rank", rank, "Level rank: 1, 2 or 3")->check(CLI::Range(1, 3))->capture_default_str();
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "Quadrature tolerance, relative to the level")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_alt = [&](CLI::App* sub, const std::string& def) {
    alt_spec = def;
    sub->add_option("--alt", alt_spec,
                    "Alternative G: uniform, two-point, point-mass, most-biased[:rank], or theta "
                    "(decimal or fraction)")
        ->capture_default_str();
  };
  auto add_simulation = [&](CLI::App* sub) {
    sub->add_option("--reps", reps, "Monte Carlo replicates")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", seed, "Master seed (required)")->required();
    sub->add_option("--threads", threads, "Worker threads, 0 = hardware concurrency; results do not depend on it")
        ->capture_default_str();
  };

  std::string x_path;
  std::string y_path;
  auto* stat = app.add_subcommand("stat", "KS statistics of two data files (one observation per line)");
  stat->add_option("--x", x_path, "First sample file")->required();
  stat->add_option("--y", y_path, "Second sample file")->required();

  std::string d_text;
  auto* pvalue = app.add_subcommand("pvalue", "Exact p-value P(D >= d) when both samples share one continuous law");
  add_sizes(pvalue);
  pvalue->add_option("--d", d_text, "Statistic value, decimal or fraction (e.g. 0.26 or 13/50)")->required();

  auto* null_dist = app.add_subcommand(
      "null-dist",
      "Exact null distribution. CSV columns: numerator (of d over n*m), d, d_fraction, count, "
      "probability, probability_fraction, tail, tail_fraction (tail = P(D >= d))");
  add_sizes(null_dist);

  auto* ladder_cmd = app.add_subcommand("alpha-ladder", "The three smallest achievable levels");
  add_sizes(ladder_cmd);

  auto* biased_alt = app.add_subcommand("biased-alt", "Most biased alternative for a level rank");
  add_sizes(biased_alt);
  add_rank(biased_alt);

  std::string side_text = "two-sided";
  auto* reject_prob = app.add_subcommand("reject-prob", "Rejection probability at a level rank under G");
  add_sizes(reject_prob);
  add_rank(reject_prob);
  add_tol(reject_prob);
  add_alt(reject_prob, "most-biased");
  reject_prob->add_option("--side", side_text, "two-sided, x-above-y or y-above-x (rank 1 only)")
      ->capture_default_str();

  auto* verdict_cmd = app.add_subcommand("bias-verdict", "Bias verdict of G at a level rank");
  add_sizes(verdict_cmd);
  verdict_cmd->add_option("--level-rank", rank, "Level rank: 1, 2 or 3")->check(CLI::Range(1, 3))->capture_default_str();
  add_tol(verdict_cmd);
  verdict_cmd->add_option("--alt", alt_spec, "Alternative G (see reject-prob)")->capture_default_str();

  double from = 0.5;
  double to = 2.0;
  std::size_t points = 41;
  auto* scan = app.add_subcommand("scan", "Rejection probability over a linear grid of theta");
  add_sizes(scan);
  add_rank(scan);
  add_tol(scan);
  scan->add_option("--from", from, "First theta")->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--to", to, "Last theta")->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--points", points, "Grid points")->check(CLI::PositiveNumber)->capture_default_str();

  double alpha = 0.05;
  auto* power = app.add_subcommand("power", "Monte Carlo power at nominal level alpha");
  add_sizes(power);
  power->add_option("--alpha", alpha, "Nominal level in (0, 1)")->capture_default_str();
  power->add_option("--alt", alt_spec, "Alternative G (see reject-prob; most-biased uses rank 1)")
      ->capture_default_str();
  add_simulation(power);

  auto* table1 = app.add_subcommand(
      "table1", "Power difference grid, n in {10,20,50,100} x m in {11,15,21,51,101}, alpha = 0.05");
  add_simulation(table1);

  std::size_t curve_points = 101;
  int figure_n = 50;
  auto* figure1 = app.add_subcommand(
      "figure1", "Rank 1 most biased CDFs for m in {20,55,100}. CSV columns: n, m, theta, theta_fraction, x, G");
  figure1->add_option("--points", curve_points, "Grid points on [0, 1]")->check(CLI::Range(2, 1000000))->capture_default_str();
  figure1->add_option("--n", figure_n, "First sample size")->check(CLI::Range(2, 1000000))->capture_default_str();

  std::uint64_t verify_reps = 200000;
  std::uint64_t verify_seed = 2026;
  auto* verify = app.add_subcommand("verify", "Run the enumeration / quadrature / simulation cross-checks");
  verify->add_option("--reps", verify_reps, "Replicates per simulation check")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", verify_seed, "Seed for the simulation checks")->capture_default_str();
  verify->add_option("--threads", threads, "Worker threads")->capture_default_str();

  std::vector<const char*> argv;
  argv.push_back("ksbias");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "ksbias " << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kUsage;
  }

  const bool format_given = app.get_option("--format")->count() > 0;
  Record rec;
  rec.provenance["tool"] = std::string("ksbias ") + kVersion;

  try {
    if (stat->parsed()) {
      rec.command = "stat";
      rec.parameters = {{"x", x_path}, {"y", y_path}};
      const Sample x(read_sample_file(x_path));
      const Sample y(read_sample_file(y_path));
      const bool ties = has_cross_sample_ties(x, y);
      if (ties) err << "warning: cross-sample ties present; the theory assumes continuous distributions\n";
      const KsStatistic d = two_sided_d(x, y);
      const int xn = static_cast<int>(x.size());
      const int ym = static_cast<int>(y.size());
      rec.results["n"] = xn;
      rec.results["m"] = ym;
      rec.results["d"] = exact_json(d.value(), digits);
      rec.results["d_x_above_y"] = exact_json(one_sided_d(x, y, Direction::XAboveY).value(), digits);
      rec.results["d_y_above_x"] = exact_json(one_sided_d(x, y, Direction::YAboveX).value(), digits);
      rec.results["cross_sample_ties"] = ties;
      if (xn <= kMaxExactSampleSize && ym <= kMaxExactSampleSize) {
        rec.results["p_value"] = exact_json(p_value(xn, ym, d), digits);
      } else {
        rec.results["p_value"] = nullptr;
      }
    } else if (pvalue->parsed()) {
      rec.command = "pvalue";
      rec.parameters = {{"n", n}, {"m", m}, {"d", d_text}};
      require_exact_sizes(n, m);
      const Rational d = parse_rational(d_text);
      rec.results["d"] = exact_json(d, digits);
      rec.results["p_value"] = exact_json(p_value(n, m, d), digits);
    } else if (null_dist->parsed()) {
      rec.command = "null-dist";
      rec.parameters = {{"n", n}, {"m", m}};
      if (!format_given) format = "csv";
      const NullDistribution dist = null_distribution(n, m);
      Json rows = Json::array();
      BigInt tail = dist.total();
      for (std::size_t k = 0; k < dist.size(); ++k) {
        Json row;
        row["numerator"] = dist.levels()[k];
        row["d"] = exact_json(dist.support_point(k), digits);
        row["count"] = dist.counts()[k].str();
        row["probability"] = exact_json(dist.probability(k), digits);
        row["tail"] = exact_json(Rational(tail, dist.total()), digits);
        tail -= dist.counts()[k];
        rows.push_back(std::move(row));
      }
      rec.results["total"] = dist.total().str();
      rec.results["rows"] = std::move(rows);
    } else if (ladder_cmd->parsed()) {
      rec.command = "alpha-ladder";
      rec.parameters = {{"n", n}, {"m", m}};
      const AlphaLadder ladder = alpha_ladder(n, m);
      const std::int64_t nm = ladder.denominator();
      rec.results["alpha1"] = exact_json(ladder.alpha1, digits);
      rec.results["threshold1"] = exact_json(Rational(ladder.threshold1, nm), digits);
      rec.results["alpha2"] = exact_json(ladder.alpha2, digits);
      rec.results["threshold2"] = exact_json(Rational(ladder.threshold2, nm), digits);
      rec.results["k"] = ladder.k;
      rec.results["alpha2_closed_form"] = ladder.alpha2_closed_form;
      rec.results["alpha3_defined"] = ladder.alpha3_defined();
      rec.results["alpha3"] = ladder.alpha3 ? exact_json(*ladder.alpha3, digits) : Json(nullptr);
      rec.results["threshold3"] =
          ladder.threshold3 ? exact_json(Rational(*ladder.threshold3, nm), digits) : Json(nullptr);
      rec.results["k2"] = ladder.k2 ? Json(*ladder.k2) : Json(nullptr);
      bool agrees = tail_probability(n, m, ladder.threshold1) == ladder.alpha1 &&
                    tail_probability(n, m, ladder.threshold2) == ladder.alpha2;
      if (ladder.alpha3) agrees = agrees && tail_probability(n, m, *ladder.threshold3) == *ladder.alpha3;
      rec.results["exact_tail_agrees"] = agrees;
    } else if (biased_alt->parsed()) {
      rec.command = "biased-alt";
      rec.parameters = {{"n", n}, {"m", m}, {"rank", rank}};
      const Alternative g = most_biased_exponent(n, m, rank);
      rec.results["alternative"] = alternative_json(g, digits);
      rec.results["is_uniform"] = is_uniform(g);
    } else if (reject_prob->parsed()) {
      rec.command = "reject-prob";
      rec.parameters = {{"n", n}, {"m", m}, {"rank", rank}, {"alt", alt_spec}, {"side", side_text}, {"tol", tol}};
      const Alternative g = parse_alternative(alt_spec, n, m, rank);
      const Side side = parse_side(side_text);
      const RejectionProbability p = rejection_prob(n, m, rank, g, side, tol);
      rec.results["alternative"] = alternative_json(g, digits);
      rec.results["probability"] = probability_json(p, digits);
      rec.results["uniform_value"] = exact_json(uniform_value(rank_integrand(n, m, rank, side)), digits);
      rec.provenance["tol"] = tol;
    } else if (verdict_cmd->parsed()) {
      rec.command = "bias-verdict";
      rec.parameters = {{"n", n}, {"m", m}, {"level-rank", rank}, {"alt", alt_spec}, {"tol", tol}};
      const Alternative g = parse_alternative(alt_spec, n, m, rank);
      const BiasVerdict v = bias_verdict(n, m, rank, g, tol);
      rec.results["alternative"] = alternative_json(g, digits);
      rec.results["level"] = exact_json(v.level, digits);
      rec.results["power_at_level"] = v.power_at_level;
      rec.results["quadrature_error"] = v.quadrature_error;
      rec.results["margin"] = v.margin;
      rec.results["verdict"] = to_string(v.verdict);
      rec.provenance["tol"] = tol;
    } else if (scan->parsed()) {
      rec.command = "scan";
      rec.parameters = {{"n", n}, {"m", m}, {"rank", rank}, {"from", from}, {"to", to}, {"points", points}, {"tol", tol}};
      const auto grid = linear_grid(from, to, points);
      const auto result = exponent_scan(n, m, rank, grid, tol);
      Json rows = Json::array();
      for (const auto& p : result)
        rows.push_back({{"theta", p.theta}, {"probability", p.probability.value}, {"quadrature_error", p.probability.quadrature_error}});
      const std::size_t best = scan_argmin(result);
      rec.results["argmin_theta"] = result[best].theta;
      rec.results["most_biased"] = alternative_json(most_biased_exponent(n, m, rank), digits);
      rec.results["rows"] = std::move(rows);
      rec.provenance["tol"] = tol;
    } else if (power->parsed()) {
      rec.command = "power";
      rec.parameters = {{"n", n}, {"m", m}, {"alpha", alpha}, {"alt", alt_spec}, {"reps", reps}, {"seed", seed}};
      const Alternative g = parse_alternative(alt_spec, n, m, 1);
      const PowerEstimate e = estimate_power(n, m, g, alpha, reps, seed, {threads});
      rec.results["alternative"] = alternative_json(g, digits);
      rec.results["estimate"] = estimate_json(e, digits);
      rec.provenance["seed"] = seed;
      rec.provenance["replicates"] = reps;
    } else if (table1->parsed()) {
      rec.command = "table1";
      rec.parameters = {{"reps", reps}, {"seed", seed}};
      const Table1Result t = reproduce_table1(reps, seed, {threads});
      Json rows = Json::array();
      for (const auto& c : t.cells) {
        Json row;
        row["n"] = c.n;
        row["m"] = c.m;
        row["theta"] = exact_json(Rational(c.theta.numerator, c.theta.denominator), digits);
        row["threshold"] = exact_json(c.null_power.threshold(), digits);
        row["attained_level"] = exact_json(c.null_power.level_used, digits);
        row["null_power"] = c.null_power.power;
        row["alt_power"] = c.alternative_power.power;
        row["difference"] = c.difference;
        row["difference_se"] = c.difference_se;
        rows.push_back(std::move(row));
      }
      rec.results["alpha"] = t.alpha_nominal;
      rec.results["rows"] = std::move(rows);
      rec.provenance["seed"] = seed;
      rec.provenance["replicates"] = reps;
    } else if (figure1->parsed()) {
      rec.command = "figure1";
      rec.parameters = {{"points", curve_points}, {"n", figure_n}};
      if (!format_given) format = "csv";
      Json rows = Json::array();
      for (int mm : {20, 55, 100}) {
        const Exponent theta = Exponent::reduced(figure_n - 1, mm - 1);
        const OddsPowerCdf g(theta);
        for (std::size_t k = 0; k < curve_points; ++k) {
          // Exact grid k/(points-1); endpoints map to 0 and 1.
          const Rational xr(static_cast<std::int64_t>(k), static_cast<std::int64_t>(curve_points - 1));
          const double x = to_double(xr);
          Json row;
          row["n"] = figure_n;
          row["m"] = mm;
          row["theta"] = exact_json(Rational(theta.numerator, theta.denominator), digits);
          row["x"] = x;
          row["G"] = g.cdf(x);
          rows.push_back(std::move(row));
        }
      }
      rec.results["rows"] = std::move(rows);
    } else if (verify->parsed()) {
      rec.command = "verify";
      rec.parameters = {{"reps", verify_reps}, {"seed", verify_seed}};
      const auto checks = run_verification(verify_reps, verify_seed, {threads});
      Json rows = Json::array();
      bool all = true;
      for (const auto& c : checks) {
        rows.push_back({{"check", c.name}, {"status", c.passed ? "pass" : "FAIL"}, {"detail", c.detail}});
        all = all && c.passed;
      }
      rec.results["all_passed"] = all;
      rec.results["rows"] = std::move(rows);
      rec.failed = !all;
      rec.provenance["seed"] = verify_seed;
      rec.provenance["replicates"] = verify_reps;
    }
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << "\n";
    return kDomain;
  } catch (const InputError& e) {
    err << "error: input: " << e.what() << "\n";
    return kInput;
  } catch (const QuadratureError& e) {
    err << "error: numerical: " << e.what() << " (estimate " << e.estimate() << ", error " << e.error() << ")\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kInternal;
  }

  render(rec, format, digits, out);
  return rec.failed ? kVerifyFailed : kOk;
}

}  // namespace ksbias::cli

#endif  // KSBIAS_CLI_HPP_
