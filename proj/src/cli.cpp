#include "pbc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "pbc/bounds.hpp"
#include "pbc/classify.hpp"
#include "pbc/dmbc.hpp"
#include "pbc/numeric.hpp"
#include "pbc/regions.hpp"
#include "pbc/sweep.hpp"

namespace pbc::cli {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  unsigned threads = 0;
  std::string config;
};

struct ChannelOpts {
  double alpha = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double scale = 1.0;
};

void add_channel(CLI::App* cmd, ChannelOpts& c, bool with_alpha = true) {
  if (with_alpha) cmd->add_option("--alpha", c.alpha, "gain ratio A1/A2")->required();
  cmd->add_option("--s1", c.s1, "dark current of receiver 1")->required();
  cmd->add_option("--s2", c.s2, "dark current of receiver 2")->required();
  cmd->add_option("--scale", c.scale, "gain A2 multiplying all rates");
}

json channel_json(const ChannelOpts& c) { return {{"alpha", c.alpha}, {"s1", c.s1}, {"s2", c.s2}, {"scale", c.scale}}; }

// Writes to --out when set, else to the default stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("cannot open output file: " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void csv_header(std::ostream& os, const std::string& command, const json& config, const std::string& columns) {
  json c = config;
  c["command"] = command;
  os << "# config: " << c.dump() << "\n" << columns << "\n";
}

std::string receiver_name(const std::optional<Receiver>& r) { return r ? std::to_string(index(*r)) : "none"; }

json membership_json(const Membership& m) {
  return {{"degraded", m.degraded},
          {"less_noisy", m.less_noisy},
          {"more_capable", m.more_capable},
          {"effectively_less_noisy", m.effectively_less_noisy}};
}

// Splices a JSON config file into the argument list as long options.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> result;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[++i];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
    else {
      result.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      const std::string flag = "--" + key;
      if (value.is_boolean()) {
        if (value.get<bool>()) result.push_back(flag);
      } else if (value.is_array()) {
        result.push_back(flag);
        for (const auto& v : value) result.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      } else {
        result.push_back(flag);
        result.push_back(value.is_string() ? value.get<std::string>() : value.dump());
      }
    }
  }
  return result;
}

int cmd_classify(const ChannelOpts& c, std::optional<double> sigma, int lambda_grid, unsigned threads,
                 std::ostream& os) {
  const PbcParams p = PbcParams::canonical(c.alpha, c.s1, c.s2, c.scale);
  const Breakpoints b = breakpoints(p.s1, p.s2);
  ChannelClass cls = classify(p);
  json j;
  j["input"] = channel_json(c);
  j["canonical"] = {{"alpha", p.alpha}, {"s1", p.s1}, {"s2", p.s2}, {"scale", p.scale}, {"swapped", p.swapped}};
  j["breakpoints"] = {{"alpha4", b.alpha4}, {"alpha3", b.alpha3}, {"alpha23", b.alpha23},
                      {"alpha2", b.alpha2}, {"alpha12", b.alpha12}, {"alpha1", b.alpha1}};
  std::string summary = to_string(cls.verdict);
  bool inconclusive = false;
  if (cls.verdict == Verdict::unresolved) {
    const StrongerCondition s = stronger_condition_check(p, lambda_grid, threads);
    j["stronger_condition"] = {{"holds", s.holds},
                               {"inconclusive", s.inconclusive},
                               {"receiver", s.receiver ? index(p.original(*s.receiver)) : 0},
                               {"lambda_grid", lambda_grid},
                               {"worst_margin_first", s.first.worst_margin},
                               {"worst_margin_second", s.second.worst_margin},
                               {"flat_maximizers", s.first.flat_maximizers + s.second.flat_maximizers}};
    summary += s.holds ? "; stronger-condition: optimal"
                       : (s.inconclusive ? "; stronger-condition: inconclusive" : "; stronger-condition: not satisfied");
    inconclusive = s.inconclusive;
  }
  if (cls.stronger) summary += " (receiver " + std::to_string(index(*cls.stronger)) + ")";
  j["class"] = {{"verdict", to_string(cls.verdict)},
                {"stronger", receiver_name(cls.stronger)},
                {"witness", {{"lower", cls.witness.lower}, {"upper", cls.witness.upper}}},
                {"receiver1", membership_json(cls.first)},
                {"receiver2", membership_json(cls.second)}};
  if (sigma) {
    const AvgPowerThresholds t = classify_avg_power(p, *sigma);
    j["avg_power"] = {{"sigma", t.sigma},
                      {"first_threshold", t.first_threshold},
                      {"second_threshold", t.second_threshold},
                      {"first", t.first},
                      {"second", t.second}};
  }
  j["summary"] = summary;
  os << j.dump(2) << "\n";
  return inconclusive ? exit_inconclusive : exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson broadcast channel toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads (default: PBC_THREADS or hardware)");
  app.add_option("--out", common.out, "output file (default: standard output)");

  ChannelOpts ch;
  std::optional<double> sigma;
  int lambda_grid = 201;
  auto* classify_cmd = app.add_subcommand("classify", "breakpoints and class of a channel (JSON)");
  add_channel(classify_cmd, ch);
  classify_cmd->add_option("--sigma", sigma, "average power constraint in (0,1]");
  classify_cmd->add_option("--lambda-grid", lambda_grid, "lambda grid for the stronger condition")
      ->check(CLI::PositiveNumber);

  std::size_t n_points = 65;
  std::string form = "auto";
  auto* region_cmd = app.add_subcommand("region", "capacity region boundary (CSV)");
  add_channel(region_cmd, ch);
  region_cmd->add_option("--points", n_points, "number of boundary points")->check(CLI::PositiveNumber);
  region_cmd->add_option("--form", form, "auto, less-noisy or more-capable")
      ->check(CLI::IsMember({"auto", "less-noisy", "more-capable"}));

  double alpha_from = 0.27, alpha_to = 0.40;
  int steps = 27, starts = 64;
  std::uint64_t seed = 1;
  auto* sum_cmd = app.add_subcommand("sumrates", "superposition, Marton and UV sum rates over alpha (CSV)");
  add_channel(sum_cmd, ch, false);
  sum_cmd->add_option("--alpha-from", alpha_from);
  sum_cmd->add_option("--alpha-to", alpha_to);
  sum_cmd->add_option("--steps", steps)->check(CLI::PositiveNumber);
  sum_cmd->add_option("--starts", starts)->check(CLI::PositiveNumber);
  sum_cmd->add_option("--seed", seed);

  double s2_max = 5.0;
  int alpha_steps = 101, s2_steps = 101;
  bool resolve = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "optimality map over (alpha, s2) for fixed s1 (CSV)");
  sweep_cmd->add_option("--s1", ch.s1)->required();
  sweep_cmd->add_option("--s2-max", s2_max);
  sweep_cmd->add_option("--alpha-steps", alpha_steps)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--s2-steps", s2_steps)->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--resolve", resolve, "settle the unresolved band with the stronger condition");

  std::size_t grid = 200, q_grid = 2049;
  bool summary_only = false, no_marton = false;
  auto* skew_cmd = app.add_subcommand("skewed", "skewed binary broadcast channel sweep (CSV)");
  skew_cmd->add_option("--grid", grid)->check(CLI::PositiveNumber);
  skew_cmd->add_option("--q-grid", q_grid)->check(CLI::Range(3, 1 << 22));
  skew_cmd->add_option("--lambda-grid", lambda_grid)->check(CLI::Range(2, 100000));
  skew_cmd->add_flag("--summary", summary_only, "print only the area fractions (JSON)");
  skew_cmd->add_flag("--no-marton", no_marton, "skip the Marton suboptimality certificate");

  std::vector<double> bs{0.5, 1, 2, 10}, ks{0.5, 1, 2};
  std::size_t samples = 1000000;
  auto* frac_cmd = app.add_subcommand("fraction", "less-noisy and degraded parameter fractions (CSV)");
  frac_cmd->add_option("--b", bs, "s1 range bounds")->expected(1, -1);
  frac_cmd->add_option("--k", ks, "s2 range multipliers")->expected(1, -1);
  frac_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  frac_cmd->add_option("--seed", seed);

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--threads", common.threads, "worker threads");
    sub->add_option("--out", common.out, "output file");
  }

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_config;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_config;
  }

  const unsigned threads = common.threads > 0 ? common.threads : numeric::default_threads();
  try {
    Sink sink(common.out, out);
    std::ostream& os = *sink;
    if (*classify_cmd) return cmd_classify(ch, sigma, lambda_grid, threads, os);

    if (*region_cmd) {
      const PbcParams p{ch.alpha, ch.s1, ch.s2, ch.scale, false};
      p.validate();
      RegionBoundary b;
      if (form == "less-noisy") {
        b = region_less_noisy(p, n_points, threads);
      } else if (form == "more-capable") {
        b = region_more_capable(p, n_points, threads);
      } else {
        try {
          b = region_less_noisy(p, n_points, threads);
        } catch (const RegimeError&) {
          b = region_more_capable(p, n_points, threads);
        }
      }
      json cfg = channel_json(ch);
      cfg["points"] = n_points;
      cfg["form"] = form;
      csv_header(os, "region", cfg, "lambda,r1,r2");
      for (std::size_t i = 0; i < b.points.size(); ++i)
        os << fmt(b.lambdas[i]) << "," << fmt(b.points[i].r1) << "," << fmt(b.points[i].r2) << "\n";
      return exit_ok;
    }

    if (*sum_cmd) {
      json cfg = {{"s1", ch.s1}, {"s2", ch.s2},       {"scale", ch.scale}, {"alpha_from", alpha_from},
                  {"alpha_to", alpha_to}, {"steps", steps}, {"starts", starts}, {"seed", seed}};
      const std::vector<double> alphas = numeric::linspace(alpha_from, alpha_to, std::size_t(steps));
      std::vector<std::array<double, 3>> rows(alphas.size());
      const BoundOptions opts{starts, seed, 1};
      numeric::parallel_for(alphas.size(), threads, [&](std::size_t i) {
        const PbcParams p{alphas[i], ch.s1, ch.s2, ch.scale, false};
        p.validate();
        const auto f = MutualInfoFunctional::from_params(p);
        rows[i] = {superposition_sum_rate(p), marton_sum_rate(f, opts).value, uv_sum_rate(f, opts).value};
      });
      csv_header(os, "sumrates", cfg, "alpha,superposition,marton,uv,gap");
      for (std::size_t i = 0; i < alphas.size(); ++i)
        os << fmt(alphas[i]) << "," << fmt(rows[i][0]) << "," << fmt(rows[i][1]) << "," << fmt(rows[i][2]) << ","
           << fmt(rows[i][2] - rows[i][1]) << "\n";
      return exit_ok;
    }

    if (*sweep_cmd) {
      if (!(s2_max > ch.s1)) throw ConfigError("--s2-max must exceed --s1");
      const std::vector<double> alphas = numeric::linspace(0.0, 1.0, std::size_t(alpha_steps));
      std::vector<double> s2s;
      for (int i = 1; i <= s2_steps; ++i) s2s.push_back(ch.s1 + (s2_max - ch.s1) * i / s2_steps);
      const OptimalityMap m = optimality_map(ch.s1, alphas, s2s, resolve, threads);
      json cfg = {{"s1", ch.s1}, {"s2_max", s2_max}, {"alpha_steps", alpha_steps}, {"s2_steps", s2_steps},
                  {"resolve", resolve}};
      csv_header(os, "sweep", cfg, "alpha,s2,cell,verdict");
      bool inconclusive = false;
      for (std::size_t a = 0; a < alphas.size(); ++a)
        for (std::size_t k = 0; k < s2s.size(); ++k) {
          const ChannelClass& c = m.classes[a * s2s.size() + k];
          inconclusive = inconclusive || c.inconclusive;
          os << fmt(alphas[a]) << "," << fmt(s2s[k]) << "," << to_string(m.at(a, k)) << "," << to_string(c.verdict)
             << "\n";
        }
      return inconclusive ? exit_inconclusive : exit_ok;
    }

    if (*skew_cmd) {
      DmbcOptions opts;
      opts.grid_n = q_grid;
      opts.lambda_grid_size = lambda_grid;
      opts.compare_marton = !no_marton;
      const SkewedSweep s = skewed_sweep(grid, opts, threads);
      json fractions = {{"effectively_less_noisy", s.effectively_less_noisy},
                        {"stronger_condition", s.stronger_condition},
                        {"optimal", s.optimal()},
                        {"suboptimal", s.suboptimal},
                        {"inconclusive", s.inconclusive},
                        {"more_capable_cells", s.more_capable_cells}};
      json cfg = {{"grid", grid}, {"q_grid", q_grid}, {"lambda_grid", lambda_grid}, {"marton", !no_marton}};
      if (summary_only) {
        os << json{{"config", cfg}, {"fractions", fractions}}.dump(2) << "\n";
      } else {
        csv_header(os, "skewed", cfg, "p1,p2,verdict,marton,c1,c2");
        for (std::size_t i = 0; i < grid; ++i)
          for (std::size_t k = 0; k < grid; ++k) {
            const DmbcClass& c = s.at(i, k);
            os << fmt(s.p[i]) << "," << fmt(s.p[k]) << "," << to_string(c.verdict) << "," << fmt(c.marton) << ","
               << fmt(c.capacity_first) << "," << fmt(c.capacity_second) << "\n";
          }
        os << "# fractions: " << fractions.dump() << "\n";
      }
      return s.inconclusive > 0.0 && !no_marton ? exit_inconclusive : exit_ok;
    }

    if (*frac_cmd) {
      json cfg = {{"b", bs}, {"k", ks}, {"samples", samples}, {"seed", seed}};
      csv_header(os, "fraction", cfg,
                 "b,k,closed_form,monte_carlo,stderr,degraded_closed_form,degraded_monte_carlo,degraded_stderr");
      for (double b : bs)
        for (double k : ks) {
          const BoxSpec spec{b, k};
          const FractionClosedForm cf = fraction_closed_form(spec);
          const FractionEstimate mc = fraction_monte_carlo(spec, samples, seed, threads);
          os << fmt(b) << "," << fmt(k) << "," << fmt(cf.less_noisy) << "," << fmt(mc.less_noisy) << ","
             << fmt(mc.less_noisy_stderr) << "," << fmt(cf.degraded) << "," << fmt(mc.degraded) << ","
             << fmt(mc.degraded_stderr) << "\n";
        }
      return exit_ok;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_config;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_config;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_config;
  }
  return exit_ok;
}

}  // namespace pbc::cli
