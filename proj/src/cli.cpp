#include "vaxalloc/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "vaxalloc/errors.hpp"
#include "vaxalloc/report.hpp"
#include "vaxalloc/service.hpp"

namespace vaxalloc {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  bool pretty = false;

  int model = 1;
  std::int64_t vaccinators = 46;
  double epsilon = 0.03;
  double round_trip = 2.0;
  std::int64_t children_per_day = 5;
  std::int64_t working_days = 273;
  bool exact = false;
  bool banded = false;
  double metalled_kmh = 30.0;
  double unmetalled_kmh = 10.0;
  double time_limit = 0.0;

  std::string dump_lp;
  std::vector<double> epsilons = {0.03, 0.05, 0.10, 0.15, 0.20, 0.25};
  unsigned workers = 1;

  std::uint64_t seed = 1;
  SyntheticShape shape;

  std::vector<std::string> districts;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors;
  double timeout = 30.0;
};

void add_params(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "1: locality-bound, 2: cross-boundary")->check(CLI::IsMember({1, 2}))->capture_default_str();
  cmd->add_option("-V,--vaccinators", o.vaccinators, "Total vaccinators")->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "Allowed coverage spread (alpha_max - alpha_min)")->capture_default_str();
  cmd->add_option("--round-trip", o.round_trip, "Multiplier on one-way travel times")->capture_default_str();
  cmd->add_option("--children-per-day", o.children_per_day)->capture_default_str();
  cmd->add_option("--working-days", o.working_days)->capture_default_str();
  auto* exact = cmd->add_flag("--exact-equity", o.exact, "Require identical coverage everywhere");
  cmd->add_flag("--banded", o.banded, "Use the epsilon band even for Model 2")->excludes(exact);
  cmd->add_option("--time-limit", o.time_limit, "Search time limit per solve in seconds (0: none)")->capture_default_str();
}

void add_speeds(CLI::App* cmd, Options& o) {
  cmd->add_option("--metalled-kmh", o.metalled_kmh)->capture_default_str();
  cmd->add_option("--unmetalled-kmh", o.unmetalled_kmh)->capture_default_str();
}

PlanningParams planning_params(const Options& o) {
  PlanningParams p;
  p.cross_boundary = o.model == 2;
  p.total_vaccinators = o.vaccinators;
  p.equity_deviation = o.epsilon;
  p.round_trip_factor = o.round_trip;
  p.children_per_day = o.children_per_day;
  p.working_days = o.working_days;
  if (o.exact) p.exact_equity = true;
  if (o.banded) p.exact_equity = false;
  p.validate();
  return p;
}

SpeedModel speed_model(const Options& o) {
  SpeedModel s{o.metalled_kmh, o.unmetalled_kmh};
  s.validate();
  return s;
}

MipOptions mip_options(const Options& o) {
  MipOptions m;
  m.time_limit_seconds = o.time_limit;
  return m;
}

struct Loaded {
  District district;
  NeedMatrix need;
  TravelTimeMatrix times;
};

Loaded load(const Options& o) {
  Loaded l;
  l.district = load_district(o.input);
  spdlog::debug("loaded '{}': {} union councils, {} centres", l.district.name, l.district.union_councils.size(),
                l.district.centres.size());
  l.need = compute_need(l.district);
  l.times = build_matrix(l.district, speed_model(o));
  return l;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw Error("cannot write '" + o.output + "'");
  file << text;
}

int cmd_serve(const Options& o) {
  ServiceOptions so;
  so.timeout_seconds = o.timeout;
  so.allow_origin = o.cors;
  so.speeds = speed_model(o);
  PlannerService service(so);
  const int port = service.bind(o.host, o.port);
  if (port < 0) throw Error("cannot listen on " + o.host + ":" + std::to_string(o.port));
  // Requests are answered with 503 until every district is loaded.
  std::jthread server([&] { service.listen_after_bind(); });
  try {
    for (const auto& spec : o.districts) {
      const auto eq = spec.find('=');
      const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
      const std::string name = eq == std::string::npos ? std::filesystem::path(path).stem().string() : spec.substr(0, eq);
      service.add_district(name, load_district(path));
      spdlog::info("district '{}' loaded from {}", name, path);
    }
  } catch (...) {
    service.stop();
    throw;
  }
  service.set_ready();
  spdlog::warn("serving on http://{}:{}", o.host, port);
  server.join();
  return 0;
}

std::string run_subcommand(const CLI::App& app, const Options& o) {
  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  if (name == "synth") {
    return to_json(generate_synthetic(o.seed, o.shape)).dump(2) + "\n";
  }

  const Loaded l = load(o);
  if (name == "validate") {
    if (o.pretty) {
      return "ok: " + l.district.name + ", " + std::to_string(l.district.localities.size()) + " localities, " +
             std::to_string(l.district.union_councils.size()) + " union councils, " +
             std::to_string(l.district.centres.size()) + " centres, " + std::to_string(l.need.total_visits) +
             " visits of need\n";
    }
    return render(district_summary(l.district, l.need, l.times));
  }
  if (name == "need") {
    return o.format == "csv" ? need_to_csv(l.need, l.district) : render(need_to_json(l.need, l.district));
  }
  if (name == "times") {
    return o.format == "csv" ? matrix_to_csv(l.times) : render(times_to_json(l.times));
  }

  const PlanningParams params = planning_params(o);
  if (name == "solve") {
    if (!o.dump_lp.empty()) {
      const AllocationProgram program = build_program(l.need, l.times, l.district, params);
      std::ofstream file(o.dump_lp);
      if (!file) throw Error("cannot write '" + o.dump_lp + "'");
      file << to_listing(program.mip.base, program.mip.integer_mask);
    }
    const auto started = std::chrono::steady_clock::now();
    const AllocationOutcome outcome = solve_allocation(l.district, l.need, l.times, params, mip_options(o));
    spdlog::info("model {} solved: {} after {} nodes in {:.2f} s", params.model_number(), to_string(outcome.status),
                 outcome.nodes_explored,
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
    if (outcome.limit_reached) spdlog::warn("search limit reached; the plan may not be optimal");
    return o.pretty ? plan_to_text(outcome, l.district) : render(plan_to_json(outcome));
  }
  if (name == "sweep") {
    const TradeoffTable table = sweep(l.district, l.need, l.times, params, o.epsilons, o.workers, mip_options(o));
    if (o.pretty) return tradeoff_to_text(table, l.district);
    return o.format == "csv" ? tradeoff_to_csv(table, l.district) : render(tradeoff_to_json(table));
  }
  // compare
  const ModelComparison cmp = compare_models(l.district, l.need, l.times, params, mip_options(o));
  return o.pretty ? comparison_to_text(cmp, l.district) : render(comparison_to_json(cmp));
}

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("vaxalloc", sink);
  logger->set_pattern("[%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("VAXALLOC_LOG_LEVEL"); env && *env) {
    level = spdlog::level::from_str(env);
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging(err);
  Options o;
  CLI::App app{"Vaccinator allocation planner", "vaxalloc"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* cmd) { cmd->add_option("district", o.input, "District JSON file")->required(); };
  auto output = [&](CLI::App* cmd) { cmd->add_option("-o,--output", o.output, "Write to a file instead of stdout"); };
  auto format = [&](CLI::App* cmd, std::vector<std::string> allowed) {
    cmd->add_option("--format", o.format)->check(CLI::IsMember(allowed))->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Load and check a district, print a summary");
  input(validate);
  output(validate);
  add_speeds(validate, o);
  validate->add_flag("--pretty", o.pretty, "One-line human summary");

  auto* need = app.add_subcommand("need", "Annual visit need per union council and age category");
  input(need);
  output(need);
  format(need, {"json", "csv"});

  auto* times = app.add_subcommand("times", "Shortest travel times, centres x union councils (minutes)");
  input(times);
  output(times);
  format(times, {"json", "csv"});
  add_speeds(times, o);

  auto* solve = app.add_subcommand("solve", "Optimal allocation for one scenario");
  input(solve);
  output(solve);
  add_params(solve, o);
  add_speeds(solve, o);
  solve->add_flag("--pretty", o.pretty, "Human-readable report");
  solve->add_option("--dump-lp", o.dump_lp, "Write the program as an equation listing");

  auto* sweep_cmd = app.add_subcommand("sweep", "Travel time against the allowed equity deviation");
  input(sweep_cmd);
  output(sweep_cmd);
  add_params(sweep_cmd, o);
  add_speeds(sweep_cmd, o);
  format(sweep_cmd, {"json", "csv"});
  sweep_cmd->add_option("--epsilons", o.epsilons, "Ascending grid, e.g. 0.03,0.05,0.1")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--workers", o.workers, "Rows solved in parallel")->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_flag("--pretty", o.pretty, "Human-readable table");

  auto* compare = app.add_subcommand("compare", "Model 1 against Model 2");
  input(compare);
  output(compare);
  add_params(compare, o);
  add_speeds(compare, o);
  compare->add_flag("--pretty", o.pretty, "Human-readable report");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic district");
  output(synth);
  synth->add_option("--seed", o.seed)->capture_default_str();
  synth->add_option("--localities", o.shape.n_localities)->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--union-councils", o.shape.n_union_councils)->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--centres", o.shape.n_centres)->check(CLI::PositiveNumber)->capture_default_str();

  auto* serve = app.add_subcommand("serve", "HTTP planning service");
  serve->add_option("--district", o.districts, "District file, or name=file; repeat for more (first is the default)")
      ->required();
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--port", o.port)->check(CLI::Range(1, 65535))->capture_default_str();
  serve->add_option("--cors", o.cors, "Access-Control-Allow-Origin value for browser clients");
  serve->add_option("--timeout", o.timeout, "Search time limit per solve in seconds")->capture_default_str();
  add_speeds(serve, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << app.help();
    }
    return 2;
  }

  try {
    if (serve->parsed()) return cmd_serve(o);
    emit(o, out, run_subcommand(app, o));
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace vaxalloc
