#include "fieldmarket/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>
#include <utility>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "fieldmarket/auction_sim.hpp"
#include "fieldmarket/config.hpp"
#include "fieldmarket/energy_engine.hpp"
#include "fieldmarket/error.hpp"
#include "fieldmarket/field_engine.hpp"
#include "fieldmarket/io.hpp"
#include "fieldmarket/series_energy.hpp"

namespace fieldmarket::cli {

namespace {

using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& cell) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double x) const { return io::format_number(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    // Same 12-digit value the CSV shows; nlohmann prints the shortest
    // round-trip form of it.
    nlohmann::ordered_json operator()(double x) const {
      return std::stod(io::format_number(x));
    }
    nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
    nlohmann::ordered_json operator()(bool x) const { return x; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, cell);
}

std::string render(const Table& table, OutputFormat format) {
  if (format == OutputFormat::json) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        obj[table.columns[c]] = json_cell(row[c]);
      }
      rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

Cell optional_cell(const std::optional<double>& x) {
  return x ? Cell{*x} : Cell{std::monostate{}};
}

const std::string& require_input(const std::string& value, std::string_view flag) {
  if (value.empty()) {
    throw CLI::RequiredError(std::string(flag) + " (or the matching config key) is required");
  }
  return value;
}

struct LoadedAssets {
  std::vector<InformationCharge> charges;
  NormalizationSpec spec;
};

LoadedAssets load_assets(const RunConfig& config) {
  const auto& path = require_input(config.assets, "--assets");
  const auto rows = io::parse_assets_csv(io::read_file(path), path);
  if (rows.empty()) fail(ErrorKind::empty_input, path + ": no assets");
  std::vector<std::vector<double>> raw;
  for (const auto& r : rows) raw.push_back(r.features);
  LoadedAssets out{{}, NormalizationSpec::fit(config.normalize, raw)};
  for (const auto& r : rows) {
    out.charges.emplace_back(r.asset_id, normalize_features(r.features, out.spec), r.charge);
  }
  return out;
}

Table field_command(const RunConfig& config) {
  const auto assets = load_assets(config);
  const FieldParams params = config.field_params();

  // Probes are the assets themselves (leave-one-out) unless a points file
  // is given; a point's `charge` column is its probe charge.
  std::vector<InformationCharge> probes;
  const bool leave_one_out = config.points.empty();
  if (leave_one_out) {
    probes = assets.charges;
  } else {
    for (const auto& r : io::parse_assets_csv(io::read_file(config.points), config.points)) {
      probes.emplace_back(r.asset_id, normalize_features(r.features, assets.spec), r.charge);
    }
  }
  std::vector<FeatureVector> points;
  for (const auto& p : probes) points.push_back(p.position);
  const auto samples = field_at_points(assets.charges, points, params);

  const std::size_t dim = assets.spec.dimension();
  Table table;
  table.columns = {"id", "charge"};
  for (std::size_t i = 1; i <= dim; ++i) table.columns.push_back("E" + std::to_string(i));
  table.columns.push_back("E_magnitude");
  for (std::size_t i = 1; i <= dim; ++i) table.columns.push_back("F" + std::to_string(i));
  table.columns.push_back("F_magnitude");
  table.columns.push_back("degenerate");

  for (std::size_t p = 0; p < probes.size(); ++p) {
    const auto& s = samples[p];
    const auto force = force_on(probes[p].magnitude, s.field);
    std::vector<Cell> row{probes[p].asset_id, probes[p].magnitude};
    for (double c : s.field.components()) row.emplace_back(c);
    row.emplace_back(s.field.magnitude());
    for (double c : force.components()) row.emplace_back(c);
    row.emplace_back(force.magnitude());
    // The probe's own source sits at distance 0 and is always degenerate.
    const auto degenerate = s.degenerate_sources - (leave_one_out ? 1 : 0);
    row.emplace_back(static_cast<std::int64_t>(degenerate));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table work_command(const RunConfig& config) {
  const auto assets = load_assets(config);
  const auto& path_file = require_input(config.path, "--path");
  std::vector<FeatureVector> vertices;
  for (const auto& v : io::parse_path_csv(io::read_file(path_file), path_file)) {
    vertices.push_back(normalize_features(v.values(), assets.spec));
  }
  const PolylinePath path(std::move(vertices));
  const FieldParams params = config.field_params();
  const auto numeric = integrate_work(assets.charges, config.q0, path, params);
  const double closed = work_closed_form(assets.charges, config.q0, path.vertices().front(),
                                         path.vertices().back(), params);
  const double abs_diff = std::abs(numeric.work - closed);
  const double scale = std::max(std::abs(numeric.work), std::abs(closed));
  const double rel_diff = scale > 0.0 ? abs_diff / scale : 0.0;

  Table table;
  table.columns = {"numeric_work", "closed_form_work", "abs_diff", "rel_diff",
                   "field_work",   "segments",         "evaluations", "converged"};
  table.rows.push_back({numeric.work, closed, abs_diff, rel_diff, field_force_work(numeric.work),
                        static_cast<std::int64_t>(path.segment_count()),
                        static_cast<std::int64_t>(numeric.evaluations), numeric.converged});
  return table;
}

Table energy_command(const RunConfig& config) {
  const auto& file = require_input(config.bars, "--in");
  const auto bars = io::parse_ohlcv_csv(io::read_file(file), file);
  const auto trace = energy_decomposition(bars, config.potential_model(), config.dt);
  Table table;
  table.columns = {"timestamp", "kinetic", "potential", "total", "reference", "clamped"};
  for (const auto& p : trace) {
    table.rows.push_back(
        {p.timestamp.to_string(), p.kinetic, p.potential, p.total, p.reference, p.clamped});
  }
  return table;
}

Table auction_command(const RunConfig& config, std::optional<double> prev) {
  const auto& file = require_input(config.book, "--book");
  if (!prev) throw CLI::RequiredError("--prev is required");
  const auto orders = io::parse_book_csv(io::read_file(file), file);
  const auto result = clear_auction(orders, *prev, config.tick);
  Table table;
  table.columns = {"price", "volume", "demand", "supply", "crossed"};
  table.rows.push_back({optional_cell(result.clearing_price), result.executed_volume,
                        result.demand_at_price, result.supply_at_price, result.crossed});
  return table;
}

Table simulate_command(const RunConfig& config) {
  const auto& file = require_input(config.scenario, "--scenario");
  const auto days = io::parse_scenario_csv(io::read_file(file), file);
  const auto trace =
      run_scenario({"X", config.tick, config.R, config.initial_price}, days);
  Table table;
  table.columns = {"day", "price", "volume", "delta_p", "work", "cum_work"};
  for (const auto& r : trace) {
    table.rows.push_back(
        {r.day, optional_cell(r.price), r.volume, r.delta_p, r.work, r.cumulative_work});
  }
  return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-field market model: fields, work, energy, auctions"};
  app.name("fieldmarket");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  const auto key = [&overrides](std::string name) {
    return [&overrides, name](const std::string& v) { overrides.emplace_back(name, v); };
  };

  app.add_option("--config", config_path, "key=value config file (else $FIELD_MARKET_CONFIG)");
  app.add_option("--out", out_path, "write results to this file instead of stdout");
  app.add_option_function<std::string>("--format", key("format"), "csv or json");
  app.add_option_function<std::string>("--seed", key("seed"), "recorded for reproducibility");

  auto* field = app.add_subcommand("field", "field and force at probe points");
  field->add_option_function<std::string>("--assets", key("assets"), "assets CSV");
  field->add_option_function<std::string>("--points", key("points"), "probe points CSV");
  field->add_option_function<std::string>("--k-b", key("k_b"), "coupling constant");
  field->add_option_function<std::string>("--distance-floor", key("distance_floor"));
  field->add_option_function<std::string>("--normalize", key("normalize"),
                                           "zscore, minmax or identity");

  auto* work = app.add_subcommand("work", "line-integral vs closed-form work along a path");
  work->add_option_function<std::string>("--assets", key("assets"), "assets CSV");
  work->add_option_function<std::string>("--path", key("path"), "path vertices CSV");
  work->add_option_function<std::string>("--q0", key("q0"), "probe charge");
  work->add_option_function<std::string>("--k-b", key("k_b"));
  work->add_option_function<std::string>("--distance-floor", key("distance_floor"));
  work->add_option_function<std::string>("--normalize", key("normalize"));

  auto* energy = app.add_subcommand("energy", "kinetic/potential decomposition of OHLCV bars");
  energy->add_option_function<std::string>("--in,--bars", key("bars"), "OHLCV CSV");
  energy->add_option_function<std::string>("--mass", key("mass"));
  energy->add_option_function<std::string>("--dt", key("dt"));
  energy->add_option_function<std::string>("--reference-rule", key("reference_rule"),
                                            "fixed:<level> or rolling_min:<window>");

  std::optional<double> prev;
  auto* auction = app.add_subcommand("auction", "clear one call auction");
  auction->add_option_function<std::string>("--book", key("book"), "order book CSV");
  auction->add_option("--prev", prev, "previous equilibrium price");
  auction->add_option_function<std::string>("--tick", key("tick"));

  auto* simulate = app.add_subcommand("simulate", "replay a day-by-day auction scenario");
  simulate->add_option_function<std::string>("--scenario", key("scenario"), "scenario CSV");
  simulate->add_option_function<std::string>("--R", key("R"), "request force per step");
  simulate->add_option_function<std::string>("--tick", key("tick"));
  simulate->add_option_function<std::string>("--initial-price", key("initial_price"));

  auto* config_cmd = app.add_subcommand("config", "configuration utilities");
  config_cmd->require_subcommand(1);
  auto* dump = config_cmd->add_subcommand("dump", "print the effective configuration");

  for (auto* sub : {field, work, energy, auction, simulate, dump}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      config = load_config(config_path);
    } else if (const char* env = std::getenv("FIELD_MARKET_CONFIG"); env && *env) {
      config = load_config(env);
    }
    // A bad flag value is a usage error; the same value in a file is data.
    try {
      for (const auto& [k, v] : overrides) apply_config_value(config, k, v);
    } catch (const Error& e) {
      err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
      return kExitUsage;
    }
    config.validate();

    std::string text;
    if (dump->parsed()) {
      text = dump_config(config);
    } else {
      Table table;
      if (field->parsed()) table = field_command(config);
      else if (work->parsed()) table = work_command(config);
      else if (energy->parsed()) table = energy_command(config);
      else if (auction->parsed()) table = auction_command(config, prev);
      else table = simulate_command(config);
      text = render(table, config.format);
    }

    if (out_path.empty()) {
      out << text;
    } else {
      io::write_file(out_path, text);
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace fieldmarket::cli
