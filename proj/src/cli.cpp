#include "dcov/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcov/csv.hpp"
#include "dcov/inference.hpp"
#include "dcov/scan.hpp"
#include "dcov/simulate.hpp"
#include "dcov/stats.hpp"

namespace dcov {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split_tokens(const std::string& selector) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= selector.size()) {
    const std::size_t comma = selector.find(',', start);
    const std::string tok = selector.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) tokens.push_back(tok);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return tokens;
}

// Expands a comma-separated selector against the table header. A token ending
// in '*' matches every column with that prefix, in header order.
std::vector<std::size_t> select_columns(const Table& table, const std::string& selector,
                                        const char* flag) {
  std::vector<std::size_t> picked;
  std::vector<bool> taken(table.names.size(), false);
  auto take = [&](std::size_t i) {
    if (!taken[i]) {
      taken[i] = true;
      picked.push_back(i);
    }
  };
  for (const std::string& tok : split_tokens(selector)) {
    bool matched = false;
    if (!tok.empty() && tok.back() == '*') {
      const std::string_view prefix(tok.data(), tok.size() - 1);
      for (std::size_t i = 0; i < table.names.size(); ++i)
        if (std::string_view(table.names[i]).substr(0, prefix.size()) == prefix) {
          take(i);
          matched = true;
        }
    } else {
      const std::size_t i = table.find(tok);
      if (i != Table::npos) {
        take(i);
        matched = true;
      }
    }
    if (!matched)
      throw ParseError(std::string(flag) + " selector '" + tok + "' matches no column");
  }
  if (picked.empty()) throw ParseError(std::string(flag) + " selects no columns");
  return picked;
}

Sample build_sample(const Table& table, const std::vector<std::size_t>& cols) {
  Matrix m(table.n_rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::vector<double>& col = table.columns[cols[c]];
    for (std::size_t r = 0; r < table.n_rows; ++r) {
      if (Table::is_missing(col[r]))
        throw InvalidInputError("column '" + table.names[cols[c]] + "' has NA at data row " +
                                std::to_string(r + 1) + "; missing values are only allowed in "
                                "genotype columns");
      m(r, c) = col[r];
    }
  }
  return Sample(std::move(m));
}

void emit(const RunConfig& config, std::ostream& out, const std::string& csv_text,
          const ordered_json& json_value) {
  const std::string body =
      config.format == "json" ? json_value.dump(2) + "\n" : csv_text;
  if (config.output.empty())
    out << body;
  else
    write_file_atomic(config.output, body);
}

ordered_json json_number_or_null(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::string csv_number_or_na(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

int run_dcor(const RunConfig& config, std::ostream& out) {
  const Table table = load_table(config.input);
  const auto xcols = select_columns(table, config.x_columns, "--x");
  const auto ycols = select_columns(table, config.y_columns, "--y");
  const Sample x = build_sample(table, xcols);
  const Sample y = build_sample(table, ycols);
  const DcovResult res = distance_correlation(x, y);

  // The classical baselines only exist for 1-D, non-constant inputs.
  std::optional<double> pearson_r;
  std::optional<double> spearman_r;
  if (x.dim() == 1 && y.dim() == 1) {
    try {
      pearson_r = pearson(x, y);
      spearman_r = spearman(x, y);
    } catch (const DegenerateError&) {
    }
  }

  std::ostringstream csv;
  csv << "pearson,spearman,dcov_sq,dvar_x_sq,dvar_y_sq,dcor\n"
      << csv_number_or_na(pearson_r) << ',' << csv_number_or_na(spearman_r) << ','
      << format_double(res.dcov_sq) << ',' << format_double(res.dvar_x_sq) << ','
      << format_double(res.dvar_y_sq) << ',' << format_double(res.dcor) << '\n';
  ordered_json j{{"pearson", json_number_or_null(pearson_r)},
                 {"spearman", json_number_or_null(spearman_r)},
                 {"dcov_sq", res.dcov_sq},
                 {"dvar_x_sq", res.dvar_x_sq},
                 {"dvar_y_sq", res.dvar_y_sq},
                 {"dcor", res.dcor}};
  emit(config, out, csv.str(), j);
  return kExitOk;
}

int run_test(const RunConfig& config, std::ostream& out) {
  const Table table = load_table(config.input);
  const Sample x = build_sample(table, select_columns(table, config.x_columns, "--x"));
  const Sample y = build_sample(table, select_columns(table, config.y_columns, "--y"));
  const StatKind kind = stat_kind_from_name(config.statistic);
  const TestResult res = permutation_test(x, y, config.replicates, config.seed, kind,
                                          Metric::kEuclidean, Metric::kEuclidean, config.threads);

  std::ostringstream csv;
  csv << "statistic_kind,statistic,dcov_sq,dcor,replicates,exceed_count,p_value,seed\n"
      << stat_kind_name(kind) << ',' << format_double(res.statistic) << ','
      << format_double(res.observed.dcov_sq) << ',' << format_double(res.observed.dcor) << ','
      << res.replicates << ',' << res.exceed_count << ',' << format_double(res.p_value) << ','
      << config.seed << '\n';
  ordered_json j{{"statistic_kind", stat_kind_name(kind)},
                 {"statistic", res.statistic},
                 {"dcov_sq", res.observed.dcov_sq},
                 {"dcor", res.observed.dcor},
                 {"replicates", res.replicates},
                 {"exceed_count", res.exceed_count},
                 {"p_value", res.p_value},
                 {"seed", config.seed}};
  emit(config, out, csv.str(), j);
  return kExitOk;
}

int run_simulate_shape(const RunConfig& config, std::ostream& out) {
  const Shape shape = shape_from_name(config.shape);
  ShapeSpec spec;
  spec.shape = shape;
  spec.n = config.n;
  spec.noise = config.noise.value_or(default_noise(shape));
  spec.seed = config.seed;
  const auto [x, y] = simulate_shape(spec);

  std::ostringstream table;
  table << "x,y\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    table << format_double(x.vector()[i]) << ',' << format_double(y.vector()[i]) << '\n';
  write_file_atomic(config.output, table.str());

  // Summary row mirrors what `test` reports for the emitted file: the data
  // seed doubles as the test seed.
  std::optional<double> pearson_r;
  try {
    pearson_r = pearson(x, y);
  } catch (const DegenerateError&) {
  }
  const TestResult res =
      permutation_test(x, y, config.replicates, config.seed, StatKind::kDcovSq,
                       Metric::kEuclidean, Metric::kEuclidean, config.threads);

  std::ostringstream csv;
  csv << "shape,n,seed,pearson,dcor,p_value\n"
      << config.shape << ',' << spec.n << ',' << config.seed << ','
      << csv_number_or_na(pearson_r) << ',' << format_double(res.observed.dcor) << ','
      << format_double(res.p_value) << '\n';
  ordered_json j{{"shape", config.shape}, {"n", spec.n},
                 {"seed", config.seed},   {"pearson", json_number_or_null(pearson_r)},
                 {"dcor", res.observed.dcor}, {"p_value", res.p_value}};
  const std::string body = config.format == "json" ? j.dump(2) + "\n" : csv.str();
  out << body;
  return kExitOk;
}

int run_simulate_backcross(const RunConfig& config, std::ostream& out) {
  BackcrossSpec spec;
  spec.n_individuals = config.individuals;
  spec.n_markers = config.markers;
  spec.causal_marker = config.causal_marker;
  spec.effect_size = config.effect;
  spec.missing_rate = config.missing_rate;
  spec.seed = config.seed;
  const BackcrossData data = simulate_backcross(spec);

  std::ostringstream table;
  table << "phenotype";
  for (const auto& id : data.genotypes.marker_ids()) table << ',' << id;
  table << '\n';
  for (std::size_t i = 0; i < data.phenotype.size(); ++i) {
    table << format_double(data.phenotype[i]);
    for (std::size_t j = 0; j < data.genotypes.markers(); ++j) {
      const std::int8_t g = data.genotypes.at(i, j);
      if (g == MarkerMatrix::kMissing)
        table << ",NA";
      else
        table << ',' << static_cast<int>(g);
    }
    table << '\n';
  }
  write_file_atomic(config.output, table.str());

  std::ostringstream csv;
  csv << "shape,n,markers,seed\n"
      << "backcross," << spec.n_individuals << ',' << spec.n_markers << ',' << config.seed
      << '\n';
  ordered_json j{{"shape", "backcross"},
                 {"n", spec.n_individuals},
                 {"markers", spec.n_markers},
                 {"seed", config.seed}};
  out << (config.format == "json" ? j.dump(2) + "\n" : csv.str());
  return kExitOk;
}

int run_scan(const RunConfig& config, std::ostream& out) {
  const Table table = load_table(config.input);
  const auto ycols = select_columns(table, config.y_columns, "--y");
  const Sample phenotype = build_sample(table, ycols);

  std::vector<std::size_t> marker_cols;
  if (config.x_columns.empty()) {
    // Default: every column not selected as phenotype is a marker.
    std::vector<bool> is_y(table.names.size(), false);
    for (std::size_t c : ycols) is_y[c] = true;
    for (std::size_t c = 0; c < table.names.size(); ++c)
      if (!is_y[c]) marker_cols.push_back(c);
    if (marker_cols.empty()) throw ParseError("no marker columns left after removing --y");
  } else {
    marker_cols = select_columns(table, config.x_columns, "--x");
  }

  std::vector<std::int8_t> genotypes(table.n_rows * marker_cols.size());
  std::vector<std::string> ids;
  ids.reserve(marker_cols.size());
  for (std::size_t j = 0; j < marker_cols.size(); ++j) {
    const std::string& name = table.names[marker_cols[j]];
    ids.push_back(name);
    const std::vector<double>& col = table.columns[marker_cols[j]];
    for (std::size_t i = 0; i < table.n_rows; ++i) {
      if (Table::is_missing(col[i])) {
        genotypes[i * marker_cols.size() + j] = MarkerMatrix::kMissing;
        continue;
      }
      const double v = col[i];
      if (v != std::floor(v) || v < 0.0 || v > 127.0)
        throw InvalidInputError("genotype column '" + name + "' has a non-level value at data row " +
                                std::to_string(i + 1));
      genotypes[i * marker_cols.size() + j] = static_cast<std::int8_t>(v);
    }
  }

  const MarkerMatrix markers(table.n_rows, marker_cols.size(), std::move(genotypes),
                             std::move(ids));
  const ScanResult res =
      scan_markers(markers, phenotype, config.replicates, config.seed, config.threads);

  std::ostringstream csv;
  csv << "marker_id,n_used,statistic,p_value,neglog10_p\n";
  ordered_json jmarkers = ordered_json::array();
  for (const ScanRecord& rec : res.records) {
    csv << rec.marker_id << ',' << rec.n_used << ',' << format_double(rec.statistic) << ','
        << format_double(rec.p_value) << ',' << format_double(rec.neglog10_p) << '\n';
    jmarkers.push_back(ordered_json{{"marker_id", rec.marker_id},
                                    {"n_used", rec.n_used},
                                    {"statistic", rec.statistic},
                                    {"p_value", rec.p_value},
                                    {"neglog10_p", rec.neglog10_p}});
  }
  ordered_json j{{"replicates", res.replicates}, {"seed", res.seed}, {"markers", jmarkers}};
  emit(config, out, csv.str(), j);
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "dcor") return run_dcor(config, out);
    if (config.subcommand == "test") return run_test(config, out);
    if (config.subcommand == "simulate")
      return config.shape == "backcross" ? run_simulate_backcross(config, out)
                                         : run_simulate_shape(config, out);
    if (config.subcommand == "scan") return run_scan(config, out);
    err << "error: unknown subcommand '" << config.subcommand << "'\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;

  CLI::App app{"Dependence measurement with distance covariance: statistics, permutation "
               "tests, simulated benchmark distributions and genome scans."};
  app.require_subcommand(1);

  auto add_io = [&](CLI::App* cmd, bool output_required) {
    auto* o = cmd->add_option("--output", config.output, "Write results to this file");
    if (output_required) o->required();
    cmd->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto add_test_opts = [&](CLI::App* cmd) {
    cmd->add_option("--replicates", config.replicates, "Monte Carlo replicates")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    cmd->add_option("--threads", config.threads,
                    "Worker threads for replicates (0 = hardware)")
        ->capture_default_str();
  };

  CLI::App* dcor = app.add_subcommand(
      "dcor", "Distance correlation plus classical baselines for two column sets");
  dcor->add_option("--input", config.input, "Input CSV file")->required();
  dcor->add_option("--x", config.x_columns, "Columns of the first variable")->required();
  dcor->add_option("--y", config.y_columns, "Columns of the second variable")->required();
  add_io(dcor, false);

  CLI::App* test = app.add_subcommand(
      "test", "Monte Carlo permutation test of independence between two column sets");
  test->add_option("--input", config.input, "Input CSV file")->required();
  test->add_option("--x", config.x_columns, "Columns of the first variable")->required();
  test->add_option("--y", config.y_columns, "Columns of the second variable")->required();
  test->add_option("--statistic", config.statistic, "Test statistic")
      ->check(CLI::IsMember({"dcov_sq", "dcor"}))
      ->capture_default_str();
  add_test_opts(test);
  add_io(test, false);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate a benchmark joint distribution or a synthetic backcross dataset");
  simulate->add_option("--shape", config.shape, "parabola|circle|cross|four_clusters|sinusoid|"
                       "independent|backcross")
      ->required()
      ->check(CLI::IsMember({"parabola", "circle", "cross", "four_clusters", "sinusoid",
                             "independent", "backcross"}));
  simulate->add_option("--n", config.n, "Points to generate (shape mode)")
      ->capture_default_str();
  double noise_flag = 0.0;
  CLI::Option* noise_opt =
      simulate->add_option("--noise", noise_flag, "Noise standard deviation (shape default)");
  simulate->add_option("--individuals", config.individuals, "Backcross individuals")
      ->capture_default_str();
  simulate->add_option("--markers", config.markers, "Backcross markers")
      ->capture_default_str();
  int causal_flag = -1;
  simulate->add_option("--causal", causal_flag,
                       "0-based causal marker index (negative or omitted = none)");
  simulate->add_option("--effect", config.effect, "Causal effect size")->capture_default_str();
  simulate->add_option("--missing-rate", config.missing_rate,
                       "Probability a genotype is missing")
      ->capture_default_str();
  add_test_opts(simulate);
  add_io(simulate, true);

  CLI::App* scan = app.add_subcommand(
      "scan", "Per-marker independence scan of a phenotype against genotype columns");
  scan->add_option("--input", config.input, "Input CSV file")->required();
  scan->add_option("--y", config.y_columns, "Phenotype column(s)")->required();
  scan->add_option("--x", config.x_columns,
                   "Marker columns (default: all columns not in --y)");
  add_test_opts(scan);
  add_io(scan, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  if (noise_opt->count() > 0) config.noise = noise_flag;
  if (causal_flag >= 0) config.causal_marker = causal_flag;
  return run(config, out, err);
}

}  // namespace dcov
