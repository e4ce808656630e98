#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <spinpair/covariant_measurement.hpp>
#include <spinpair/fidelity.hpp>
#include <spinpair/monte_carlo.hpp>
#include <spinpair/operator_algebra.hpp>
#include <spinpair/region_optimizer.hpp>

#include "table_output.hpp"

namespace {

using namespace spinpair;

struct FidelityChoice {
  FidelitySpec spec;
  std::function<double(double)> fn;
  std::string label;
};

// Accepts a named fidelity ("overlap", "plane") or a raw f0,f1,f2 triple.
FidelityChoice parse_fidelity(const std::string& arg) {
  if (const NamedFidelity* named = find_named_fidelity(arg)) {
    return {named->spec, named->fn, arg};
  }
  std::vector<double> parts;
  std::stringstream fields(arg);
  std::string token;
  while (std::getline(fields, token, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size() || token.empty()) {
      throw std::invalid_argument("fidelity must be a known name or an f0,f1,f2 triple, got '" + arg + "'");
    }
    parts.push_back(value);
  }
  if (parts.size() != 3) {
    throw std::invalid_argument("fidelity must be a known name or an f0,f1,f2 triple, got '" + arg + "'");
  }
  FidelitySpec spec;
  spec.f0 = parts[0];
  spec.f1 = parts[1];
  spec.f2 = parts[2];
  return {spec, [spec](double u) { return spec.evaluate(u); }, arg};
}

std::vector<MeasurementClass> parse_classes(const std::string& arg) {
  if (arg == "all") {
    return {MeasurementClass::CollectiveParallel, MeasurementClass::CollectiveAntiparallel,
            MeasurementClass::Locc};
  }
  std::optional<MeasurementClass> parsed = measurement_class_from_string(arg);
  if (!parsed) throw std::invalid_argument("unknown measurement class '" + arg + "'");
  return {*parsed};
}

std::string class_name(MeasurementClass c) { return std::string(to_string(c)); }

cli::Cell fcell(double v) { return cli::Cell{v}; }
cli::Cell icell(long long v) { return cli::Cell{v}; }
cli::Cell scell(std::string v) { return cli::Cell{std::move(v)}; }
cli::Cell bcell(bool v) { return cli::Cell{v}; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

cli::Table run_optimize(const FidelityChoice& fidelity, const std::string& class_arg) {
  cli::Table table;
  table.command = "optimize";
  table.config = {{"fidelity", scell(fidelity.label)},
                  {"class", scell(class_arg)},
                  {"f0", fcell(fidelity.spec.f0)},
                  {"f1", fcell(fidelity.spec.f1)},
                  {"f2", fcell(fidelity.spec.f2)}};
  table.columns = {"class", "alpha", "gamma", "value", "active_constraints",
                   "degenerate_objective", "unique_maximizer"};
  for (MeasurementClass mclass : parse_classes(class_arg)) {
    Optimum best = optimize(fidelity.spec, mclass);
    table.rows.push_back({scell(class_name(mclass)), fcell(best.seed.alpha), fcell(best.seed.gamma),
                          fcell(best.value), scell(join(best.active_constraints, "; ")),
                          bcell(best.degenerate_objective), bcell(best.unique_maximizer)});
  }
  return table;
}

cli::Table run_region(int grid, double alpha_min, double alpha_max, double gamma_min,
                      double gamma_max) {
  cli::Table table;
  table.command = "region";
  table.config = {{"grid", icell(grid)},
                  {"alpha_min", fcell(alpha_min)},
                  {"alpha_max", fcell(alpha_max)},
                  {"gamma_min", fcell(gamma_min)},
                  {"gamma_max", fcell(gamma_max)}};
  table.columns = {"alpha", "gamma", "parallel", "antiparallel", "locc_necessary",
                   "min_eigenvalue", "min_eigenvalue_flipped"};
  for (int gi = 0; gi < grid; ++gi) {
    double gamma = grid == 1 ? gamma_min
                             : gamma_min + (gamma_max - gamma_min) * gi / (grid - 1);
    for (int ai = 0; ai < grid; ++ai) {
      double alpha = grid == 1 ? alpha_min
                               : alpha_min + (alpha_max - alpha_min) * ai / (grid - 1);
      CovariantSeed seed{alpha, gamma};
      double min_eig = seed_spectrum(seed)[0];
      double min_eig_flipped = flipped_seed_spectrum(seed)[0];
      table.rows.push_back(
          {fcell(alpha), fcell(gamma),
           bcell(is_admissible(seed, MeasurementClass::CollectiveParallel)),
           bcell(is_admissible(seed, MeasurementClass::CollectiveAntiparallel)),
           bcell(is_admissible(seed, MeasurementClass::Locc)), fcell(min_eig),
           fcell(min_eig_flipped)});
    }
  }
  return table;
}

cli::Table run_simulate(const FidelityChoice& fidelity, double alpha, double gamma,
                        std::uint64_t trials, std::uint64_t rng_seed) {
  CovariantSeed seed{alpha, gamma};
  SimulationReport report = estimate_fidelity(seed, fidelity.fn, trials, rng_seed);
  double analytic = average_fidelity(seed, fidelity.spec);
  cli::Table table;
  table.command = "simulate";
  table.config = {{"fidelity", scell(fidelity.label)}, {"alpha", fcell(alpha)},
                  {"gamma", fcell(gamma)},             {"trials", icell(static_cast<long long>(trials))},
                  {"rng_seed", icell(static_cast<long long>(rng_seed))}};
  table.columns = {"alpha", "gamma", "trials", "mean_fidelity", "standard_error",
                   "acceptance_rate", "analytic_value"};
  table.rows.push_back({fcell(alpha), fcell(gamma), icell(static_cast<long long>(report.trials)),
                        fcell(report.mean_fidelity), fcell(report.standard_error),
                        fcell(report.acceptance_rate), fcell(analytic)});
  table.checks.push_back({"mean within four standard errors of analytic value", analytic,
                          report.mean_fidelity, 4.0 * report.standard_error,
                          std::abs(report.mean_fidelity - analytic) <= 4.0 * report.standard_error});
  return table;
}

cli::Table run_discretize(double alpha, double gamma, const std::string& design,
                          const std::string& design_file) {
  std::vector<BlochVector> directions;
  std::string design_label = design;
  if (!design_file.empty()) {
    directions = load_directions(design_file);
    design_label = design_file;
  } else if (design == "tetrahedron") {
    directions = tetrahedron_design();
  } else if (design == "octahedron") {
    directions = octahedron_design();
  } else if (design == "icosahedron") {
    directions = icosahedron_design();
  } else {
    throw std::invalid_argument("unknown design '" + design +
                                "', expected tetrahedron, octahedron or icosahedron");
  }
  CovariantSeed seed{alpha, gamma};
  DiscretePovm povm = discretize(seed, directions);
  cli::Table table;
  table.command = "discretize";
  table.config = {{"alpha", fcell(alpha)},
                  {"gamma", fcell(gamma)},
                  {"design", scell(design_label)},
                  {"elements", icell(static_cast<long long>(povm.elements.size()))}};
  table.columns = {"index", "nx", "ny", "nz", "weight", "min_eigenvalue"};
  TwoSpinOperator sum = 0.0 * identity_operator();
  for (std::size_t k = 0; k < povm.elements.size(); ++k) {
    const PovmElement& element = povm.elements[k];
    TwoSpinOperator weighted = element.weight * element.op;
    sum = sum + weighted;
    table.rows.push_back({icell(static_cast<long long>(k)), fcell(element.direction.x()),
                          fcell(element.direction.y()), fcell(element.direction.z()),
                          fcell(element.weight), fcell(eigenvalues(element.op)[0])});
  }
  double completeness = max_coefficient_distance(sum, identity_operator());
  double weight_sum = 0.0;
  for (const PovmElement& element : povm.elements) weight_sum += element.weight;
  table.checks.push_back({"weighted elements sum to the identity", 0.0, completeness, 1e-12,
                          completeness <= 1e-12});
  table.checks.push_back(
      {"weights sum to one", 1.0, weight_sum, 1e-12, std::abs(weight_sum - 1.0) <= 1e-12});
  return table;
}

cli::Table run_reproduce(std::uint64_t trials, std::uint64_t rng_seed) {
  cli::Table table;
  table.command = "reproduce";
  table.config = {{"trials", icell(static_cast<long long>(trials))},
                  {"rng_seed", icell(static_cast<long long>(rng_seed))}};
  table.columns = {"name",     "fidelity",       "class", "alpha",  "gamma",
                   "analytic", "estimate", "standard_error", "trials"};

  struct Entry {
    std::string name;
    std::string fidelity;
    MeasurementClass mclass;
    double closed_form;
  };
  const std::vector<Entry> entries = {
      {"overlap parallel", "overlap", MeasurementClass::CollectiveParallel, 0.75},
      {"overlap antiparallel", "overlap", MeasurementClass::CollectiveAntiparallel,
       0.5 + 0.5 / std::sqrt(3.0)},
      {"overlap locc", "overlap", MeasurementClass::Locc, 0.5 + 1.0 / (3.0 * std::sqrt(2.0))},
      {"plane parallel", "plane", MeasurementClass::CollectiveParallel, 0.8},
      {"plane antiparallel", "plane", MeasurementClass::CollectiveAntiparallel, 11.0 / 15.0},
      {"plane locc", "plane", MeasurementClass::Locc, 11.0 / 15.0},
  };

  std::uint64_t row_seed = rng_seed;
  for (const Entry& entry : entries) {
    const NamedFidelity* named = find_named_fidelity(entry.fidelity);
    Optimum best = optimize(named->spec, entry.mclass);
    table.checks.push_back({entry.name + " analytic", entry.closed_form, best.value, 1e-12,
                            std::abs(best.value - entry.closed_form) <= 1e-12});
    if (entry.name == "plane locc") {
      // Same seed and value as the antiparallel row; only the analytic check differs.
      continue;
    }
    SimulationReport report = estimate_fidelity(best.seed, named->fn, trials, row_seed++);
    table.rows.push_back({scell(entry.name), scell(entry.fidelity), scell(class_name(entry.mclass)),
                          fcell(best.seed.alpha), fcell(best.seed.gamma), fcell(best.value),
                          fcell(report.mean_fidelity), fcell(report.standard_error),
                          icell(static_cast<long long>(report.trials))});
    table.checks.push_back({entry.name + " estimate", best.value, report.mean_fidelity,
                            4.0 * report.standard_error,
                            std::abs(report.mean_fidelity - best.value) <=
                                4.0 * report.standard_error});
  }

  // Explicit local strategy: antipodal x measurements, antipodal y measurements,
  // guess along the bisectrix of the two outcomes.
  double strategy_value = 0.5 + 1.0 / (3.0 * std::sqrt(2.0));
  SimulationReport strategy =
      estimate_locc_strategy(trials, row_seed++, SpinArrangement::Parallel);
  table.rows.push_back({scell("overlap locc strategy"), scell("overlap"), scell("locc"),
                        cli::Cell{}, cli::Cell{}, fcell(strategy_value),
                        fcell(strategy.mean_fidelity), fcell(strategy.standard_error),
                        icell(static_cast<long long>(strategy.trials))});
  table.checks.push_back({"overlap locc strategy estimate", strategy_value,
                          strategy.mean_fidelity, 4.0 * strategy.standard_error,
                          std::abs(strategy.mean_fidelity - strategy_value) <=
                              4.0 * strategy.standard_error});
  return table;
}

int emit(const cli::Table& table, const std::string& format, const std::string& output) {
  std::string text = format == "json" ? cli::render_json(table) : cli::render_csv(table);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(output);
    if (!file) throw std::runtime_error("cannot open output file '" + output + "'");
    file << text;
  }
  for (const cli::Check& check : table.checks) {
    if (!check.pass) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariant spin-direction measurements on two spin-1/2 particles"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string output;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", output, "Write the table to a file instead of stdout");

  std::string fidelity_arg = "overlap";
  std::string class_arg = "all";
  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "Best covariant measurement for a fidelity function");
  optimize_cmd->add_option("--fidelity", fidelity_arg,
                           "Named fidelity (overlap, plane) or f0,f1,f2 triple")
      ->capture_default_str();
  optimize_cmd
      ->add_option("--class", class_arg,
                   "parallel, antiparallel, locc (positivity of the element and its flip, "
                   "necessary for one-way local protocols) or all")
      ->check(CLI::IsMember({"parallel", "antiparallel", "locc", "all"}))
      ->capture_default_str();

  int grid = 201;
  double alpha_min = -3.0, alpha_max = 3.0, gamma_min = -3.0, gamma_max = 3.0;
  CLI::App* region_cmd =
      app.add_subcommand("region", "Admissibility and minimum eigenvalues on a seed grid");
  region_cmd->add_option("--grid", grid, "Points per axis")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  region_cmd->add_option("--alpha-min", alpha_min, "")->capture_default_str();
  region_cmd->add_option("--alpha-max", alpha_max, "")->capture_default_str();
  region_cmd->add_option("--gamma-min", gamma_min, "")->capture_default_str();
  region_cmd->add_option("--gamma-max", gamma_max, "")->capture_default_str();

  double alpha = 0.0, gamma = 0.0;
  std::uint64_t trials = 1000000, rng_seed = 1;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo estimate of the average fidelity");
  simulate_cmd->add_option("--fidelity", fidelity_arg, "Named fidelity or f0,f1,f2 triple")
      ->capture_default_str();
  simulate_cmd->add_option("--alpha", alpha, "Seed coefficient of n.m")->required();
  simulate_cmd->add_option("--gamma", gamma, "Seed coefficient of the correlation block")
      ->required();
  simulate_cmd->add_option("--trials", trials, "")->capture_default_str();
  simulate_cmd->add_option("--rng-seed", rng_seed, "")->capture_default_str();

  std::string design = "tetrahedron";
  std::string design_file;
  CLI::App* discretize_cmd =
      app.add_subcommand("discretize", "Finite measurement from a spherical 2-design");
  discretize_cmd->add_option("--alpha", alpha, "Seed coefficient of n.m")->required();
  discretize_cmd->add_option("--gamma", gamma, "Seed coefficient of the correlation block")
      ->required();
  CLI::Option* design_opt =
      discretize_cmd->add_option("--design", design, "tetrahedron, octahedron or icosahedron")
          ->capture_default_str();
  discretize_cmd->add_option("--design-file", design_file, "File with one unit vector per line")
      ->excludes(design_opt);

  CLI::App* reproduce_cmd = app.add_subcommand(
      "reproduce", "Optimal values for both named fidelities with Monte Carlo confirmation");
  reproduce_cmd->add_option("--trials", trials, "")->capture_default_str();
  reproduce_cmd->add_option("--rng-seed", rng_seed, "")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    cli::Table table;
    if (optimize_cmd->parsed()) {
      table = run_optimize(parse_fidelity(fidelity_arg), class_arg);
    } else if (region_cmd->parsed()) {
      table = run_region(grid, alpha_min, alpha_max, gamma_min, gamma_max);
    } else if (simulate_cmd->parsed()) {
      table = run_simulate(parse_fidelity(fidelity_arg), alpha, gamma, trials, rng_seed);
    } else if (discretize_cmd->parsed()) {
      table = run_discretize(alpha, gamma, design, design_file);
    } else {
      table = run_reproduce(trials, rng_seed);
    }
    return emit(table, format, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
