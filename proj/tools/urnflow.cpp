// Command-line front end. Everything goes through the C API in
// urnflow/urnflow.h; this file only parses arguments and renders reports.

#include <urnflow/urnflow.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

int exit_code_for(int status) {
  switch (status) {
    case URNFLOW_OK:
      return 0;
    case URNFLOW_ERR_MISMATCH:
      return 2;
    case URNFLOW_ERR_INFEASIBLE:
    case URNFLOW_ERR_CAP:
      return 3;
    default:
      return 1;  // usage, parse, unsupported, internal
  }
}

struct ReportView {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

ReportView snapshot(const urnflow_report* report) {
  ReportView view;
  const size_t n_cols = urnflow_report_columns(report);
  const size_t n_rows = urnflow_report_rows(report);
  view.columns.reserve(n_cols);
  for (size_t c = 0; c < n_cols; ++c) {
    view.columns.emplace_back(urnflow_report_column_name(report, c));
  }
  view.rows.reserve(n_rows);
  for (size_t r = 0; r < n_rows; ++r) {
    std::vector<std::string> row;
    row.reserve(n_cols);
    for (size_t c = 0; c < n_cols; ++c) {
      const char* cell = urnflow_report_cell(report, r, c);
      row.emplace_back(cell ? cell : "");
    }
    view.rows.push_back(std::move(row));
  }
  return view;
}

void print_table(const ReportView& view) {
  std::vector<size_t> widths(view.columns.size());
  for (size_t c = 0; c < view.columns.size(); ++c) widths[c] = view.columns[c].size();
  for (const auto& row : view.rows) {
    for (size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  auto print_row = [&](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size(); ++c) {
      std::cout << (c ? "  " : "") << row[c]
                << std::string(widths[c] - row[c].size(), ' ');
    }
    std::cout << "\n";
  };
  print_row(view.columns);
  for (const auto& row : view.rows) print_row(row);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void print_csv(const ReportView& view) {
  auto print_row = [](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size(); ++c) {
      std::cout << (c ? "," : "") << csv_quote(row[c]);
    }
    std::cout << "\n";
  };
  print_row(view.columns);
  for (const auto& row : view.rows) print_row(row);
}

void print_json(const ReportView& view) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : view.rows) {
    nlohmann::ordered_json record;
    for (size_t c = 0; c < view.columns.size(); ++c) record[view.columns[c]] = row[c];
    records.push_back(std::move(record));
  }
  std::cout << records.dump(2) << "\n";
}

void print_report(const urnflow_report* report, const std::string& format) {
  const ReportView view = snapshot(report);
  if (format == "csv") {
    print_csv(view);
  } else if (format == "json") {
    print_json(view);
  } else {
    print_table(view);
  }
}

int fail_with(int status) {
  const char* message = urnflow_last_error();
  std::cerr << "error: " << (message && *message ? message : "unknown failure") << "\n";
  return exit_code_for(status);
}

uint64_t cap_from_env(uint64_t fallback) {
  const char* env = std::getenv("URNFLOW_CAP");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end && *end == '\0' && value > 0) return value;
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact draw probabilities for multi-urn transfer schemes"};
  app.require_subcommand(1);

  std::string format = "table";
  unsigned digits = 6;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--digits", digits, "Significant digits for decimals")
      ->check(CLI::Range(1u, 60u))
      ->capture_default_str();

  std::string path;
  uint64_t cap = cap_from_env(1000000);
  uint64_t trials = 100000;
  uint64_t seed = 0;
  std::vector<uint64_t> sweep;

  CLI::App* compute = app.add_subcommand("compute", "Closed-form probabilities per query");
  compute->add_option("file", path, "Scheme file")->required();

  CLI::App* verify = app.add_subcommand("verify", "Cross-check the closed form against enumeration");
  verify->add_option("file", path, "Scheme file")->required();
  verify->add_option("--cap", cap, "Enumeration outcome cap")->capture_default_str();

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo cross-check");
  simulate->add_option("file", path, "Scheme file")->required();
  simulate->add_option("--trials", trials, "Number of trials")->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench", "Time closed form vs enumeration over a k sweep");
  bench->add_option("file", path, "Scheme file")->required();
  bench->add_option("--sweep", sweep, "Comma-separated k values for the first step")
      ->required()
      ->delimiter(',');
  bench->add_option("--cap", cap, "Enumeration outcome cap")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  urnflow_scheme* scheme = nullptr;
  int status = urnflow_scheme_load_file(path.c_str(), &scheme);
  if (status != URNFLOW_OK) return fail_with(status);

  urnflow_report* report = nullptr;
  if (compute->parsed()) {
    status = urnflow_compute(scheme, digits, &report);
  } else if (verify->parsed()) {
    status = urnflow_verify(scheme, cap, &report);
  } else if (simulate->parsed()) {
    status = urnflow_simulate(scheme, trials, seed, digits, &report);
  } else {
    status = urnflow_bench(scheme, sweep.data(), sweep.size(), cap, &report);
  }

  int rc = 0;
  if (report) {
    print_report(report, format);
    if (status != URNFLOW_OK) {
      std::cerr << "error: " << urnflow_last_error() << "\n";
    }
    rc = exit_code_for(status);
  } else {
    rc = fail_with(status);
  }

  urnflow_report_free(report);
  urnflow_scheme_free(scheme);
  return rc;
}
