#include <urnflow/urnflow.h>

#include <cstring>
#include <new>
#include <string>

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "common/error.hpp"

struct urnflow_scheme {
  urnflow::cli::SchemeConfig config;
};

struct urnflow_report {
  urnflow::cli::Report report;
};

namespace {

thread_local std::string tl_error;

int code_of(urnflow::ErrorCode code) {
  using urnflow::ErrorCode;
  switch (code) {
    case ErrorCode::bad_argument:
      return URNFLOW_ERR_ARGUMENT;
    case ErrorCode::io:
    case ErrorCode::parse:
      return URNFLOW_ERR_PARSE;
    case ErrorCode::infeasible:
    case ErrorCode::empty_draw:
      return URNFLOW_ERR_INFEASIBLE;
    case ErrorCode::unsupported:
      return URNFLOW_ERR_UNSUPPORTED;
    case ErrorCode::cap_exceeded:
      return URNFLOW_ERR_CAP;
  }
  return URNFLOW_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    tl_error.clear();
    return fn();
  } catch (const urnflow::Error& e) {
    tl_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    tl_error = e.what();
    return URNFLOW_ERR_INTERNAL;
  }
}

int arg_error(const char* message) {
  tl_error = message;
  return URNFLOW_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* urnflow_version(void) { return "0.1.0"; }

const char* urnflow_last_error(void) { return tl_error.c_str(); }

int urnflow_scheme_load_file(const char* path, urnflow_scheme** out) {
  if (!path || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto* scheme = new urnflow_scheme{urnflow::cli::parse_scheme(path)};
    *out = scheme;
    return URNFLOW_OK;
  });
}

int urnflow_scheme_load_json(const char* json_text, urnflow_scheme** out) {
  if (!json_text || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto* scheme = new urnflow_scheme{urnflow::cli::parse_scheme_text(json_text)};
    *out = scheme;
    return URNFLOW_OK;
  });
}

void urnflow_scheme_free(urnflow_scheme* scheme) { delete scheme; }

int urnflow_scheme_to_json(const urnflow_scheme* scheme, char** out_json) {
  if (!scheme || !out_json) return arg_error("null argument");
  *out_json = nullptr;
  return guarded([&] {
    const std::string text = urnflow::cli::serialize_scheme(scheme->config);
    char* copy = new char[text.size() + 1];
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *out_json = copy;
    return URNFLOW_OK;
  });
}

void urnflow_string_free(char* text) { delete[] text; }

int urnflow_compute(const urnflow_scheme* scheme, uint32_t digits,
                    urnflow_report** out) {
  if (!scheme || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto* report = new urnflow_report{
        urnflow::cli::run_compute(scheme->config, digits ? digits : urnflow::cli::kDefaultDigits)};
    *out = report;
    return URNFLOW_OK;
  });
}

int urnflow_verify(const urnflow_scheme* scheme, uint64_t outcome_cap,
                   urnflow_report** out) {
  if (!scheme || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto* report = new urnflow_report{urnflow::cli::run_verify(
        scheme->config, outcome_cap ? outcome_cap : urnflow::cli::kDefaultOutcomeCap)};
    *out = report;
    if (!report->report.ok) {
      tl_error = "engine and enumeration disagree";
      return URNFLOW_ERR_MISMATCH;
    }
    return URNFLOW_OK;
  });
}

int urnflow_simulate(const urnflow_scheme* scheme, uint64_t trials, uint64_t seed,
                     uint32_t digits, urnflow_report** out) {
  if (!scheme || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    urnflow::cli::SimulateOptions options;
    options.trials = trials;
    options.seed = seed;
    options.digits = digits ? digits : urnflow::cli::kDefaultDigits;
    auto* report = new urnflow_report{urnflow::cli::run_simulate(scheme->config, options)};
    *out = report;
    return URNFLOW_OK;
  });
}

int urnflow_bench(const urnflow_scheme* scheme, const uint64_t* sweep,
                  size_t sweep_len, uint64_t outcome_cap, urnflow_report** out) {
  if (!scheme || !out || (sweep_len > 0 && !sweep)) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    urnflow::cli::BenchOptions options;
    options.sweep.assign(sweep, sweep + sweep_len);
    options.outcome_cap = outcome_cap ? outcome_cap : urnflow::cli::kDefaultOutcomeCap;
    auto* report = new urnflow_report{urnflow::cli::run_bench(scheme->config, options)};
    *out = report;
    return URNFLOW_OK;
  });
}

size_t urnflow_report_rows(const urnflow_report* report) {
  return report ? report->report.rows.size() : 0;
}

size_t urnflow_report_columns(const urnflow_report* report) {
  return report ? report->report.columns.size() : 0;
}

const char* urnflow_report_column_name(const urnflow_report* report, size_t column) {
  if (!report || column >= report->report.columns.size()) return nullptr;
  return report->report.columns[column].c_str();
}

const char* urnflow_report_cell(const urnflow_report* report, size_t row, size_t column) {
  if (!report || row >= report->report.rows.size() ||
      column >= report->report.rows[row].size()) {
    return nullptr;
  }
  return report->report.rows[row][column].c_str();
}

const char* urnflow_report_get(const urnflow_report* report, size_t row,
                               const char* column_name) {
  if (!report || !column_name) return nullptr;
  for (size_t c = 0; c < report->report.columns.size(); ++c) {
    if (report->report.columns[c] == column_name) {
      return urnflow_report_cell(report, row, c);
    }
  }
  return nullptr;
}

void urnflow_report_free(urnflow_report* report) { delete report; }

}  // extern "C"
