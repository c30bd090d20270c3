#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "friezekit/frieze.hpp"
#include "friezekit/reduction.hpp"
#include "friezekit/relations.hpp"

namespace friezekit {

enum class Format { Json, Csv, Text };
Format parse_format(const std::string& name);
std::string to_string(Format f);

struct RunConfig {
  FamilySpec family;
  Mode mode = Mode::Specialized;
  int seeds = 20;
  std::uint64_t rng_seed = 1;
  int n_max = 0;  // 0: derived from the selected checks
  int max_instances = 0;
  std::vector<std::string> checks{"all"};
  std::string output;  // empty: caller prints
  Format format = Format::Json;
  std::size_t term_budget = FriezeOptions{}.term_budget;
  unsigned threads = 0;
};

// Largest single-instance depth among the selected registry claims.
int required_depth(const RunConfig& cfg);
// Throws UsageError on a bad family, seed count or an n_max below required_depth.
void validate(const RunConfig& cfg);

// Registry claims, then (specialized mode, supported families) the reduction
// and Poisson checks, all filtered by cfg.checks.
std::vector<CheckReport> run_checks(const RunConfig& cfg);

// 0 iff no FAIL outside conjecture probes.
int exit_status(const std::vector<CheckReport>& reports);

std::string render(const std::vector<CheckReport>& reports, Format f, const RunConfig& cfg);

struct VerifyResult {
  std::vector<CheckReport> reports;
  std::string rendered;
  int exit_code = 0;
};

// Validates, runs, renders and writes cfg.output when it is set.
VerifyResult run_verify(const RunConfig& cfg);

// --- tables --------------------------------------------------------------------

struct Table {
  std::string name;
  std::string caption;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct TableOptions {
  int trials = 3;
  std::uint64_t rng_seed = 1;
  unsigned threads = 0;
};

// Instances every table row is measured on.
std::vector<FamilySpec> table_instances();

// b values, periodic quantities, and (a, p) pairs: claimed values from the
// registry next to what a specialized run confirms. "?" marks conjectures.
std::vector<Table> emit_tables(const TableOptions& opt = {});
std::string render_tables(const std::vector<Table>& tables, Format f);

// --- dumps ---------------------------------------------------------------------

std::string dump_frieze(const FriezeTable<Rat>& t, Format f);
std::string dump_frieze(const FriezeTable<LaurentPoly>& t, Format f);
std::string dump_reduction(const ReducedSystem& rs, Format f);

}  // namespace friezekit
