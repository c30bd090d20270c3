#include "friezekit/report.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace friezekit {

using ojson = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw UsageError("unknown format '" + name + "' (expected json, csv, text)");
}

std::string to_string(Format f) {
  switch (f) {
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
    case Format::Text:
      return "text";
  }
  return "json";
}

namespace {

std::vector<std::string> filters_of(const RunConfig& cfg) {
  std::vector<std::string> f;
  for (const auto& c : cfg.checks)
    if (!c.empty() && c != "all") f.push_back(c);
  return f;
}

bool selected(const std::string& id, const std::string& group, const std::string& fam,
              const std::vector<std::string>& filters) {
  if (filters.empty()) return true;
  return std::any_of(filters.begin(), filters.end(),
                     [&](const std::string& f) { return filter_matches(id, group, fam, f); });
}

// A producer runs when its stem or group is selected, or when a filter names
// something below the stem.
bool wanted(const std::string& stem, const std::string& group, const std::string& fam,
            const std::vector<std::string>& filters) {
  if (selected(stem, group, fam, filters)) return true;
  const std::string local = stem.substr(fam.size() + 1);
  return std::any_of(filters.begin(), filters.end(),
                     [&](const std::string& f) { return f.rfind(local, 0) == 0 || f.rfind(stem, 0) == 0; });
}

CheckReport structural(const FamilySpec& fam, const std::string& id, const std::string& group, bool ok,
                       const std::string& citation) {
  CheckReport r;
  r.id = fam.name() + "." + id;
  r.family = fam.name();
  r.group = group;
  r.mode = Mode::Specialized;
  r.trials = 0;
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  r.citation = citation;
  return r;
}

std::vector<CheckReport> reduction_reports(const RunConfig& cfg, const std::vector<std::string>& filters) {
  std::vector<CheckReport> out;
  const FamilySpec& fam = cfg.family;
  const std::string F = fam.name();
  const BatteryOptions opt{cfg.seeds, cfg.rng_seed, cfg.threads};
  const Quiver q = build_affine_quiver(fam);
  auto want = [&](const std::string& stem, const std::string& group) { return wanted(F + "." + stem, group, F, filters); };
  auto append = [&](std::vector<CheckReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };

  if (want("presymplectic", "reduction")) out.push_back(presymplectic_check(q, opt));
  if (!reduction_supported(fam)) return out;
  const ReducedSystem rs = build_reduction(q);
  if (want("reduction", "reduction")) {
    out.push_back(structural(fam, "reduction.block-identity", "reduction", block_identity_holds(rs),
                             "A^-T B A^-1 = [[Bhat, 0], [0, 0]] with Bhat invertible"));
    out.push_back(structural(fam, "reduction.printed-C", "reduction", matches_printed_c(rs),
                             "C = Bhat^-1 equals the printed Poisson matrix"));
    out.push_back(commuting_square_check(rs, opt));
    out.push_back(generic_step_check(rs, opt));
  }
  if (want("formula", "reduction")) append(formula_checks(rs, opt));
  if (want("bracket", "poisson")) append(bracket_checks(rs, opt));
  if (want("scaling", "scaling"))
    for (const auto& c : printed_scaling_claims(rs)) out.push_back(scaling_invariance_check(rs, c, opt));
  if (want("integrability", "integrability")) append(integrability_battery(rs, opt));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_field(cells[i]);
  return s + "\n";
}

std::string window_text(const CheckReport& r) {
  if (r.n_hi < r.n_lo) return "-";
  return std::to_string(r.n_lo) + ".." + std::to_string(r.n_hi);
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::map<Verdict, int> tally(const std::vector<CheckReport>& reports) {
  std::map<Verdict, int> t{{Verdict::Pass, 0}, {Verdict::Fail, 0}, {Verdict::Inconclusive, 0}, {Verdict::Evidence, 0}};
  for (const auto& r : reports) ++t[r.verdict];
  return t;
}

ojson config_json(const RunConfig& cfg) {
  ojson c;
  c["family"] = cfg.family.name();
  c["mode"] = to_string(cfg.mode);
  c["seeds"] = cfg.seeds;
  c["rng_seed"] = cfg.rng_seed;
  c["n_max"] = cfg.n_max;
  c["checks"] = cfg.checks;
  return c;
}

std::string render_json(const std::vector<CheckReport>& reports, const RunConfig& cfg) {
  ojson doc;
  doc["config"] = config_json(cfg);
  ojson arr = ojson::array();
  for (const auto& r : reports) {
    ojson j;
    j["id"] = r.id;
    j["family"] = r.family;
    j["group"] = r.group;
    j["mode"] = to_string(r.mode);
    j["trials"] = r.trials;
    j["n_window"] = r.n_hi < r.n_lo ? ojson(nullptr) : ojson::array({r.n_lo, r.n_hi});
    j["verdict"] = to_string(r.verdict);
    if (r.witness_seed || r.witness_n) {
      ojson w = ojson::object();
      if (r.witness_seed) w["seed"] = *r.witness_seed;
      if (r.witness_n) w["n"] = *r.witness_n;
      j["witness"] = w;
    }
    j["citation"] = r.citation;
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(j);
  }
  doc["reports"] = arr;
  const auto t = tally(reports);
  doc["summary"] = {{"PASS", t.at(Verdict::Pass)},
                    {"FAIL", t.at(Verdict::Fail)},
                    {"INCONCLUSIVE", t.at(Verdict::Inconclusive)},
                    {"EVIDENCE", t.at(Verdict::Evidence)},
                    {"exit_status", exit_status(reports)}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const std::vector<CheckReport>& reports) {
  std::string s = csv_line({"id", "family", "group", "mode", "trials", "n_lo", "n_hi", "verdict", "witness_seed",
                            "witness_n", "citation", "note"});
  for (const auto& r : reports) {
    const bool win = r.n_hi >= r.n_lo;
    s += csv_line({r.id, r.family, r.group, to_string(r.mode), std::to_string(r.trials),
                   win ? std::to_string(r.n_lo) : "", win ? std::to_string(r.n_hi) : "", to_string(r.verdict),
                   r.witness_seed ? std::to_string(*r.witness_seed) : "",
                   r.witness_n ? std::to_string(*r.witness_n) : "", r.citation, r.note});
  }
  return s;
}

std::string render_text(const std::vector<CheckReport>& reports, const RunConfig& cfg) {
  std::ostringstream o;
  o << "family " << cfg.family.name() << ", mode " << to_string(cfg.mode) << ", seeds " << cfg.seeds << ", rng seed "
    << cfg.rng_seed << ", n_max " << (cfg.n_max > 0 ? std::to_string(cfg.n_max) : std::string("auto")) << "\n";
  std::size_t w = 0;
  for (const auto& r : reports) w = std::max(w, r.id.size());
  for (const auto& r : reports) {
    o << pad(to_string(r.verdict), 13) << pad(r.id, w + 2) << pad("n " + window_text(r), 12)
      << pad(std::to_string(r.trials) + " trials", 11) << "| " << r.citation;
    if (r.witness_seed || r.witness_n) {
      o << " | witness";
      if (r.witness_seed) o << " seed=" << *r.witness_seed;
      if (r.witness_n) o << " n=" << *r.witness_n;
    }
    if (!r.note.empty()) o << " | " << r.note;
    o << "\n";
  }
  const auto t = tally(reports);
  o << "summary: " << t.at(Verdict::Pass) << " PASS, " << t.at(Verdict::Fail) << " FAIL, "
    << t.at(Verdict::Inconclusive) << " INCONCLUSIVE, " << t.at(Verdict::Evidence) << " EVIDENCE\n";
  if (t.at(Verdict::Evidence) > 0) o << "EVIDENCE means no counterexample was found; it is not a proof.\n";
  return o.str();
}

}  // namespace

int required_depth(const RunConfig& cfg) {
  const Registry r = build_registry(cfg.family);
  int d = 0;
  for (const auto& c : select_claims(r, filters_of(cfg))) d = std::max(d, claim_min_depth(c, r));
  return d;
}

void validate(const RunConfig& cfg) {
  cfg.family.validate();
  if (cfg.seeds < 1) throw UsageError("seeds must be at least 1");
  if (cfg.n_max < 0) throw UsageError("n_max must be nonnegative");
  if (cfg.n_max > 0) {
    const int need = required_depth(cfg);
    if (cfg.n_max < need)
      throw UsageError("n_max " + std::to_string(cfg.n_max) + " is below the depth " + std::to_string(need) +
                       " the selected checks need; raise --n-max or narrow --checks");
  }
}

std::vector<CheckReport> run_checks(const RunConfig& cfg) {
  validate(cfg);
  const auto filters = filters_of(cfg);
  const Registry r = build_registry(cfg.family);
  RunOptions opt;
  opt.mode = cfg.mode;
  opt.trials = cfg.seeds;
  opt.rng_seed = cfg.rng_seed;
  opt.n_max = cfg.n_max;
  opt.max_instances = cfg.max_instances;
  opt.term_budget = cfg.term_budget;
  opt.threads = cfg.threads;
  const std::vector<Claim> claims = select_claims(r, filters);
  std::vector<CheckReport> out;
  if (!claims.empty() || cfg.mode == Mode::Symbolic) out = run_claims(r, claims, opt);
  if (cfg.mode == Mode::Specialized)
    for (auto& rep : reduction_reports(cfg, filters))
      if (selected(rep.id, rep.group, rep.family, filters)) out.push_back(std::move(rep));
  if (out.empty()) throw UsageError("no check matches the given --checks filters");
  return out;
}

int exit_status(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (r.verdict == Verdict::Fail && !r.conjectural) return 1;
  return 0;
}

std::string render(const std::vector<CheckReport>& reports, Format f, const RunConfig& cfg) {
  switch (f) {
    case Format::Json:
      return render_json(reports, cfg);
    case Format::Csv:
      return render_csv(reports);
    case Format::Text:
      return render_text(reports, cfg);
  }
  return render_json(reports, cfg);
}

VerifyResult run_verify(const RunConfig& cfg) {
  VerifyResult v;
  v.reports = run_checks(cfg);
  v.rendered = render(v.reports, cfg.format, cfg);
  v.exit_code = exit_status(v.reports);
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.output);
    f << v.rendered;
  }
  return v;
}

// --- tables --------------------------------------------------------------------

std::vector<FamilySpec> table_instances() {
  std::vector<FamilySpec> v;
  for (int p = 1; p <= 5; ++p)
    for (int q = 1; p + q <= 6; ++q)
      if (std::gcd(p, q) == 1) v.push_back(FamilySpec::a(p, q));
  for (int n = 4; n <= 9; ++n) v.push_back(FamilySpec::d(n));
  v.push_back(FamilySpec::e6());
  v.push_back(FamilySpec::e7());
  v.push_back(FamilySpec::e8());
  return v;
}

namespace {

struct Measured {
  Registry registry;
  std::vector<CheckReport> reports;
};

Verdict combine_verdicts(const std::vector<Verdict>& vs) {
  if (vs.empty()) return Verdict::Inconclusive;
  if (std::count(vs.begin(), vs.end(), Verdict::Fail)) return Verdict::Fail;
  if (std::count(vs.begin(), vs.end(), Verdict::Inconclusive)) return Verdict::Inconclusive;
  if (std::count(vs.begin(), vs.end(), Verdict::Evidence) == static_cast<long>(vs.size())) return Verdict::Evidence;
  return Verdict::Pass;
}

std::vector<Verdict> verdicts_where(const Measured& m, const std::function<bool(const CheckReport&)>& pred) {
  std::vector<Verdict> v;
  for (const auto& r : m.reports)
    if (pred(r)) v.push_back(r.verdict);
  return v;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

}  // namespace

std::vector<Table> emit_tables(const TableOptions& opt) {
  std::map<std::string, Measured> runs;
  std::vector<FamilySpec> inst = table_instances();
  for (const auto& f : inst) {
    Measured m{build_registry(f), {}};
    std::vector<Claim> claims;
    for (const auto& c : m.registry.claims)
      if (c.group == "period" || c.group == "linear" || c.group == "atype" || c.group == "conjecture")
        claims.push_back(c);
    RunOptions ro;
    ro.trials = opt.trials;
    ro.rng_seed = opt.rng_seed;
    ro.threads = opt.threads;
    ro.n_max = default_depth(m.registry, claims, 12);
    m.reports = run_claims(m.registry, claims, ro);
    runs.emplace(f.name(), std::move(m));
  }
  auto pick = [&](const std::function<bool(const FamilySpec&)>& pred) {
    std::vector<const Measured*> v;
    for (const auto& f : inst)
      if (pred(f)) v.push_back(&runs.at(f.name()));
    return v;
  };
  auto is = [](Family fam) { return [fam](const FamilySpec& f) { return f.family == fam; }; };
  auto d_parity = [](int parity) {
    return [parity](const FamilySpec& f) { return f.family == Family::D && f.N % 2 == parity; };
  };

  std::vector<Table> out;

  // b values
  {
    Table t{"b-values", "Values of b in X_{n+2b} - K X_{n+b} + X_n = 0 at the extending vertices",
            {"quiver", "b", "measured", "verdict"}, {}};
    auto row = [&](const std::string& label, const std::string& claimed, const std::vector<const Measured*>& ms) {
      std::vector<std::string> cells;
      std::vector<Verdict> all;
      for (const Measured* m : ms) {
        auto v = verdicts_where(*m, [](const CheckReport& r) { return r.group == "linear"; });
        all.insert(all.end(), v.begin(), v.end());
        cells.push_back(m->registry.family.name() + ":" + std::to_string(m->registry.b));
      }
      t.rows.push_back({label, claimed, join(cells), to_string(combine_verdicts(all))});
    };
    row("A(p,q)", "lcm(p,q)", pick(is(Family::A)));
    row("D_N, N even", "N-2", pick(d_parity(0)));
    row("D_N, N odd", "2N-4", pick(d_parity(1)));
    row("E6", "6", pick(is(Family::E6)));
    row("E7", "12", pick(is(Family::E7)));
    row("E8", "30", pick(is(Family::E8)));
    out.push_back(std::move(t));
  }

  // periodic quantities
  {
    Table t{"periodic-quantities", "Periodic quantities of the frieze sequences",
            {"quiver", "period", "quantity", "measured", "verdict"}, {}};
    auto row = [&](const std::string& label, const std::string& claimed, const std::string& quantity,
                   const std::string& symbol, const std::vector<const Measured*>& ms) {
      std::vector<std::string> cells;
      std::vector<Verdict> all;
      for (const Measured* m : ms) {
        const std::string F = m->registry.family.name();
        for (const auto& q : m->registry.quantities) {
          if (q.symbol != symbol) continue;
          const std::string id = q.conjectural ? F + ".conjecture." + symbol : F + "." + symbol + ".period";
          auto v = verdicts_where(*m, [&](const CheckReport& r) { return r.id == id; });
          all.insert(all.end(), v.begin(), v.end());
          cells.push_back(F + ":" + std::to_string(q.period) + (q.conjectural ? "?" : ""));
        }
      }
      t.rows.push_back({label, claimed, quantity, join(cells), to_string(combine_verdicts(all))});
    };
    const auto A = pick(is(Family::A));
    const auto D = pick(is(Family::D));
    row("A(p,q)", "p", "J_n", "J", A);
    row("A(p,q)", "q", "Jt_n", "Jt", A);
    row("D_N", "N-2", "J_n", "J", D);
    row("D_N", "2", "X^1_n/X^2_n", "X1/X2", D);
    row("D_N", "2", "X^N_n/X^{N+1}_n", "XN/XN+1", D);
    const auto E6 = pick(is(Family::E6));
    row("E6", "3", "J_n", "J", E6);
    row("E6", "3", "Jt_n", "Jt", E6);
    row("E6", "2", "K_n", "K", E6);
    const auto E7 = pick(is(Family::E7));
    row("E7", "4", "J_n", "J", E7);
    row("E7", "3", "K_n", "K", E7);
    row("E7", "2", "Kt_n", "Ktilde", E7);
    const auto E8 = pick(is(Family::E8));
    row("E8", "5", "J_n", "J", E8);
    row("E8", "3", "K_n", "K", E8);
    row("E8", "2?", "Kt_n", "Ktilde", E8);
    out.push_back(std::move(t));
  }

  // (a, p) pairs
  {
    Table t{"a-p-values", "Values of a and p in X_{n+a+p} X_n = X_{n+a} X_{n+p} + gamma_n, gamma of period a",
            {"quiver", "a", "p", "measured", "verdict"}, {}};
    auto row = [&](const std::string& label, const std::string& a, const std::string& p,
                   const std::vector<const Measured*>& ms, std::size_t row_index) {
      std::vector<std::string> cells;
      std::vector<Verdict> all;
      for (const Measured* m : ms) {
        if (row_index >= m->registry.atype_rows.size()) continue;
        const ATypeRow& ar = m->registry.atype_rows[row_index];
        const std::string tag = "atype." + std::to_string(ar.a) + "-" + std::to_string(ar.p) + ".";
        auto v = verdicts_where(*m, [&](const CheckReport& r) {
          return contains(r.id, tag) || (!ar.conjectural && contains(r.id, ".atype.lambda."));
        });
        all.insert(all.end(), v.begin(), v.end());
        const std::string q = ar.conjectural ? "?" : "";
        cells.push_back(m->registry.family.name() + ":(" + std::to_string(ar.a) + q + "," + std::to_string(ar.p) + q +
                        ")");
      }
      t.rows.push_back({label, a, p, join(cells), to_string(combine_verdicts(all))});
    };
    row("D_N, N even", "1", "N-2", pick(d_parity(0)), 0);
    row("D_N, N odd", "1", "2N-4", pick(d_parity(1)), 0);
    row("E6", "3", "2", pick(is(Family::E6)), 0);
    row("E7", "4", "3", pick(is(Family::E7)), 0);
    const auto E8 = pick(is(Family::E8));
    row("E8", "6", "5", E8, 0);
    row("E8", "10", "3", E8, 1);
    row("E8", "15?", "2?", E8, 2);
    out.push_back(std::move(t));
  }
  return out;
}

std::string render_tables(const std::vector<Table>& tables, Format f) {
  std::ostringstream o;
  if (f == Format::Json) {
    ojson arr = ojson::array();
    for (const auto& t : tables) {
      ojson j;
      j["name"] = t.name;
      j["caption"] = t.caption;
      j["header"] = t.header;
      j["rows"] = t.rows;
      arr.push_back(j);
    }
    return arr.dump(2) + "\n";
  }
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const Table& t = tables[k];
    if (f == Format::Csv) {
      o << "# " << t.name << "\n" << csv_line(t.header);
      for (const auto& r : t.rows) o << csv_line(r);
      continue;
    }
    std::vector<std::size_t> w(t.header.size(), 0);
    for (std::size_t c = 0; c < w.size(); ++c) {
      w[c] = t.header[c].size();
      for (const auto& r : t.rows) w[c] = std::max(w[c], r[c].size());
    }
    o << (k ? "\n" : "") << t.caption << "\n";
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t c = 0; c < cells.size(); ++c) s += (c ? " | " : "") + pad(cells[c], c + 1 < cells.size() ? w[c] : 0);
      o << s << "\n";
    };
    line(t.header);
    std::vector<std::string> rule;
    for (std::size_t c = 0; c < w.size(); ++c) rule.push_back(std::string(w[c], '-'));
    line(rule);
    for (const auto& r : t.rows) line(r);
  }
  return o.str();
}

// --- dumps ---------------------------------------------------------------------

namespace {

template <class V, class Str>
std::string dump_columns(const FriezeTable<V>& t, Format f, Str str) {
  const auto& labels = t.quiver.labels;
  if (f == Format::Json) {
    ojson j;
    j["family"] = t.quiver.family.name();
    j["mode"] = to_string(t.mode);
    j["vertices"] = labels;
    j["order"] = t.plan.order;
    ojson cols = ojson::array();
    for (const auto& c : t.columns) {
      ojson col = ojson::array();
      for (const auto& v : c) col.push_back(str(v));
      cols.push_back(col);
    }
    j["columns"] = cols;
    return j.dump(2) + "\n";
  }
  std::vector<std::string> head{"n"};
  head.insert(head.end(), labels.begin(), labels.end());
  std::string s;
  if (f == Format::Csv) {
    s = csv_line(head);
    for (std::size_t n = 0; n < t.columns.size(); ++n) {
      std::vector<std::string> row{std::to_string(n)};
      for (const auto& v : t.columns[n]) row.push_back(str(v));
      s += csv_line(row);
    }
    return s;
  }
  for (std::size_t n = 0; n < t.columns.size(); ++n) {
    s += "n = " + std::to_string(n) + "\n";
    for (std::size_t k = 0; k < labels.size(); ++k) s += "  " + labels[k] + " = " + str(t.columns[n][k]) + "\n";
  }
  return s;
}

ojson matrix_json(const IntMatrix& m) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
    a.push_back(r);
  }
  return a;
}

ojson matrix_json(const RatMatrix& m) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    a.push_back(r);
  }
  return a;
}

}  // namespace

std::string dump_frieze(const FriezeTable<Rat>& t, Format f) {
  return dump_columns(t, f, [](const Rat& v) { return to_string(v); });
}

std::string dump_frieze(const FriezeTable<LaurentPoly>& t, Format f) {
  return dump_columns(t, f, [](const LaurentPoly& v) { return v.to_string(); });
}

std::string dump_reduction(const ReducedSystem& rs, Format f) {
  if (f == Format::Json) {
    ojson j;
    j["family"] = rs.family.name();
    j["vertices"] = rs.quiver.labels;
    j["ydefs"] = rs.ylabels;
    j["image"] = matrix_json(rs.image);
    j["kernel"] = matrix_json(rs.kernel);
    j["A"] = matrix_json(rs.a);
    j["Bhat"] = matrix_json(rs.bhat);
    j["C"] = matrix_json(rs.c);
    j["nonstandard_basis"] = rs.nonstandard_basis;
    j["printed_C_matches"] = matches_printed_c(rs);
    j["block_identity"] = block_identity_holds(rs);
    j["section_columns"] = rs.free_columns;
    return j.dump(2) + "\n";
  }
  if (f == Format::Csv) {
    std::string s = csv_line({"j", "y", "exponents"});
    for (std::size_t j = 0; j < rs.image.rows(); ++j) {
      std::string e;
      for (std::size_t i = 0; i < rs.image.cols(); ++i) e += (i ? " " : "") + rs.image(j, i).get_str();
      s += csv_line({std::to_string(j + 1), rs.ylabels[j], e});
    }
    return s;
  }
  std::ostringstream o;
  o << "family " << rs.family.name() << ", " << rs.dim() << " reduced coordinates, m = " << rs.m() << "\n";
  for (std::size_t j = 0; j < rs.ylabels.size(); ++j) o << "  y" << j + 1 << " = " << rs.ylabels[j] << "\n";
  o << "kernel basis: " << to_string(rs.kernel) << "\n";
  o << "Bhat = " << to_string(rs.bhat) << "\n";
  o << "C = " << to_string(rs.c) << "\n";
  o << "block identity: " << (block_identity_holds(rs) ? "holds" : "FAILS") << "\n";
  o << "printed C: " << (rs.nonstandard_basis ? "nonstandard basis, not compared" : matches_printed_c(rs) ? "reproduced" : "DIFFERS")
    << "\n";
  return o.str();
}

}  // namespace friezekit
