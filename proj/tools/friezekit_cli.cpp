#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "friezekit/report.hpp"
#include "friezekit/rng.hpp"

using namespace friezekit;

namespace {

struct FamilyArgs {
  std::string family;
  int N = 0;
  int p = 0;
  int q = 0;
};

void add_family_options(CLI::App* app, FamilyArgs& f) {
  app->add_option("--family", f.family, "A, D, E6, E7, E8 (D5, A(1,2) shorthands accepted)")->required();
  app->add_option("--N", f.N, "D family size");
  app->add_option("--p", f.p, "A family parameter p");
  app->add_option("--q", f.q, "A family parameter q");
}

FamilySpec family_of(const FamilyArgs& a) {
  std::string k = a.family;
  FamilySpec f;
  if (k.size() > 1 && k[0] == 'D' && std::isdigit(static_cast<unsigned char>(k[1]))) {
    f = FamilySpec::d(std::stoi(k.substr(1)));
  } else if (k.rfind("A(", 0) == 0) {
    int p = 0, q = 0;
    char close = 0;
    std::istringstream in(k.substr(2));
    char comma = 0;
    if (!(in >> p >> comma >> q >> close) || comma != ',' || close != ')') throw UsageError("cannot parse " + k);
    f = FamilySpec::a(p, q);
  } else {
    switch (parse_family(k)) {
      case Family::A:
        f = FamilySpec::a(a.p, a.q);
        break;
      case Family::D:
        f = FamilySpec::d(a.N);
        break;
      case Family::E6:
        f = FamilySpec::e6();
        break;
      case Family::E7:
        f = FamilySpec::e7();
        break;
      case Family::E8:
        f = FamilySpec::e8();
        break;
    }
  }
  f.validate();
  return f;
}

Mode mode_of(const std::string& m) {
  if (m == "specialized") return Mode::Specialized;
  if (m == "symbolic") return Mode::Symbolic;
  throw UsageError("unknown mode '" + m + "' (expected specialized, symbolic)");
}

std::string extension(Format f) { return f == Format::Json ? ".json" : f == Format::Csv ? ".csv" : ".txt"; }

// Explicit path wins; otherwise FRIEZEKIT_OUTPUT_DIR/<stem><ext>; otherwise stdout.
std::string output_path(const std::string& explicit_path, const std::string& stem, Format f) {
  if (!explicit_path.empty()) return explicit_path;
  const char* dir = std::getenv("FRIEZEKIT_OUTPUT_DIR");
  if (!dir || !*dir) return "";
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / (stem + extension(f))).string();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  std::cerr << "wrote " << path << "\n";
}

std::string file_stem(const std::string& what, const FamilySpec& f) {
  std::string s = what + "-" + f.name();
  for (char& c : s)
    if (c == '(' || c == ')' || c == ',') c = '_';
  return s;
}

std::vector<Rat> parse_point(const std::string& text) {
  std::vector<Rat> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(parse_rat(item));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frieze sequences of affine quivers: periodic quantities, linear relations and integrable reductions"};
  app.require_subcommand(1);

  FamilyArgs fam;
  std::string mode = "specialized";
  std::string format = "json";
  std::string output;
  RunConfig cfg;
  std::string checks = "all";

  auto* verify = app.add_subcommand("verify", "run relation, reduction and Poisson checks");
  add_family_options(verify, fam);
  verify->add_option("--mode", mode, "specialized or symbolic")->capture_default_str();
  verify->add_option("--seeds", cfg.seeds, "random rational trials")->capture_default_str();
  verify->add_option("--rng-seed", cfg.rng_seed, "run seed")->capture_default_str();
  verify->add_option("--n-max", cfg.n_max, "table depth (0: derived from the checks)")->capture_default_str();
  verify->add_option("--max-instances", cfg.max_instances, "cap on tested n per claim and table (0: all)");
  verify->add_option("--checks", checks, "comma-separated ids, id prefixes or groups, or 'all'")->capture_default_str();
  verify->add_option("--term-budget", cfg.term_budget, "symbolic term budget")->capture_default_str();
  verify->add_option("--threads", cfg.threads, "worker threads (0: hardware)");
  verify->add_option("--format", format, "json, csv or text")->capture_default_str();
  verify->add_option("--output", output, "report file (default: stdout or $FRIEZEKIT_OUTPUT_DIR)");

  TableOptions topt;
  auto* tables = app.add_subcommand("tables", "compute the b, period and (a, p) tables");
  tables->add_option("--trials", topt.trials, "random trials per instance")->capture_default_str();
  tables->add_option("--rng-seed", topt.rng_seed, "run seed")->capture_default_str();
  tables->add_option("--format", format, "text, csv or json");
  tables->add_option("--output", output, "output file");

  int n_max = 10;
  std::string init;
  std::uint64_t seed = 0;
  std::string quiver_file;
  auto* frieze = app.add_subcommand("frieze", "dump a frieze table");
  add_family_options(frieze, fam);
  frieze->add_option("--mode", mode, "specialized or symbolic")->capture_default_str();
  frieze->add_option("--n-max", n_max, "last column")->capture_default_str();
  frieze->add_option("--init", init, "comma-separated initial values (default: all ones)");
  frieze->add_option("--seed", seed, "draw initial values from this seed instead");
  frieze->add_option("--quiver", quiver_file, "quiver JSON file overriding the built-in family quiver");
  frieze->add_option("--format", format, "json, csv or text");
  frieze->add_option("--output", output, "output file");

  auto* reduce = app.add_subcommand("reduce", "dump the reduced system");
  add_family_options(reduce, fam);
  reduce->add_option("--format", format, "json, csv or text");
  reduce->add_option("--output", output, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      cfg.family = family_of(fam);
      cfg.mode = mode_of(mode);
      cfg.format = parse_format(format);
      cfg.checks.clear();
      std::stringstream in(checks);
      std::string item;
      while (std::getline(in, item, ','))
        if (!item.empty()) cfg.checks.push_back(item);
      const VerifyResult r = run_verify(cfg);
      emit(r.rendered, output_path(output, file_stem("verify", cfg.family), cfg.format));
      return r.exit_code;
    }
    if (*tables) {
      const Format f = tables->count("--format") ? parse_format(format) : Format::Text;
      emit(render_tables(emit_tables(topt), f), output_path(output, "tables", f));
      return 0;
    }
    if (*frieze) {
      const FamilySpec f = family_of(fam);
      const Quiver q = quiver_file.empty() ? build_affine_quiver(f) : [&] {
        std::ifstream in(quiver_file);
        if (!in) throw UsageError("cannot read " + quiver_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return quiver_from_json(ss.str());
      }();
      const Format fmt = parse_format(format);
      const std::string path = output_path(output, file_stem("frieze", f), fmt);
      if (mode_of(mode) == Mode::Symbolic) {
        emit(dump_frieze(frieze_symbolic(q, n_max), fmt), path);
      } else {
        std::vector<Rat> x;
        if (!init.empty()) {
          x = parse_point(init);
        } else if (frieze->count("--seed")) {
          x = Rng(seed).rationals(static_cast<std::size_t>(q.size()));
        } else {
          x.assign(static_cast<std::size_t>(q.size()), Rat(1));
        }
        emit(dump_frieze(frieze_specialized(q, x, n_max), fmt), path);
      }
      return 0;
    }
    if (*reduce) {
      const FamilySpec f = family_of(fam);
      const Format fmt = parse_format(format);
      emit(dump_reduction(build_reduction(build_affine_quiver(f)), fmt), output_path(output, file_stem("reduce", f), fmt));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
