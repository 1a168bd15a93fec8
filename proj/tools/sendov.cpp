// sendov: evaluate specs, verify the embedded tables, tabulate bounds and run
// searches. Exit codes: 0 success, 1 a check failed, 2 usage or data error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sendov/dataset.hpp"
#include "sendov/errors.hpp"
#include "sendov/families.hpp"
#include "sendov/io.hpp"
#include "sendov/metrics.hpp"
#include "sendov/roots.hpp"
#include "sendov/search.hpp"
#include "sendov/verify.hpp"

namespace {

using namespace sendov;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::string precision;
  std::uint64_t seed = 0;
  bool seed_given = false;

  Precision resolved() const {
    if (precision == "double") return Precision::binary64;
    if (precision == "dd") return Precision::double_double;
    return Precision::automatic;
  }
};

std::string fmt(double x, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Writes to --out when given, else stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << text;
}

std::string describe(const MembershipReport& m) {
  std::string s = m.is_member ? "yes" : "no";
  s += " (max |z| = " + fmt(m.max_modulus, 15) + ", margin " + fmt(m.margin, 3);
  if (m.disk_count) s += ", disk count " + std::to_string(*m.disk_count);
  s += ", " + std::string(to_string(m.method)) + ", " + to_string(m.precision) + ")";
  return s;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string file;
  double tol = kDefaultMembershipTol;
};

int cmd_eval(const EvalArgs& a, const Globals& g) {
  const PolySpec spec = spec_from_json(read_json(a.file));
  const double beta = spec.beta_value();
  const DoubleDouble d = dist_to_nearest_critical_dd(spec);
  std::optional<CValue> cv;
  if (beta > 0.0 && beta < 1.0) cv = c_value(spec);
  RootOptions ro;
  ro.precision = g.resolved();
  const MembershipReport m = check_membership(spec, a.tol, ro);

  std::vector<std::string> notes;
  const double half = (1.0 + beta) / 2.0;
  if (to_double(d) > half) notes.push_back("d > (1+beta)/2 = " + fmt(half, 15));

  if (g.json) {
    json j = {{"degree", spec.degree()},
              {"beta", real_to_json(spec.beta())},
              {"d", to_double(d)},
              {"c", cv ? json(cv->c) : json(nullptr)},
              {"membership", membership_to_json(m)},
              {"notes", notes}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "degree  " << spec.degree() << "\n"
              << "beta    " << to_decimal(spec.beta()) << "\n"
              << "d       " << fmt(to_double(d)) << "\n"
              << "c       " << (cv ? fmt(cv->c) : std::string("undefined (beta at an endpoint)")) << "\n"
              << "member  " << describe(m) << "\n";
    for (const std::string& n : notes) std::cout << "note    " << n << "\n";
  }
  return m.is_member ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- verify-tables

struct VerifyArgs {
  VerifyOptions options;
  bool deep = false;
  std::string dataset;
};

json check_to_json(const RecordCheck& c) {
  json j = {{"table_id", c.table_id},
            {"n", c.n},
            {"d_recomputed", c.d},
            {"c_recomputed", c.c},
            {"r_match", c.r_match},
            {"c_match", c.c_match},
            {"passed", c.passed()},
            {"warn_only", c.warn_only}};
  if (c.derived) {
    j["derived_recomputed"] = *c.derived;
    j["derived_match"] = c.derived_match;
  }
  if (c.membership) {
    j["membership"] = membership_to_json(*c.membership);
  } else if (!c.error.empty()) {
    j["membership"] = {{"error", c.error}};
  } else {
    j["membership"] = {{"skipped", c.skipped}};
  }
  return j;
}

int cmd_verify_tables(VerifyArgs a, const Globals& g) {
  std::vector<ExtremalRecord> records;
  try {
    records = a.dataset.empty() ? embedded_dataset() : parse_dataset(read_file(a.dataset));
  } catch (const DatasetError& e) {
    throw UsageError(e.what());
  }
  a.options.precision = g.resolved();
  if (a.deep) a.options.membership_cap = 0;

  auto line = [](const RecordCheck& c) {
    std::string status = c.passed() ? "ok  " : (c.warn_only ? "WARN" : "FAIL");
    std::string s = status + " table " + std::to_string(c.table_id) + " n=" + std::to_string(c.n) + "  d " +
                    fmt(c.d, 15) + (c.r_match ? "" : " (r mismatch)") + "  c " + fmt(c.c, 15) +
                    (c.c_match ? "" : " (c mismatch)");
    if (c.derived) s += "  derived " + fmt(*c.derived, 7) + (c.derived_match ? "" : " (mismatch)");
    if (c.membership) {
      s += "  member " + std::string(c.membership->is_member ? "yes" : "no");
    } else if (!c.error.empty()) {
      s += "  membership error: " + c.error;
    } else {
      s += "  membership skipped";
    }
    return s;
  };
  const VerificationReport rep = verify_tables(records, a.options, [&](const RecordCheck& c) {
    if (!g.json) std::cout << line(c) << std::endl;
  });

  if (g.json) {
    json rows = json::array();
    for (const RecordCheck& c : rep.records) rows.push_back(check_to_json(c));
    json j = {{"records", rows},
              {"summary",
               {{"checked", rep.records.size()},
                {"passed", rep.passed},
                {"failed", rep.failed},
                {"warnings", rep.warnings},
                {"membership_checked", rep.membership_checked},
                {"membership_skipped", rep.membership_skipped}}}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rep.records.size() << " rows: " << rep.passed << " passed, " << rep.failed << " failed, "
              << rep.warnings << " warnings; membership run on " << rep.membership_checked << ", skipped on "
              << rep.membership_skipped << "\n";
  }
  return rep.ok() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  int n = 0;
  std::string grid = "0:0.01:1";
  std::string out;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad beta grid '" + text + "': expected lo:step:hi");
    }
  }
  if (parts.size() != 3) throw UsageError("bad beta grid '" + text + "': expected lo:step:hi");
  const double lo = parts[0], step = parts[1], hi = parts[2];
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi && step > 0.0)) {
    throw UsageError("beta grid needs 0 <= lo <= hi <= 1 and step > 0");
  }
  const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
  if (count > 1e6) throw UsageError("beta grid has more than 10^6 points");
  std::vector<double> grid;
  for (int i = 0; i < static_cast<int>(count); ++i) grid.push_back(std::min(hi, lo + i * step));
  return grid;
}

int cmd_bound(const BoundArgs& a) {
  if (a.n < 2) throw UsageError("--n must be >= 2");
  const std::vector<double> grid = parse_grid(a.grid);
  std::vector<const BoundEntry*> columns;
  for (const BoundEntry& e : bound_catalog()) {
    for (double b : grid) {
      if (e.applies(a.n, b)) {
        columns.push_back(&e);
        break;
      }
    }
  }
  std::string csv = "beta";
  for (const BoundEntry* e : columns) csv += "," + e->name;
  csv += "\r\n";
  for (double b : grid) {
    csv += fmt(b);
    for (const BoundEntry* e : columns) {
      csv += ",";
      if (e->applies(a.n, b)) {
        const double v = e->value_at(a.n, b);
        if (std::isfinite(v)) csv += fmt(v);
      }
    }
    csv += "\r\n";
  }
  emit(a.out, csv);
  return kOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string file;
  std::optional<int> starts;
  std::optional<int> budget;
  int threads = 0;
  std::string out;
};

int cmd_search(const SearchArgs& a, const Globals& g) {
  const json doc = read_json(a.file);
  const std::string mode = doc.value("mode", std::string("multistart"));
  const int k = a.starts.value_or(doc.value("starts", 20));
  if (k < 1) throw UsageError("--starts must be >= 1");
  SearchOptions options;
  options.budget = a.budget.value_or(doc.value("budget", options.budget));
  if (options.budget < 1) throw UsageError("--budget must be >= 1");
  options.threads = a.threads;
  const std::uint64_t seed = g.seed_given ? g.seed : doc.value("seed", std::uint64_t{0});

  json result;
  if (mode == "multistart") {
    const SearchProblem problem = problem_from_json(doc);
    result = result_to_json(multistart(problem, k, seed, options));
  } else if (mode == "pattern_scan") {
    SearchProblem base;
    if (doc.contains("beta") || doc.contains("normalization") || doc.contains("penalty_weight")) {
      json shaped = doc;
      shaped["pattern"] = json::array({{{"m", doc.at("n").get<int>() - 1}, {"paired", false}}});
      base = problem_from_json(shaped);
    }
    const std::vector<SearchResult> scan =
        pattern_scan(doc.at("n").get<int>(), doc.at("max_distinct").get<int>(), k, seed, options, base);
    if (scan.empty()) throw NoFeasibleResult("no pattern produced a member of the class");
    json list = json::array();
    for (const SearchResult& r : scan) list.push_back(result_to_json(r));
    result = {{"best", list.front()}, {"results", list}};
  } else {
    throw UsageError("search mode must be 'multistart' or 'pattern_scan'");
  }
  emit(a.out, result.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- families

struct FamilyArgs {
  std::string name;
  int n = 0;
  double beta = 0.5;
  double zeta_re = 0.0;
  double zeta_im = 0.0;
  double t = 0.0;
  double angle = 0.0;
  std::vector<double> offsets;
  std::vector<double> others;
  std::string out;
};

int cmd_families(const FamilyArgs& a) {
  auto need_n = [&] {
    if (a.n < 2) throw UsageError("--n must be >= 2 for " + a.name);
  };
  FamilyDescriptor d{Family::brs_star, {}, brs_star(2)};
  switch (family_from_string(a.name)) {
    case Family::brs_star:
      need_n();
      d = describe_brs_star(a.n);
      break;
    case Family::circle_one_crit:
      need_n();
      d = describe_circle_one_crit(a.n, a.beta, {a.zeta_re, a.zeta_im});
      break;
    case Family::line_rooted:
      d = describe_line_rooted(a.beta, a.offsets, a.angle);
      break;
    case Family::real_quartic: {
      if (a.others.size() != 6) throw UsageError("real_quartic needs --others re0 im0 re1 im1 re2 im2");
      d = describe_real_quartic(a.beta, {std::complex<double>(a.others[0], a.others[1]),
                                         std::complex<double>(a.others[2], a.others[3]),
                                         std::complex<double>(a.others[4], a.others[5])});
      break;
    }
    case Family::phelps_rodriguez:
      need_n();
      d = describe_phelps_rodriguez(a.n, a.t);
      break;
  }
  emit(a.out, descriptor_to_json(d).dump(2) + "\n");
  return kOk;
}

// Errors that mean the input itself is unusable.
bool is_input_error(const Error& e) {
  return dynamic_cast<const InvalidSpec*>(&e) || dynamic_cast<const DatasetError*>(&e) ||
         dynamic_cast<const RootOutsideDisk*>(&e) || dynamic_cast<const NotRealPolynomial*>(&e) ||
         dynamic_cast<const DegreeTooLarge*>(&e) || dynamic_cast<const EndpointUndefined*>(&e);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal polynomials for the quadratic refinement of Sendov's conjecture"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--precision", g.precision, "Arithmetic for roots and counts")
      ->check(CLI::IsMember({"double", "dd"}));
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed for searches");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Degree, d, c and membership of a spec file");
  eval_cmd->add_option("spec", eval.file, "Spec JSON file, - for stdin")->required();
  eval_cmd->add_option("--tol", eval.tol, "Membership tolerance");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-tables", "Recompute every row of the embedded tables");
  verify_cmd->add_option("--max-n", verify.options.max_n, "Only rows with n <= this; 0 for all");
  verify_cmd->add_option("--membership-cap", verify.options.membership_cap,
                         "Membership only for n <= this; 0 for all");
  verify_cmd->add_flag("--deep", verify.deep, "Membership on every row");
  verify_cmd->add_option("--tol-r", verify.options.tol_r, "Relative tolerance on r");
  verify_cmd->add_option("--tol-c", verify.options.tol_c, "Relative tolerance on c");
  verify_cmd->add_option("--dataset", verify.dataset, "Dataset file instead of the embedded one");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "CSV of every applicable bound over a beta grid");
  bound_cmd->add_option("--n", bound.n, "Degree")->required();
  bound_cmd->add_option("--beta-grid", bound.grid, "lo:step:hi");
  bound_cmd->add_option("--out", bound.out, "Output file");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Multistart search or pattern scan from a problem file");
  search_cmd->add_option("problem", search.file, "Problem JSON file")->required();
  search_cmd->add_option("--starts", search.starts, "Random starts per pattern");
  search_cmd->add_option("--budget", search.budget, "Evaluations per local search");
  search_cmd->add_option("--threads", search.threads, "Worker threads, 0 for all cores");
  search_cmd->add_option("--out", search.out, "Output file");

  FamilyArgs fam;
  auto* fam_cmd = app.add_subcommand("families", "Write a family member as a spec file");
  fam_cmd->add_option("family", fam.name, "brs_star, circle_one_crit, line_rooted, real_quartic, phelps_rodriguez")
      ->required();
  fam_cmd->add_option("--n", fam.n, "Degree");
  fam_cmd->add_option("--beta", fam.beta, "beta");
  fam_cmd->add_option("--zeta-re", fam.zeta_re, "Critical point, real part");
  fam_cmd->add_option("--zeta-im", fam.zeta_im, "Critical point, imaginary part");
  fam_cmd->add_option("--t", fam.t, "Rotation parameter");
  fam_cmd->add_option("--angle", fam.angle, "Line direction");
  fam_cmd->add_option("--offsets", fam.offsets, "Line offsets t_k");
  fam_cmd->add_option("--others", fam.others, "Other quartic roots as re im pairs");
  fam_cmd->add_option("--out", fam.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*eval_cmd) return cmd_eval(eval, g);
    if (*verify_cmd) return cmd_verify_tables(verify, g);
    if (*bound_cmd) return cmd_bound(bound);
    if (*search_cmd) return cmd_search(search, g);
    if (*fam_cmd) return cmd_families(fam);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    if (is_input_error(e)) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
