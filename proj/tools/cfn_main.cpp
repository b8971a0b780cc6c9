// Command-line front end: catalog inspection, c-function evaluation on
// lambda grids, pole-sheet listing, and one-command verification suites.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfn/catalog.hpp"
#include "cfn/cfunc.hpp"
#include "cfn/verify.hpp"

namespace {

using cfn::cplx;
using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coords_str(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + fmt17(v[i]);
  return s + ")";
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw cfn::BadGrid("cannot parse number '" + tok + "'");
    }
    while (used < tok.size() &&
           (tok[used] == ' ' || tok[used] == '\t'))
      ++used;
    if (used != tok.size())
      throw cfn::BadGrid("trailing junk in number '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[int(i)] = v[i];
  return out;
}

// "re0,re1[;im0,im1]" -> (re, im), both of length dim.
std::pair<Eigen::VectorXd, Eigen::VectorXd> parse_point(
    const std::string& text, int dim) {
  std::size_t semi = text.find(';');
  Eigen::VectorXd re = to_vec(parse_list(text.substr(0, semi)));
  Eigen::VectorXd im = Eigen::VectorXd::Zero(dim);
  if (semi != std::string::npos)
    im = to_vec(parse_list(text.substr(semi + 1)));
  if (re.size() != dim || im.size() != dim)
    throw cfn::BadGrid("point '" + text + "' needs " + std::to_string(dim) +
                       " coordinates");
  return {re, im};
}

json entry_to_json(const cfn::LoadedEntry& e) {
  const cfn::RootSystem& rs = e.system;
  json j;
  j["name"] = e.meta.name;
  j["cartan_type"] = cfn::to_string(e.meta.cartan_type);
  j["rank"] = e.meta.rank;
  j["mult"]["long"] = e.meta.mult.long_mult;
  if (e.meta.mult.short_mult) j["mult"]["short"] = *e.meta.mult.short_mult;
  j["x0"] = std::vector<double>(e.meta.x0.data(),
                                e.meta.x0.data() + e.meta.x0.size());
  j["realization"] = cfn::to_string(e.meta.realization);
  if (e.meta.dim_total) j["dim_total"] = *e.meta.dim_total;
  if (!e.meta.notes.empty()) j["notes"] = e.meta.notes;

  auto root_json = [&](int i) {
    const cfn::Root& root = rs.root(i);
    json r;
    r["coords"] = std::vector<double>(
        root.coords.data(), root.coords.data() + root.coords.size());
    r["multiplicity"] = root.multiplicity;
    r["compact"] = root.compact;
    return r;
  };
  for (int i = 0; i < rs.size(); ++i) j["roots"].push_back(root_json(i));
  j["positive"] = rs.positive();
  j["noncompact_positive"] = rs.noncompact_positive();
  j["compact_positive"] = rs.compact_positive();
  j["cascade"] = rs.gamma();
  j["basis"] = rs.basis();
  for (const cfn::ValidationCheck& c : e.report.checks) {
    json v;
    v["name"] = c.name;
    v["passed"] = c.passed;
    v["hard"] = c.hard;
    v["detail"] = c.detail;
    j["validation"]["checks"].push_back(v);
  }
  j["validation"]["note"] = e.report.note;
  j["validation"]["hard_failures"] = e.report.hard_failures();
  j["validation"]["ncc"] = e.report.is_ncc();
  return j;
}

void describe_text(const cfn::LoadedEntry& e) {
  const cfn::RootSystem& rs = e.system;
  std::cout << "name: " << e.meta.name << "\n";
  std::cout << "cartan_type: " << cfn::to_string(e.meta.cartan_type) << "\n";
  std::cout << "rank: " << e.meta.rank << "\n";
  std::cout << "mult.long: " << e.meta.mult.long_mult << "\n";
  if (e.meta.mult.short_mult)
    std::cout << "mult.short: " << *e.meta.mult.short_mult << "\n";
  std::cout << "x0: " << coords_str(e.meta.x0) << "\n";
  std::cout << "realization: " << cfn::to_string(e.meta.realization) << "\n";
  if (e.meta.dim_total) std::cout << "dim_total: " << *e.meta.dim_total << "\n";
  if (!e.meta.notes.empty()) std::cout << "notes: " << e.meta.notes << "\n";

  auto root_line = [&](int i) {
    const cfn::Root& root = rs.root(i);
    std::cout << "  " << coords_str(root.coords)
              << (root.compact ? "  compact" : "  noncompact") << "  mult "
              << root.multiplicity << "\n";
  };
  std::cout << "roots: " << rs.size() << " total\n";
  std::cout << "positive system (" << rs.positive().size() << "):\n";
  for (int i : rs.positive()) root_line(i);
  std::cout << "noncompact positive (" << rs.noncompact_positive().size()
            << "):\n";
  for (int i : rs.noncompact_positive()) root_line(i);
  std::cout << "compact positive (" << rs.compact_positive().size() << "):\n";
  for (int i : rs.compact_positive()) root_line(i);
  std::cout << "cascade (" << rs.gamma().size() << "):\n";
  for (int i : rs.gamma()) root_line(i);
  std::cout << "simple basis (" << rs.basis().size() << "):\n";
  for (int i : rs.basis()) root_line(i);

  std::cout << "validation:\n";
  for (const cfn::ValidationCheck& c : e.report.checks)
    std::cout << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name
              << (c.hard ? "" : " (advisory)")
              << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  if (!e.report.note.empty()) std::cout << "  note: " << e.report.note << "\n";
  std::cout << "  ncc: " << (e.report.is_ncc() ? "yes" : "no") << "\n";
}

int run_catalog_list(const std::string& out) {
  std::vector<std::string> names = cfn::list_entries();
  if (out == "json") {
    std::cout << json(names).dump(2) << "\n";
  } else {
    for (const std::string& n : names) std::cout << n << "\n";
  }
  return 0;
}

int run_catalog_describe(const std::string& name, const std::string& out) {
  cfn::LoadedEntry e = cfn::load_entry(name);
  if (out == "json")
    std::cout << entry_to_json(e).dump(2) << "\n";
  else
    describe_text(e);
  return 0;
}

struct EvalArgs {
  std::string entry;
  std::string func = "c";
  std::string r_spec = "plus";
  std::vector<std::string> grid;
  bool line = false;
  std::string from, dir;
  double t0 = 0.0, t1 = 1.0, step = 0.0;
  bool on_gamma = false;
  std::string out = "csv";
};

std::vector<int> resolve_r_spec(const cfn::RootSystem& rs,
                                const std::string& spec) {
  if (spec == "plus") return rs.positive();
  if (spec == "c0") {
    std::vector<int> R;
    for (int i : rs.noncompact_positive())
      R.push_back(rs.find_root(-rs.root(i).coords).value());
    for (int i : rs.compact_positive()) R.push_back(i);
    return R;
  }
  const std::string prefix = "chamber:";
  if (spec.rfind(prefix, 0) == 0) {
    Eigen::VectorXd v = to_vec(parse_list(spec.substr(prefix.size())));
    if (v.size() != rs.rank())
      throw cfn::BadGrid("chamber vector needs " + std::to_string(rs.rank()) +
                         " coordinates");
    return cfn::positive_system_from_vector(rs, v);
  }
  throw cfn::BadGrid("unknown --r-spec '" + spec +
                     "' (expected plus, c0, or chamber:<coords>)");
}

int run_eval(const EvalArgs& args) {
  cfn::LoadedEntry e = cfn::load_entry(args.entry);
  const cfn::RootSystem& rs = e.system;
  const int r = int(rs.gamma().size());
  const int dim = args.on_gamma ? r : rs.rank();

  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pts;
  if (args.line) {
    if (args.from.empty() || args.dir.empty())
      throw cfn::BadGrid("--line needs --from and --dir");
    if (!(args.step > 0.0)) throw cfn::BadGrid("line grids need --step > 0");
    auto [fre, fim] = parse_point(args.from, dim);
    auto [dre, dim_part] = parse_point(args.dir, dim);
    for (double t = args.t0; t <= args.t1 + 1e-12; t += args.step)
      pts.emplace_back(fre + t * dre, fim + t * dim_part);
  } else {
    for (const std::string& g : args.grid) pts.push_back(parse_point(g, dim));
  }
  if (pts.empty()) throw cfn::BadGrid("empty grid: pass --grid or --line");

  if (args.on_gamma) {
    if (r != rs.rank())
      throw cfn::BadGrid(
          "coroot-value coordinates underdetermine lambda: cascade size " +
          std::to_string(r) + " < rank " + std::to_string(rs.rank()));
    Eigen::MatrixXd A(r, rs.rank());
    for (int i = 0; i < r; ++i)
      A.row(i) = cfn::coroot(rs, rs.root(rs.gamma()[i]).coords).transpose();
    auto qr = A.colPivHouseholderQr();
    for (auto& [re, im] : pts) {
      re = qr.solve(Eigen::VectorXd(re)).eval();
      im = qr.solve(Eigen::VectorXd(im)).eval();
    }
  }

  std::vector<int> R;
  if (args.func == "cr") R = resolve_r_spec(rs, args.r_spec);

  json rows = json::array();
  std::string csv;
  if (args.out == "csv") {
    for (int i = 0; i < rs.rank(); ++i)
      csv += "lambda_re_" + std::to_string(i) + ",";
    for (int i = 0; i < rs.rank(); ++i)
      csv += "lambda_im_" + std::to_string(i) + ",";
    csv += "func,re,im,in_domain,pole\n";
  }

  for (const auto& [re, im] : pts) {
    cfn::Functional lam(re, im);
    cfn::CValue v;
    if (args.func == "comega")
      v = cfn::c_omega(rs, lam);
    else if (args.func == "c0")
      v = cfn::c_zero(rs, lam);
    else if (args.func == "c")
      v = cfn::c_full(rs, lam);
    else
      v = cfn::c_R(rs, R, lam);

    if (args.out == "csv") {
      for (int i = 0; i < rs.rank(); ++i) csv += fmt17(re[i]) + ",";
      for (int i = 0; i < rs.rank(); ++i) csv += fmt17(im[i]) + ",";
      csv += args.func + "," + fmt17(v.value.real()) + "," +
             fmt17(v.value.imag()) + "," + (v.in_domain ? "true" : "false") +
             "," + (v.pole ? "true" : "false") + "\n";
    } else {
      json row;
      row["lambda_re"] = std::vector<double>(re.data(), re.data() + re.size());
      row["lambda_im"] = std::vector<double>(im.data(), im.data() + im.size());
      row["func"] = args.func;
      row["re"] = v.value.real();
      row["im"] = v.value.imag();
      row["in_domain"] = v.in_domain;
      row["pole"] = v.pole;
      row["trivial"] = v.trivial;
      rows.push_back(row);
    }
  }

  if (args.out == "csv")
    std::cout << csv;
  else
    std::cout << rows.dump(2) << "\n";
  return 0;
}

int run_poles(const std::string& entry, const std::string& out) {
  cfn::LoadedEntry e = cfn::load_entry(entry);
  std::vector<cfn::PoleSheet> sheets = cfn::pole_sheets(e.system);
  if (out == "json") {
    json j = json::array();
    for (const cfn::PoleSheet& s : sheets) {
      json row;
      row["root_index"] = s.root_index;
      row["root"] = std::vector<double>(
          e.system.root(s.root_index).coords.data(),
          e.system.root(s.root_index).coords.data() +
              e.system.root(s.root_index).coords.size());
      row["family"] =
          s.family == cfn::PoleFamily::Noncompact ? "noncompact" : "compact";
      row["offset"] = s.offset;
      row["step"] = s.step;
      row["formula"] = s.formula;
      j.push_back(row);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const cfn::PoleSheet& s : sheets)
      std::cout << coords_str(e.system.root(s.root_index).coords) << "  "
                << (s.family == cfn::PoleFamily::Noncompact ? "noncompact"
                                                            : "compact")
                << "  " << s.formula << "\n";
  }
  return 0;
}

int run_verify(const std::string& suite, const cfn::VerifyOptions& opt) {
  cfn::SuiteReport report = cfn::run_suite(suite, opt);
  json j;
  j["suite"] = report.suite;
  j["passed"] = report.passed();
  j["checks"] = json::array();
  for (const cfn::CheckResult& c : report.checks) {
    json row;
    row["name"] = c.name;
    row["passed"] = c.passed;
    row["detail"] = c.detail;
    j["checks"].push_back(row);
  }
  std::cout << j.dump(2) << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c-function computations for causal symmetric space models"};
  app.require_subcommand(1);

  auto check_out = CLI::IsMember({"text", "json"});
  auto check_tab = CLI::IsMember({"csv", "json"});

  CLI::App* cat = app.add_subcommand("catalog", "inspect bundled entries");
  cat->require_subcommand(1);
  std::string list_out = "text";
  CLI::App* cat_list = cat->add_subcommand("list", "list entry names");
  cat_list->add_option("--out", list_out, "output format")->check(check_out);
  std::string desc_name, desc_out = "text";
  CLI::App* cat_desc =
      cat->add_subcommand("describe", "print one entry with derived data");
  cat_desc->add_option("name", desc_name, "entry name")->required();
  cat_desc->add_option("--out", desc_out, "output format")->check(check_out);

  EvalArgs ea;
  CLI::App* eval =
      app.add_subcommand("eval", "evaluate a c-function on a lambda grid");
  eval->add_option("--entry", ea.entry, "entry name")->required();
  eval->add_option("--func", ea.func, "which function")
      ->check(CLI::IsMember({"comega", "c0", "c", "cr"}));
  eval->add_option("--r-spec", ea.r_spec,
                   "positive system for cr: plus, c0, or chamber:<coords>");
  eval->add_option("--grid", ea.grid,
                   "lambda point 're0,re1[;im0,im1]' (repeatable)");
  eval->add_flag("--line", ea.line, "sweep lambda = from + t*dir");
  eval->add_option("--from", ea.from, "line base point");
  eval->add_option("--dir", ea.dir, "line direction");
  eval->add_option("--t0", ea.t0, "line start parameter");
  eval->add_option("--t1", ea.t1, "line end parameter");
  eval->add_option("--step", ea.step, "line parameter step (> 0)");
  eval->add_flag("--on-gamma", ea.on_gamma,
                 "grid coordinates are values on the cascade coroots");
  eval->add_option("--out", ea.out, "output format")->check(check_tab);

  std::string poles_entry, poles_out = "text";
  CLI::App* poles = app.add_subcommand("poles", "list pole sheets");
  poles->add_option("entry", poles_entry, "entry name")->required();
  poles->add_option("--out", poles_out, "output format")->check(check_out);

  std::string suite;
  double samples_opt = 1e6;
  cfn::VerifyOptions vo;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(cfn::suite_names()));
  verify->add_option("--samples", samples_opt,
                     "Monte-Carlo draws (accepts 1e6 notation)");
  verify->add_option("--seed", vo.seed, "base RNG seed");
  verify->add_option("--streams", vo.streams, "independent RNG streams");
  verify->add_option("--tol", vo.tol, "sigma multiplier for MC agreement");
  verify->add_option("--m", vo.m, "restrict rank-one suites to one m")
      ->check(CLI::IsMember({0, 1, 2, 3}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cat_list->parsed()) return run_catalog_list(list_out);
    if (cat_desc->parsed()) return run_catalog_describe(desc_name, desc_out);
    if (eval->parsed()) return run_eval(ea);
    if (poles->parsed()) return run_poles(poles_entry, poles_out);
    if (verify->parsed()) {
      vo.samples = (long long)(samples_opt + 0.5);
      return run_verify(suite, vo);
    }
  } catch (const cfn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
