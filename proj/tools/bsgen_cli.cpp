#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bsgen/cli.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split_list(s)) {
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      bsgen::fail(bsgen::ErrorCode::InvalidInput, "not an integer list: " + s);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bsgen: Bernstein-Sato polynomials, generic families and stratifications"};
  app.require_subcommand(1);

  std::vector<std::string> f, ideal, points;
  std::string v, vars, params, job_file, out_path, format = "json", b, op, ansatz;
  std::size_t steps = 0, basis = 0, terms = 0, trials = 0, grid = 0;
  int degree = -1, n = 1, p = 1, d = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--f", f, "polynomial f_j (repeatable)");
    sub->add_option("--v", v, "shift vector, comma separated (default all ones)");
    sub->add_option("--vars", vars, "x-variables, comma separated (default x)");
    sub->add_option("--params", params, "parameters a, comma separated");
    sub->add_option("--ideal", ideal, "generator of Q or Y in the parameters (repeatable)");
    sub->add_option("--point", points, "parameter point, comma separated rationals (repeatable)");
    sub->add_option("--job", job_file, "JobSpec JSON file");
    sub->add_option("--out", out_path, "report path (default stdout)");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--budget-steps", steps, "Groebner reduction steps");
    sub->add_option("--budget-basis", basis, "Groebner basis size");
    sub->add_option("--budget-terms", terms, "terms per intermediate polynomial");
    sub->add_option("--budget-degree", degree, "degree bound for the rational search");
    sub->add_option("--budget-trials", trials, "sampling trials per region");
    sub->add_option("--budget-grid", grid, "grid points for partition checks");
    sub->add_option("--budget-ansatz", ansatz, "ansatz bounds x-degree,d-order,s-degree");
  };

  std::vector<CLI::App*> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"bs", "Bernstein-Sato ideal of f (Bernstein polynomial when p = 1)"},
      {"annfs", "annihilator of f^s"},
      {"generic-bs", "generic b on V(Q) with congruence certificate"},
      {"stratify", "partition of V(Y) into strata with one b each"},
      {"verify", "check b(s) f^s = P f^(s+v)"},
      {"ansatz", "bounded linear-algebra search for (b, P)"},
      {"family", "generic family of p polynomials of degree d in n variables"}};
  for (const auto& [name, help] : commands) {
    auto* s = app.add_subcommand(name, help);
    add_common(s);
    subs.push_back(s);
  }
  subs[4]->add_option("--b", b, "b(s) to verify");
  subs[4]->add_option("--P", op, "certificate operator P");
  subs[6]->add_option("--n", n, "number of x-variables");
  subs[6]->add_option("--p", p, "number of polynomials");
  subs[6]->add_option("--d", d, "degree bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : bsgen::kExitInput;
  }

  bsgen::CommandResult res;
  std::string command;
  for (auto* s : subs)
    if (s->parsed()) command = s->get_name();
  try {
    bsgen::JobSpec job;
    if (!job_file.empty()) {
      std::ifstream in(job_file);
      if (!in) bsgen::fail(bsgen::ErrorCode::InvalidInput, "cannot open job file " + job_file);
      bsgen::json j;
      try {
        j = bsgen::json::parse(in);
      } catch (const bsgen::json::exception& e) {
        bsgen::fail(bsgen::ErrorCode::InvalidInput, std::string("job file is not valid JSON: ") + e.what());
      }
      job = bsgen::job_from_json(j);
      if (job.command.empty()) job.command = command;
    } else {
      job.command = command;
      job.f = f;
      if (!vars.empty()) job.vars = split_list(vars);
      if (!params.empty()) job.params = split_list(params);
      if (!v.empty()) job.v = int_list(v);
      job.ideal = ideal;
      for (const auto& pt : points) job.points.push_back(split_list(pt));
      job.b = b;
      job.op = op;
      job.family_n = n;
      job.family_p = p;
      job.family_d = d;
    }
    auto& bud = job.budgets;
    if (steps) bud.groebner.max_steps = steps;
    if (basis) bud.groebner.max_basis = basis;
    if (terms) bud.groebner.max_terms = terms;
    if (degree >= 0) bud.rationalize_degree = degree;
    if (trials) bud.sample_trials = trials;
    if (grid) bud.grid_points = grid;
    if (!ansatz.empty()) {
      auto a = int_list(ansatz);
      if (a.size() != 3) bsgen::fail(bsgen::ErrorCode::InvalidInput, "--budget-ansatz needs three numbers");
      bud.ansatz = {a[0], a[1], a[2]};
    }
    res = bsgen::run_command(job);
  } catch (const bsgen::Error& e) {
    res.report = {{"schema", bsgen::kReportSchema},
                  {"command", command},
                  {"status", "error"},
                  {"error", {{"code", bsgen::to_string(e.code())}, {"message", e.message()}}}};
    res.exit_code = bsgen::exit_code_for(e.code());
  }

  std::string text = format == "text" ? bsgen::render_text(res.report) : res.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return bsgen::kExitInput;
    }
    out << text;
  }
  if (res.exit_code != 0 && res.report.contains("error"))
    std::cerr << res.report["error"]["code"].get<std::string>() << ": " << res.report["error"]["message"].get<std::string>()
              << "\n";
  return res.exit_code;
}
