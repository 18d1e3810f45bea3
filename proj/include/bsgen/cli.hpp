#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsgen/family.hpp"
#include "bsgen/parse.hpp"
#include "bsgen/stratify.hpp"

namespace bsgen {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "bsgen-report/1";

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 2, kExitBudget = 3, kExitInput = 4 };

struct Budgets {
  GroebnerBudget groebner;
  int rationalize_degree = 8;
  AnsatzBounds ansatz{0, 2, 2};
  std::size_t sample_trials = 400;
  std::size_t grid_points = 100;
};

/// One job: variable declarations, the data (f, v), optional Q / Y generators and budgets.
struct JobSpec {
  std::string command;
  std::vector<std::string> vars{"x"};
  std::vector<std::string> params;
  std::vector<std::string> f;
  std::vector<int> v;
  std::vector<std::string> ideal;
  std::vector<std::vector<std::string>> points;  // rational parameter points
  std::string b;                                 // verify
  std::string op;                                // verify
  int family_n = 1, family_p = 1, family_d = 1;  // family
  Budgets budgets;
};

inline bool error_is_input(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UndeclaredVariable:
    case ErrorCode::InvalidInput:
    case ErrorCode::FamilyVanishesModQ:
    case ErrorCode::ZeroInput:
    case ErrorCode::UnitIdeal:
    case ErrorCode::PointOutsideStratum:
    case ErrorCode::RingMismatch:
    case ErrorCode::MixedRing:
    case ErrorCode::DivisionByZeroModQ:
      return true;
    default:
      return false;
  }
}

inline int exit_code_for(ErrorCode c) {
  if (c == ErrorCode::TimeoutBudget) return kExitBudget;
  return error_is_input(c) ? kExitInput : kExitVerifyFailed;
}

/// FNV-1a of a canonical string, for compact certificate fingerprints.
inline std::string fingerprint(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}


inline Rational parse_rational(const std::string& text) {
  QRingPtr none = make_qring({});
  QPoly p = parse_poly(text, none);
  return p.is_zero() ? Rational(0) : p.constant_coeff();
}

inline json factored_json(const QPoly& b) {
  auto fz = factor(b);
  json fs = json::array();
  for (const auto& [g, e] : fz.factors) fs.push_back({{"factor", g.to_string()}, {"multiplicity", e}});
  return {{"unit", rational_string(fz.unit)}, {"factors", fs}, {"certified", fz.complete}};
}

inline json rationality_json(const RationalityReport& r) {
  json out = json::array();
  for (const auto& e : r.entries) {
    json roots = json::array();
    for (const auto& rt : e.roots)
      roots.push_back({{"variable", rt.variable}, {"root", rational_string(rt.value)}, {"multiplicity", rt.multiplicity}});
    out.push_back({{"generator", e.generator},
                   {"rational", e.rational},
                   {"factors", e.factors},
                   {"roots", roots},
                   {"fully_split", e.fully_split},
                   {"all_roots_negative_rational", e.all_negative_rational}});
  }
  return out;
}

inline json ideal_json(const IdealC& I) {
  json g = json::array();
  for (const auto& p : I.gb()) g.push_back(p.to_string());
  return g;
}

inline json region_json(const LocallyClosedSet& r) {
  json rem = json::array();
  for (const auto& h : r.removed) rem.push_back(h.to_string());
  return {{"closed", ideal_json(r.closed)}, {"removed", rem}};
}

inline json point_json(const ParamPoint& p) {
  json a = json::array();
  for (const auto& q : p) a.push_back(rational_string(q));
  return a;
}

inline json generic_json(const GenericBS& g) {
  return {{"Q", ideal_json(g.Q.ideal)},
          {"h", g.h.to_string()},
          {"h_squarefree", g.h_squarefree.to_string()},
          {"b", g.b.to_string()},
          {"b_factored", factored_json(g.b)},
          {"U", g.U.to_string()},
          {"U_fingerprint", fingerprint(g.U.to_string())},
          {"remainder", g.remainder.to_string()},
          {"remainder_fingerprint", fingerprint(g.remainder.to_string())},
          {"rationalize_strategy", g.strategy}};
}

namespace detail {

struct Runner {
  const JobSpec& job;
  json report;
  bool verified = true;

  explicit Runner(const JobSpec& j) : job(j) {
    report["schema"] = kReportSchema;
    report["command"] = j.command;
    json in;
    in["vars"] = j.vars;
    in["params"] = j.params;
    in["f"] = j.f;
    in["v"] = j.v;
    if (!j.ideal.empty()) in["ideal"] = j.ideal;
    if (!j.points.empty()) in["points"] = j.points;
    report["input"] = in;
    const auto& b = j.budgets;
    report["budgets"] = {{"steps", b.groebner.max_steps},
                         {"basis", b.groebner.max_basis},
                         {"terms", b.groebner.max_terms},
                         {"rationalize_degree", b.rationalize_degree},
                         {"ansatz", {b.ansatz.x_degree, b.ansatz.d_order, b.ansatz.s_degree}},
                         {"sample_trials", b.sample_trials},
                         {"grid_points", b.grid_points}};
    report["stage"] = "parse";
  }

  void check(const std::string& name, bool ok) {
    report["verification"]["checks"].push_back({{"check", name}, {"passed", ok}});
    verified = verified && ok;
  }

  QInstance instance() const {
    if (job.f.empty()) fail(ErrorCode::InvalidInput, "at least one --f is required");
    return parse_instance(job.vars, job.f, job.params, job.v, true);
  }

  /// Drops the (absent) parameters from the ring.
  static QInstance plain(const QInstance& inst) {
    if (inst.vars.m() > 0) fail(ErrorCode::InvalidInput, "this command needs an instance without parameters");
    return make_instance(RationalField{}, inst.vars, inst.f, inst.v, false);
  }

  IdealC ideal_of(const QInstance& inst) const {
    auto pr = param_ring(inst);
    std::vector<QPoly> gens;
    for (const auto& e : job.ideal) gens.push_back(parse_poly(e, pr));
    return make_ideal(pr, gens, job.budgets.groebner);
  }

  std::vector<ParamPoint> points(const QInstance& inst) const {
    std::vector<ParamPoint> out;
    for (const auto& pt : job.points) {
      if (pt.size() != inst.vars.m()) fail(ErrorCode::InvalidInput, "point dimension must equal the number of parameters");
      ParamPoint p;
      for (const auto& c : pt) p.push_back(parse_rational(c));
      out.push_back(p);
    }
    return out;
  }

  void run() {
    const auto& c = job.command;
    if (c == "bs")
      bs();
    else if (c == "annfs")
      annfs();
    else if (c == "generic-bs")
      generic();
    else if (c == "stratify")
      strat();
    else if (c == "verify")
      verify();
    else if (c == "ansatz")
      ansatz();
    else if (c == "family")
      family();
    else
      fail(ErrorCode::InvalidInput, "unknown command " + c);
  }

  void bs() {
    auto inst = plain(instance());
    BsOptions opt{job.budgets.groebner};
    report["stage"] = "ann_fs";
    auto ann = ann_fs(inst, opt);
    json ag = json::array();
    for (const auto& g : ann.gb()) ag.push_back(g.to_string());
    report["result"]["annihilator"] = ag;
    report["stage"] = "bs_ideal";
    auto B = bs_ideal_from_ann(inst, ann, opt);
    json gens = json::array();
    for (std::size_t k = 0; k < B.generators.size(); ++k) {
      bool ok = check_identity(B.generators[k], B.certificates[k], inst);
      check("identity b_" + std::to_string(k + 1), ok);
      gens.push_back({{"b", B.generators[k].to_string()},
                      {"factored", factored_json(B.generators[k])},
                      {"certificate_P", B.certificates[k].to_string()},
                      {"verified", ok}});
    }
    report["result"]["generators"] = gens;
    if (inst.p() == 1 && B.generators.size() == 1) {
      QPoly b = principal_generator(B);
      report["result"]["bernstein_polynomial"] = b.to_string();
      report["result"]["bernstein_factored"] = factored_json(b);
    }
    report["result"]["rationality"] = rationality_json(rationality_report(B));
    report["stats"] = {{"steps", B.stats.steps}, {"basis_size", B.basis_size}};
    report["stage"] = "done";
  }

  void annfs() {
    auto inst = instance();
    BsOptions opt{job.budgets.groebner};
    report["stage"] = "ann_fs";
    auto ann = ann_fs(inst, opt);
    json ag = json::array();
    FsElement one = fs_one(inst);
    for (const auto& g : ann.gb()) {
      bool ok = act(g.with_order(TermOrder::degrevlex()), one).is_zero();
      check("annihilates " + g.to_string(), ok);
      ag.push_back({{"operator", g.to_string()}, {"annihilates", ok}});
    }
    report["result"]["annihilator"] = ag;
    report["stats"] = {{"steps", ann.stats.steps}};
    report["stage"] = "done";
  }

  void generic() {
    auto inst = instance();
    auto pr = param_ring(inst);
    report["stage"] = "prime";
    std::vector<QPoly> gens;
    for (const auto& e : job.ideal) gens.push_back(parse_poly(e, pr));
    PrimeIdealQ Q = gens.empty() ? zero_prime(pr) : make_prime(pr, gens, false);
    GenericOptions opt{BsOptions{job.budgets.groebner}, job.budgets.rationalize_degree};
    report["stage"] = "generic_bs";
    auto g = generic_bs(inst, Q, opt);
    report["result"] = generic_json(g);
    check("congruence", check_congruence(g, inst));
    check("h not in Q", !Q.contains(g.h));
    json sp = json::array();
    for (const auto& pt : points(inst)) {
      bool ok = specialize_check(g, inst, pt);
      check("specialization", ok);
      sp.push_back({{"point", point_json(pt)}, {"passed", ok}});
    }
    if (!sp.empty()) report["result"]["specializations"] = sp;
    report["stage"] = "done";
  }

  void strat() {
    auto inst = instance();
    report["stage"] = "stratify";
    StratifyOptions opt{GenericOptions{BsOptions{job.budgets.groebner}, job.budgets.rationalize_degree},
                        job.budgets.sample_trials};
    auto S = stratify(inst, ideal_of(inst), opt);
    json strata = json::array();
    for (const auto& st : S.strata) {
      json pieces = json::array();
      for (const auto& pc : st.pieces) pieces.push_back(region_json(pc));
      json excl = json::array();
      for (const auto& e : st.excluded) excl.push_back(region_json(e));
      json js{{"pieces", pieces}, {"excluded", excl}, {"degenerate", st.degenerate()}, {"emptiness", to_string(st.emptiness)}};
      if (st.b) {
        js["b"] = st.b->to_string();
        js["b_factored"] = factored_json(*st.b);
      }
      if (st.sample) js["sample"] = point_json(*st.sample);
      json wit = json::array();
      for (const auto& w : st.witnesses) wit.push_back(generic_json(w));
      js["witnesses"] = wit;
      strata.push_back(js);
    }
    report["result"]["strata"] = strata;
    report["result"]["recursion_depth"] = S.depth;
    json located = json::array();
    for (const auto& pt : points(inst)) {
      auto where = S.locate(pt);
      json entry{{"point", point_json(pt)}, {"strata", where}};
      if (where.size() == 1 && S.strata[where[0]].b) {
        const auto& st = S.strata[where[0]];
        bool ok = specialize_check(st.witnesses[*st.piece_of(pt)], inst, pt);
        check("point specialization", ok);
        entry["b"] = st.b->to_string();
        entry["passed"] = ok;
      }
      located.push_back(entry);
    }
    if (!located.empty()) report["result"]["points"] = located;
    report["stage"] = "verify";
    // Coverage and disjointness on grid points of Y, plus the pointwise identity.
    auto pts = sample_points(LocallyClosedSet{S.ambient, {}}, job.budgets.grid_points, 20 * job.budgets.grid_points);
    std::size_t bad = 0, confirmed = 0, skipped = 0;
    for (const auto& pt : pts) {
      auto where = S.locate(pt);
      if (where.size() != 1) {
        ++bad;
        continue;
      }
      const auto& st = S.strata[where[0]];
      if (!st.b) {
        ++skipped;
        continue;
      }
      auto piece = st.piece_of(pt);
      if (specialize_check(st.witnesses[*piece], inst, pt))
        ++confirmed;
      else
        ++bad;
    }
    report["verification"]["grid_points"] = pts.size();
    report["verification"]["pointwise_confirmed"] = confirmed;
    report["verification"]["degenerate_points"] = skipped;
    check("partition and pointwise identities on grid", bad == 0);
    for (const auto& st : S.strata)
      for (const auto& w : st.witnesses) check("congruence", check_congruence(w, inst));
    report["stage"] = "done";
  }

  void verify() {
    auto inst = plain(instance());
    if (job.b.empty() || job.op.empty()) fail(ErrorCode::InvalidInput, "verify needs --b and --P");
    QPoly b = parse_poly(job.b, inst.ring);
    QWeylOp P = parse_operator(job.op, inst.weyl_ring());
    report["stage"] = "check_identity";
    bool ok = check_identity(b, P, inst);
    report["result"] = {{"b", b.to_string()}, {"P", P.to_string()}, {"identity_holds", ok}};
    check("identity", ok);
    report["stage"] = "done";
  }

  void ansatz() {
    auto inst = plain(instance());
    report["stage"] = "ansatz";
    auto sols = ansatz_bs(inst, job.budgets.ansatz);
    json out = json::array();
    for (const auto& s : sols) {
      bool ok = check_identity(s.b, s.P, inst);
      check("identity " + s.b.to_string(), ok);
      out.push_back({{"b", s.b.to_string()}, {"factored", factored_json(s.b)}, {"P", s.P.to_string()}, {"verified", ok}});
    }
    report["result"]["solutions"] = out;
    report["stage"] = "done";
  }

  void family() {
    auto inst = generic_family(job.family_n, job.family_p, job.family_d, job.v);
    json fs = json::array();
    for (const auto& f : inst.f) fs.push_back(f.to_string());
    report["result"] = {{"n", inst.n()}, {"p", inst.p()}, {"d", job.family_d}, {"m", inst.vars.m()},
                        {"vars", inst.vars.x}, {"params", inst.vars.a}, {"f", fs}};
    report["stage"] = "done";
  }
};

}  // namespace detail

struct CommandResult {
  json report;
  int exit_code = kExitOk;
};

/// Runs one job; never throws for errors raised by the library: they become a
/// structured error document with the matching exit code.
inline CommandResult run_command(const JobSpec& job) {
  detail::Runner r(job);
  try {
    r.run();
    r.report["verification"]["verified"] = r.verified;
    r.report["status"] = r.verified ? "ok" : "verification-failed";
    return {r.report, r.verified ? kExitOk : kExitVerifyFailed};
  } catch (const Error& e) {
    r.report["status"] = e.code() == ErrorCode::TimeoutBudget ? "budget-exhausted" : "error";
    r.report["partial"] = true;
    r.report["error"] = {{"code", to_string(e.code())}, {"message", e.message()}};
    return {r.report, exit_code_for(e.code())};
  }
}

inline JobSpec job_from_json(const json& j) {
  JobSpec s;
  auto get = [&](const char* key, auto& dst) {
    if (j.contains(key)) j.at(key).get_to(dst);
  };
  try {
    get("command", s.command);
    get("vars", s.vars);
    get("params", s.params);
    get("f", s.f);
    get("v", s.v);
    get("ideal", s.ideal);
    get("points", s.points);
    get("b", s.b);
    get("P", s.op);
    get("n", s.family_n);
    get("p", s.family_p);
    get("d", s.family_d);
    if (j.contains("budgets")) {
      const auto& b = j.at("budgets");
      if (b.contains("steps")) b.at("steps").get_to(s.budgets.groebner.max_steps);
      if (b.contains("basis")) b.at("basis").get_to(s.budgets.groebner.max_basis);
      if (b.contains("terms")) b.at("terms").get_to(s.budgets.groebner.max_terms);
      if (b.contains("rationalize_degree")) b.at("rationalize_degree").get_to(s.budgets.rationalize_degree);
      if (b.contains("sample_trials")) b.at("sample_trials").get_to(s.budgets.sample_trials);
      if (b.contains("grid_points")) b.at("grid_points").get_to(s.budgets.grid_points);
      if (b.contains("ansatz")) {
        auto a = b.at("ansatz").get<std::vector<int>>();
        if (a.size() != 3) fail(ErrorCode::InvalidInput, "ansatz budget needs three numbers");
        s.budgets.ansatz = {a[0], a[1], a[2]};
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed job file: ") + e.what());
  }
  return s;
}

/// Human-readable rendering of a report.
inline std::string render_text(const json& r) {
  std::ostringstream os;
  os << "command: " << r.value("command", "") << "\n";
  os << "status:  " << r.value("status", "") << "\n";
  if (r.contains("error")) os << "error:   " << r["error"]["code"].get<std::string>() << ": " << r["error"]["message"].get<std::string>() << "\n";
  if (r.contains("result")) {
    std::function<void(const json&, int)> dump = [&](const json& v, int ind) {
      std::string pad(ind, ' ');
      if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
          if (it->is_primitive()) {
            os << pad << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
          } else {
            os << pad << it.key() << ":\n";
            dump(*it, ind + 2);
          }
        }
      } else if (v.is_array()) {
        for (const auto& e : v) {
          if (e.is_primitive()) {
            os << pad << "- " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
          } else {
            os << pad << "-\n";
            dump(e, ind + 2);
          }
        }
      }
    };
    os << "result:\n";
    dump(r["result"], 2);
  }
  if (r.contains("verification")) os << "verified: " << (r["verification"].value("verified", false) ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace bsgen
