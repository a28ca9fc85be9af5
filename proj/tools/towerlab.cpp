// towerlab: exact analysis of iterated-square-root towers at desk scale.
//
// Verbs: classify, lattice, scan, enumerate, sqrt2, xset, fermat,
// cyclo, jr, embed. JSON reports on stdout (or --output); DOT and CSV
// side outputs where noted. Exit codes: 0 ok, 2 precondition/validation
// failure, 1 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "towerlab/galois.hpp"
#include "towerlab/jr.hpp"
#include "towerlab/lattice.hpp"
#include "towerlab/omega.hpp"
#include "towerlab/special.hpp"
#include "towerlab/tower.hpp"

namespace {

using towerlab::Int;
using towerlab::Pair;
using towerlab::Rat;
using towerlab::RealBall;
using json = nlohmann::ordered_json;

constexpr const char* kSchema = "tower-lab/1";
constexpr int kDepthCap = 12;

int g_digits = towerlab::kDefaultDigits;

json ball_json(const RealBall& b, int digits) {
  return json{{"mid", b.decimal(digits)}, {"radius", b.radius_string()}};
}

json omega_json(const towerlab::OmegaClass& c) {
  json j;
  j["class"] = to_string(c.kind);
  j["depth"] = c.depth;
  if (c.reason) j["reason"] = to_string(*c.reason);
  return j;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << text;
}

json classify_report(const Pair& pair, int depth) {
  json j;
  j["schema"] = kSchema;
  j["command"] = "classify";
  j["nu"] = std::to_string(pair.nu);
  j["x0"] = std::to_string(pair.x0);
  auto cls = towerlab::classify_pair(pair, depth);
  j.update(omega_json(cls));
  auto thin = towerlab::is_thin(pair);
  j["thin"] = thin.thin;
  if (thin.a) j["a"] = thin.a->get_str();
  j["increase_sufficient"] = to_string(towerlab::increase_sufficient(pair));
  if (cls.verified() && depth >= 2) {
    json subs = json::array();
    for (const Int& d : towerlab::quadratic_subfields(pair, depth)) subs.push_back(d.get_str());
    j["quadratic_subfields"] = subs;
  }
  return j;
}

json scan_report(const Pair& pair, int depth, int klein_n, int fn_n, long ec_bound) {
  json j;
  j["schema"] = kSchema;
  j["command"] = "scan";
  j["nu"] = std::to_string(pair.nu);
  j["x0"] = std::to_string(pair.x0);
  auto cls = towerlab::classify_pair(pair, depth);
  j.update(omega_json(cls));
  if (!cls.verified())
    throw towerlab::precondition_error("scan: pair not verified in Omega at depth " +
                                       std::to_string(depth));
  towerlab::TowerCtx ctx(pair, depth);
  json klein = json::array();
  for (const auto& rep : towerlab::klein_witness_scan(ctx, klein_n)) {
    json e;
    e["n"] = rep.n;
    e["type"] = to_string(rep.type);
    e["un_x0_square"] = rep.un_x0_square;
    if (rep.fn_square) e["fn_square"] = *rep.fn_square;
    klein.push_back(e);
  }
  j["klein"] = klein;
  json fns = json::array();
  for (const auto& f : towerlab::fn_scan(pair, fn_n))
    fns.push_back({{"n", f.n}, {"fn", f.fn.get_str()}, {"square", f.square}});
  j["fn"] = fns;
  json ec = json::array();
  for (const auto& pt : towerlab::ec_point_scan(pair, Int(ec_bound))) {
    json e;
    e["x"] = pt.x.get_str();
    e["y"] = pt.y.get_str();
    if (pt.u_index) e["u_index"] = *pt.u_index;
    ec.push_back(e);
  }
  j["ec_bound"] = std::to_string(ec_bound);
  j["ec_points"] = ec;
  return j;
}

json enumerate_report(const std::string& what, long max_nu, int depth) {
  json j;
  j["schema"] = kSchema;
  j["command"] = "enumerate";
  j["set"] = what;
  j["max_nu"] = max_nu;
  j["depth"] = depth;
  if (what == "omega1") {
    json recs = json::array();
    for (const auto& e : towerlab::enumerate_omega1(max_nu, depth)) {
      json r;
      r["nu"] = std::to_string(e.pair.nu);
      r["x0"] = std::to_string(e.pair.x0);
      r["class"] = to_string(e.cls.kind);
      r["depth"] = e.cls.depth;
      r["thin"] = false;
      r["a"] = e.cert.a.get_str();
      r["quadratic_generators"] = json::array(
          {e.cert.gen_k1.get_str(), e.cert.gen_minus.get_str(), e.cert.gen_plus.get_str()});
      recs.push_back(r);
    }
    j["records"] = recs;
  } else if (what == "sigma12") {
    auto s = towerlab::enumerate_sigma12(max_nu, depth);
    auto dump = [](const std::vector<towerlab::SigmaEntry>& v) {
      json arr = json::array();
      for (const auto& e : v)
        arr.push_back({{"nu", std::to_string(e.pair.nu)},
                       {"x0", std::to_string(e.pair.x0)},
                       {"k", e.k},
                       {"a", e.a.get_str()}});
      return arr;
    };
    j["sigma1"] = dump(s.sigma1);
    j["sigma2"] = dump(s.sigma2);
  } else {
    throw towerlab::precondition_error("enumerate: unknown set '" + what +
                                       "' (expected omega1 or sigma12)");
  }
  return j;
}

json lattice_report(const Pair& pair, int depth) {
  json j;
  j["schema"] = kSchema;
  j["command"] = "lattice";
  j["nu"] = std::to_string(pair.nu);
  j["x0"] = std::to_string(pair.x0);
  j["depth"] = depth;
  auto g = towerlab::build_lattice(pair, depth);
  j["lattice"] = json::parse(towerlab::lattice_json(g));
  return j;
}

json sqrt2_report(const Pair& pair, int depth) {
  auto r = towerlab::sqrt2_in_K(pair, depth);
  json j;
  j["schema"] = kSchema;
  j["command"] = "sqrt2";
  j["nu"] = std::to_string(pair.nu);
  j["x0"] = std::to_string(pair.x0);
  j["in_k"] = r.in_k;
  j["clause"] = to_string(r.clause);
  if (r.clause == towerlab::Sqrt2Result::Clause::Sigma1 ||
      r.clause == towerlab::Sqrt2Result::Clause::Sigma2)
    j["k"] = r.k;
  j["direct_level2_test"] = r.direct_test;
  return j;
}

json xset_report(const Pair& pair, int depth, long bound) {
  auto r = towerlab::x2_20_in_K(pair, depth, bound);
  json j;
  j["schema"] = kSchema;
  j["command"] = "xset";
  j["nu"] = std::to_string(pair.nu);
  j["x0"] = std::to_string(pair.x0);
  j["sfp_nu_x0"] = r.sfp.get_str();
  switch (r.status) {
    case towerlab::XsetResult::Status::Found:
      j["status"] = "Found";
      j["b"] = r.witness->b;
      j["d"] = r.witness->d;
      break;
    case towerlab::XsetResult::Status::NotFound:
      j["status"] = "NotFound";
      break;
    case towerlab::XsetResult::Status::HypothesisViolation:
      j["status"] = "HypothesisViolation";
      break;
  }
  return j;
}

json fermat_json(long m) {
  auto rep = towerlab::fermat_report(m);
  json j;
  j["schema"] = kSchema;
  j["command"] = "fermat";
  j["m"] = rep.m;
  j["form"] = to_string(rep.form);
  j["two_exponent"] = rep.two_exponent;
  j["fermat_primes"] = rep.fermat_primes;
  j["odd_part_clean"] = rep.odd_part_clean;
  j["notes"] = rep.notes;
  return j;
}

json cyclo_report(int levels, long single_m) {
  json j;
  j["schema"] = kSchema;
  j["command"] = "cyclo";
  if (single_m >= 3) {
    j["m"] = single_m;
    j["min_poly_2cos"] = towerlab::min_poly_2cos(single_m).to_string();
    j["degree"] = towerlab::euler_phi(single_m) / 2;
    return j;
  }
  j["levels"] = levels;
  json checks = json::array();
  for (const auto& c : towerlab::verify_cyclotomic_towers(levels))
    checks.push_back({{"n", c.n},
                      {"m_20", (1L << (c.n + 2))},
                      {"matches_20", c.matches_20},
                      {"m_21", (3L << (c.n + 2))},
                      {"matches_21", c.matches_21}});
  j["checks"] = checks;
  return j;
}

json jr_report_json(const Pair& pair, int levels, const std::string& csv_path, bool census,
                    const Rat& census_t, int census_level, long census_bound) {
  auto rep = towerlab::jr_upper_estimate(pair, levels, g_digits);
  json j;
  j["schema"] = kSchema;
  j["command"] = "jr";
  j["nu"] = std::to_string(pair.nu);
  j["x0"] = std::to_string(pair.x0);
  j["levels"] = levels;
  j["alpha"] = ball_json(rep.alpha, g_digits);
  j["shift"] = rep.shift;
  j["family"] = rep.family;
  json sups = json::array();
  for (const auto& s : rep.sup_estimates) sups.push_back(ball_json(s, g_digits));
  j["sup_estimates"] = sups;
  j["jr_upper"] = ball_json(rep.jr_upper, g_digits);
  j["limit_value"] = ball_json(rep.limit_value, g_digits);
  if (!csv_path.empty()) {
    write_file(csv_path, towerlab::trajectory_csv(pair, levels, g_digits));
    j["csv"] = csv_path;
  }
  if (census) {
    auto c = towerlab::ot_census(pair, census_t, census_level, census_bound, g_digits);
    json cj;
    cj["t"] = towerlab::rat_to_string(census_t);
    cj["level"] = census_level;
    cj["coeff_bound"] = census_bound;
    cj["count"] = c.count;
    json ws = json::array();
    for (const auto& w : c.witnesses) ws.push_back({{"c0", w.c0}, {"c1", w.c1}});
    cj["witnesses"] = ws;
    json us = json::array();
    for (const auto& w : c.undecided) us.push_back({{"c0", w.c0}, {"c1", w.c1}});
    cj["undecided"] = us;
    j["census"] = cj;
  }
  return j;
}

json embed_report(const Pair& src, const Pair& tgt, int m, int d) {
  json j;
  j["schema"] = kSchema;
  j["command"] = "embed";
  j["source"] = {{"nu", std::to_string(src.nu)}, {"x0", std::to_string(src.x0)}};
  j["target"] = {{"nu", std::to_string(tgt.nu)}, {"x0", std::to_string(tgt.x0)}};
  j["source_depth"] = m;
  j["target_depth"] = d;
  auto steps = towerlab::embed_chain(src, tgt, m, d);
  json arr = json::array();
  int reached = 0;
  for (const auto& s : steps) {
    json e;
    e["level"] = s.level;
    e["ok"] = s.ok;
    if (s.ok) {
      e["witness"] = s.witness;
      reached = s.level;
    }
    arr.push_back(e);
  }
  j["levels"] = arr;
  j["embedded_to_level"] = reached;
  j["note"] = "negative results are relative to the stated target depth";
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("TOWERLAB_PRECISION")) {
    int v = std::atoi(env);
    if (v >= 1 && v <= towerlab::kDigitsCap) g_digits = v;
  }

  CLI::App app{"towerlab: exact arithmetic in iterated-square-root towers"};
  app.require_subcommand(1);
  app.fallthrough();  // parent options may appear after the subcommand
  std::string out_path;
  app.add_option("-o,--output", out_path, "write the JSON report here instead of stdout");

  long nu = 2, x0 = 0, nu2 = 2, x02 = 0;
  int depth = 6;
  auto depth_opt = [&](CLI::App* cmd) {
    cmd->add_option("--depth", depth, "verification depth (default 6)")
        ->check(CLI::Range(1, kDepthCap));
  };

  auto* c_classify = app.add_subcommand("classify", "Omega membership, regime, thinness");
  c_classify->add_option("nu", nu, "tower parameter nu >= 2")->required();
  c_classify->add_option("x0", x0, "tower parameter x0 >= 0")->required();
  depth_opt(c_classify);

  auto* c_lattice = app.add_subcommand("lattice", "subfield lattice with certified edges");
  c_lattice->add_option("nu", nu)->required();
  c_lattice->add_option("x0", x0)->required();
  depth_opt(c_lattice);
  std::string dot_path;
  c_lattice->add_option("--dot", dot_path, "also write a DOT rendering to this file");
  bool verify21 = false;
  c_lattice->add_flag("--verify-21", verify21, "run the (2,1) five-point verification report");

  auto* c_scan = app.add_subcommand("scan", "Klein witness, f_n and curve-point scans");
  c_scan->add_option("nu", nu)->required();
  c_scan->add_option("x0", x0)->required();
  depth_opt(c_scan);
  int klein_n = -1, fn_n = 20;
  long ec_bound = 1'000'000;
  c_scan->add_option("--klein", klein_n, "max n for the step classification (default depth-2)");
  c_scan->add_option("--fn", fn_n, "max n for the f_n scan (default 20)")->check(CLI::Range(1, 64));
  c_scan->add_option("--ec", ec_bound, "curve-point search bound (default 10^6)")
      ->check(CLI::Range(1L, 100'000'000L));

  auto* c_enum = app.add_subcommand("enumerate", "enumerate omega1 or sigma12");
  std::string which = "omega1";
  c_enum->add_option("set", which, "omega1 | sigma12")->required();
  long max_nu = 8;
  c_enum->add_option("--max-nu", max_nu, "largest nu (default 8)")->check(CLI::Range(2L, 2000L));
  depth_opt(c_enum);

  auto* c_sqrt2 = app.add_subcommand("sqrt2", "sqrt(2) membership criterion");
  c_sqrt2->add_option("nu", nu)->required();
  c_sqrt2->add_option("x0", x0)->required();
  depth_opt(c_sqrt2);

  auto* c_xset = app.add_subcommand("xset", "level-2 (2,0) generator membership");
  c_xset->add_option("nu", nu)->required();
  c_xset->add_option("x0", x0)->required();
  depth_opt(c_xset);
  long xbound = -1;
  c_xset->add_option("--bound", xbound, "parameter search bound (default derived from nu)");

  auto* c_fermat = app.add_subcommand("fermat", "admissible-form classification of m");
  long m = 0;
  c_fermat->add_option("m", m, "integer m >= 3")->required()->check(CLI::Range(3L, 100'000'000L));

  auto* c_cyclo = app.add_subcommand("cyclo", "2cos minimal polynomials vs tower polynomials");
  int cyclo_levels = 4;
  long cyclo_m = 0;
  c_cyclo->add_option("--levels", cyclo_levels, "check levels 1..N (default 4)")
      ->check(CLI::Range(1, 8));
  c_cyclo->add_option("--m", cyclo_m, "print the minimal polynomial of 2cos(2pi/m) only");

  auto* c_jr = app.add_subcommand("jr", "upper-bound exploration for the order of a pair");
  c_jr->add_option("nu", nu)->required();
  c_jr->add_option("x0", x0)->required();
  int jr_levels = 12;
  c_jr->add_option("--levels", jr_levels, "trajectory length (default 12)")
      ->check(CLI::Range(1, 64));
  std::string csv_path;
  c_jr->add_option("--csv", csv_path, "write the n,house,gap trajectory here");
  double census_t = 0;
  int census_level = 2;
  long census_bound = 5;
  auto* t_opt = c_jr->add_option("--census-t", census_t, "run a degree-1 O_t census with this t");
  c_jr->add_option("--census-level", census_level, "census level (default 2)")
      ->check(CLI::Range(0, 10));
  c_jr->add_option("--census-bound", census_bound, "census coefficient bound (default 5)")
      ->check(CLI::Range(0L, 1000L));

  auto* c_embed = app.add_subcommand("embed", "tower-into-tower containment to finite depth");
  c_embed->add_option("source_nu", nu)->required();
  c_embed->add_option("source_x0", x0)->required();
  c_embed->add_option("target_nu", nu2)->required();
  c_embed->add_option("target_x0", x02)->required();
  int src_depth = 2, tgt_depth = 4;
  c_embed->add_option("--source-depth", src_depth, "levels to embed (default 2)")
      ->check(CLI::Range(1, kDepthCap));
  c_embed->add_option("--target-depth", tgt_depth, "ambient depth (default 4)")
      ->check(CLI::Range(1, kDepthCap));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    json j;
    if (*c_classify) {
      j = classify_report({nu, x0}, depth);
    } else if (*c_lattice) {
      j = lattice_report({nu, x0}, depth);
      if (verify21) {
        if (!(Pair{nu, x0} == Pair{2, 1}))
          throw towerlab::precondition_error("--verify-21 applies to the pair (2,1) only");
        auto rep = towerlab::verify_21_lattice(depth);
        json v;
        v["sqrt3_not_in_k20"] = rep.sqrt3_not_in_k20;
        v["x21_in_k20_sqrt3"] = rep.x21_in_k20_sqrt3;
        v["m_strictly_between"] = rep.m_strictly_between;
        v["m_not_nested"] = rep.m_not_nested;
        v["three_per_degree"] = rep.three_per_degree;
        v["all_passed"] = rep.all_passed();
        v["galois_annotation"] = rep.galois_annotation;
        v["details"] = rep.details;
        j["verify_21"] = v;
      }
      if (!dot_path.empty()) {
        write_file(dot_path, towerlab::to_dot(towerlab::build_lattice({nu, x0}, depth)));
        j["dot"] = dot_path;
      }
    } else if (*c_scan) {
      if (klein_n < 0) klein_n = depth - 2;
      if (klein_n < 0) throw towerlab::precondition_error("scan: depth must be >= 2");
      j = scan_report({nu, x0}, depth, klein_n, fn_n, ec_bound);
    } else if (*c_enum) {
      j = enumerate_report(which, max_nu, depth);
    } else if (*c_sqrt2) {
      j = sqrt2_report({nu, x0}, depth);
    } else if (*c_xset) {
      j = xset_report({nu, x0}, depth, xbound);
    } else if (*c_fermat) {
      j = fermat_json(m);
    } else if (*c_cyclo) {
      j = cyclo_report(cyclo_levels, cyclo_m);
    } else if (*c_jr) {
      bool census = t_opt->count() > 0;
      Rat t = towerlab::make_rat(Int(static_cast<long>(census_t * 1000000)), Int(1000000));
      j = jr_report_json({nu, x0}, jr_levels, csv_path, census, t, census_level, census_bound);
    } else if (*c_embed) {
      j = embed_report({nu, x0}, {nu2, x02}, src_depth, tgt_depth);
    }
    emit(j, out_path);
    return 0;
  } catch (const towerlab::precondition_error& e) {
    std::cerr << "precondition failure: " << e.what() << "\n";
    return 2;
  } catch (const towerlab::precision_error& e) {
    std::cerr << "precision cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
