#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigrig/chargenus.hpp"
#include "sigrig/equivrep.hpp"
#include "sigrig/io.hpp"
#include "sigrig/lattice.hpp"
#include "sigrig/theta.hpp"
#include "sigrig/thomfix.hpp"

using namespace sigrig;

namespace {

constexpr double kPassTol = 1e-8;

struct RunConfig {
  cplx tau{0.0, 1.0};
  LatticeScale scale = LatticeScale::witten;
  int q_terms = kDefaultQTerms;
  int jet_cap = kDefaultJetCap;
  int samples = 0;  // 0 = per-command default
  unsigned long long seed = 0;
  std::string format = "json";

  Lattice lattice() const { return Lattice(tau, scale); }

  // Truncation and domain limits backing the stated tolerances.
  std::string problem() const {
    if (!(tau.imag() >= 0.2)) return "Im tau must be at least 0.2";
    if (q_terms < 40) return "q-terms must be at least 40";
    if (jet_cap < 1) return "jet-cap must be positive";
    return {};
  }
};

void emit_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items())
      emit_text(val, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      emit_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << " = "
        << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& report, const RunConfig& cfg) {
  if (cfg.format == "text")
    emit_text(report, "", std::cout);
  else
    std::cout << report.dump(2) << "\n";
}

ThetaFunction make_theta(const RunConfig& cfg, const std::string& kind) {
  if (kind == "ochanine") return ochanine_theta(cfg.tau, cfg.q_terms);
  return sigma_theta(cfg.lattice(), cfg.q_terms);
}

std::vector<cplx> sample_disc(const Lattice& L, int count,
                              unsigned long long seed) {
  return halton_disc(static_cast<std::size_t>(count),
                     0.23 * L.g1() + 0.31 * L.g2(), 0.3, seed);
}

int cmd_theta_eval(const RunConfig& cfg, const std::string& kind,
                   const std::string& z_str) {
  ThetaFunction th = make_theta(cfg, kind);
  cplx z = parse_complex(z_str);
  json rep;
  rep["kind"] = kind;
  rep["z"] = format_number(z);
  rep["value"] = format_number(th.eval(z));
  emit(rep, cfg);
  return 0;
}

int cmd_theta_verify(const RunConfig& cfg, const std::string& kind,
                     const std::string& lambda_str) {
  ThetaFunction th = make_theta(cfg, kind);
  const Lattice& L = th.lattice();
  int count = cfg.samples > 0 ? cfg.samples : 50;
  auto zs = sample_disc(L, count, cfg.seed);

  std::vector<std::pair<long, long>> lams = {{1, 0}, {0, 1}, {1, 1}};
  if (!lambda_str.empty()) {
    cplx jk = parse_complex(lambda_str);
    lams = {{static_cast<long>(std::lround(jk.real())),
             static_cast<long>(std::lround(jk.imag()))}};
  }

  double odd_res = 0.0, trans_res = 0.0;
  int used = 0;
  for (cplx z : zs) {
    cplx v = th.eval(z);
    if (std::abs(v) < 1e-8) continue;
    ++used;
    odd_res = std::max(odd_res,
                       std::abs(th.eval(-z) + v) / (1.0 + std::abs(v)));
    for (auto [j, k] : lams) {
      cplx lhs = th.eval(z + L.vec(j, k));
      cplx rhs = th.iterated_translation_factor(j, k, 1, z) * v;
      trans_res =
          std::max(trans_res, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
  }
  CharacterCheck cc = verify_character(th.character(), L);

  bool pass = odd_res < kPassTol && trans_res < kPassTol && cc.pass;
  json rep;
  rep["kind"] = kind;
  rep["samples_used"] = used;
  rep["odd_residual"] = format_number(odd_res);
  rep["translation_residual"] = format_number(trans_res);
  rep["period_deviation"] = format_number(cc.max_period_deviation);
  rep["character_quotient_error"] = format_number(cc.max_quotient_error);
  rep["pass"] = pass;
  emit(rep, cfg);
  return pass ? 0 : 1;
}

int cmd_genus_eval(const RunConfig& cfg, const std::string& file,
                   const std::string& which, int q_order) {
  ManifoldData M = manifold_from_json(load_json_file(file), "manifold");
  json rep;
  if (!M.name.empty()) rep["name"] = M.name;
  rep["dim"] = M.dimension;
  auto dump_series = [&](const QSeries<Rational>& s) {
    json arr = json::array();
    for (int k = 0; k <= q_order; ++k) arr.push_back(to_string(s.coeff(k)));
    return arr;
  };
  if (which == "all" || which == "ahat")
    rep["ahat"] = to_string(ahat_genus(M));
  if (which == "all" || which == "witten")
    rep["witten_q"] = dump_series(witten_genus_q(M, q_order));
  if (which == "all" || which == "ochanine")
    rep["ochanine_q"] = dump_series(ochanine_genus_q(M, q_order));
  emit(rep, cfg);
  return 0;
}

int cmd_rep_analyze(const RunConfig& cfg, const std::string& f_str) {
  VirtualRep f = parse_virtual_rep(f_str);
  Lattice L = cfg.lattice();
  int count = cfg.samples > 0 ? cfg.samples : 24;

  long degree = degree_of(f);
  bool trivial = is_trivial(f, L);
  double per = check_double_periodicity(f, L, count, cfg.q_terms);
  ParityReport parity = check_parity(f, L, count, cfg.q_terms);

  bool pass = (trivial ? per < kPassTol : per >= kPassTol) &&
              parity.sign == parity.expected;
  json rep;
  rep["f"] = to_string(f);
  rep["degree"] = degree;
  rep["trivial"] = trivial;
  rep["periodicity_residual"] = format_number(per);
  rep["parity"] = parity.sign == 1 ? "even" : "odd";
  rep["parity_residual"] = format_number(parity.residual);
  rep["pass"] = pass;
  emit(rep, cfg);
  return pass ? 0 : 1;
}

int cmd_cover(const RunConfig& cfg, int torsion) {
  Lattice L = cfg.lattice();
  auto special = torsion_points(L, torsion);
  AdaptedCover cover = build_adapted_cover(special, L);
  CoverReport r = verify_adapted(cover, L);
  json rep;
  rep["torsion"] = torsion;
  rep["special_count"] = cover.special.size();
  rep["ordinary_radius"] = format_number(cover.ordinary_radius);
  rep["centers_in_members"] = r.centers_in_members;
  rep["special_isolated"] = r.special_isolated;
  rep["special_discs_disjoint"] = r.special_discs_disjoint;
  rep["ordinary_meets_at_most_one"] = r.ordinary_meets_at_most_one;
  rep["all_small"] = r.all_small;
  if (!r.note.empty()) rep["note"] = r.note;
  rep["pass"] = r.pass();
  emit(rep, cfg);
  return r.pass() ? 0 : 1;
}

int cmd_thom_verify(const RunConfig& cfg, const std::string& file, bool weak) {
  FixtureData fx = load_fixture(file);
  if (fx.special.empty())
    throw SchemaError("special", "fixture has no special points");
  Lattice L = cfg.lattice();
  ThetaFunction th = sigma_theta(L, cfg.q_terms);
  int count = cfg.samples > 0 ? cfg.samples : 20;
  auto zs = default_samples(L, count);

  bool pass = true;
  json rep;
  rep["fixture"] = fx.name.empty() ? file : fx.name;
  rep["mode"] = weak ? "weak" : "strict";

  std::set<int> orders;
  for (const auto& s : fx.special) orders.insert(s.n);

  json comps = json::array();
  for (const auto& F : fx.model.components) {
    json c;
    if (!F.name.empty()) c["name"] = F.name;
    json ccr_all;
    for (int n : orders) {
      auto ccr = ccr_validate(F, n, weak ? CcrMode::weak : CcrMode::strict);
      json one;
      one["z1"] = ccr.z1;
      one["z2"] = ccr.z2;
      one["z3"] = ccr.z3;
      one["zn"] = ccr.zn;
      if (n % 2 == 0) one["w2_even"] = ccr.w2_even;
      one["pass"] = ccr.pass;
      if (!ccr.failures.empty()) one["failures"] = ccr.failures;
      ccr_all[std::to_string(n)] = one;
      pass = pass && ccr.pass;
    }
    c["ccr"] = ccr_all;
    double ell = 0.0;
    for (auto [j, k] : {std::pair<long, long>{1, 0}, {0, 1}})
      ell = std::max(ell, ellipticity_check(F, th, L.vec(j, k), zs));
    c["ellipticity_residual"] = format_number(ell);
    pass = pass && ell < kPassTol;
    comps.push_back(c);
  }
  rep["components"] = comps;

  json specials = json::array();
  for (std::size_t i = 0; i < fx.special.size(); ++i) {
    const auto& spec = fx.special[i];
    SpecialPoint sp;
    try {
      sp = make_special_point_coords(L, spec.s, spec.t, spec.n);
    } catch (const std::invalid_argument& e) {
      throw SchemaError("special[" + std::to_string(i) + "]", e.what());
    }
    json s;
    s["a"] = {format_number(spec.s), format_number(spec.t)};
    s["n"] = spec.n;
    std::vector<int> eps_seen;
    json per_comp = json::array();
    for (const auto& F : fx.model.components) {
      SpecialQuantities q = quantities(F, sp, th.character());
      bool alpha_eq_G = q.alpha == q.G;
      bool c1_nH = c1_equals_nH(q, sp.n);
      TransferReport tr = transfer_check(F, sp, zs, th);
      double cocycle = cocycle_check(F, sp, zs, th);
      eps_seen.push_back(q.eps);
      json c;
      if (!F.name.empty()) c["name"] = F.name;
      c["eps"] = q.eps;
      c["alpha"] = to_string(q.alpha);
      c["G"] = to_string(q.G);
      c["alpha_equals_G"] = alpha_eq_G;
      c["c1_equals_nH"] = c1_nH;
      c["transfer_residual"] = format_number(tr.max_residual);
      c["transfer_samples_used"] = tr.used;
      c["transfer_samples_skipped"] = tr.skipped;
      c["cocycle_residual"] = format_number(cocycle);
      per_comp.push_back(c);
      pass = pass && alpha_eq_G && c1_nH && tr.used > 0 &&
             tr.max_residual < kPassTol && cocycle < kPassTol;
    }
    bool eps_const = std::all_of(eps_seen.begin(), eps_seen.end(),
                                 [&](int e) { return e == eps_seen.front(); });
    s["eps_locally_constant"] = eps_const;
    pass = pass && eps_const;
    s["components"] = per_comp;
    specials.push_back(s);
  }
  rep["special"] = specials;
  rep["pass"] = pass;
  emit(rep, cfg);
  return pass ? 0 : 1;
}

int cmd_thom_rigidity(const RunConfig& cfg, const std::string& file, int grid) {
  FixtureData fx = load_fixture(file);
  Lattice L = cfg.lattice();
  ThetaFunction th = sigma_theta(L, cfg.q_terms);
  Divisor D = model_divisor(fx.model, L);
  RigidityReport r = rigidity_localized(fx.model, L, th, grid);

  bool pass = !r.values.empty() && r.spread < 1e-6 * (1.0 + r.max_abs);
  json rep;
  rep["fixture"] = fx.name.empty() ? file : fx.name;
  rep["divisor_degree"] = D.degree();
  rep["divisor_trivial"] = r.divisor_trivial;
  rep["compensated"] = r.compensated;
  rep["samples_used"] = r.values.size();
  rep["samples_skipped"] = r.skipped;
  rep["max_abs"] = format_number(r.max_abs);
  rep["spread"] = format_number(r.spread);
  rep["pass"] = pass;
  emit(rep, cfg);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic genera, theta characters, and transfer checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("SIGMA_RIGIDITY_QTERMS"))
    cfg.q_terms = std::atoi(env);

  std::string tau_str = "0,1";
  std::string scale_str = "witten";
  app.add_option("--tau", tau_str, "lattice parameter tau as re,im");
  app.add_option("--scale", scale_str, "lattice scale")
      ->check(CLI::IsMember({"witten", "ochanine"}));
  app.add_option("--q-terms", cfg.q_terms, "q-series truncation");
  app.add_option("--jet-cap", cfg.jet_cap, "jet truncation order");
  app.add_option("--samples", cfg.samples, "sample count override");
  app.add_option("--seed", cfg.seed, "sample generator seed");
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));

  auto* theta = app.add_subcommand("theta", "theta function evaluation/laws");
  theta->fallthrough();
  theta->require_subcommand(1);
  std::string theta_kind = "sigma", z_str, lambda_str;
  auto* theta_eval = theta->add_subcommand("eval", "evaluate theta at a point");
  theta_eval->fallthrough();
  theta_eval->add_option("--z", z_str, "argument as re,im")->required();
  theta_eval->add_option("--kind", theta_kind, "sigma|ochanine")
      ->check(CLI::IsMember({"sigma", "ochanine"}));
  auto* theta_verify =
      theta->add_subcommand("verify", "check oddness/translation law/character");
  theta_verify->fallthrough();
  theta_verify->add_option("--kind", theta_kind, "sigma|ochanine")
      ->check(CLI::IsMember({"sigma", "ochanine"}));
  theta_verify->add_option("--lambda", lambda_str,
                           "single lattice vector as j,k (default generators)");

  auto* genus = app.add_subcommand("genus", "genus computation");
  genus->fallthrough();
  genus->require_subcommand(1);
  std::string manifold_file, genus_which = "all";
  int q_order = 10;
  auto* genus_eval = genus->add_subcommand("eval", "evaluate genera");
  genus_eval->fallthrough();
  genus_eval->add_option("--manifold", manifold_file, "manifold JSON file")
      ->required();
  genus_eval->add_option("--genus", genus_which, "ahat|witten|ochanine|all")
      ->check(CLI::IsMember({"ahat", "witten", "ochanine", "all"}));
  genus_eval->add_option("--q-order", q_order, "series order");

  auto* rep_cmd = app.add_subcommand("rep", "virtual representation analysis");
  rep_cmd->fallthrough();
  rep_cmd->require_subcommand(1);
  std::string f_str;
  auto* rep_analyze = rep_cmd->add_subcommand("analyze", "analyze f(z)");
  rep_analyze->fallthrough();
  rep_analyze->add_option("--f", f_str, "Laurent polynomial, e.g. \"z^3 - 9z\"")
      ->required();

  auto* cover = app.add_subcommand("cover", "adapted cover construction");
  cover->fallthrough();
  int torsion = 0;
  cover->add_option("--torsion", torsion, "cover C[n] special set")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* thom = app.add_subcommand("thom", "transfer/rigidity fixtures");
  thom->fallthrough();
  thom->require_subcommand(1);
  std::string fixture_file;
  bool weak = false;
  int grid = 5;
  auto* thom_verify = thom->add_subcommand("verify", "verify transfer fixture");
  thom_verify->fallthrough();
  thom_verify->add_option("--fixture", fixture_file, "fixture JSON file")
      ->required();
  thom_verify->add_flag("--weak", weak, "skip strict divisibility checks");
  auto* thom_rigidity =
      thom->add_subcommand("rigidity", "localized rigidity check");
  thom_rigidity->fallthrough();
  thom_rigidity->add_option("--fixture", fixture_file, "fixture JSON file")
      ->required();
  thom_rigidity->add_option("--grid", grid, "grid resolution per period");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.tau = parse_complex(tau_str);
    cfg.scale = scale_str == "ochanine" ? LatticeScale::ochanine
                                        : LatticeScale::witten;
    if (std::string msg = cfg.problem(); !msg.empty()) {
      std::cerr << "configuration error: " << msg << "\n";
      return 2;
    }

    if (theta_eval->parsed()) return cmd_theta_eval(cfg, theta_kind, z_str);
    if (theta_verify->parsed())
      return cmd_theta_verify(cfg, theta_kind, lambda_str);
    if (genus_eval->parsed())
      return cmd_genus_eval(cfg, manifold_file, genus_which, q_order);
    if (rep_analyze->parsed()) return cmd_rep_analyze(cfg, f_str);
    if (cover->parsed()) return cmd_cover(cfg, torsion);
    if (thom_verify->parsed()) return cmd_thom_verify(cfg, fixture_file, weak);
    if (thom_rigidity->parsed())
      return cmd_thom_rigidity(cfg, fixture_file, grid);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const SchemaError& e) {
    json err;
    err["error"] = "schema";
    err["path"] = e.path();
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
