// spehlab: desk-scale computations around Speh representations of
// GL_n(F_q), their (k,c) Whittaker models, Ginzburg-Kaplan gamma factors,
// and level-zero local factors.
//
// Commands: cuspidals, speh, bessel-speh, gamma, local-gamma, verify.
// Exit codes: 0 ok / suite passed, 1 verification failure, 2 capacity
// exceeded, 3 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spehlab/json_io.hpp"
#include "spehlab/verify.hpp"

using namespace spehlab;

namespace {

struct CommonOpts {
  int q = 2, k = 2, c = 1;
  int tau = 0;
  std::string pi;  // "char:<e>" or "cusp:<i>"
  double tol = kDefaultTol;
  uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, std::string& config_path) {
  cmd->add_option("--config", config_path, "key=value config file (flags take precedence)");
  cmd->add_option("--q", o.q, "prime field size");
  cmd->add_option("--k", o.k, "cuspidal lives on GL_k");
  cmd->add_option("--c", o.c, "number of induction factors");
  cmd->add_option("--tau", o.tau, "cuspidal index (see `cuspidals`)");
  cmd->add_option("--pi", o.pi, "pi selector: char:<e> or cusp:<i>");
  cmd->add_option("--tol", o.tol, "numeric tolerance");
  cmd->add_option("--seed", o.seed, "deterministic seed");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", o.threads, "worker threads for verify");
}

// Applies `key=value` lines to options not given explicitly on the command
// line: flags > config file > defaults. Returns true if q came from the file.
bool apply_config(CLI::App* cmd, const std::string& path, CommonOpts& o) {
  if (path.empty()) return false;
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open config file " + path);
  std::string line;
  bool set_q = false;
  while (std::getline(f, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto unset = [&](const std::string& flag) { return cmd->count("--" + flag) == 0; };
    if (key == "q" && unset("q")) {
      o.q = std::stoi(val);
      set_q = true;
    }
    else if (key == "k" && unset("k")) o.k = std::stoi(val);
    else if (key == "c" && unset("c")) o.c = std::stoi(val);
    else if (key == "tau" && unset("tau")) o.tau = std::stoi(val);
    else if (key == "pi" && unset("pi")) o.pi = val;
    else if (key == "tol" && unset("tol")) o.tol = std::stod(val);
    else if (key == "seed" && unset("seed")) o.seed = std::stoull(val);
    else if (key == "out" && unset("out")) o.out = val;
    else if (key == "format" && unset("format")) o.format = val;
    else if (key == "threads" && unset("threads")) o.threads = std::stoi(val);
  }
  return set_q;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << text << "\n";
  }
}

Rep make_pi(Workspace& ws, const CommonOpts& o) {
  std::string spec = o.pi;
  if (spec.empty()) spec = o.c == 1 ? "char:0" : "cusp:0";
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("pi selector must be char:<e> or cusp:<i>");
  std::string kind = spec.substr(0, colon);
  int idx = std::stoi(spec.substr(colon + 1));
  if (kind == "char") {
    if (o.c != 1) throw DomainError("char:<e> selectors require c = 1");
    return det_character_rep(1, o.q, MultiplicativeCharacter(o.q, idx));
  }
  if (kind == "cusp") return ws.cuspidals(o.c, o.q).at(idx)->rep;
  throw DomainError("pi selector must be char:<e> or cusp:<i>");
}

std::vector<std::pair<std::string, Rep>> default_pis(Workspace& ws, const CommonOpts& o) {
  std::vector<std::pair<std::string, Rep>> out;
  if (!o.pi.empty()) {
    out.emplace_back(o.pi, make_pi(ws, o));
    return out;
  }
  if (o.c == 1) {
    for (int e = 0; e < o.q - 1; ++e)
      out.emplace_back("char:" + std::to_string(e),
                       det_character_rep(1, o.q, MultiplicativeCharacter(o.q, e)));
  } else {
    const auto& cs = ws.cuspidals(o.c, o.q);
    for (size_t i = 0; i < cs.size(); ++i)
      out.emplace_back("cusp:" + std::to_string(i), cs[i]->rep);
  }
  return out;
}

int cmd_cuspidals(const CommonOpts& o, int n, bool export_reps) {
  AdditiveCharacter psi(o.q);
  std::vector<std::string> rows, csv;
  csv.push_back("index,dim,central_exponent,self_dual");
  if (export_reps) {
    auto cusps = cuspidal_representations(n, o.q, psi, o.seed);
    for (const auto& c : cusps) {
      bool sd = is_isomorphic(c.rep, c.rep.contragredient());
      rows.push_back(JsonObj()
                         .integer("index", c.id)
                         .integer("dim", c.rep.dim)
                         .integer("central_exponent", c.omega.exponent())
                         .boolean("self_dual", sd)
                         .raw("rep", rep_json(c.rep))
                         .render());
    }
    emit(o, json_array(rows));
    return 0;
  }
  auto gg = std::make_shared<GelfandGraev>(n, o.q, psi);
  auto dec = decompose_multiplicity_free(gg, o.seed);
  auto infos = constituent_listing(dec, o.tol);
  int id = 0;
  for (const auto& info : infos) {
    if (!info.cuspidal) continue;
    rows.push_back(JsonObj()
                       .integer("index", id)
                       .integer("dim", info.dim)
                       .integer("central_exponent", info.central_exponent)
                       .boolean("self_dual", info.self_dual)
                       .render());
    csv.push_back(csv_join({std::to_string(id), std::to_string(info.dim),
                            std::to_string(info.central_exponent),
                            info.self_dual ? "1" : "0"}));
    ++id;
  }
  std::string csv_text;
  for (size_t i = 0; i < csv.size(); ++i) csv_text += csv[i] + (i + 1 < csv.size() ? "\n" : "");
  emit(o, o.format == "json" ? json_array(rows) : csv_text);
  return 0;
}

int cmd_speh(const CommonOpts& o) {
  Workspace ws(o.seed);
  auto M = ws.model(o.q, o.k, o.c, o.tau);
  JsonObj j;
  j.integer("q", o.q).integer("k", o.k).integer("c", o.c).integer("tau_id", o.tau);
  j.integer("tau_dim", M->tdim());
  j.integer("coset_count", o.c == 1 ? 1 : M->cosets().size());
  j.integer("model_dim", M->dim());
  if (M->dim() <= 600 && o.c >= 2) {
    MatrixXcd Ps = M->dense([&](const VectorXcd& x) { return M->speh_project_product(x); });
    MatrixXcd St = M->dense([&](const VectorXcd& x) { return M->steinberg_project_product(x); });
    j.integer("speh_rank", lround(Ps.trace().real()));
    j.integer("steinberg_rank", lround(St.trace().real()));
  }
  emit(o, j.render());
  return 0;
}

int cmd_bessel_speh(const CommonOpts& o) {
  Workspace ws(o.seed);
  auto M = ws.model(o.q, o.k, o.c, o.tau);
  GroupTable Gc(o.c, o.q);
  std::vector<std::string> rows, csv;
  csv.push_back("g,value_re,value_im");
  for (int i = 0; i < Gc.size(); ++i) {
    FqMat g = b_tilde_argument(Gc[i], o.k);
    cd v = M->bessel(g);
    rows.push_back(JsonObj().raw("g", matrix_json(g)).complex("value", v).render());
    csv.push_back(csv_join({"\"" + g.str() + "\"", json_num(v.real()), json_num(v.imag())}));
  }
  emit(o, o.format == "json" ? json_array(rows) : [&] {
    std::string s;
    for (size_t i = 0; i < csv.size(); ++i) s += csv[i] + (i + 1 < csv.size() ? "\n" : "");
    return s;
  }());
  return 0;
}

int cmd_gamma(const CommonOpts& o) {
  if (o.k < 2) {
    std::cerr << "gamma factors need k >= 2 (the dual zeta block shape degenerates at k = 1)\n";
    return 3;
  }
  Workspace ws(o.seed);
  auto M = ws.model(o.q, o.k, o.c, o.tau);
  std::vector<std::string> rows, csv;
  csv.push_back("q,k,c,tau_id,pi_id,gt_re,gt_im,g_re,g_im,abs,schur_residual,exceptional");
  for (auto& [pid, pi] : default_pis(ws, o)) {
    auto g = gk_gamma(*M, pi);
    rows.push_back(JsonObj()
                       .integer("q", o.q)
                       .integer("k", o.k)
                       .integer("c", o.c)
                       .integer("tau_id", o.tau)
                       .str("pi_id", pid)
                       .complex("gamma_tilde", g.gamma_tilde)
                       .complex("gamma", g.gamma)
                       .num("abs", std::abs(g.gamma_tilde))
                       .num("schur_residual", g.schur_residual)
                       .boolean("exceptional", g.exceptional)
                       .render());
    csv.push_back(csv_join({std::to_string(o.q), std::to_string(o.k), std::to_string(o.c),
                            std::to_string(o.tau), pid, json_num(g.gamma_tilde.real()),
                            json_num(g.gamma_tilde.imag()), json_num(g.gamma.real()),
                            json_num(g.gamma.imag()), json_num(std::abs(g.gamma_tilde)),
                            json_num(g.schur_residual), g.exceptional ? "1" : "0"}));
  }
  emit(o, o.format == "json" ? json_array(rows) : [&] {
    std::string s;
    for (size_t i = 0; i < csv.size(); ++i) s += csv[i] + (i + 1 < csv.size() ? "\n" : "");
    return s;
  }());
  return 0;
}

std::string ratfun_json(const RatFun& f) {
  auto coeffs = [](const Poly& p) {
    std::vector<std::string> cs;
    for (const cd& v : p.c) cs.push_back(json_complex(v));
    if (cs.empty()) cs.push_back(json_complex(0.0));
    std::string s = "[";
    for (size_t i = 0; i < cs.size(); ++i) s += cs[i] + (i + 1 < cs.size() ? ", " : "");
    s += "]";
    return s;
  };
  return JsonObj()
      .raw("numer", coeffs(f.num()))
      .raw("denom", coeffs(f.den()))
      .str("variable", "X=u*q^{-cs}")
      .render();
}

int cmd_local_gamma(const CommonOpts& o) {
  if (o.k < 2) {
    std::cerr << "gamma factors need k >= 2\n";
    return 3;
  }
  Workspace ws(o.seed);
  auto M = ws.model(o.q, o.k, o.c, o.tau);
  Rep pi = make_pi(ws, o);
  auto g = gk_gamma(*M, pi);
  LevelZeroParams p;
  p.q = o.q;
  p.k = o.k;
  p.c = o.c;
  p.exceptional = g.exceptional;
  p.omega_tau_minus1 = M->tau().omega_minus1();
  if (o.q > 2) {
    FqMat m1(o.c, o.q);
    for (int i = 0; i < o.c; ++i) m1.at(i, i) = uint8_t(o.q - 1);
    cd w = pi(m1).trace() / double(pi.dim);  // pi(-I) is scalar
    p.omega_pi_minus1 = w / std::abs(w);
  }
  RatFun gam = local_gamma(p, g.gamma);
  emit(o, ratfun_json(gam));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speh representations of GL_n(F_q): Whittaker models, Bessel-Speh functions, "
               "Ginzburg-Kaplan gamma factors, level-zero local factors"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOpts o;
  int n_for_cuspidals = 2;
  std::string suite = "all";
  std::string config_path;
  bool stretch = false;
  bool q_given = false;
  double perturb = 0.0;

  auto* c_cusp = app.add_subcommand("cuspidals", "list cuspidal representations of GL_n(F_q)");
  add_common(c_cusp, o, config_path);
  c_cusp->add_option("--n", n_for_cuspidals, "GL_n");
  bool export_reps = false;
  c_cusp->add_flag("--export-reps", export_reps, "include generator matrices per cuspidal");

  auto* c_speh = app.add_subcommand("speh", "Speh module summary for (q,k,c,tau)");
  add_common(c_speh, o, config_path);

  auto* c_bessel = app.add_subcommand("bessel-speh", "Bessel-Speh table over the B-tilde family");
  add_common(c_bessel, o, config_path);

  auto* c_gamma = app.add_subcommand("gamma", "Ginzburg-Kaplan gamma factors");
  add_common(c_gamma, o, config_path);

  auto* c_local = app.add_subcommand("local-gamma", "level-zero local gamma factor as a rational function");
  add_common(c_local, o, config_path);

  auto* c_verify = app.add_subcommand("verify", "run acceptance suites");
  add_common(c_verify, o, config_path);
  c_verify->add_option("suite", suite, "hecke|projectors|whittaker|gamma|local|stretch|all");
  c_verify->add_flag("--stretch", stretch, "include the (3,2,2) stretch case in `all`");
  c_verify->add_option("--perturb", perturb, "inject a gamma perturbation (control path)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  CLI::App* active = nullptr;
  for (CLI::App* sub : {c_cusp, c_speh, c_bessel, c_gamma, c_local, c_verify})
    if (sub->parsed()) active = sub;
  bool config_set_q = false;
  try {
    if (active) config_set_q = apply_config(active, config_path, o);
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 3;
  }

  // the verify suites filter by q only when it was given explicitly
  if (c_verify->parsed() && (c_verify->count("--q") > 0 || config_set_q)) q_given = true;

  try {
    if (c_cusp->parsed()) return cmd_cuspidals(o, n_for_cuspidals, export_reps);
    if (c_speh->parsed()) return cmd_speh(o);
    if (c_bessel->parsed()) return cmd_bessel_speh(o);
    if (c_gamma->parsed()) return cmd_gamma(o);
    if (c_local->parsed()) return cmd_local_gamma(o);
    if (c_verify->parsed()) {
      Workspace ws(o.seed);
      VerifyConfig cfg;
      cfg.tol = o.tol;
      cfg.seed = o.seed;
      cfg.perturb = perturb;
      cfg.threads = o.threads;
      if (q_given) cfg.only_q = o.q;
      SuiteReport rep = run_suite(suite, ws, cfg, stretch);
      std::vector<std::string> rows;
      for (const auto& c : rep.checks) {
        printf("%-4s %-4s residual=%.3e  (%.1fs)  %s\n", c.id.c_str(), c.pass ? "PASS" : "FAIL",
               c.residual, c.seconds, c.detail.c_str());
        rows.push_back(JsonObj()
                           .str("id", c.id)
                           .boolean("pass", c.pass)
                           .num("residual", c.residual)
                           .num("seconds", c.seconds)
                           .str("detail", c.detail)
                           .render());
      }
      printf("suite %s: %s\n", rep.suite.c_str(), rep.pass() ? "PASS" : "FAIL");
      if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        f << JsonObj()
                 .str("suite", rep.suite)
                 .boolean("pass", rep.pass())
                 .raw("checks", json_array(rows))
                 .render()
          << "\n";
      }
      return rep.pass() ? 0 : 1;
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
