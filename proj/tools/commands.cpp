#include "commands.hpp"

#include "CLI11.hpp"
#include "cstar/ast.hpp"
#include "cstar/calculus.hpp"
#include "cstar/intertwining.hpp"
#include "cstar/jiangsu.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cstar::cli {

namespace {

std::string s(const Rational& q) { return to_string(q); }
std::string s(const Integer& z) { return to_string(z); }
std::string s(const Dyadic& d) { return d.str(); }
Json interval(const DyadicInterval& x) { return Json::array({x.lo().str(), x.hi().str()}); }

Json header(const std::string& command) {
  Json j;
  j["format"] = format_tag;
  j["command"] = command;
  return j;
}

Json interval_matrix(const IntervalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({{"re", interval(m(i, j).re)}, {"im", interval(m(i, j).im)}});
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const RationalMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

std::string norm_method(const Presentation& P) {
  if (dynamic_cast<const UhfPresentation*>(&P) || dynamic_cast<const UhfTensorPresentation*>(&P))
    return "sparse-stage-blocks";
  if (dynamic_cast<const LimitPresentation*>(&P)) return "limit-stage";
  return P.realizable() ? "realized" : "oracle";
}

StarPoly stage0_point(const std::string& ast) { return DimensionDropPresentation(2, 3).parse_point(ast); }

// stage-1 generators e_ij of M_2
std::vector<LegPoint> stage_units(std::size_t n, bool second) {
  std::vector<LegPoint> out;
  for (std::size_t i = 0; i < (1u << n); ++i)
    for (std::size_t j = 0; j < (1u << n); ++j)
      out.push_back(second ? LegPoint::unit(0, n, i, j) : LegPoint::unit(n, 0, i, j));
  return out;
}

template <class Engine>
Json stage_record(const typename Engine::Stage& st, bool timings) {
  Json r;
  r["n"] = st.schedule.n;
  r["eps"] = s(st.schedule.eps);
  r["eta"] = s(st.schedule.eta);
  r["k"] = st.schedule.k;
  Json m = Json::array();
  for (const auto& x : st.margins()) m.push_back(s(x));
  r["margins"] = m;
  r["v_code"] = s(st.v_code);
  Json a = Json::array();
  for (const auto& c : st.a_codes) a.push_back(s(c));
  r["a_codes"] = a;
  r["exact_unitary"] = st.exact_unitary;
  r["derived_bound"] = s(st.derived_bound);
  r["source"] = st.source;
  r["wall_time"] = timings ? std::to_string(st.wall_time) : "0";
  return r;
}

template <class Engine>
Json run_engine(Engine& e, std::size_t stages, Json out, bool timings) {
  out["stages"] = Json::array();
  try {
    for (std::size_t n = 1; n <= stages; ++n) out["stages"].push_back(stage_record<Engine>(e.step(), timings));
  } catch (const stage_budget_error& err) {
    Json m = Json::array();
    for (const auto& x : err.best_margins) m.push_back(s(x));
    out["failure"] = {{"stage", e.stages().size() + 1}, {"message", err.what()}, {"best_margins", m}};
  }
  return out;
}

}  // namespace

Json norm_certificate(const std::string& presentation, const std::string& point, const std::string& code, long k,
                      bool timings) {
  auto t0 = std::chrono::steady_clock::now();
  PresentationPtr P = parse_presentation(presentation);
  StarPoly p;
  if (!point.empty()) {
    p = P->parse_point(point);
  } else {
    Integer c;
    if (code.empty() || c.set_str(code, 10) != 0 || c < 0) throw parse_error("norm: --point or a valid --code is required");
    p = decode_poly(c);
    P->check_point(p);
  }
  DyadicInterval r = P->norm(p, k);
  Json j = header("norm");
  j["presentation"] = P->descriptor();
  j["point"] = print_expr(from_starpoly(p));
  j["code"] = s(encode_poly(p));
  j["k"] = k;
  j["lo"] = r.lo().str();
  j["hi"] = r.hi().str();
  j["method"] = norm_method(*P);
  j["budget"] = std::to_string(enum_budget_from_env());
  if (timings)
    j["timings"] = {{"total", std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())}};
  return j;
}

Json encode_certificate(const std::string& presentation, const std::string& point) {
  StarPoly p;
  Json j = header("encode");
  if (!presentation.empty()) {
    PresentationPtr P = parse_presentation(presentation);
    p = P->parse_point(point);
    j["presentation"] = P->descriptor();
  } else {
    p = to_starpoly(parse_expr(point));
  }
  j["point"] = print_expr(from_starpoly(p));
  j["code"] = s(encode_poly(p));
  return j;
}

Json decode_certificate(const std::string& presentation, const std::string& code) {
  Integer c;
  if (c.set_str(code, 10) != 0 || c < 0) throw parse_error("decode: code must be a natural number");
  StarPoly p = decode_poly(c);
  Json j = header("decode");
  if (!presentation.empty()) {
    PresentationPtr P = parse_presentation(presentation);
    P->check_point(p);
    j["presentation"] = P->descriptor();
  }
  j["code"] = s(c);
  j["point"] = print_expr(from_starpoly(p));
  j["canonical"] = encode_poly(p) == c;
  return j;
}

Json polar_certificate(const std::string& matrix_file, long n, const std::string& eps) {
  RationalMatrix a = read_matrix_file(matrix_file);
  AlmostUnitary au = make_almost_unitary(a, parse_rational(eps));
  OmegaResult r = omega_n(au, n);
  Json j = header("polar");
  j["n"] = n;
  j["eps"] = s(au.eps);
  j["taylor_order"] = r.N;
  j["error"] = s(r.error);
  j["matrix"] = matrix_text(r.w);
  return j;
}

Json schur_log_certificate(const std::string& matrix_file, long k) {
  RationalMatrix u = read_matrix_file(matrix_file);
  SchurLogResult r = schur_log(u, k);
  Json j = header("schur-log");
  j["k"] = k;
  j["theta"] = s(r.theta);
  Json ev = Json::array();
  for (const auto& e : r.eigenvalues) ev.push_back(interval(e));
  j["eigenvalues"] = ev;
  j["exp_error"] = s(r.exp_error);
  j["norm_bound"] = s(r.norm_bound);
  j["h"] = interval_matrix(r.h);
  return j;
}

Json path_certificate(const std::string& u_file, const std::string& v_file, const std::string& t, long k) {
  RationalMatrix u = read_matrix_file(u_file), v = read_matrix_file(v_file);
  Rational tt = parse_rational(t);
  if (tt < 0 || tt > 1) throw precondition_error("path: t must lie in [0, 1]");
  UnitaryPath P(u, v, k);
  Json j = header("path");
  j["t"] = s(tt);
  j["k"] = k;
  j["endpoint_error"] = s(P.endpoint_error());
  j["lipschitz"] = s(P.lipschitz());
  j["w"] = interval_matrix(P.eval(tt, k));
  return j;
}

Json jiangsu_params(long stage) {
  if (stage < 0) throw precondition_error("jiangsu params: stage must be >= 0");
  JiangSuStage st = stage_params(stage);
  Json j = header("jiangsu params");
  j["stage"] = stage;
  j["p"] = s(st.p);
  j["q"] = s(st.q);
  j["k"] = s(st.k);
  j["l"] = s(st.l);
  j["p1"] = s(st.p_next);
  j["q1"] = s(st.q_next);
  j["r"] = s(st.r);
  j["s"] = s(st.s);
  j["alpha"] = s(st.alpha);
  j["beta"] = s(st.beta);
  j["alpha_v"] = s(st.alpha_v);
  j["beta_v"] = s(st.beta_v);
  j["invariant_failures"] = stage_invariant_failures(st);
  return j;
}

Json jiangsu_phi(const std::string& point, const std::string& t, long k) {
  StarPoly f = stage0_point(point);
  Rational tt = parse_rational(t);
  if (tt < 0 || tt > 1) throw precondition_error("jiangsu phi: t must lie in [0, 1]");
  PhiImage img = phi(0, f);
  Json j = header("jiangsu phi");
  j["point"] = print_expr(from_starpoly(f));
  j["t"] = s(tt);
  j["k"] = k;
  j["dim"] = img.dim();
  j["norm_at"] = interval(img.norm_at(tt, k));
  if (tt == 0 || tt == 1) j["boundary_distance"] = s(img.boundary_distance(tt == 0 ? 0 : 1, k));
  return j;
}

Json jiangsu_verify(long stage, long grid, long k) {
  if (grid < 2) throw precondition_error("jiangsu verify: grid needs at least 2 points");
  auto J = jiangsu_map(stage);  // infeasible beyond stage 0
  const DimensionDropPresentation& Z = J->source();
  std::vector<StarPoly> gens;
  for (std::uint64_t g = 0; g < Z.p() + Z.q(); ++g) gens.push_back(StarPoly::gen(g));

  Json j = header("jiangsu verify");
  j["stage"] = stage;
  j["grid"] = grid;
  j["k"] = k;
  Dyadic mul(0), adj(0), unit(0);
  Json rows = Json::array();
  for (long i = 0; i < grid; ++i) {
    Rational t = make_rational(i, grid - 1);
    Dyadic m(0), a(0), u(0);
    for (const auto& x : gens)
      for (const auto& y : gens) {
        HomomorphismDefects d = phi_defects(*J, x, y, t, k);
        m = max(m, d.multiplicative);
        a = max(a, d.adjoint);
        u = max(u, d.unital);
      }
    rows.push_back({{"t", s(t)}, {"multiplicative", s(m)}, {"adjoint", s(a)}, {"unital", s(u)}});
    mul = max(mul, m);
    adj = max(adj, a);
    unit = max(unit, u);
  }
  j["defects"] = rows;
  j["max_multiplicative"] = s(mul);
  j["max_adjoint"] = s(adj);
  j["max_unital"] = s(unit);

  Dyadic bd(0);
  std::vector<StarPoly> members = gens;
  for (const auto& x : gens)
    for (const auto& y : gens)
      if (!(x * y).is_zero()) members.push_back(x * y);
  for (const auto& f : members) {
    PhiImage img(J, f);
    bd = max(bd, max(img.boundary_distance(0, k), img.boundary_distance(1, k)));
  }
  j["boundary_points"] = members.size();
  j["max_boundary_distance"] = s(bd);

  // b_0, a_0 b_0, 3 * 1, a_0* a_0 + b_1, a_1 - (1/3) b_2*
  std::vector<std::pair<std::string, StarPoly>> samples = {
      {"b0", StarPoly::gen(Z.b(0))},
      {"a0*b0", StarPoly::gen(Z.a(0)) * StarPoly::gen(Z.b(0))},
      {"3", StarPoly::scalar(3)},
      {"a0^*a0+b1", StarPoly::gen(Z.a(0)).adjoint() * StarPoly::gen(Z.a(0)) + StarPoly::gen(Z.b(1))},
      {"a1-b2^*/3", StarPoly::gen(Z.a(1)) - StarPoly::scalar(make_rational(1, 3)) * StarPoly::gen(Z.b(2)).adjoint()},
  };
  // the isometry check needs 2^-8, so the sup norms run at 12 bits
  const long iso_bits = std::min<long>(k, 12);
  Json iso = Json::array();
  Dyadic gap(0);
  for (const auto& [name, f] : samples) {
    DyadicInterval sup = PhiImage(J, f).sup_norm(iso_bits);
    DyadicInterval dd = dd_norm(Z.p(), Z.q(), f, iso_bits);
    Dyadic g = max(sub(sup.hi(), dd.lo(), MPFR_RNDU), sub(dd.hi(), sup.lo(), MPFR_RNDU));
    gap = max(gap, g);
    iso.push_back({{"point", name}, {"phi_sup_norm", interval(sup)}, {"dd_norm", interval(dd)}, {"gap", s(g)}});
  }
  j["isometry"] = iso;
  j["max_isometry_gap"] = s(gap);
  return j;
}

Json uhf_demo(std::size_t stages, long k) {
  if (stages == 0) throw precondition_error("uhf demo: at least one stage");
  IntertwiningEngine<UhfLegBackend> e{UhfLegBackend()};
  Json j = header("uhf demo");
  j["a"] = "uhf:2^inf";
  j["b"] = "tensor(uhf:2^inf,uhf:2^inf)";
  j["phi"] = "id-tensor-unit";
  j["supplier"] = "uhf-legs";
  j["k"] = k;
  Json st = Json::array();
  for (std::size_t n = 1; n <= stages; ++n) {
    const auto& s0 = e.step();
    Json r = stage_record<IntertwiningEngine<UhfLegBackend>>(s0, false);
    r.erase("wall_time");
    r["dim"] = s0.v.dim();
    HalfFlipReport h = certify_half_flip(half_flip_supplier(n), stage_units(n, false), stage_units(n, true), k);
    r["half_flip"] = {{"commutator", s(h.commutator)}, {"absorption", s(h.absorption)}, {"unitarity", s(h.unitarity)}};
    st.push_back(r);
  }
  j["stages"] = st;

  // Cauchy differences and convergence indices for the stage-1 generators
  Json gens = Json::array();
  for (std::size_t g = 1; g <= 4; ++g) {
    LegPoint a = e.backend().a_point(g);
    Json row;
    row["generator"] = g;
    Json cd = Json::array();
    for (std::size_t n = 1; n < stages; ++n)
      cd.push_back({{"n", n}, {"bound", s(e.cauchy_difference(a, n, k))}, {"target", s(pow2(-static_cast<long>(n) - 1))}});
    row["cauchy"] = cd;
    if (stages >= 3) {
      auto c = e.verify_cau(a, 2);
      row["verify_cau_m2"] = {{"n", c.n}, {"bound", s(c.bound)}};
    }
    gens.push_back(row);
  }
  j["generators"] = gens;
  return j;
}

namespace {

std::vector<RationalMatrix> matrix_points(const Presentation& P, const Json& list) {
  std::vector<RationalMatrix> out;
  if (list.is_null()) return out;
  if (!list.is_array()) throw parse_error("intertwine: prefix lists must be arrays of point ASTs");
  for (const auto& a : list) {
    if (!a.is_string()) throw parse_error("intertwine: prefix entries must be strings");
    out.push_back(std::get<RationalMatrix>(realize(P, P.parse_point(a.get<std::string>()))));
  }
  return out;
}

std::size_t matrix_size(const PresentationPtr& P) {
  auto m = std::dynamic_pointer_cast<const MatrixPresentation>(P);
  if (!m) throw parse_error("intertwine: " + P->descriptor() + " is not a matrix:n presentation");
  return m->n();
}

}  // namespace

Json intertwine(const Json& config, bool timings) {
  if (!config.is_object()) throw parse_error("intertwine: config must be a JSON object");
  auto str = [&](const char* key, const char* fallback) {
    if (!config.contains(key)) {
      if (fallback) return std::string(fallback);
      throw parse_error(std::string("intertwine: config needs '") + key + "'");
    }
    if (!config[key].is_string()) throw parse_error(std::string("intertwine: '") + key + "' must be a string");
    return config[key].get<std::string>();
  };
  auto num = [&](const char* key, std::uint64_t fallback) -> std::uint64_t {
    if (!config.contains(key)) return fallback;
    if (!config[key].is_number_unsigned()) throw parse_error(std::string("intertwine: '") + key + "' must be a natural");
    return config[key].get<std::uint64_t>();
  };
  const std::string a = str("a", nullptr), b = str("b", nullptr), map = str("phi", "id-tensor-unit"),
                    supplier = str("supplier", "enumerate");
  const std::size_t stages = num("stages", 3);
  EngineOptions opt;
  opt.budget = num("budget", 0);
  if (map != "id-tensor-unit") throw parse_error("intertwine: unknown map '" + map + "'");

  PresentationPtr A = parse_presentation(a), B = parse_presentation(b);
  Json j = header("intertwine");
  j["a"] = A->descriptor();
  j["b"] = B->descriptor();
  j["phi"] = map;
  j["supplier"] = supplier;
  j["stage_count"] = stages;
  j["budget"] = std::to_string(opt.budget ? opt.budget : enum_budget_from_env());

  if (auto BU = std::dynamic_pointer_cast<const UhfTensorPresentation>(B)) {
    if (A->descriptor() != "uhf:2^inf" || BU->descriptor() != "tensor(uhf:2^inf,uhf:2^inf)")
      throw infeasible_error("intertwine: only M_{2^inf} is supported among UHF algebras");
    if (supplier != "uhf-legs" && supplier != "enumerate")
      throw parse_error("intertwine: supplier for UHF must be uhf-legs or enumerate");
    opt.use_supplier = supplier == "uhf-legs";
    IntertwiningEngine<UhfLegBackend> e(UhfLegBackend(), opt);
    return run_engine(e, stages, j, timings);
  }
  auto T = std::dynamic_pointer_cast<const TensorPresentation>(B);
  if (!T || T->left()->descriptor() != A->descriptor())
    throw parse_error("intertwine: b must be tensor(a, matrix:m)");
  std::size_t n = matrix_size(A), m = matrix_size(T->right());
  MatrixTensorBackend::Supplier sup;
  if (supplier == "identity")
    sup = MatrixTensorBackend::Supplier::identity;
  else if (supplier == "enumerate")
    sup = MatrixTensorBackend::Supplier::none;
  else
    throw parse_error("intertwine: supplier for matrices must be identity or enumerate");
  MatrixTensorBackend be(n, m, matrix_points(*A, config.value("a_prefix", Json())),
                         matrix_points(*B, config.value("b_prefix", Json())), sup);
  IntertwiningEngine<MatrixTensorBackend> e(be, opt);
  return run_engine(e, stages, j, timings);
}

// ---- command line

namespace {

Json error_record(const std::string& command, const std::string& kind, const std::string& message) {
  Json j = header(command);
  j["error"] = kind;
  j["message"] = message;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified computations for presentations of C*-algebras", "cstar"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Json result;
  std::string command;
  std::function<Json()> action;

  std::string pres, point, code, mfile, ufile, vfile, t = "1/2", eps = "1/4", cfg, what;
  long k = 20, n = 10, stage = 0, grid = 9;
  std::size_t stages = 3;
  bool timings = false;

  auto* norm = app.add_subcommand("norm", "certified norm of a rational point");
  norm->add_option("--presentation", pres, "descriptor, e.g. matrix:2")->required();
  norm->add_option("--point", point, "point as an s-expression AST");
  norm->add_option("--code", code, "point as a natural-number code");
  norm->add_option("--prec", k, "enclosure width 2^-k");
  norm->add_flag("--timings", timings, "add wall-clock timings (not reproducible)");
  norm->callback([&] { action = [&] { return norm_certificate(pres, point, code, k, timings); }; });

  auto* enc = app.add_subcommand("encode", "code of a point");
  enc->add_option("--presentation", pres);
  enc->add_option("--point", point)->required();
  enc->callback([&] { action = [&] { return encode_certificate(pres, point); }; });

  auto* dec = app.add_subcommand("decode", "point of a code");
  dec->add_option("--presentation", pres);
  dec->add_option("--code", code)->required();
  dec->callback([&] { action = [&] { return decode_certificate(pres, code); }; });

  auto* pol = app.add_subcommand("polar", "omega_n of an almost unitary");
  pol->add_option("--matrix", mfile)->required();
  pol->add_option("--n", n);
  pol->add_option("--eps", eps, "certified almost-unitarity bound");
  pol->callback([&] { action = [&] { return polar_certificate(mfile, n, eps); }; });

  auto* sl = app.add_subcommand("schur-log", "self-adjoint logarithm of a rational unitary");
  sl->add_option("--matrix", mfile)->required();
  sl->add_option("--prec", k);
  sl->callback([&] { action = [&] { return schur_log_certificate(mfile, k); }; });

  auto* pth = app.add_subcommand("path", "unitary path between two rational unitaries");
  pth->add_option("--u", ufile)->required();
  pth->add_option("--v", vfile)->required();
  pth->add_option("--t", t);
  pth->add_option("--prec", k);
  pth->callback([&] { action = [&] { return path_certificate(ufile, vfile, t, k); }; });

  auto* js = app.add_subcommand("jiangsu", "Jiang-Su connecting maps");
  js->require_subcommand(1);
  auto* jp = js->add_subcommand("params", "stage record");
  jp->add_option("--stage", stage)->required();
  jp->callback([&] { action = [&] { return jiangsu_params(stage); }; });
  auto* jphi = js->add_subcommand("phi", "Phi_0 of a stage-0 point");
  jphi->add_option("--point", point)->required();
  jphi->add_option("--t", t);
  jphi->add_option("--prec", k);
  jphi->callback([&] { action = [&] { return jiangsu_phi(point, t, k); }; });
  auto* jv = js->add_subcommand("verify", "homomorphism, boundary and isometry suite");
  jv->add_option("--stage", stage);
  jv->add_option("--grid", grid);
  jv->add_option("--prec", k);
  jv->callback([&] { action = [&] { return jiangsu_verify(stage, grid, k); }; });

  auto* uhf = app.add_subcommand("uhf", "M_{2^inf} demonstrations");
  uhf->require_subcommand(1);
  auto* demo = uhf->add_subcommand("demo", "half-flip stages with certificates");
  demo->add_option("--stages", stages);
  demo->add_option("--prec", k);
  demo->callback([&] { action = [&] { return uhf_demo(stages, k); }; });

  auto* it = app.add_subcommand("intertwine", "staged intertwining search");
  it->add_option("--config", cfg, "JSON config file")->required();
  it->add_flag("--timings", timings, "record wall_time (not reproducible)");
  it->callback([&] {
    action = [&] {
      std::ifstream in(cfg);
      if (!in) throw parse_error("intertwine: cannot read " + cfg);
      Json c;
      try {
        c = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw parse_error(std::string("intertwine: ") + e.what());
      }
      return intertwine(c, timings);
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    out << error_record(args.empty() ? "" : args.front(), "parse", e.what()).dump(2) << "\n";
    return 2;
  }
  command = args.empty() ? "" : args.front();
  try {
    result = action();
  } catch (const parse_error& e) {
    err << e.what() << "\n";
    out << error_record(command, "parse", e.what()).dump(2) << "\n";
    return 2;
  } catch (const precondition_error& e) {
    err << e.what() << "\n";
    out << error_record(command, "parse", e.what()).dump(2) << "\n";
    return 2;
  } catch (const infeasible_error& e) {
    out << error_record(command, "infeasible", e.what()).dump(2) << "\n";
    return 3;
  } catch (const certification_error& e) {
    out << error_record(command, "certification", e.what()).dump(2) << "\n";
    return 4;
  }
  out << result.dump(2) << "\n";
  if (result.contains("failure")) return 3;
  return 0;
}

}  // namespace cstar::cli
