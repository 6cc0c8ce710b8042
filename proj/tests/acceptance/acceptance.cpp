// Acceptance run: prints PASS/FAIL for criteria 1-12, exit status 1 if any fails.
// Usage: acceptance [criterion ...]

#include "commands.hpp"
#include "cstar/calculus.hpp"
#include "cstar/intertwining.hpp"
#include "cstar/jiangsu.hpp"
#include "gen.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>

using namespace cstar;
using cli::Json;

namespace {

// pinned tolerances
const Rational kDefectTol = pow2(-10);      // 2: homomorphism defects, boundary membership
const Rational kIsometryTol = pow2(-8);     // 3
const Rational kEndpointTol = pow2(-30);    // 6
const Rational kPathUnitaryTol = pow2(-28); // 6
const double kLipschitzCap = 8 * M_PI;      // 6
const long kNormWidthBits = 40;             // 7
const Rational kWitnessRatio = 1 - pow2(-8);// 9
const long kSchurBits = 30;                 // 5
const long kBSearchBits = 30;               // 11 (matrix limit)
const long kJiangSuBits = 6;                // 11 (Jiang-Su)
const std::size_t kUhfStages = 3;           // 10
const std::uint64_t kUhfMaxDim = 4096;      // 10

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

Rational q(const std::string& s) { return parse_rational(s); }
Rational q(const Dyadic& d) { return d.to_rational(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1

Json params_certificates() {
  Json all = Json::array();
  for (long m = 0; m <= 3; ++m) all.push_back(cli::jiangsu_params(m));
  return all;
}

bool trial_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Json c = params_certificates();
  double dt = seconds_since(t0);
  const Json& s0 = c[0];
  std::map<std::string, std::string> expect{{"k", "13"}, {"l", "17"}, {"p1", "26"}, {"q1", "51"},
                                            {"r", "17"},  {"s", "13"}, {"alpha", "1"}, {"beta", "4"}};
  for (const auto& [key, val] : expect)
    o.require(s0[key] == val, "stage 0 " + key + " = " + s0[key].get<std::string>() + ", expected " + val);
  // independent recomputation of the stage-0 primes: the two least primes above 2pq = 12
  std::vector<long> primes;
  for (long n = 13; primes.size() < 2; ++n)
    if (trial_prime(n)) primes.push_back(n);
  o.require(primes[0] == 13 && primes[1] == 17, "trial-division primes disagree");
  for (const auto& st : c) o.require(st["invariant_failures"].empty(), "invariants fail at stage " + st["stage"].dump());
  o.require(dt < 1.0, "took " + std::to_string(dt) + " s");
  if (o.pass) o.detail = "stage-0 record exact, invariants hold for m <= 3 (" + std::to_string(dt) + " s)";
  return o;
}

// ---- 2, 3

const Json& verify_certificate() {
  static Json c = cli::jiangsu_verify(0, 9, 20);
  return c;
}

Outcome criterion2() {
  Outcome o;
  const Json& c = verify_certificate();
  o.require(c["defects"].size() == 9, "grid is not 9 points");
  for (const char* key : {"max_multiplicative", "max_adjoint", "max_unital", "max_boundary_distance"})
    o.require(q(c[key].get<std::string>()) <= kDefectTol, std::string(key) + " above 2^-10");
  o.require(c["boundary_points"].get<std::size_t>() >= 5, "boundary checked on too few points");
  if (o.pass) {
    double worst = std::max({q(c["max_multiplicative"].get<std::string>()).get_d(),
                             q(c["max_adjoint"].get<std::string>()).get_d(),
                             q(c["max_unital"].get<std::string>()).get_d(),
                             q(c["max_boundary_distance"].get<std::string>()).get_d()});
    o.detail = "25 pairs x 9 points, worst defect " + std::to_string(worst);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Json& c = verify_certificate();
  o.require(c["isometry"].size() == 5, "expected 5 sample points");
  for (const auto& row : c["isometry"])
    o.require(q(row["gap"].get<std::string>()) <= kIsometryTol, "gap above 2^-8 at " + row["point"].get<std::string>());
  if (o.pass) o.detail = "max gap " + std::to_string(q(c["max_isometry_gap"].get<std::string>()).get_d());
  return o;
}

// ---- 4

RationalMatrix almost_unitary(std::mt19937_64& rng, std::size_t n) {
  // (15/16) u + r / (64 n) with entries of r in the unit box
  RationalMatrix u = gen::random_unitary(rng, n, 6);
  RationalMatrix r = gen::random_matrix(rng, n, 1, 1);
  return make_rational(15, 16) * u + make_rational(1, 64 * static_cast<long>(n)) * r;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(404);
  double worst = 0;
  for (int trial = 0; trial < 100 && o.pass; ++trial) {
    std::size_t n = 1 + trial % 8;
    RationalMatrix a = almost_unitary(rng, n);
    AlmostUnitary au;
    try {
      au = make_almost_unitary(a, make_rational(1, 4));
    } catch (const precondition_error& e) {
      o.fail("sample " + std::to_string(trial) + " is not 1/4-almost unitary");
      break;
    }
    oracle::Real polar = oracle::polar_unitary(a);
    for (long k : {5L, 10L, 20L}) {
      OmegaResult r = omega_n(au, k);
      double d = oracle::to_double(oracle::spectral_norm(oracle::embed(r.w) - polar));
      worst = std::max(worst, d * std::ldexp(1.0, k));
      o.require(d <= std::ldexp(1.0, -k), "trial " + std::to_string(trial) + " n=" + std::to_string(k));
    }
  }
  if (o.pass) o.detail = "100 samples, worst distance / 2^-n = " + std::to_string(worst);
  return o;
}

// ---- 5

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(505);
  DyadicInterval two_pi = mul_2exp(DyadicInterval::pi(), 1);
  for (int trial = 0; trial < 50 && o.pass; ++trial) {
    std::size_t n = 1 + trial % 8;
    RationalMatrix u = gen::random_unitary(rng, n, 6);
    SchurLogResult r = schur_log(u, kSchurBits);
    const std::string tag = "trial " + std::to_string(trial);
    o.require(q(r.exp_error) <= pow2(-kSchurBits), tag + ": exp error");
    DyadicInterval th = DyadicInterval::from_rational(r.theta);
    for (const auto& ev : r.eigenvalues)
      o.require(th.hi() <= ev.lo() && ev.hi() < (th + two_pi).lo(), tag + ": eigenvalue outside branch");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const ComplexInterval &x = r.h(i, j), &y = r.h(j, i);
        bool herm = x.re.lo() == y.re.lo() && x.re.hi() == y.re.hi() && x.im.lo() == (-y.im).lo() &&
                    x.im.hi() == (-y.im).hi();
        o.require(herm, tag + ": enclosure not self-adjoint");
      }
  }
  if (o.pass) o.detail = "50 unitaries, dims 1..8";
  return o;
}

// ---- 6

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(606);
  const long k = 30;
  for (int trial = 0; trial < 4 && o.pass; ++trial) {
    std::size_t n = 2 + trial;
    RationalMatrix u = gen::random_unitary(rng, n, 6), v = gen::random_unitary(rng, n, 6);
    UnitaryPath p(u, v, k);
    const std::string tag = "pair " + std::to_string(trial);
    IntervalMatrix w0 = p.eval(0, k), w1 = p.eval(1, k);
    o.require(q(matrix_norm(w0 - IntervalMatrix(u), 40).hi()) <= kEndpointTol, tag + ": w(0) far from u");
    o.require(q(matrix_norm(w1 - IntervalMatrix(v), 40).hi()) <= kEndpointTol, tag + ": w(1) far from v");
    std::vector<IntervalMatrix> samples;
    for (int i = 0; i <= 16; ++i) {
      IntervalMatrix w = p.eval(make_rational(i, 16), k);
      Dyadic d = max(matrix_norm(w.adjoint() * w - IntervalMatrix::identity(n), 40).hi(),
                     matrix_norm(w * w.adjoint() - IntervalMatrix::identity(n), 40).hi());
      o.require(q(d) <= kPathUnitaryTol, tag + ": unitarity defect at t=" + std::to_string(i) + "/16");
      samples.push_back(w);
    }
    o.require(p.lipschitz().to_double() < kLipschitzCap, tag + ": Lipschitz constant not below 8 pi");
    for (int i = 0; i < 16; ++i)
      for (int j = i + 1; j <= 16; j += 3) {
        Dyadic d = matrix_norm(samples[i] - samples[j], 20).lo();
        o.require(q(d) <= q(p.lipschitz()) * make_rational(j - i, 16), tag + ": Lipschitz bound violated");
      }
  }
  if (o.pass) o.detail = "4 pairs, 17 samples each";
  return o;
}

// ---- 7

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 500 && o.pass; ++trial) {
    std::size_t n = 1 + trial % 32;
    RationalMatrix a = gen::random_matrix(rng, n);
    DyadicInterval r = matrix_norm(a, kNormWidthBits);
    o.require(oracle::contains(r, oracle::spectral_norm(a)), "oracle outside enclosure, trial " + std::to_string(trial));
    o.require(q(r.width()) <= pow2(-kNormWidthBits), "width above 2^-40, trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "500 matrices, dims 1..32";
  return o;
}

// ---- 8

Outcome criterion8() {
  Outcome o;
  for (Rational delta : {Rational(1), make_rational(1, 4), pow2(-10), pow2(-20)}) {
    long N = taylor_order(delta);
    oracle::Big d = oracle::big(delta);
    for (int i = 0; i < 1000; ++i) {
      Rational x = make_rational(1, 2) + make_rational(i, 999);
      oracle::Big err = abs(1 / sqrt(oracle::big(x)) - oracle::big(taylor_inverse_sqrt(x, N)));
      o.require(err < d, "N(" + to_string(delta) + ") fails at x = " + to_string(x));
    }
  }
  if (o.pass) o.detail = "4 tolerances x 1000 grid points";
  return o;
}

// ---- 9

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 100 && o.pass; ++trial) {
    RationalMatrix a = gen::random_matrix(rng, 4, 3, 3);
    auto blocks = block_entries(a, 2, 2);
    Dyadic lb = row_column_search(blocks);
    o.require(lb <= matrix_norm(a, 30).hi(), "lower bound above norm, trial " + std::to_string(trial));
  }
  RationalMatrix e = kron(RationalMatrix::unit(2, 0, 0), RationalMatrix::unit(2, 0, 0));
  auto blocks = block_entries(e, 2, 2);
  auto w = row_column_witness(blocks);
  Dyadic lb = row_column_lower_bound(blocks, w.x, w.y);
  o.require(q(lb) >= kWitnessRatio * q(matrix_norm(e, 30).hi()), "witness bound on e11 (x) e11 too small");
  if (o.pass) o.detail = "100 random elements sound; witness on e11 (x) e11 gives " + std::to_string(lb.to_double());
  return o;
}

// ---- 10

const Json& uhf_certificate() {
  static Json c = cli::uhf_demo(kUhfStages, 20);
  return c;
}

// a (x) 1 for a stage-1 unit, built directly as a sparse Kronecker product at layout (l, r)
SparseMatrix first_copy_unit(std::size_t i, std::size_t j, std::size_t l, std::size_t r) {
  return kron(SparseMatrix::unit(2, i, j), SparseMatrix::identity(std::size_t(1) << (l - 1 + r)));
}

Outcome criterion10() {
  Outcome o;
  const Json& c = uhf_certificate();
  o.require(c["stages"].size() == kUhfStages, "wrong stage count");
  for (const auto& st : c["stages"]) {
    std::size_t n = st["n"].get<std::size_t>();
    Rational target = pow2(-static_cast<long>(n));
    for (const auto& m : st["margins"]) o.require(q(m.get<std::string>()) < target, "margin not below 2^-n");
    o.require(q(st["derived_bound"].get<std::string>()) <= target, "derived bound above 2^-n");
    o.require(st["dim"].get<std::uint64_t>() <= kUhfMaxDim, "dimension above 4096");
  }
  for (const auto& g : c["generators"]) {
    for (const auto& cd : g["cauchy"])
      o.require(q(cd["bound"].get<std::string>()) < q(cd["target"].get<std::string>()), "Cauchy difference too large");
    o.require(g.contains("verify_cau_m2") && g["verify_cau_m2"]["n"].get<std::size_t>() <= 3,
              "verify_cau did not return n <= 3");
  }
  // independent exact check of the stage unitaries against sparse Kronecker products
  IntertwiningEngine<UhfLegBackend> e{UhfLegBackend()};
  e.run(kUhfStages);
  for (const auto& st : e.stages()) {
    const LegPoint& v = st.v;
    SparseMatrix one = SparseMatrix::identity(v.dim());
    o.require(v.m.adjoint() * v.m == one && v.m * v.m.adjoint() == one, "stage unitary not exactly unitary");
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        SparseMatrix x = first_copy_unit(i, j, v.left, v.right);
        o.require(v.m * x == x * v.m, "stage unitary does not commute with a stage-1 unit");
      }
  }
  if (o.pass) o.detail = "3 stages, all margins 0, verify_cau n <= 3 for e_00, e_01, e_10, e_11";
  return o;
}

// ---- 11

Outcome criterion11() {
  Outcome o;
  auto L = doubling_limit(2);
  for (const auto& a : {StarPoly::gen(0), StarPoly::gen(1) * StarPoly::gen(2),
                        StarPoly::gen(3) + StarPoly::scalar(GaussianRational(make_rational(1, 2), 1)) * StarPoly::gen(1)}) {
    try {
      BSearchResult r = b_search_verify(*L, 0, a, doubling_image(a, 2), kBSearchBits);
      o.require(q(r.distance.hi()) < pow2(-kBSearchBits), "matrix-limit image distance not below 2^-30");
    } catch (const certification_error& e) {
      o.fail(std::string("matrix-limit candidate rejected: ") + e.what());
    }
  }
  StarPoly b0 = StarPoly::gen(2), b1 = StarPoly::gen(3), b2 = StarPoly::gen(4);
  StarPoly iota = b0.adjoint() * b0 + b1.adjoint() * b1 + b2.adjoint() * b2;
  try {
    JiangSuCandidate cand = jiangsu_candidate(iota, kJiangSuBits);
    JiangSuVerifyResult r = jiangsu_verify_candidate(cand, kJiangSuBits);
    o.require(q(r.distance.hi()) < pow2(-kJiangSuBits), "Jiang-Su candidate distance not below 2^-6");
    if (o.pass) o.detail = "3 matrix-limit images at k=30; iota*1 candidate at k=6, distance <= " +
                           std::to_string(r.distance.hi().to_double());
  } catch (const certification_error& e) {
    o.fail(std::string("Jiang-Su candidate rejected: ") + e.what());
  }
  return o;
}

// ---- 12

Outcome criterion12() {
  Outcome o;
  o.require(params_certificates().dump() == params_certificates().dump(), "criterion 1 certificate differs");
  o.require(cli::jiangsu_verify(0, 9, 20).dump() == verify_certificate().dump(), "criterion 2 certificate differs");
  o.require(cli::uhf_demo(kUhfStages, 20).dump() == uhf_certificate().dump(), "criterion 10 certificate differs");
  if (o.pass) o.detail = "criteria 1, 2, 10 certificates byte-identical on re-run";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,  criterion4,
                                                          criterion5, criterion6, criterion7,  criterion8,
                                                          criterion9, criterion10, criterion11, criterion12};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    if (!r.pass) ++failures;
    std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.detail << "  ["
              << std::fixed << std::setprecision(1) << seconds_since(t0) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
