#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "latdec/analysis.hpp"
#include "latdec/constructions.hpp"
#include "latdec/decoders.hpp"
#include "latdec/enumerate.hpp"
#include "latdec/errors.hpp"
#include "latdec/sim.hpp"

#ifndef LATDEC_DATA_DIR
#define LATDEC_DATA_DIR "data"
#endif

using namespace latdec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Appends "name: ok|FAILED (info)" and folds into pass.
void check(Outcome& o, bool ok, const std::string& name, const std::string& info = {}) {
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += name + (ok ? "" : " FAILED") + (info.empty() ? "" : " (" + info + ")");
  o.pass = o.pass && ok;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

using Key = std::vector<long long>;

std::set<Key> keys(const DecodeOutcome& o) {
  std::set<Key> s;
  for (const auto& c : o.candidates) {
    Key k;
    for (double x : c.point) k.push_back(std::llround(x * 1e6));
    s.insert(k);
  }
  return s;
}

std::vector<double> uniform_query(std::mt19937_64& rng, std::size_t n, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<double> y(n);
  for (auto& v : y) v = u(rng);
  return y;
}

int oracle_mismatches(const LatticeDecoder& dec, const LatticeBasis& lattice, double delta, ListConfig cfg,
                      int queries, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  cfg.delta = delta;
  const double d = lattice.min_sq_norm_d();
  int bad = 0;
  for (int t = 0; t < queries; ++t) {
    const auto y = uniform_query(rng, lattice.dim(), 2.0);
    if (keys(decode_list(dec, y, cfg)) != keys(sphere_list(lattice, y, delta * d))) ++bad;
  }
  return bad;
}

DecoderPtr d4_decoder() {
  auto t = std::make_shared<SphereDecoder>(integer_lattice(1));
  auto v = std::make_shared<SphereDecoder>(scale_lattice(integer_lattice(1), QSqrt7(2)));
  return std::make_shared<ParityDecoder>(t, v, 4, "D4");
}

/// Queries x + e with x a random lattice point and |e|^2 < 0.999 rho^2;
/// counts decodes that differ from the sphere-decoding CVP point.
int bdd_failures(const LatticeDecoder& dec, const LatticeBasis& lattice, int queries, std::uint64_t seed) {
  const std::size_t n = lattice.dim();
  const Eigen::MatrixXd g = lattice.generator_d();
  const SphereDecoder oracle(lattice);
  const double rho2 = lattice.min_sq_norm_d() / 4;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-3, 3);
  int bad = 0;
  std::vector<double> y(n), want(n), got(n), e(n);
  for (int t = 0; t < queries; ++t) {
    Eigen::RowVectorXd z(n);
    for (std::size_t i = 0; i < n; ++i) z(i) = coef(rng);
    const Eigen::RowVectorXd x = z * g;
    double norm = 0;
    for (auto& v : e) {
      v = gauss(rng);
      norm += v * v;
    }
    const double s = std::sqrt(0.999 * rho2 * std::pow(u(rng), 1.0 / n) / norm);
    for (std::size_t i = 0; i < n; ++i) y[i] = x(i) + s * e[i];
    DecodeStats st0, st1;
    oracle.nearest(y.data(), st0, want.data());
    dec.nearest(y.data(), st1, got.data());
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(got[i] - want[i]) > 1e-6 || std::abs(want[i] - x(i)) > 1e-6) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

double vol_2n(const LatticeBasis& l) { return std::pow(l.volume_sq().to_double(), 1.0 / l.dim()); }

std::vector<std::pair<double, double>> curve_of(const SimResult& r, double norm = 1.0) {
  std::vector<std::pair<double, double>> c;
  for (const auto& p : r.points) c.emplace_back(p.vnr_db, p.pe / norm);
  return c;
}

std::string points_str(const SimResult& r) {
  std::ostringstream os;
  for (const auto& p : r.points) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%.2f dB: %llu/%llu = %.3g", os.tellp() > 0 ? ", " : "", p.vnr_db,
                  static_cast<unsigned long long>(p.errors), static_cast<unsigned long long>(p.trials), p.pe);
    os << buf;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Outcome construction_suite() {
  Outcome o;
  const TurynStructure leech = leech_structure();
  const LatticeBasis& l = leech.lattice;
  const QSqrt7 leech_min = min_distance(l);
  check(o, l.is_even() && l.volume_sq() == QSqrt7(1) && leech_min == QSqrt7(4), "Leech even, vol 1, d 4");

  const LatticeBasis e = with_enumerated_figures(e8());
  check(o, e.min_sq_norm()->value == QSqrt7(2) && e.volume_sq() == QSqrt7(1) && e.kissing()->value == 240u,
        "E8 d 2, vol 1, tau 240");

  // polarize() raises on any failed identity.
  const PolarisationTriple p = polarize(LatticeBasis::from_complex(e8_half_lambda_basis()));
  check(o, p.t.min_sq_norm()->value == QSqrt7(2) && p.t_2theta.min_sq_norm()->value == QSqrt7(2),
        "polarize(E8) identities");

  const NebeStructure ns = nebe_structure(leech_lambda_basis());
  check(o, ns.report.even && ns.report.unimodular && ns.turyn.lattice.dim() == 72,
        "N72 even, vol 1, polarisation identities");
  return o;
}

Outcome kissing_numbers() {
  Outcome o;
  const std::uint64_t tau = kissing(leech_turyn());
  check(o, tau == 196560u, "Lambda24 shell", std::to_string(tau));
  const std::uint64_t tau72 = kissing_3parity_leech();
  check(o, tau72 == 28894320u, "L3x24", std::to_string(tau72));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const int q = 500;
  ListConfig plain;
  ListConfig s1;
  s1.split1 = true;
  ListConfig s2 = s1;
  s2.split2 = true;
  const std::vector<std::pair<std::string, ListConfig>> cfgs = {{"plain", plain}, {"split1", s1}, {"split2", s2}};
  std::uint64_t seed = 100;
  auto run_set = [&](const std::string& name, const LatticeDecoder& dec, const LatticeBasis& lattice,
                     const std::vector<double>& deltas, bool splits) {
    int bad = 0;
    int pairs = 0;
    for (double delta : deltas) {
      for (const auto& [cname, cfg] : cfgs) {
        if (!splits && cname != "plain") continue;
        bad += oracle_mismatches(dec, lattice, delta, cfg, q, ++seed);
        ++pairs;
      }
    }
    check(o, bad == 0, name, std::to_string(pairs * q) + " queries, " + std::to_string(bad) + " mismatches");
  };
  const std::vector<double> all = {0.2, 0.3, 0.5, 0.75};
  run_set("D4", *d4_decoder(), checkerboard(4), all, true);
  for (std::size_t n : {4, 8, 16}) {
    const ParityFamily fam = barnes_wall_family(n);
    run_set("BW" + std::to_string(n), *parity_family_decoder(fam), fam.top(), all, true);
  }
  const TurynStructure st = leech_structure();
  run_set("Lambda24", *leech_list_decoder(st), st.lattice, {0.2, 0.3, 0.5}, false);
  return o;
}

Outcome bdd_guarantee() {
  Outcome o;
  const int q = 10000;
  const int d4 = bdd_failures(*d4_decoder(), checkerboard(4), q, 1);
  check(o, d4 == 0, "D4 parity BDD", std::to_string(d4) + "/" + std::to_string(q));
  for (std::size_t n : {16, 32}) {
    const ParityFamily fam = barnes_wall_family(n);
    const int bad = bdd_failures(*parity_family_decoder(fam), fam.top(), q, n);
    check(o, bad == 0, "BW" + std::to_string(n) + " recursive BDD", std::to_string(bad) + "/" + std::to_string(q));
  }
  const TurynStructure st = leech_structure();
  const int lb = bdd_failures(*leech_qmld_decoder(st), st.lattice, q, 24);
  check(o, lb == 0, "Lambda24 king BDD", std::to_string(lb) + "/" + std::to_string(q));
  return o;
}

/// Fits calls = C * n^p (C as the geometric mean of the ratios) and checks
/// every point lies within a factor 2 of the fit.
bool fits_power(const std::vector<std::pair<double, double>>& pts, double p, std::string& info) {
  double log_c = 0;
  for (const auto& [n, calls] : pts) log_c += std::log(calls / std::pow(n, p));
  const double c = std::exp(log_c / pts.size());
  bool ok = true;
  double worst = 1;
  for (const auto& [n, calls] : pts) {
    const double r = calls / (c * std::pow(n, p));
    worst = std::max(worst, std::max(r, 1 / r));
    ok = ok && r <= 2 && r >= 0.5;
  }
  info = "C=" + fmt("%.4g", c) + ", worst ratio " + fmt("%.3f", worst);
  return ok;
}

std::uint64_t bdd_calls(const LatticeDecoder& dec, std::size_t n) {
  std::mt19937_64 rng(5);
  const auto y = uniform_query(rng, n, 2.0);
  std::vector<double> out(n);
  DecodeStats st;
  dec.nearest(y.data(), st, out.data());
  return st.calls(0);
}

Outcome complexity_scaling() {
  Outcome o;
  std::vector<std::pair<double, double>> bw;
  for (std::size_t n : {4, 8, 16, 32, 64, 128}) {
    const ParityFamily fam = barnes_wall_family(n);
    bw.emplace_back(n, bdd_calls(*parity_family_decoder(fam), n));
  }
  std::string info;
  check(o, fits_power(bw, 2.0, info), "BW n^2", info);

  ParityFamilySpec spec;
  spec.base = gaussian_integer_lattice(1);
  spec.ring = RingTag::GaussianInt;
  spec.theta = phi_elem();
  spec.k = 3;
  spec.depth = 4;
  const ParityFamily fam = parity_family(spec);
  std::vector<std::pair<double, double>> k3;
  for (std::size_t lv = 1; lv <= spec.depth; ++lv) {
    ParityFamily sub = fam;
    sub.levels.resize(lv + 1);
    const std::size_t n = sub.top().dim();
    k3.emplace_back(n, bdd_calls(*parity_family_decoder(sub), n));
  }
  check(o, fits_power(k3, 1.0 + 1.0 / std::log2(3.0), info), "k=3 n^(1+1/log2 3)", info);
  return o;
}

Outcome predictor_consistency() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  const int trials = 1000000;
  for (int n : {8, 16, 24}) {
    const double s2 = 0.25;
    const double r = 0.3 * n;  // near the median, where the tail is resolvable
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      double s = 0;
      for (int i = 0; i < n; ++i) {
        const double w = g(rng);
        s += w * w * s2;
      }
      if (s > r) ++hits;
    }
    const double p = chi_square_tail(n, r, s2);
    const double se = std::sqrt(p * (1 - p) / trials);
    const double z = std::abs(hits / double(trials) - p) / se;
    check(o, z < 3, "chi-square n=" + std::to_string(n), fmt("%.2f SE", z));
  }
  double worst = 0;
  for (int k : {2, 3}) {
    PredictorSpec spec;
    spec.k = k;
    spec.depth = 1;
    spec.base = BaseCondition::chi_square(24, 4.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double db = -1.0 + 0.4 * i;
      const double delta = 0.3 + 0.02 * i;
      worst = std::max(worst, std::abs(u_recursion(spec, delta, db) -
                                       parity_depth1_explicit(k, 24, 4.0, 1.0, delta, db)));
    }
  }
  check(o, worst <= 1e-12, "depth-1 recursion vs explicit", fmt("max diff %.2g", worst));
  return o;
}

PredictorSpec bw_spec(int depth) {
  PredictorSpec spec;
  spec.family = PredictorFamily::GenericParity;
  spec.k = 2;
  spec.depth = depth;
  spec.base = BaseCondition::chi_square(2, 1.0, 1.0);
  return spec;
}

PredictorSpec leech_form_spec() {
  PredictorSpec spec;
  spec.family = PredictorFamily::Leech;
  spec.k = 3;
  spec.depth = 1;
  spec.base = BaseCondition::chi_square(24, 4.0, 1.0);
  return spec;
}

Outcome gaussian_reproduction() {
  Outcome o;
  {
    // BW16 modified list decoder at delta* for Pe 1e-5 at 4.5 dB.
    const double delta = delta_star_modified(bw_spec(3), 4.5, 1e-5).delta;
    const ParityFamily fam = barnes_wall_family(16);
    SimPlan plan;
    plan.decoder = parity_family_decoder(fam);
    plan.vol_2n = vol_2n(fam.top());
    plan.vnr_grid_db = {4.5, 4.75};
    plan.max_trials = 60'000'000;
    plan.decode = SimDecode::List;
    plan.list.delta = delta;
    plan.list.removing_step = false;
    plan.seed = 71;
    const SimResult r = run(plan);
    const auto x = crossing_db(curve_of(r), 1e-5);
    check(o, x && std::abs(*x - 4.5) <= 0.25, "[a] BW16 Pe 1e-5",
          "delta* " + fmt("%.4f", delta) + ", crossing " + (x ? fmt("%.2f dB", *x) : "none") + ", " +
              points_str(r));
  }
  {
    const TurynStructure st = leech_structure();
    SimPlan plan;
    plan.decoder = leech_qmld_decoder(st);
    plan.vol_2n = 1.0;
    plan.vnr_grid_db = {3.25, 3.5};
    plan.max_trials = 10'000'000;
    plan.seed = 72;
    const SimResult r = run(plan);
    const auto x = crossing_db(curve_of(r), 1e-4);
    check(o, x && std::abs(*x - 3.3) <= 0.25, "[b] Lambda24 QMLD Pe 1e-4",
          "crossing " + (x ? fmt("%.2f dB", *x) : "none") + ", " + points_str(r));
  }
  {
    const auto r = delta_star_modified(leech_form_spec(), 2.02, 72e-5);
    check(o, std::abs(r.delta - 25.0 / 64.0) <= 0.02, "[c] L3x24 delta*", fmt("%.4f", r.delta));
  }
  return o;
}

Outcome heavy_runs() {
  Outcome o;
  {
    // BW64 at Pe_norm 1e-5: modified list decoder at delta* for Pe 64e-5 at 2.3 dB.
    const double delta = delta_star_modified(bw_spec(5), 2.3, 64e-5).delta;
    const ParityFamily fam = barnes_wall_family(64);
    SimPlan plan;
    plan.decoder = parity_family_decoder(fam);
    plan.vol_2n = vol_2n(fam.top());
    plan.vnr_grid_db = {2.05, 2.3, 2.55};
    plan.decode = SimDecode::List;
    plan.list.delta = delta;
    plan.list.removing_step = false;
    plan.seed = 81;
    plan.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const SimResult r = run(plan);
    const auto x = crossing_db(curve_of(r, 64), 1e-5);
    check(o, x && std::abs(*x - 2.3) <= 0.25, "BW64 Pe_norm 1e-5",
          "delta* " + fmt("%.4f", delta) + ", crossing " + (x ? fmt("%.2f dB", *x) : "none") + ", " +
              points_str(r));
  }
  const TurynStructure leech = leech_structure();
  {
    const double delta = delta_star_modified(leech_form_spec(), 2.02, 72e-5).delta;
    const ParityFamily fam = parity_leech_family();
    SimPlan plan;
    plan.decoder = parity_leech_decoder(fam, leech, true);
    plan.vol_2n = vol_2n(fam.top());
    plan.vnr_grid_db = {1.8, 2.02, 2.25};
    plan.decode = SimDecode::List;
    plan.list.delta = delta;
    plan.list.removing_step = false;
    plan.seed = 82;
    plan.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const SimResult r = run(plan);
    const auto x = crossing_db(curve_of(r, 72), 1e-5);
    check(o, x && std::abs(*x - 2.02) <= 0.25, "L3x24 Pe_norm 1e-5",
          "crossing " + (x ? fmt("%.2f dB", *x) : "none") + ", " + points_str(r));
  }
  {
    // N72 against the predictor over the simulated Lambda24 QMLD curve, at Pe near 1e-2.
    PredictorSpec spec;
    spec.family = PredictorFamily::Nebe;
    spec.k = 3;
    spec.depth = 1;
    spec.base = BaseCondition::tabulated(TabulatedCurve::read_csv(LATDEC_DATA_DIR "/leech24_qmld.csv"));
    double lo = -2, hi = 6;
    for (int i = 0; i < 60; ++i) {
      const double mid = (lo + hi) / 2;
      (u_recursion(spec, 0.5, mid) > 1e-2 ? lo : hi) = mid;
    }
    const double db = std::round(hi * 100) / 100;
    const double predicted = u_recursion(spec, 0.5, db);
    const NebeStructure ns = nebe_structure(leech_lambda_basis());
    SimPlan plan;
    plan.decoder = nebe_decoder(ns, leech_qmld_decoder(leech), leech.lattice);
    plan.vol_2n = 1.0;
    plan.vnr_grid_db = {db};
    plan.batch = 100;
    plan.seed = 83;
    plan.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const SimResult r = run(plan);
    const double ratio = r.points[0].pe / predicted;
    check(o, r.points[0].errors >= 100 && ratio >= 0.5 && ratio <= 2, "N72 vs predictor",
          fmt("predicted %.3g", predicted) + ", " + points_str(r));
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  auto compare = [&](const std::string& name, SimPlan plan) {
    plan.threads = 1;
    const std::string a = to_csv(run(plan));
    plan.threads = 3;
    const std::string b = to_csv(run(plan));
    plan.threads = 2;
    const std::string c = to_csv(run(plan));
    check(o, a == b && b == c, name);
  };
  const ParityFamily fam = barnes_wall_family(16);
  SimPlan bdd;
  bdd.decoder = parity_family_decoder(fam);
  bdd.vol_2n = vol_2n(fam.top());
  bdd.vnr_grid_db = {2.0, 3.0, 4.0};
  bdd.min_errors = 50;
  bdd.max_trials = 20000;
  bdd.seed = 9;
  compare("BW16 BDD", bdd);
  SimPlan list = bdd;
  list.decode = SimDecode::List;
  list.event = SimEvent::NotInList;
  list.list.delta = 0.3;
  compare("BW16 list inclusion", list);
  const TurynStructure st = leech_structure();
  SimPlan king;
  king.decoder = leech_qmld_decoder(st);
  king.vnr_grid_db = {1.0, 2.0};
  king.max_trials = 5000;
  king.seed = 10;
  compare("Lambda24 QMLD", king);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
    bool heavy = false;
  };
  const std::vector<Criterion> all = {
      {1, "construction suite", construction_suite},
      {2, "kissing numbers", kissing_numbers},
      {3, "oracle equivalence", oracle_equivalence},
      {4, "BDD guarantee", bdd_guarantee},
      {5, "complexity scaling", complexity_scaling},
      {6, "predictor consistency", predictor_consistency},
      {7, "Gaussian-channel reproduction", gaussian_reproduction},
      {8, "heavy runs", heavy_runs, true},
      {9, "determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const bool heavy = std::getenv("LATDEC_HEAVY") != nullptr;
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    if (c.heavy && !heavy) {
      std::printf("SKIP %d %s: not run (set LATDEC_HEAVY=1)\n", c.id, c.name.c_str());
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail += std::string(o.detail.empty() ? "" : "; ") + "exception: " + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
