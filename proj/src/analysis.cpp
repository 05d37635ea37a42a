#include "latdec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "latdec/errors.hpp"

namespace latdec {

namespace {
constexpr double kTwoPiE = 2.0 * M_PI * M_E;
}

double chi_square_tail(int n, double r, double sigma_sq) {
  if (n < 2 || n % 2 != 0) throw ValidationError("chi-square tail needs an even n >= 2");
  if (r < 0) throw ValidationError("radius must be >= 0");
  if (!(sigma_sq > 0)) throw ValidationError("noise variance must be positive");
  const double x = r / (2.0 * sigma_sq);
  if (x == 0.0) return 1.0;
  // Terms e^{-x} x^j / j!, accumulated from their logarithms.
  const double lx = std::log(x);
  double sum = 0.0;
  for (int j = 0; j < n / 2; ++j) sum += std::exp(j * lx - x - std::lgamma(j + 1.0));
  return std::clamp(sum, 0.0, 1.0);
}

double q_function(double x) { return 0.5 * std::erfc(x / M_SQRT2); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double vnr_to_sigma_sq(double vol_2n, double vnr_db) {
  if (!(vol_2n > 0)) throw ValidationError("volume must be positive");
  if (!std::isfinite(vnr_db)) throw ValidationError("VNR must be finite");
  return vol_2n / (kTwoPiE * db_to_linear(vnr_db));
}

double sigma_sq_to_vnr(double vol_2n, double sigma_sq) {
  if (!(vol_2n > 0) || !(sigma_sq > 0)) throw ValidationError("volume and noise variance must be positive");
  return linear_to_db(vol_2n / (kTwoPiE * sigma_sq));
}

namespace {
double vol_2n(const LatticeBasis& l) {
  return std::pow(l.volume_sq().to_double(), 1.0 / static_cast<double>(l.dim()));
}
}  // namespace

double vnr_to_sigma_sq(const LatticeBasis& lattice, double vnr_db) {
  return vnr_to_sigma_sq(vol_2n(lattice), vnr_db);
}

double sigma_sq_to_vnr(const LatticeBasis& lattice, double sigma_sq) {
  return sigma_sq_to_vnr(vol_2n(lattice), sigma_sq);
}

double union_bound_two_shells(double d1, double tau1, double d2, double tau2, double sigma_sq) {
  if (!(d1 > 0) || !(d2 > d1)) throw ValidationError("shell norms must satisfy 0 < d1 < d2");
  if (!(sigma_sq > 0)) throw ValidationError("noise variance must be positive");
  return tau1 * q_function(std::sqrt(d1 / (4.0 * sigma_sq))) + tau2 * q_function(std::sqrt(d2 / (4.0 * sigma_sq)));
}

// ---------------------------------------------------------------------------

TabulatedCurve::TabulatedCurve(std::vector<std::pair<double, double>> points, std::string source)
    : points_(std::move(points)), source_(std::move(source)) {
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].second > 0)) throw ValidationError("tabulated probabilities must be positive");
    if (i > 0 && points_[i].first == points_[i - 1].first) throw ValidationError("duplicate VNR in curve");
  }
}

double TabulatedCurve::operator()(double vnr_db) const {
  if (points_.empty()) throw ValidationError("empty tabulated curve");
  if (points_.size() == 1) return std::min(points_[0].second, 1.0);
  std::size_t i = 1;
  while (i + 1 < points_.size() && points_[i].first < vnr_db) ++i;
  const auto& [x0, p0] = points_[i - 1];
  const auto& [x1, p1] = points_[i];
  const double t = (vnr_db - x0) / (x1 - x0);
  const double lp = std::log(p0) + t * (std::log(p1) - std::log(p0));
  return std::clamp(std::exp(lp), 0.0, 1.0);
}

TabulatedCurve TabulatedCurve::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open curve file " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty curve file " + path);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("curve file lacks column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cx = col("vnr_db");
  const std::size_t cp = col("pe");
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() <= std::max(cx, cp)) throw ValidationError("short row in " + path);
    const double p = std::stod(cells[cp]);
    if (p > 0) pts.emplace_back(std::stod(cells[cx]), p);
  }
  return TabulatedCurve(std::move(pts), path);
}

// ---------------------------------------------------------------------------

BaseCondition BaseCondition::chi_square(int c, double d, double vol_2c) {
  BaseCondition b;
  b.kind = Kind::ChiSquare;
  b.c = c;
  b.d = d;
  b.vol_2c = vol_2c;
  return b;
}

BaseCondition BaseCondition::tabulated(TabulatedCurve curve) {
  BaseCondition b;
  b.kind = Kind::Tabulated;
  b.curve = std::move(curve);
  return b;
}

double BaseCondition::eval(double delta, double vnr_db) const {
  if (kind == Kind::Tabulated) return curve(vnr_db);
  return chi_square_tail(c, delta * d, vnr_to_sigma_sq(vol_2c, vnr_db));
}

namespace {

double binom2(int k) { return 0.5 * k * (k - 1); }

const TabulatedCurve* bdd_floor(const PredictorSpec& spec, int level, double delta) {
  if (!(delta <= spec.bdd_below + 1e-12)) return nullptr;
  int n = spec.base.c;
  for (int i = 0; i < level; ++i) n *= spec.k;
  const auto it = spec.bdd_curves.find(n);
  return it == spec.bdd_curves.end() ? nullptr : &it->second;
}

double u_level(const PredictorSpec& spec, int level, double delta, double vnr_db) {
  if (level == 0) return spec.base.eval(delta, vnr_db);
  if (const auto* c = bdd_floor(spec, level, delta)) return (*c)(vnr_db);
  const int k = spec.k;
  double low_db = vnr_db;
  double high_db = vnr_db;
  if (spec.family == PredictorFamily::GenericParity) {
    low_db = vnr_db - linear_to_db(std::pow(2.0, 1.0 / k));
    high_db = vnr_db + linear_to_db(std::pow(2.0, (k - 1.0) / k));
  } else {
    high_db = vnr_db + linear_to_db(2.0);
  }
  const double ut = u_level(spec, level - 1, delta, low_db);
  const double uv = u_level(spec, level - 1, delta, high_db);
  return std::min(binom2(k) * ut * ut + k * uv * std::pow(1.0 - ut, k - 1), 1.0);
}

double u_split_level(const PredictorSpec& spec, int level, double delta, double vnr_db) {
  if (level == 0) return spec.base.eval(delta, vnr_db);
  if (const auto* c = bdd_floor(spec, level, delta)) return (*c)(vnr_db);
  const double low = vnr_db - linear_to_db(M_SQRT2);
  const double high = vnr_db + linear_to_db(M_SQRT2);
  const double a = 2.0 / 3.0 * delta;
  const double t_full = u_split_level(spec, level - 1, delta, low);
  const double t_part = u_split_level(spec, level - 1, a, low);
  const double v_part = u_split_level(spec, level - 1, a, high);
  const double v_full = u_split_level(spec, level - 1, delta, high);
  const double u = t_full * t_full + 2.0 * ((t_part - t_full) * v_part + (1.0 - t_part) * v_full);
  return std::min(u, 1.0);
}

void check_spec(const PredictorSpec& spec) {
  if (spec.k < 2) throw ValidationError("predictor needs k >= 2");
  if (spec.depth < 0) throw ValidationError("predictor depth must be >= 0");
  if ((spec.family == PredictorFamily::Leech || spec.family == PredictorFamily::Nebe) && spec.k != 3) {
    throw ValidationError("Leech and Nebe predictors have k = 3");
  }
  if (spec.family == PredictorFamily::SplitK2 && spec.k != 2) {
    throw ValidationError("split recursion is defined for k = 2 only");
  }
}

}  // namespace

double u_recursion(const PredictorSpec& spec, double delta, double vnr_db) {
  check_spec(spec);
  if (delta < 0) throw ValidationError("relative radius must be >= 0");
  if (spec.family == PredictorFamily::SplitK2) return u_split_level(spec, spec.depth, delta, vnr_db);
  return u_level(spec, spec.depth, delta, vnr_db);
}

double u_recursion_split_k2(const PredictorSpec& spec, double delta, double vnr_db) {
  PredictorSpec s = spec;
  s.family = PredictorFamily::SplitK2;
  return u_recursion(s, delta, vnr_db);
}

double parity_depth1_explicit(int k, int c, double d_c, double vol_2c, double delta, double vnr_db) {
  // L_{kc} has d = 2 d_c and vol^{2/kc} = 2^{1/k} vol_c^{2/c}.
  const double sigma_sq = vnr_to_sigma_sq(std::pow(2.0, 1.0 / k) * vol_2c, vnr_db);
  const double r = delta * 2.0 * d_c;
  const double ft = chi_square_tail(c, r / 2.0, sigma_sq);
  const double fv = chi_square_tail(c, r, sigma_sq);
  return std::min(binom2(k) * ft * ft + k * fv * std::pow(1.0 - ft, k - 1), 1.0);
}

namespace {

template <class Fn>
DeltaStarResult bisect_delta(Fn&& fn, double goal) {
  double lo = 0.0;
  double hi = 4.0;
  if (fn(hi) > goal) throw ValidationError("target error probability unattainable for delta <= 4");
  if (fn(lo) <= goal) return {0.0, fn(0.0)};
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (fn(mid) <= goal) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, fn(hi)};
}

}  // namespace

DeltaStarResult delta_star_regular(int n, double d, double sigma_sq, double target_pe, double eta) {
  if (!(target_pe > 0 && target_pe < 1)) throw ValidationError("target error probability must lie in (0, 1)");
  if (!(d > 0)) throw ValidationError("minimum distance must be positive");
  return bisect_delta([&](double delta) { return chi_square_tail(n, delta * d, sigma_sq); }, eta * target_pe);
}

DeltaStarResult delta_star_modified(const PredictorSpec& spec, double vnr_db, double target_pe, double eta) {
  if (!(target_pe > 0 && target_pe < 1)) throw ValidationError("target error probability must lie in (0, 1)");
  return bisect_delta([&](double delta) { return u_recursion(spec, delta, vnr_db); }, eta * target_pe);
}

std::uint64_t johnson_bound(std::size_t n, double delta) {
  if (delta < 0) throw ValidationError("relative radius must be >= 0");
  if (delta > 0.5) throw ValidationError("no list-size bound for delta > 1/2");
  const std::uint64_t cap = 2 * n;
  if (delta >= 0.5) return cap;
  const double eps = std::min(0.5 - delta, 0.25);
  const auto b = static_cast<std::uint64_t>(std::floor(1.0 / (2.0 * eps) + 1e-12));
  return std::min(b, cap);
}

const std::vector<ReferencePoint>& reference_points() {
  static const std::vector<ReferencePoint> pts = {
      {"sphere lower bound", 16, 1e-5, 4.05, "Tarokh, Vardy, Zeger 1999"},
      {"sphere lower bound", 32, 1e-5, 3.2, "Tarokh, Vardy, Zeger 1999"},
      {"sphere lower bound", 64, 1e-5, 2.5, "Tarokh, Vardy, Zeger 1999"},
      {"sphere lower bound", 128, 1e-5, 1.9, "Tarokh, Vardy, Zeger 1999"},
      {"sphere lower bound", 256, 1e-5, 1.4, "Tarokh, Vardy, Zeger 1999"},
      {"BW16 MLD", 16, 1e-5, 4.5, "published simulation"},
      {"BW32 MLD", 32, 1e-5, 3.7, "published simulation"},
      {"BW64 MLD", 64, 1e-5, 3.1, "published simulation"},
      {"BW128 MLD", 128, 1e-5, 2.3, "published simulation"},
      {"BW64 quasi-MLD, normalized", 64, 1e-5, 2.3, "published simulation"},
      {"L3x24 quasi-MLD, normalized", 72, 1e-5, 2.02, "published simulation"},
      {"N72 quasi-MLD, normalized", 72, 1e-5, 1.85, "published simulation"},
      {"BW128 quasi-MLD, normalized", 128, 1e-5, 1.7, "published simulation"},
      {"Lambda24 QMLD", 24, 1e-4, 3.3, "published simulation"},
      {"two-level BCH construction, OSD order 4", 128, 1e-5, 2.4, "Matsumine et al. 2018"},
      {"turbo lattice", 102, 1e-5, 2.75, "Sakzad et al. 2010"},
      {"LDLC", 100, 1e-5, 3.7, "Sommer et al. 2008"},
  };
  return pts;
}

}  // namespace latdec
