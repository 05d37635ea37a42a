#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latdec/lattice.hpp"

namespace latdec {

/// P(|w|^2 > r) for w with n i.i.d. N(0, sigma_sq) components, n even.
double chi_square_tail(int n, double r, double sigma_sq);

/// Gaussian tail Q(x) = P(N(0,1) > x).
double q_function(double x);

double db_to_linear(double db);
double linear_to_db(double x);

/// sigma^2 = vol^{2/n} / (2 pi e Delta), Delta given in dB.
double vnr_to_sigma_sq(double vol_2n, double vnr_db);
double sigma_sq_to_vnr(double vol_2n, double sigma_sq);  // returns dB
double vnr_to_sigma_sq(const LatticeBasis& lattice, double vnr_db);
double sigma_sq_to_vnr(const LatticeBasis& lattice, double sigma_sq);

/// tau1 Q(sqrt(d1 / 4 sigma^2)) + tau2 Q(sqrt(d2 / 4 sigma^2)).
double union_bound_two_shells(double d1, double tau1, double d2, double tau2, double sigma_sq);

/// (Delta_dB, Pe) breakpoints, log-linear interpolation in Pe. Outside the
/// table the end segments are extended; results are clamped to [0, 1].
class TabulatedCurve {
 public:
  TabulatedCurve() = default;
  explicit TabulatedCurve(std::vector<std::pair<double, double>> points, std::string source = {});
  double operator()(double vnr_db) const;
  const std::vector<std::pair<double, double>>& points() const { return points_; }
  const std::string& source() const { return source_; }
  bool empty() const { return points_.empty(); }

  /// CSV with header; columns vnr_db and pe are located by name.
  static TabulatedCurve read_csv(const std::string& path);

 private:
  std::vector<std::pair<double, double>> points_;
  std::string source_;
};

/// Failure probability of the decoder used for the smallest lattice L_c.
struct BaseCondition {
  enum class Kind { ChiSquare, Tabulated };
  Kind kind = Kind::ChiSquare;
  // Chi-square: regular list decoding of L_c at relative radius delta.
  int c = 2;
  double d = 1.0;       // d(L_c)
  double vol_2c = 1.0;  // vol(L_c)^{2/c}
  // Tabulated: a simulated curve (MLD or BDD); delta is ignored.
  TabulatedCurve curve;

  double eval(double delta, double vnr_db) const;

  static BaseCondition chi_square(int c, double d, double vol_2c);
  static BaseCondition tabulated(TabulatedCurve curve);
};

enum class PredictorFamily { GenericParity, SplitK2, Leech, Nebe };

struct PredictorSpec {
  PredictorFamily family = PredictorFamily::GenericParity;
  int k = 2;
  int depth = 1;
  BaseCondition base;
  /// Modified decoding with a BDD floor: at relative radius <= bdd_below a
  /// level of dimension n contributes bdd_curves[n] instead of recursing.
  double bdd_below = -1.0;
  std::map<int, TabulatedCurve> bdd_curves;
  int base_dim() const { return base.c; }
};

/// Upper bound on P(x not in list) for the modified recursive decoder.
/// GenericParity: children at Delta / 2^{1/k} and 2^{(k-1)/k} Delta.
/// Leech and Nebe (k = 3): children at Delta and 2 Delta.
/// SplitK2: the two-tier recursion for k = 2 with the first splitting strategy.
/// Every level is clamped to 1.
double u_recursion(const PredictorSpec& spec, double delta, double vnr_db);
double u_recursion_split_k2(const PredictorSpec& spec, double delta, double vnr_db);

/// Depth-one closed form for a parity lattice of dimension k*c over a
/// regular list decoder of L_c: C(k,2) F(c, r/2)^2 + k F(c, r) (1 - F(c, r/2))^{k-1},
/// with r = delta * d(L_{kc}) and sigma^2 from the VNR of L_{kc}.
double parity_depth1_explicit(int k, int c, double d_c, double vol_2c, double delta, double vnr_db);

enum class DeltaStarMode { Regular, Modified };

struct DeltaStarResult {
  double delta = 0.0;
  double value = 0.0;  // failure probability at delta
};

/// Regular: smallest delta with F(n, delta d, sigma^2) <= eta * target.
/// Throws ValidationError when no delta in [0, 4] qualifies.
DeltaStarResult delta_star_regular(int n, double d, double sigma_sq, double target_pe, double eta = 0.5);
/// Modified: smallest delta with u_recursion(spec, delta, vnr) <= eta * target.
DeltaStarResult delta_star_modified(const PredictorSpec& spec, double vnr_db, double target_pe,
                                    double eta = 0.5);

/// List-size bound for radius delta * d with delta <= 1/2: floor(1/(2 eps))
/// for delta = 1/2 - eps, eps <= 1/4 (at least 2 for delta <= 1/4), and 2n at 1/2.
std::uint64_t johnson_bound(std::size_t n, double delta);

/// Reference operating points shipped as constants, in dB from Poltyrev.
struct ReferencePoint {
  std::string scheme;
  std::size_t n;
  double pe_norm;
  double vnr_db;
  std::string source;
};
const std::vector<ReferencePoint>& reference_points();

}  // namespace latdec
