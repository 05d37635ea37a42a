#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latdec/decoders.hpp"

namespace latdec {

/// splitmix64 as a URBG; the per-trial stream is keyed on (seed, grid, trial).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  static std::uint64_t mix(std::uint64_t z);
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t grid, std::uint64_t trial);

 private:
  std::uint64_t state_;
};

enum class SimEvent { PointError, NotInList };
enum class SimDecode { Nearest, List };

struct SimPlan {
  DecoderPtr decoder;
  /// vol(lattice)^{2/n}, the scale of the VNR axis.
  double vol_2n = 1.0;
  std::vector<double> vnr_grid_db;
  std::uint64_t min_errors = 100;
  std::uint64_t max_trials = 1'000'000;
  std::uint64_t batch = 1000;
  std::uint64_t seed = 1;
  bool record_counters = true;
  SimEvent event = SimEvent::PointError;
  SimDecode decode = SimDecode::Nearest;
  ListConfig list;  // used when decode == List
  int threads = 1;
  /// When set, transmit x = random lattice point (coefficients in [-2, 2])
  /// instead of the origin.
  std::optional<Eigen::MatrixXd> translate_basis;

  void validate() const;
};

struct SimPoint {
  double vnr_db = 0;
  double sigma_sq = 0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double pe = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  double mean_calls = 0;       // base decoder calls per trial
  double mean_candidates = 0;  // candidates generated per trial
  double wall_time = 0;        // seconds, not part of the CSV
};

struct SimResult {
  std::vector<SimPoint> points;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials, double z = 1.959963984540054);

SimResult run(const SimPlan& plan);

/// vnr_db,trials,errors,pe,ci_lo,ci_hi,mean_calls
std::string to_csv(const SimResult& r);

/// VNR where a curve crosses the target, by log-linear interpolation (or
/// extrapolation from the two points nearest to the target).
std::optional<double> crossing_db(const std::vector<std::pair<double, double>>& curve, double target);

}  // namespace latdec
