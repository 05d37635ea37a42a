#include "latdec/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "latdec/analysis.hpp"
#include "latdec/errors.hpp"

namespace latdec {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

SplitMix64 SplitMix64::for_trial(std::uint64_t seed, std::uint64_t grid, std::uint64_t trial) {
  return SplitMix64(mix(mix(mix(seed) ^ grid) ^ trial));
}

void SimPlan::validate() const {
  if (!decoder) throw ValidationError("simulation needs a decoder");
  if (vnr_grid_db.empty()) throw ValidationError("empty VNR grid");
  for (std::size_t i = 1; i < vnr_grid_db.size(); ++i) {
    if (!(vnr_grid_db[i] > vnr_grid_db[i - 1])) throw ValidationError("VNR grid must be strictly increasing");
  }
  if (min_errors < 1) throw ValidationError("min_errors must be >= 1");
  if (max_trials < 1 || batch < 1) throw ValidationError("max_trials and batch must be >= 1");
  if (threads < 1) throw ValidationError("threads must be >= 1");
  if (!(vol_2n > 0)) throw ValidationError("volume scale must be positive");
  if (event == SimEvent::NotInList && decode != SimDecode::List) {
    throw ValidationError("the list-inclusion event needs list decoding");
  }
  if (translate_basis && static_cast<std::size_t>(translate_basis->rows()) != decoder->dim()) {
    throw ValidationError("translate basis dimension mismatch");
  }
  if (decode == SimDecode::List) list.validate();
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

struct TrialOutcome {
  bool error = false;
  std::uint64_t calls = 0;
  std::uint64_t candidates = 0;
};

bool same_point(const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a[i] - b[i]) > 1e-6) return false;
  }
  return true;
}

TrialOutcome one_trial(const SimPlan& plan, std::size_t grid, std::uint64_t trial, double sigma) {
  const std::size_t n = plan.decoder->dim();
  SplitMix64 rng = SplitMix64::for_trial(plan.seed, grid, trial);
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<double> x(n, 0.0), y(n);
  if (plan.translate_basis) {
    std::uniform_int_distribution<int> coef(-2, 2);
    for (Eigen::Index r = 0; r < plan.translate_basis->rows(); ++r) {
      const int c = coef(rng);
      for (std::size_t j = 0; j < n; ++j) x[j] += c * (*plan.translate_basis)(r, static_cast<Eigen::Index>(j));
    }
  }
  for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + g(rng);
  DecodeStats st;
  TrialOutcome out;
  if (plan.decode == SimDecode::Nearest) {
    std::vector<double> z(n);
    plan.decoder->nearest(y.data(), st, z.data());
    out.error = !same_point(z.data(), x.data(), n);
  } else {
    PointList pts(n);
    plan.decoder->list(y.data(), plan.list.delta, plan.list, st, pts);
    if (plan.event == SimEvent::NotInList) {
      out.error = true;
      for (std::size_t i = 0; i < pts.size() && out.error; ++i) out.error = !same_point(pts[i], x.data(), n);
    } else {
      // Decoded point: the closest candidate, ties to the lexicographically smallest.
      std::size_t best = pts.size();
      double best_d = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = sq_dist(y.data(), pts[i], n);
        if (best == pts.size() || d < best_d - 1e-12 ||
            (std::abs(d - best_d) <= 1e-12 && std::lexicographical_compare(pts[i], pts[i] + n, pts[best], pts[best] + n))) {
          best = i;
          best_d = d;
        }
      }
      out.error = best == pts.size() || !same_point(pts[best], x.data(), n);
    }
  }
  out.calls = st.calls(0);
  out.candidates = st.candidates;
  return out;
}

}  // namespace

SimResult run(const SimPlan& plan) {
  plan.validate();
  SimResult res;
  for (std::size_t gi = 0; gi < plan.vnr_grid_db.size(); ++gi) {
    const auto t0 = std::chrono::steady_clock::now();
    SimPoint p;
    p.vnr_db = plan.vnr_grid_db[gi];
    p.sigma_sq = vnr_to_sigma_sq(plan.vol_2n, p.vnr_db);
    const double sigma = std::sqrt(p.sigma_sq);
    std::uint64_t calls = 0, cands = 0;
    while (p.errors < plan.min_errors && p.trials < plan.max_trials) {
      const std::uint64_t start = p.trials;
      const std::uint64_t count = std::min(plan.batch, plan.max_trials - start);
      std::vector<TrialOutcome> outs(count);
      std::vector<std::string> failures(count);
      auto work = [&](int tid) {
        for (std::uint64_t i = static_cast<std::uint64_t>(tid); i < count; i += static_cast<std::uint64_t>(plan.threads)) {
          try {
            outs[i] = one_trial(plan, gi, start + i, sigma);
          } catch (const std::exception& e) {
            failures[i] = e.what();
          }
        }
      };
      if (plan.threads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < plan.threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
      }
      for (std::uint64_t i = 0; i < count; ++i) {
        if (!failures[i].empty()) {
          throw BudgetExceeded("decoder failed at grid point " + std::to_string(gi) + ", trial " +
                               std::to_string(start + i) + ": " + failures[i]);
        }
        p.errors += outs[i].error;
        calls += outs[i].calls;
        cands += outs[i].candidates;
      }
      p.trials += count;
    }
    p.pe = static_cast<double>(p.errors) / static_cast<double>(p.trials);
    std::tie(p.ci_lo, p.ci_hi) = wilson_interval(p.errors, p.trials);
    if (plan.record_counters) {
      p.mean_calls = static_cast<double>(calls) / static_cast<double>(p.trials);
      p.mean_candidates = static_cast<double>(cands) / static_cast<double>(p.trials);
    }
    p.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.points.push_back(p);
  }
  return res;
}

std::string to_csv(const SimResult& r) {
  std::ostringstream os;
  os << "vnr_db,trials,errors,pe,ci_lo,ci_hi,mean_calls\n";
  char buf[256];
  for (const auto& p : r.points) {
    std::snprintf(buf, sizeof buf, "%.4f,%llu,%llu,%.6e,%.6e,%.6e,%.4f\n", p.vnr_db,
                  static_cast<unsigned long long>(p.trials), static_cast<unsigned long long>(p.errors), p.pe,
                  p.ci_lo, p.ci_hi, p.mean_calls);
    os << buf;
  }
  return os.str();
}

std::optional<double> crossing_db(const std::vector<std::pair<double, double>>& curve, double target) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [x, p] : curve)
    if (p > 0) pts.emplace_back(x, p);
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 2) return std::nullopt;
  std::size_t i = 1;
  // First segment bracketing the target, else the end segment nearest to it.
  for (; i < pts.size(); ++i) {
    if ((pts[i - 1].second - target) * (pts[i].second - target) <= 0) break;
  }
  if (i == pts.size()) i = pts.back().second > target ? pts.size() - 1 : 1;
  const double l0 = std::log(pts[i - 1].second);
  const double l1 = std::log(pts[i].second);
  if (l0 == l1) return std::nullopt;
  return pts[i - 1].first + (std::log(target) - l0) * (pts[i].first - pts[i - 1].first) / (l1 - l0);
}

}  // namespace latdec
