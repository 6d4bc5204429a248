#include "nds/control.hpp"

#include <cmath>
#include <stdexcept>

#include "nds/dynamics.hpp"
#include "nds/parallel.hpp"

namespace nds {

std::size_t FeedbackConfig::max_delay() const {
  std::size_t m = 0;
  for (const auto& c : connections) m = std::max(m, c.delay);
  return m;
}

void FeedbackConfig::validate() const {
  for (const auto& c : connections) {
    if (c.delay < 1) {
      throw std::invalid_argument("FeedbackConfig: delay must be >= 1");
    }
    if (!std::isfinite(c.weight)) {
      throw std::invalid_argument("FeedbackConfig: non-finite weight");
    }
  }
}

SpikeHistory::SpikeHistory(std::size_t capacity)
    : ring_(capacity ? capacity : 1, 0) {
  if (capacity == 0) {
    throw std::invalid_argument("SpikeHistory: capacity must be >= 1");
  }
}

void SpikeHistory::push(std::uint8_t gamma) {
  ring_[count_ % ring_.size()] = gamma;
  ++count_;
}

std::uint8_t SpikeHistory::at(std::int64_t t) const {
  if (t < 0) return 0;  // before the start of time
  const auto idx = static_cast<std::uint64_t>(t);
  if (idx >= count_) {
    throw std::out_of_range("SpikeHistory: step not yet recorded");
  }
  if (count_ - idx > ring_.size()) {
    throw std::out_of_range("SpikeHistory: step evicted from the delay line");
  }
  return ring_[idx % ring_.size()];
}

double feedback_signal(const SpikeHistory& h, const FeedbackConfig& cfg,
                       std::uint64_t t) {
  cfg.validate();
  if (cfg.max_delay() > h.capacity()) {
    throw std::invalid_argument(
        "feedback_signal: delay exceeds history capacity");
  }
  double sum = 0.0;
  for (const auto& conn : cfg.connections) {
    const std::int64_t idx =
        static_cast<std::int64_t>(t) - static_cast<std::int64_t>(conn.delay);
    sum += conn.weight * static_cast<double>(h.at(idx));
  }
  return sum;
}

double input_signal(const InputTrain& inp, std::uint64_t t) {
  double sum = 0.0;
  for (const auto& train : inp.trains) {
    if (t < train.size()) sum += train[t];
  }
  return sum;
}

bool period_holds(const Trajectory& traj, std::size_t from, std::size_t period,
                  double eps) {
  const std::size_t n = traj.size();
  for (std::size_t t = from; t + period < n; ++t) {
    if (traj.spikes[t + period] != traj.spikes[t]) return false;
    if (inf_dist(traj.states[t + period], traj.states[t]) >= eps) return false;
  }
  return true;
}

std::optional<std::size_t> detect_period(const Trajectory& traj,
                                         std::size_t transient,
                                         std::size_t max_period, double eps) {
  if (max_period < 1) {
    throw std::invalid_argument("detect_period: max_period must be >= 1");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("detect_period: eps must be > 0");
  }
  if (traj.size() <= transient + 2 * max_period) {
    throw std::invalid_argument("detect_period: window too short");
  }

  bool any_spike = false;
  for (std::size_t t = transient; t < traj.size(); ++t) {
    if (traj.spikes[t]) {
      any_spike = true;
      break;
    }
  }
  if (!any_spike) return std::nullopt;

  for (std::size_t p = 1; p <= max_period; ++p) {
    if (period_holds(traj, transient, p, eps)) return p;
  }
  return std::nullopt;
}

StabilizationResult stabilize_run(const NDSParams& p,
                                  const FeedbackConfig& cfg,
                                  const StateVec& initial, std::size_t onset,
                                  std::size_t total,
                                  const DetectionSettings& det) {
  if (onset >= total) {
    throw std::invalid_argument("stabilize_run: onset must be < total");
  }
  if (total + 1 <= onset + 2 * det.max_period) {
    throw std::invalid_argument(
        "stabilize_run: run too short for period detection");
  }

  StabilizationResult res;
  res.trajectory = simulate(initial, p, total, cfg, onset);
  if (res.trajectory.diverged()) return res;

  const std::size_t n = res.trajectory.size();  // total + 1
  // detect over the latest window the detect_period precondition allows, so
  // a lock only counts when it survives to the end of the run
  std::size_t transient = n - 1 - 2 * det.max_period;
  if (transient < onset) transient = onset;

  const auto period =
      detect_period(res.trajectory, transient, det.max_period, det.eps);
  if (!period) return res;

  // earliest post-onset step from which the periodicity holds through the
  // end; period_holds(t0) is monotone in t0, so bisect
  std::size_t lo = onset;
  std::size_t hi = transient;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (period_holds(res.trajectory, mid, *period, det.eps)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  res.locked = true;
  res.period = *period;
  res.lock_time = lo;
  return res;
}

std::size_t FeedbackSweepSpec::weight_count() const {
  return static_cast<std::size_t>(
             std::floor((w_max - w_min) / w_step + 0.5)) +
         1;
}

double FeedbackSweepSpec::weight_at(std::size_t i) const {
  return w_min + static_cast<double>(i) * w_step;
}

void FeedbackSweepSpec::validate() const {
  if (!(w_step > 0.0) || !(w_max >= w_min)) {
    throw std::invalid_argument("FeedbackSweepSpec: bad weight grid");
  }
  if (tau_min < 1 || tau_max < tau_min) {
    throw std::invalid_argument("FeedbackSweepSpec: bad delay range");
  }
}

std::vector<LockingPair> sweep_locking_pairs(
    const NDSParams& p, const FeedbackSweepSpec& spec, const StateVec& initial,
    std::size_t onset, std::size_t total, const DetectionSettings& det,
    std::size_t max_threads) {
  spec.validate();
  const std::size_t n_w = spec.weight_count();
  const std::size_t n_tau = spec.tau_count();
  const std::size_t n = n_w * n_tau;

  std::vector<LockingPair> found(n);
  std::vector<std::uint8_t> locked(n, 0);

  parallel_for(n, max_threads, [&](std::size_t i) {
    const double w = spec.weight_at(i / n_tau);
    const std::size_t tau = spec.tau_min + i % n_tau;
    FeedbackConfig cfg{{{w, tau}}};
    const StabilizationResult res =
        stabilize_run(p, cfg, initial, onset, total, det);
    if (res.locked) {
      found[i] = {w, tau, *res.period, *res.lock_time};
      locked[i] = 1;
    }
  });

  std::vector<LockingPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (locked[i]) out.push_back(found[i]);
  }
  return out;
}

}  // namespace nds
