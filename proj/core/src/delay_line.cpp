#include "wavelag/delay_line.hpp"

#include <stdexcept>

namespace wavelag {

void advance_delay(std::vector<double>& u, double inflow) {
  if (u.size() < 2) throw std::invalid_argument("advance_delay: line needs at least 2 cells");
  for (std::size_t j = u.size() - 1; j >= 1; --j) u[j] = u[j - 1];
  u[0] = inflow;
}

double delayed_value(const std::vector<double>& u) {
  if (u.empty()) throw std::invalid_argument("delayed_value: empty line");
  return u.back();
}

void HistoryBuffer::push(double t, double value) {
  if (!samples_.empty() && !(t > samples_.back().first)) {
    throw std::invalid_argument("HistoryBuffer::push: timestamps must strictly increase");
  }
  samples_.emplace_back(t, value);
}

double HistoryBuffer::lookup(double t_query) const {
  if (!covers(t_query)) {
    throw std::out_of_range("HistoryBuffer::lookup: query outside buffered span");
  }
  // binary search for the first sample with time >= t_query
  std::size_t lo = 0, hi = samples_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (samples_[mid].first < t_query)
      lo = mid + 1;
    else
      hi = mid;
  }
  const auto& [t1, v1] = samples_[lo];
  if (t1 == t_query || lo == 0) return v1;
  const auto& [t0, v0] = samples_[lo - 1];
  const double w = (t_query - t0) / (t1 - t0);
  return v0 + w * (v1 - v0);
}

void HistoryBuffer::drop_before(double t_min) {
  while (samples_.size() >= 2 && samples_[1].first <= t_min) samples_.pop_front();
}

bool HistoryBuffer::covers(double t_query) const {
  return !samples_.empty() && samples_.front().first <= t_query &&
         t_query <= samples_.back().first;
}

double HistoryBuffer::oldest_time() const {
  if (samples_.empty()) throw std::out_of_range("HistoryBuffer: empty");
  return samples_.front().first;
}

double HistoryBuffer::newest_time() const {
  if (samples_.empty()) throw std::out_of_range("HistoryBuffer: empty");
  return samples_.back().first;
}

double oracle_lookup(const HistoryBuffer& buffer, double t_query) {
  return buffer.lookup(t_query);
}

}  // namespace wavelag
