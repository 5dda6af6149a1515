#pragma once

#include "cat0ot/error.hpp"
#include "cat0ot/harness.hpp"
#include "cat0ot/space.hpp"

#include <atomic>
#include <exception>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace cat0ot::detail {

/// Typed access to `params` with field-path errors. finish() rejects keys
/// that were never read.
class ParamReader {
 public:
  explicit ParamReader(const nlohmann::json& params) : params_(params) {
    if (!params_.is_object()) fail("params", "must be an object");
  }

  bool has(const std::string& key) const { return params_.contains(key); }

  const nlohmann::json& raw(const std::string& key) {
    if (!has(key)) fail(path(key), "is required");
    used_.insert(key);
    return params_.at(key);
  }

  template <class T>
  T get(const std::string& key) {
    const nlohmann::json& v = raw(key);
    try {
      return v.get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(path(key), "has the wrong type");
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    return has(key) ? get<T>(key) : fallback;
  }

  long count(const std::string& key, long fallback, long lo, long hi) {
    const long v = get<long>(key, fallback);
    if (v < lo || v > hi) fail(path(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  double positive(const std::string& key, double fallback) {
    const double v = get<double>(key, fallback);
    if (!(v > 0.0)) fail(path(key), "must be positive");
    return v;
  }

  void finish() const {
    for (auto it = params_.begin(); it != params_.end(); ++it)
      if (!used_.count(it.key())) fail(path(it.key()), "is not a parameter of this experiment");
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::ConfigInvalid, where + " " + what);
  }

  static std::string path(const std::string& key) { return "params." + key; }

 private:
  const nlohmann::json& params_;
  std::set<std::string> used_;
};

/// Evaluates fn(0..n-1) on up to thread_budget() threads. Results keep index
/// order; the exception of the lowest failing index is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(long n, Fn&& fn) {
  std::vector<R> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const long threads = std::min<long>(thread_budget(), n);
  std::vector<std::thread> pool;
  for (long t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Substream tag for instance `index` of an experiment.
inline std::string instance_tag(const std::string& experiment, long index) {
  return experiment + "#" + std::to_string(index);
}

/// 0.95 quantile by the nearest-rank rule.
double quantile95(std::vector<double> values);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

Report run_solve(const Space& space, const Scenario& s);
Report run_monotonicity(const Space& space, const Scenario& s);
Report run_transport_identity(const Space& space, const Scenario& s);
Report run_polar(const Space& space, const Scenario& s);
Report run_geometry_suite(const Space& space, const Scenario& s);
Report run_twist(const Space& space, const Scenario& s);
Report run_fermat(const Space& space, const Scenario& s);
Report run_eilenberg(const Space& space, const Scenario& s);

}  // namespace cat0ot::detail
