#include "omegalab/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

#include "omegalab/bits.hpp"
#include "omegalab/util.hpp"

namespace omegalab {

InputFamily unary_family() {
  return {"unary", [](uint64_t n) { return BitString(n, '1'); }};
}

InputFamily binary_counter_family() {
  return {"binary-counter", [](uint64_t n) { return numeral(n); }};
}

std::vector<ScalingSample> measure_scaling(const Machine& m,
                                           const InputFamily& family,
                                           const std::vector<uint64_t>& sizes,
                                           uint64_t budget, int workers) {
  if (sizes.empty())
    throw std::invalid_argument("measure_scaling: no sizes requested");
  for (size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw std::invalid_argument(
          "measure_scaling: sizes must be strictly increasing");
  if (!family.generator)
    throw std::invalid_argument("measure_scaling: family has no generator");

  std::vector<std::optional<ScalingSample>> slots(sizes.size());
  auto measure = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      RunOutcome out = run(m, family.generator(sizes[i]), budget);
      if (out.halted())
        slots[i] = ScalingSample{sizes[i], out.steps, out.visited};
    }
  };

  size_t nworkers =
      std::min<size_t>(static_cast<size_t>(worker_count(workers)), sizes.size());
  if (nworkers < 2) {
    measure(0, sizes.size());
  } else {
    size_t chunk = (sizes.size() + nworkers - 1) / nworkers;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < nworkers; ++w) {
      size_t begin = w * chunk;
      size_t end = std::min(sizes.size(), begin + chunk);
      if (begin < end) pool.emplace_back(measure, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  std::vector<ScalingSample> samples;
  for (const auto& slot : slots)
    if (slot) samples.push_back(*slot);
  if (samples.empty())
    throw std::runtime_error(
        "measure_scaling: the machine halted on none of the sampled inputs");
  return samples;
}

PowerLawFit fit_power_law(const std::vector<ScalingSample>& samples,
                          ScalingField field) {
  if (samples.size() < 3)
    throw std::invalid_argument("fit_power_law: need at least three samples");

  std::vector<double> xs, ys;
  for (const ScalingSample& sample : samples) {
    uint64_t value = field == ScalingField::Time ? sample.t : sample.s;
    if (sample.n < 1 || value < 1)
      throw std::invalid_argument(
          "fit_power_law: sizes and values must be at least 1");
    xs.push_back(std::log(static_cast<double>(sample.n)));
    ys.push_back(std::log(static_cast<double>(value)));
  }

  size_t count = samples.size();
  double xbar = 0, ybar = 0;
  for (size_t i = 0; i < count; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(count);
  ybar /= static_cast<double>(count);

  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < count; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx == 0)
    throw std::invalid_argument(
        "fit_power_law: samples span a single size, the exponent is free");

  PowerLawFit fit;
  fit.k_hat = sxy / sxx;
  double logc = ybar - fit.k_hat * xbar;
  fit.c_hat = std::exp(logc);

  double sq = 0;
  for (size_t i = 0; i < count; ++i) {
    double misfit = ys[i] - (logc + fit.k_hat * xs[i]);
    sq += misfit * misfit;
  }
  fit.residual = std::sqrt(sq / static_cast<double>(count));
  return fit;
}

std::string samples_csv(const std::vector<ScalingSample>& samples) {
  std::string out = "N,t,s\n";
  for (const ScalingSample& sample : samples) {
    out += std::to_string(sample.n);
    out += ',';
    out += std::to_string(sample.t);
    out += ',';
    out += std::to_string(sample.s);
    out += '\n';
  }
  return out;
}

}  // namespace omegalab
