#include "fkppg/resample.hpp"

#include <algorithm>

#include "fkppg/errors.hpp"

namespace fkppg {

namespace {

/// Cumulative sums plus the index of the last positive weight; rejects
/// negative and all-zero weight vectors.
std::pair<std::vector<double>, size_t> cumulative(std::span<const double> weights) {
  std::vector<double> cum(weights.size());
  double total = 0.0;
  size_t last_positive = 0;
  bool any_positive = false;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) {
      throw Error(ErrCode::InvalidParameter,
                  "negative weight at index " + std::to_string(i));
    }
    total += weights[i];
    cum[i] = total;
    if (weights[i] > 0.0) {
      last_positive = i;
      any_positive = true;
    }
  }
  if (!any_positive) {
    throw Error(ErrCode::ZeroWeightEnsemble, "all weights are zero; nothing to resample");
  }
  return {std::move(cum), last_positive};
}

}  // namespace

std::vector<uint32_t> resample_multinomial(std::span<const double> weights, size_t n_out,
                                           DrawCursor& cursor) {
  const auto [cum, last_positive] = cumulative(weights);
  const double total = cum.back();
  std::vector<uint32_t> out(n_out);
  for (size_t j = 0; j < n_out; ++j) {
    const double target = cursor.take() * total;
    size_t idx = size_t(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
    if (idx > last_positive) idx = last_positive;
    out[j] = uint32_t(idx);
  }
  return out;
}

std::vector<uint32_t> resample_systematic(std::span<const double> weights, size_t n_out,
                                          DrawCursor& cursor) {
  auto [cum, last_positive] = cumulative(weights);
  // Grid point j lands in cell i iff (u + j) * total / n < cum[i].
  // Rescaling the cumulative sums once and comparing u < cum[i]*n/total - j
  // keeps the test exact whenever the weights make the cell edges exact
  // (equal weights, dyadic two-atom fixtures), where the (u + j) sum
  // itself would round onto a boundary for u next to 1.
  const double scale = double(n_out) / cum.back();
  for (double& c : cum) c *= scale;
  const double u = cursor.take();
  std::vector<uint32_t> out(n_out);
  size_t idx = 0;
  for (size_t j = 0; j < n_out; ++j) {
    while (idx < cum.size() && !(u < cum[idx] - double(j))) ++idx;
    if (idx > last_positive) idx = last_positive;
    out[j] = uint32_t(idx);
  }
  return out;
}

double effective_sample_size(std::span<const double> weights) {
  double total = 0.0;
  for (const double w : weights) total += w;
  if (!(total > 0.0)) {
    throw Error(ErrCode::ZeroWeightEnsemble, "all weights are zero; ESS undefined");
  }
  double sum_sq = 0.0;
  for (const double w : weights) {
    const double normalized = w / total;
    sum_sq += normalized * normalized;
  }
  return 1.0 / sum_sq;
}

}  // namespace fkppg
