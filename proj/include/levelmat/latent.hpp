#ifndef LEVELMAT_LATENT_HPP
#define LEVELMAT_LATENT_HPP

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace levelmat {

/// The integer tuple (d, m, delta_1..delta_m, epsilon_1..epsilon_{m-2}) read
/// off the shifts of a length-two resolution of a three-generated ideal.
/// Indices in `delta` and `epsilon` are 0-based in code.
struct LatentData {
  int d = 0;
  int m = 0;
  std::vector<int> delta;
  std::vector<int> epsilon;

  bool operator==(const LatentData&) const = default;

  /// Degree prescribed for column j of the upper block (negative means zero column).
  int a_degree(std::size_t j) const { return d - delta[j]; }
  /// Degree prescribed for entry (i,j) of the lower block (nonpositive means zero).
  int b_degree(std::size_t i, std::size_t j) const { return delta[i + 2] - delta[j] + epsilon[i]; }
  /// Second-syzygy shifts D_j = d + delta_{j+2} + epsilon_j.
  std::vector<int> second_shifts() const {
    std::vector<int> out;
    for (std::size_t j = 0; j < epsilon.size(); ++j) out.push_back(d + delta[j + 2] + epsilon[j]);
    return out;
  }
};

/// The conditions a latent tuple must satisfy. `shape` covers the basic
/// ranges and list lengths; `monotone` the ordering of delta.
enum class LatentCondition {
  shape,
  monotone,
  second_shifts_ordered,  // (i)
  delta_sum,              // (ii)
  nonperfect_pairs,       // (iii)
  delta3_bound,           // (iv)
};

inline const char* to_string(LatentCondition c) {
  switch (c) {
    case LatentCondition::shape: return "shape";
    case LatentCondition::monotone: return "monotone";
    case LatentCondition::second_shifts_ordered: return "(i)";
    case LatentCondition::delta_sum: return "(ii)";
    case LatentCondition::nonperfect_pairs: return "(iii)";
    case LatentCondition::delta3_bound: return "(iv)";
  }
  return "?";
}

struct LatentViolation {
  LatentCondition condition;
  std::string detail;
};

struct LatentReport {
  LatentData candidate;
  std::vector<LatentViolation> violations;  // sorted by condition

  bool valid() const { return violations.empty(); }
  bool violates(LatentCondition c) const {
    for (const auto& v : violations)
      if (v.condition == c) return true;
    return false;
  }
};

/// delta_i + delta_j >= d + 1 for all i < j.
/// claim: nonperfect-shift-criterion
inline bool check_nonperfect_shifts(int d, const std::vector<int>& delta) {
  for (std::size_t i = 0; i < delta.size(); ++i)
    for (std::size_t j = i + 1; j < delta.size(); ++j)
      if (delta[i] + delta[j] < d + 1) return false;
  return true;
}

/// Checks every condition and reports all of the failed ones.
/// claim: latent-data-conditions
inline LatentReport validate_latent(const LatentData& c) {
  LatentReport rep{c, {}};
  auto fail = [&](LatentCondition cond, std::string why) { rep.violations.push_back({cond, std::move(why)}); };

  bool lengths_ok = c.m >= 3 && c.delta.size() == static_cast<std::size_t>(c.m) &&
                    c.epsilon.size() + 2 == static_cast<std::size_t>(c.m);
  {
    std::string why;
    if (c.d < 1) why += "d must be >= 1; ";
    if (c.m < 3) why += "m must be >= 3; ";
    if (c.m >= 0 && c.delta.size() != static_cast<std::size_t>(c.m)) why += "delta must have m entries; ";
    if (c.m >= 2 && c.epsilon.size() + 2 != static_cast<std::size_t>(c.m)) why += "epsilon must have m-2 entries; ";
    for (int v : c.delta)
      if (v < 1) {
        why += "delta entries must be >= 1; ";
        break;
      }
    for (int v : c.epsilon)
      if (v < 1) {
        why += "epsilon entries must be >= 1; ";
        break;
      }
    if (!why.empty()) fail(LatentCondition::shape, why.substr(0, why.size() - 2));
  }

  for (std::size_t i = 1; i < c.delta.size(); ++i)
    if (c.delta[i] < c.delta[i - 1]) {
      fail(LatentCondition::monotone, "delta is not non-decreasing at position " + std::to_string(i + 1));
      break;
    }

  if (!lengths_ok) return rep;

  for (std::size_t j = 1; j < c.epsilon.size(); ++j) {
    int prev = c.delta[j + 1] + c.epsilon[j - 1];
    int cur = c.delta[j + 2] + c.epsilon[j];
    if (cur < prev) {
      fail(LatentCondition::second_shifts_ordered, "delta_" + std::to_string(j + 3) + "+epsilon_" +
                                                       std::to_string(j + 1) + " = " + std::to_string(cur) +
                                                       " < " + std::to_string(prev));
      break;
    }
  }

  int eps_sum = std::accumulate(c.epsilon.begin(), c.epsilon.end(), 0);
  if (c.delta[0] + c.delta[1] != c.d + eps_sum)
    fail(LatentCondition::delta_sum, "delta_1+delta_2 = " + std::to_string(c.delta[0] + c.delta[1]) +
                                         " != d+sum(epsilon) = " + std::to_string(c.d + eps_sum));

  if (!check_nonperfect_shifts(c.d, c.delta))
    fail(LatentCondition::nonperfect_pairs, "some delta_i+delta_j < d+1 = " + std::to_string(c.d + 1));

  if (c.delta[2] > c.d)
    fail(LatentCondition::delta3_bound, "delta_3 = " + std::to_string(c.delta[2]) + " > d = " + std::to_string(c.d));

  return rep;
}

/// Consequence of validity: delta_{i+2} - delta_j + epsilon_i > 0 whenever j <= i+2.
inline bool lower_block_leading_degrees_positive(const LatentData& c) {
  for (std::size_t i = 0; i < c.epsilon.size(); ++i)
    for (std::size_t j = 0; j <= i + 2 && j < c.delta.size(); ++j)
      if (c.b_degree(i, j) <= 0) return false;
  return true;
}

struct LatentFromShifts {
  std::optional<LatentData> latent;
  LatentReport report;
  std::string reason;  // set when the epsilons were not all positive

  bool ok() const { return latent.has_value(); }
};

/// epsilon_j := D_j - d - delta_{j+2}; succeeds when every epsilon is positive
/// and the resulting tuple validates.
/// claim: three-generated-resolution-shape
inline LatentFromShifts latent_from_shifts(int d, const std::vector<int>& delta, const std::vector<int>& second) {
  LatentFromShifts out;
  LatentData c;
  c.d = d;
  c.m = static_cast<int>(delta.size());
  c.delta = delta;
  if (second.size() + 2 != delta.size()) {
    out.reason = "expected " + std::to_string(delta.size() >= 2 ? delta.size() - 2 : 0) +
                 " second-syzygy shifts, got " + std::to_string(second.size());
    out.report = validate_latent(c);
    return out;
  }
  for (std::size_t j = 0; j < second.size(); ++j) {
    int e = second[j] - d - delta[j + 2];
    c.epsilon.push_back(e);
    if (e < 1 && out.reason.empty())
      out.reason = "epsilon_" + std::to_string(j + 1) + " = " + std::to_string(e) + " must be >= 1";
  }
  out.report = validate_latent(c);
  if (out.reason.empty() && out.report.valid()) out.latent = c;
  return out;
}

}  // namespace levelmat

#endif  // LEVELMAT_LATENT_HPP
