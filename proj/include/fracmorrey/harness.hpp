#ifndef FRACMORREY_HARNESS_HPP
#define FRACMORREY_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracmorrey/functions.hpp"
#include "fracmorrey/geometry.hpp"

namespace fracmorrey {

/// One verification experiment: a function family, a weight, parameters,
/// a base grid refined `levels - 1` times, and (where needed) a family of
/// cubes or balls.
struct ExperimentSpec {
  std::string id;  // mw, thm41, lem44, thm35, lem31, sharp_equiv, lem23, morrey_equiv
  std::vector<FunctionDescriptor> functions;
  WeightDescriptor weight = WeightDescriptor::constant(1.0);
  double p = 2.0;
  double q = 4.0;
  double alpha = 0.5;
  double lambda = 0.5;
  WeightDescriptor omega = WeightDescriptor::power(-0.25);
  bool central = false;
  int dimension = 1;
  double half_width = 8.0;
  int cells = 512;
  int levels = 2;
  std::vector<Shape> regions;
  double spread_bound = 25.0;
  double drift_bound = 0.10;
  double side_tolerance = 0.05;
  std::uint64_t seed = 1;

  Domain domain(int level = 0) const;
};

/// Defaults for a named experiment (families, grid and bounds).
ExperimentSpec default_experiment(const std::string& id);
std::vector<std::string> experiment_ids();

struct Instance {
  std::string function;
  std::string region;  // empty for whole-box experiments
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioStats {
  int cells = 0;
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double spread = 0.0;
};

/// One-sided inequality lhs >= constant * rhs checked per instance.
struct SideCheck {
  std::string name;
  double constant = 1.0;
  double tolerance = 0.0;
  double worst = 0.0;  // min over instances of lhs / (constant rhs)
  bool holds = true;
};

struct EquivalenceReport {
  std::string id;
  std::vector<Instance> instances;  // at the finest level
  RatioStats stats;
  std::vector<RatioStats> refinement;
  double drift = 0.0;
  double spread_bound = 0.0;
  double drift_bound = 0.0;
  std::vector<SideCheck> checks;
  std::vector<Interval> box;
  std::string note;
  bool pass = true;
};

RatioStats ratio_stats(const std::vector<Instance>& instances, int cells = 0);

EquivalenceReport verify_mw(const ExperimentSpec& spec);
EquivalenceReport verify_thm41(const ExperimentSpec& spec);
EquivalenceReport verify_lem44(const ExperimentSpec& spec);
EquivalenceReport verify_thm35(const ExperimentSpec& spec);
EquivalenceReport verify_lem31(const ExperimentSpec& spec);
EquivalenceReport verify_sharp_equiv(const ExperimentSpec& spec);
EquivalenceReport verify_lem23(const ExperimentSpec& spec);
EquivalenceReport verify_morrey_equiv(const ExperimentSpec& spec);

/// Dispatch on spec.id.
EquivalenceReport verify(const ExperimentSpec& spec);

}  // namespace fracmorrey

#endif
