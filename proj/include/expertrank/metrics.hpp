#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "expertrank/corpus.hpp"
#include "expertrank/types.hpp"

namespace expertrank {

enum class ApDivisor { RelevantCount, MinWithCutoff };

struct EvalConfig {
  std::vector<int> n_values{10, 15, 20, 25, 30};
  int ap_n = 30;
  ApDivisor ap_divisor = ApDivisor::RelevantCount;
};

// |top-n hits| / n; the divisor stays n even when the list is shorter.
double precision_at_n(const std::vector<ExpertId>& ranked,
                      const std::set<ExpertId>& relevant, int n);

double average_precision(const std::vector<ExpertId>& ranked,
                         const std::set<ExpertId>& relevant, int ap_n,
                         ApDivisor divisor = ApDivisor::RelevantCount);

struct EvalReport {
  double map = 0.0;
  std::map<int, double> mean_p_at_n;
  std::map<TopicId, double> per_topic_ap;
  std::map<TopicId, std::map<int, double>> per_topic_p_at_n;
  std::map<TopicId, int> coverage;            // |relevant| per topic
  std::map<int, double> coverage_breakdown;   // |relevant| -> mean AP

  std::string to_json() const;
};

// Topics present in truth but missing from rankings count as empty lists.
EvalReport evaluate(const std::map<TopicId, std::vector<ExpertId>>& rankings,
                    const GroundTruth& truth, const EvalConfig& cfg = {});

}  // namespace expertrank
