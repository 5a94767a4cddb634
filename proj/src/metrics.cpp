#include "expertrank/metrics.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace expertrank {

double precision_at_n(const std::vector<ExpertId>& ranked,
                      const std::set<ExpertId>& relevant, int n) {
  if (n <= 0) return 0.0;
  int hits = 0;
  std::size_t cutoff = std::min(ranked.size(), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < cutoff; ++i)
    if (relevant.count(ranked[i])) ++hits;
  return static_cast<double>(hits) / n;
}

double average_precision(const std::vector<ExpertId>& ranked,
                         const std::set<ExpertId>& relevant, int ap_n,
                         ApDivisor divisor) {
  if (relevant.empty() || ap_n <= 0) return 0.0;
  double denom = divisor == ApDivisor::RelevantCount
                     ? static_cast<double>(relevant.size())
                     : static_cast<double>(std::min<std::size_t>(
                           relevant.size(), static_cast<std::size_t>(ap_n)));
  double sum = 0.0;
  int hits = 0;
  std::size_t cutoff = std::min(ranked.size(), static_cast<std::size_t>(ap_n));
  for (std::size_t i = 0; i < cutoff; ++i) {
    if (!relevant.count(ranked[i])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return denom > 0 ? sum / denom : 0.0;
}

EvalReport evaluate(const std::map<TopicId, std::vector<ExpertId>>& rankings,
                    const GroundTruth& truth, const EvalConfig& cfg) {
  EvalReport report;
  static const std::vector<ExpertId> kEmpty;
  std::map<int, std::vector<double>> by_coverage;
  std::map<int, double> p_sum;

  for (const auto& topic : truth.topic_ids) {
    const auto& relevant = truth.relevant.at(topic);
    auto it = rankings.find(topic);
    const auto& ranked = it == rankings.end() ? kEmpty : it->second;

    double ap = average_precision(ranked, relevant, cfg.ap_n, cfg.ap_divisor);
    report.per_topic_ap[topic] = ap;
    report.coverage[topic] = static_cast<int>(relevant.size());
    by_coverage[static_cast<int>(relevant.size())].push_back(ap);
    for (int n : cfg.n_values) {
      double p = precision_at_n(ranked, relevant, n);
      report.per_topic_p_at_n[topic][n] = p;
      p_sum[n] += p;
    }
  }

  std::size_t n_topics = truth.topic_ids.size();
  if (n_topics > 0) {
    double ap_total = 0.0;
    for (const auto& [topic, ap] : report.per_topic_ap) ap_total += ap;
    report.map = ap_total / static_cast<double>(n_topics);
    for (int n : cfg.n_values)
      report.mean_p_at_n[n] = p_sum[n] / static_cast<double>(n_topics);
    for (const auto& [cov, aps] : by_coverage) {
      double total = 0.0;
      for (double ap : aps) total += ap;
      report.coverage_breakdown[cov] = total / static_cast<double>(aps.size());
    }
  }
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["map"] = map;
  j["p_at_n"] = nlohmann::json::object();
  for (const auto& [n, v] : mean_p_at_n) j["p_at_n"][std::to_string(n)] = v;
  j["per_topic"] = nlohmann::json::array();
  for (const auto& [topic, ap] : per_topic_ap) {
    nlohmann::json entry{{"topic", topic}, {"ap", ap},
                         {"coverage", coverage.at(topic)}};
    auto it = per_topic_p_at_n.find(topic);
    if (it != per_topic_p_at_n.end()) {
      nlohmann::json p = nlohmann::json::object();
      for (const auto& [n, v] : it->second) p[std::to_string(n)] = v;
      entry["p_at_n"] = std::move(p);
    }
    j["per_topic"].push_back(std::move(entry));
  }
  j["coverage_breakdown"] = nlohmann::json::object();
  for (const auto& [cov, v] : coverage_breakdown)
    j["coverage_breakdown"][std::to_string(cov)] = v;
  return j.dump(2);
}

}  // namespace expertrank
