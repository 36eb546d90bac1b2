#include "pforge/rp/report.hpp"

#include "pforge/rp/afriat.hpp"
#include "pforge/rp/garp.hpp"

namespace pforge::rp {

nlohmann::json certificate_to_json(const ParetoCertificate& c) {
  return {{"u", c.u}, {"lambda", c.lambda}, {"r", c.r}, {"alpha", c.alpha}};
}

nlohmann::json audit_report(const RPDataset& d, const AuditOptions& opts) {
  const GapResult gap = pareto_gap(d, opts.alpha, opts.tol_r);
  std::vector<double> ccei;
  for (std::size_t i = 0; i < d.M(); ++i) ccei.push_back(ccei_scalar(d, i, opts.tol_e));
  return {{"T", d.T()},
          {"M", d.M()},
          {"mm_garp", mm_garp(d)},
          {"pareto_gap", gap.gap},
          {"per_agent_gaps", gap.per_agent_gaps},
          {"garp_f_threshold", garp_f_threshold(d, opts.tol_f)},
          {"ccei", ccei},
          {"certificate", certificate_to_json(gap.certificate)},
          {"consistent", gap.gap <= opts.tol_r}};
}

}  // namespace pforge::rp
