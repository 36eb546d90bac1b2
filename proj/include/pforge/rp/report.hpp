#pragma once

#include "json.hpp"
#include "pforge/core/dataset.hpp"
#include "pforge/core/tolerances.hpp"

namespace pforge::rp {

struct AuditOptions {
  double alpha = kDefaultAlpha;
  double tol_r = kTolR;
  double tol_f = 1e-4;
  double tol_e = 1e-6;
};

nlohmann::json certificate_to_json(const ParetoCertificate& c);

// {mm_garp, pareto_gap, per_agent_gaps, garp_f_threshold, ccei, certificate, consistent}
nlohmann::json audit_report(const RPDataset& d, const AuditOptions& opts = {});

}  // namespace pforge::rp
