// JSON and CSV encodings for every report the front end emits, plus the
// representation-file loader.  The JSON text is deterministic: object keys
// are sorted, doubles render as shortest round-trip decimals, and nothing
// time- or machine-dependent is embedded.
//
// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anosov/domains.hpp"
#include "anosov/dynamics.hpp"
#include "anosov/lie.hpp"
#include "anosov/modules.hpp"
#include "anosov/numlin.hpp"

namespace anosov {

using Json = nlohmann::json;

// Canonical text form: two-space indent, trailing newline.
std::string dump_json(const Json& j);

// Wraps a report with the command name, the resolved configuration, and the
// library version, so every artifact is self-describing and replayable.
Json envelope(const std::string& command, const Json& config, const Json& report);

Json matrix_json(const Matrix& m);  // row-major nested arrays
Matrix matrix_from_json(const Json& j);
Json vector_json(const Vector& v);
Json rat_json(const Rat& r);  // [numerator, denominator]
Json ratvec_json(const RatVec& v);
Json subspace_json(const Subspace& s);

// File schema: { "family": "SLnR", "n": 3, "generators":
// [ { "name": "a", "matrix": [[...], ...] }, ... ], "form": optional matrix }.
// Missing inverses are completed and the result validated.
RepresentationSpec representation_from_json(const Json& j);
Json representation_json(const RepresentationSpec& rep);

Json root_system_json(const RootSystemData& rs);
Json weyl_element_json(const WeylElement& w);

// Root system with the full element list, the longest element, the
// opposition involution, and the exact half-sum vector.
Json weyl_report_json(const RootSystemData& rs);

Json sphi_report_json(const ModuleFamily& fam, const SplitReport& split,
                      const SPhiSet& sphi, const CertificateReport& cert);

Json scan_report_json(const DivergenceScanReport& r);
std::string scan_report_csv(const DivergenceScanReport& r);

Json qi_report_json(const QiReport& r);
Json proximality_json(const ProximalityReport& r);

Json limit_set_json(const LimitSetSample& s, const RepresentationSpec& rep);
std::string limit_set_csv(const LimitSetSample& s, const RepresentationSpec& rep);

Json membership_json(const MembershipReport& r);
Json domain_report_json(const DomainSampleReport& r);
std::string domain_report_csv(const DomainSampleReport& r);
Json equivariance_json(const EquivarianceReport& r, const RepresentationSpec& rep,
                       const std::vector<ReducedWord>& words);

}  // namespace anosov
