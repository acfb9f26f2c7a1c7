#pragma once

// JSON form of problems, reports and certificates. Rationals are integer
// pairs [num, den] (entries beyond 64 bits are decimal strings). Every
// to_json/from_json pair round-trips exactly, and dump() is deterministic.

#include <string>
#include <vector>

#include <json.hpp>

#include "mosip/gap.h"
#include "mosip/kkt.h"
#include "mosip/oracle.h"
#include "mosip/problem.h"
#include "mosip/quals.h"

namespace mosip {

using Json = nlohmann::ordered_json;

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);
// Throws InputError with the parser's position on malformed text.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json to_json(const Rational& q);
Json to_json(const Vec& v);
Json to_json(const Matrix& m);
Json to_json(const ExtReal& v);  // [n, d], "+inf", "-inf" or {"sign", "sqrt"}

Rational rational_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
ExtReal extreal_from_json(const Json& j);

// --- problems --------------------------------------------------------------

Json to_json(const HPolyhedron& s);  // {"rows": [[a..., b], ...]}
HPolyhedron polyhedron_from_json(const Json& j, std::size_t dim);

Json to_json(const ConvexFunc& f);
ConvexFunc func_from_json(const Json& j, std::size_t dim);

Json to_json(const MosipProblem& p);
// Validates the problem. Metadata keys "name", "point" and "notes" are
// accepted and ignored; any other unknown key is an InputError.
MosipProblem problem_from_json(const Json& j);

// --- reports ---------------------------------------------------------------

Json to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);

Json to_json(const QualOptions& o);
QualOptions qual_options_from_json(const Json& j);

Json to_json(const QualReport& r);
QualReport qual_report_from_json(const Json& j);

Json to_json(const DiagramResult& d);

Json to_json(const Separator& s);
Separator separator_from_json(const Json& j);

Json to_json(const KktCertificate& k);
KktCertificate certificate_from_json(const Json& j);

Json to_json(const WeakKkt& w);
WeakKkt weak_kkt_from_json(const Json& j);
Json to_json(const StrongKkt& s);
StrongKkt strong_kkt_from_json(const Json& j);
Json to_json(const PerturbedKkt& p);
PerturbedKkt perturbed_kkt_from_json(const Json& j);

Json to_json(const GapSearch& g);
GapSearch gap_search_from_json(const Json& j);
Json to_json(const PerturbedGapReport& r);
PerturbedGapReport perturbed_gap_from_json(const Json& j);

Json to_json(const OracleReport& r);
OracleReport oracle_report_from_json(const Json& j);

Json to_json(const EfficiencyClaim& c);
EfficiencyClaim claim_from_json(const Json& j);

// --- text tables -----------------------------------------------------------

// Fixed-width truth table plus a one-line Holds/Fails/Undecidable summary.
std::string quals_table(const std::vector<QualReport>& reports, const DiagramResult& d);
std::string claims_table(const std::vector<EfficiencyClaim>& claims);

}  // namespace mosip
