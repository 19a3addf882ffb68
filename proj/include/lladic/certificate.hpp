#pragma once
#include <string>

#include "json.hpp"
#include "lladic/sharpness.hpp"

namespace lladic {

using json = nlohmann::json;

constexpr const char* kSchemaVersion = "1";

// Every number is written as a decimal string; matrices carry one shared precision.
json elem_to_json(const Elem& x);
Elem elem_from_json(RingRef r, const json& j, int prec);
json mat_to_json(const Mat& m);
Mat mat_from_json(RingRef r, const json& j);
json fmat_to_json(const FMat& m);
FMat fmat_from_json(const Fq* F, const json& j);
json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(RingRef r, const json& j);
json form_to_json(const BilinearForm& f);
BilinearForm form_from_json(RingRef r, const json& j);
json ints_to_json(const std::vector<int>& v);
std::vector<int> ints_from_json(const json& j);
std::string num(long v);
long to_long(const json& j);

// Envelope with schema_version, claim, setting, result, precision, verified, timing_ms.
json make_certificate(const std::string& claim, json setting, json result, int precision, bool verified,
                      double timing_ms);

json pairing_result_json(const std::string& group, const Representation& r, const PairingResult& p);
json stabilized_json(const Representation& r, const Lattice& start, const StabilizedPair& sp);
json embedding_json(const Representation& r, const ResidueEmbedding& e);
json obstruction_json(const CounterexampleSetting& s, const ObstructionCertificate& c,
                      const std::optional<ObstructionCertificate>& control);
json residue_obstruction_json(const ResidueObstruction& r);
json abvar_json(const AbVarScenario& a);

struct Reverification {
  bool ok = false;
  std::string detail;
};

// Re-run the exact checks on the data embedded in a certificate.
Reverification verify_certificate(const json& cert);

}  // namespace lladic
