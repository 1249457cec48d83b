#ifndef NADEUM_CODEC_HPP_
#define NADEUM_CODEC_HPP_

// JSON encodings of every persistent format. All documents carry
// `"format": 1`; decoders reject other versions with FormatError.

#include <json.hpp>

#include "nadeum/hilbert.hpp"
#include "nadeum/kernel.hpp"
#include "nadeum/prover.hpp"
#include "nadeum/semantics.hpp"

namespace nadeum::codec {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Structural form: {"var": n}, {"fun": [name, [args]]}, {"falsity": null},
// {"pre": [name, [args]]}, {"imp": [a, b]}, {"dis": ...}, {"con": ...},
// {"exi": a}, {"uni": a}.
json to_json(const Term& t);
json to_json(const Formula& p);

// Decoders also accept a surface-syntax string in place of the object.
Term term_from_json(const json& j);
Formula formula_from_json(const json& j);

json to_json(const RuleApplication& r);
RuleApplication rule_application_from_json(const json& j);

json to_json(const ProofScript& s);
ProofScript script_from_json(const json& j);

// {"format":1, "root": f, "events": [{"type":"apply","rule":..,"params":{..}}, {"type":"undo"}]}
json to_json(const HistoryEvent& e);
HistoryEvent event_from_json(const json& j);
json to_json(const SessionHistory& h);
SessionHistory history_from_json(const json& j);

json to_json(const Goal& g);  // surface-printed
json to_json(const Verdict& v);

json to_json(const Countermodel& m);
json to_json(const Feedback& f);

// {"lines": [{"index": 1, "formula": "A -> A", "just": {"axiom": [1, {"A": "A"}]}}, ...]}
// with "just": {"mp": [i, j]} for modus ponens.
json to_json(const hilbert::Proof& p);
hilbert::Proof hilbert_proof_from_json(const json& j);
json to_json(const hilbert::Verdict& v);

json read_file(const std::string& path);

}  // namespace nadeum::codec

#endif  // NADEUM_CODEC_HPP_
