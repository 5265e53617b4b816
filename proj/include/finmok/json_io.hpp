#ifndef FINMOK_JSON_IO_HPP
#define FINMOK_JSON_IO_HPP

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "finmok/decide.hpp"
#include "finmok/semantics.hpp"
#include "finmok/syntax.hpp"

namespace finmok {

using json = nlohmann::json;

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json frame_to_json(const KripkeFrame& frame);
KripkeFrame frame_from_json(const json& j);

json model_to_json(const AugmentedModel& m);
// Rejects non-monadic interpretations, unknown modes, and references to
// undeclared worlds.
AugmentedModel model_from_json(const json& j);

json formula_to_json(const Formula& f);

json violations_to_json(const std::vector<Violation>& vs);

json verdict_to_json(const Verdict& v, const KripkeFrame& frame);

json load_json_file(const std::string& path);

}  // namespace finmok

#endif
