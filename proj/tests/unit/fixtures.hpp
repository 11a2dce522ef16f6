#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "hpcause/cause.hpp"
#include "hpcause/formula.hpp"
#include "hpcause/text_format.hpp"

namespace hpcause::testing {

inline std::string data_path(const std::string& name) { return std::string(HPCAUSE_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline CausalModel data_model(const std::string& name) { return parse_model(read_data(name)); }

inline CausalModel model_from(std::string_view text) { return parse_model(text); }

inline CauseQuery make_query(const CausalModel& m, std::string_view context, std::string_view cause,
                             std::string_view effect, Variant v = Variant::kUpdated) {
  const Signature& sig = m.signature();
  return CauseQuery(m, parse_context(context, sig), parse_assignment(cause, sig), parse_event_formula(effect, sig), v);
}

inline Assignment assign(const CausalModel& m, std::string_view text) {
  return parse_assignment(text, m.signature());
}

inline Witness witness(const CausalModel& m, std::string_view w, std::string_view x_prime) {
  Witness out;
  if (!w.empty()) out.contingency = parse_assignment(w, m.signature());
  out.alternative = parse_assignment(x_prime, m.signature());
  return out;
}

inline const char* kGunContext = "UA=1, UB=0, UC=1";

}  // namespace hpcause::testing
