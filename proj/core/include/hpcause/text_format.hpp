#pragma once

// Text formats read and written by the command-line tool. Every parser throws
// ParseError with a byte offset into the whole text it was given.
//
// Model file:
//   # comment
//   variables
//     U  : exo  : {0,1}
//     ST : endo : {0,1}
//   equations
//     ST := U
//     BS := (SH | BH)
//
// Query file (paths are relative to the query file):
//   model: rock.scm
//   context: U=1
//   cause: ST=1, BT=1
//   effect: BS=1
//   variant: updated
//
// Epistemic-state file, one record per line:
//   situation: squad.scm ; U=3 ; 1/10
//
// CQBF file: a prefix line followed by the matrix (may span lines):
//   exists x1 x2 forall y1
//   ((x1 | y1) & !x2)

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hpcause/cause.hpp"
#include "hpcause/model.hpp"
#include "hpcause/qbf.hpp"
#include "hpcause/responsibility.hpp"

namespace hpcause {

CausalModel parse_model(std::string_view text);
std::string format_model(const CausalModel& model);

Context parse_context(std::string_view text, const Signature& sig);

// A field value together with its byte offset in the file.
struct Field {
  std::string text;
  std::size_t offset = 0;
};

struct QueryFile {
  Field model_path;
  Field context;
  Field cause;
  Field effect;
  std::optional<Variant> variant;
};

QueryFile parse_query_file(std::string_view text);

// Resolves the textual fields against `model`. A variant given in
// `override_variant` wins over the file's. ParseError offsets refer to the
// query file.
CauseQuery bind_query(const QueryFile& file, const CausalModel& model,
                      std::optional<Variant> override_variant = std::nullopt);

std::string format_query(std::string_view model_path, const CauseQuery& q);

struct StateRecord {
  Field model_path;
  Field context;
  Rational probability;
};

std::vector<StateRecord> parse_state_file(std::string_view text);

Cqbf2 parse_cqbf(std::string_view text);

Variant parse_variant(std::string_view text);

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

}  // namespace hpcause
