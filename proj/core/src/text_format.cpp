#include "hpcause/text_format.hpp"

#include <map>

#include "hpcause/error.hpp"
#include "scanner.hpp"

namespace hpcause {

namespace {

// Comments are blanked rather than removed so offsets stay valid.
std::string strip_comments(std::string_view text) {
  std::string out(text);
  bool in_comment = false;
  for (char& c : out) {
    if (c == '\n') in_comment = false;
    else if (c == '#') in_comment = true;
    if (in_comment) c = ' ';
  }
  return out;
}

struct Span {
  std::string_view text;
  std::size_t offset;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Span trim(Span s) {
  while (!s.text.empty() && is_space(s.text.front())) {
    s.text.remove_prefix(1);
    ++s.offset;
  }
  while (!s.text.empty() && is_space(s.text.back())) s.text.remove_suffix(1);
  return s;
}

// Nonblank lines, trimmed, with their offsets.
std::vector<Span> lines_of(std::string_view text) {
  std::vector<Span> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    Span line = trim({text.substr(start, end - start), start});
    if (!line.text.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

// Runs `fn` on a field's text, moving ParseError offsets into file coordinates.
template <typename Fn>
auto at_offset(std::size_t base, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw e.shifted(base);
  }
}

std::vector<Value> parse_range(detail::Scanner& sc) {
  sc.expect("{");
  std::vector<Value> range;
  Value first = sc.expect_integer();
  if (sc.consume("..")) {
    std::size_t at = sc.pos();
    Value last = sc.expect_integer();
    if (last < first) sc.fail_at(at, "empty range");
    if (static_cast<std::int64_t>(last) - first >= (1 << 16)) sc.fail_at(at, "range too large");
    for (Value v = first;; ++v) {
      range.push_back(v);
      if (v == last) break;
    }
  } else {
    range.push_back(first);
    while (sc.consume(",")) range.push_back(sc.expect_integer());
  }
  sc.expect("}");
  return range;
}

Field field_of(Span s) { return Field{std::string(s.text), s.offset}; }

}  // namespace

CausalModel parse_model(std::string_view raw) {
  const std::string text = strip_comments(raw);
  enum class Section { kNone, kVariables, kEquations } section = Section::kNone;
  auto sig = std::make_shared<Signature>();
  std::vector<std::pair<Span, Span>> equations;  // (name, expression)

  for (const Span& line : lines_of(text)) {
    if (line.text == "variables") {
      section = Section::kVariables;
      continue;
    }
    if (line.text == "equations") {
      section = Section::kEquations;
      continue;
    }
    if (section == Section::kNone) throw ParseError("expected 'variables'", line.offset);
    if (section == Section::kVariables) {
      at_offset(line.offset, [&] {
        detail::Scanner sc(line.text);
        std::size_t at = sc.pos();
        auto name = sc.identifier();
        if (!name) sc.fail("expected a variable name");
        sc.expect(":");
        std::size_t kind_at = sc.pos();
        auto kind = sc.identifier();
        VarKind k;
        if (kind == "exo")
          k = VarKind::kExogenous;
        else if (kind == "endo")
          k = VarKind::kEndogenous;
        else
          sc.fail_at(kind_at, "expected 'exo' or 'endo'");
        sc.expect(":");
        std::size_t range_at = sc.pos();
        std::vector<Value> range = parse_range(sc);
        sc.expect_end();
        if (sig->find(*name)) sc.fail_at(at, "duplicate variable '" + std::string(*name) + "'");
        try {
          sig->add(std::string(*name), k, std::move(range));
        } catch (const ModelError& e) {
          sc.fail_at(range_at, e.what());
        }
      });
      continue;
    }
    auto assign = line.text.find(":=");
    if (assign == std::string_view::npos) throw ParseError("expected ':='", line.offset);
    Span name = trim({line.text.substr(0, assign), line.offset});
    Span expr = trim({line.text.substr(assign + 2), line.offset + assign + 2});
    if (name.text.empty()) throw ParseError("expected a variable name", line.offset);
    equations.emplace_back(name, expr);
  }

  std::vector<std::optional<Expression>> eqs(sig->size());
  for (const auto& [name, expr] : equations) {
    auto id = sig->find(name.text);
    if (!id) throw ParseError("unknown variable '" + std::string(name.text) + "'", name.offset);
    if (!sig->is_endogenous(*id))
      throw ParseError("exogenous variable '" + std::string(name.text) + "' cannot have an equation", name.offset);
    if (eqs[id->index]) throw ParseError("second equation for '" + std::string(name.text) + "'", name.offset);
    if (expr.text.empty()) throw ParseError("expected an expression", expr.offset);
    eqs[id->index] = at_offset(expr.offset, [&] { return parse_expression(expr.text, *sig); });
  }
  return CausalModel(std::move(sig), std::move(eqs));
}

std::string format_model(const CausalModel& model) {
  const Signature& sig = model.signature();
  std::string out = "variables\n";
  for (std::uint32_t i = 0; i < sig.size(); ++i) {
    VarId id{i};
    out += "  " + sig.name(id) + " : " + (sig.is_endogenous(id) ? "endo" : "exo") + " : {";
    const auto& range = sig.range(id);
    for (std::size_t j = 0; j < range.size(); ++j) out += (j ? ", " : "") + std::to_string(range[j]);
    out += "}\n";
  }
  out += "equations\n";
  for (VarId id : sig.endogenous()) {
    if (const auto& f = model.fixed_value(id))
      out += "  " + sig.name(id) + " := " + std::to_string(*f) + "\n";
    else if (const auto& e = model.equation(id))
      out += "  " + sig.name(id) + " := " + e->to_string(sig) + "\n";
  }
  return out;
}

Context parse_context(std::string_view text, const Signature& sig) {
  if (trim({text, 0}).text.empty()) return Context(sig, {});
  return Context(sig, parse_assignment(text, sig, VarKind::kExogenous));
}

Variant parse_variant(std::string_view text) {
  Span t = trim({text, 0});
  if (t.text == "updated") return Variant::kUpdated;
  if (t.text == "original") return Variant::kOriginal;
  throw ParseError("expected 'updated' or 'original'", t.offset);
}

QueryFile parse_query_file(std::string_view raw) {
  const std::string text = strip_comments(raw);
  std::map<std::string, Span, std::less<>> fields;
  for (const Span& line : lines_of(text)) {
    auto colon = line.text.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", line.offset);
    std::string key(trim({line.text.substr(0, colon), 0}).text);
    Span value = trim({line.text.substr(colon + 1), line.offset + colon + 1});
    if (key != "model" && key != "context" && key != "cause" && key != "effect" && key != "variant")
      throw ParseError("unknown key '" + key + "'", line.offset);
    if (!fields.emplace(key, value).second) throw ParseError("duplicate key '" + key + "'", line.offset);
  }
  QueryFile q;
  auto required = [&](const char* key, Field& out) {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(std::string("missing '") + key + ":' line", raw.size());
    if (it->second.text.empty()) throw ParseError(std::string("empty '") + key + ":' value", it->second.offset);
    out = field_of(it->second);
  };
  required("model", q.model_path);
  auto ctx = fields.find("context");
  if (ctx != fields.end()) q.context = field_of(ctx->second);
  required("cause", q.cause);
  required("effect", q.effect);
  if (auto it = fields.find("variant"); it != fields.end())
    q.variant = at_offset(it->second.offset, [&] { return parse_variant(it->second.text); });
  return q;
}

CauseQuery bind_query(const QueryFile& file, const CausalModel& model, std::optional<Variant> override_variant) {
  const Signature& sig = model.signature();
  Assignment ctx;
  if (!file.context.text.empty())
    ctx = at_offset(file.context.offset, [&] { return parse_assignment(file.context.text, sig, VarKind::kExogenous); });
  Assignment cause = at_offset(file.cause.offset, [&] { return parse_assignment(file.cause.text, sig); });
  EventFormula effect = at_offset(file.effect.offset, [&] { return parse_event_formula(file.effect.text, sig); });
  Variant v = override_variant.value_or(file.variant.value_or(Variant::kUpdated));
  return CauseQuery(model, Context(sig, std::move(ctx)), std::move(cause), std::move(effect), v);
}

std::string format_query(std::string_view model_path, const CauseQuery& q) {
  const Signature& sig = q.model().signature();
  std::string out = "model: " + std::string(model_path) + "\n";
  out += "context: " + to_string(sig, q.context().values()) + "\n";
  out += "cause: " + to_string(sig, q.candidate()) + "\n";
  out += "effect: " + q.effect().to_string(sig) + "\n";
  out += std::string("variant: ") + to_string(q.variant()) + "\n";
  return out;
}

std::vector<StateRecord> parse_state_file(std::string_view raw) {
  const std::string text = strip_comments(raw);
  std::vector<StateRecord> out;
  for (const Span& line : lines_of(text)) {
    constexpr std::string_view kKey = "situation:";
    if (!line.text.starts_with(kKey)) throw ParseError("expected 'situation:'", line.offset);
    std::vector<Span> parts;
    std::size_t start = kKey.size();
    while (true) {
      std::size_t semi = line.text.find(';', start);
      std::size_t end = semi == std::string_view::npos ? line.text.size() : semi;
      parts.push_back(trim({line.text.substr(start, end - start), line.offset + start}));
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (parts.size() != 3) throw ParseError("expected 'situation: model ; context ; probability'", line.offset);
    if (parts[0].text.empty()) throw ParseError("empty model path", parts[0].offset);
    StateRecord r;
    r.model_path = field_of(parts[0]);
    r.context = field_of(parts[1]);
    r.probability = at_offset(parts[2].offset, [&] { return parse_rational(parts[2].text); });
    out.push_back(std::move(r));
  }
  return out;
}

Cqbf2 parse_cqbf(std::string_view raw) {
  const std::string text = strip_comments(raw);
  const std::string_view all(text);
  auto lines = lines_of(all);
  if (lines.empty()) throw ParseError("expected 'exists' or 'forall'", 0);
  // The prefix is the first line, up to an optional ':'.
  const Span& head = lines.front();
  std::size_t colon = head.text.find(':');
  std::size_t prefix_len = colon == std::string_view::npos ? head.text.size() : colon;
  std::size_t matrix_at = head.offset + (colon == std::string_view::npos ? head.text.size() : colon + 1);

  std::optional<bool> first;  // true: exists outer
  std::vector<std::string> outer, inner;
  at_offset(head.offset, [&] {
    detail::Scanner sc(head.text.substr(0, prefix_len));
    std::optional<bool> current;
    while (!sc.at_end()) {
      std::size_t at = sc.pos();
      auto id = sc.identifier();
      if (!id) sc.fail("expected a proposition name");
      if (*id == "exists" || *id == "forall") {
        bool is_exists = *id == "exists";
        if (!current) {
          first = current = is_exists;
        } else if (*current == is_exists || !inner.empty() || outer.empty()) {
          sc.fail_at(at, "expected two alternating quantifier blocks");
        } else {
          current = is_exists;
        }
        continue;
      }
      if (!current) sc.fail_at(at, "expected 'exists' or 'forall'");
      (*current == *first ? outer : inner).emplace_back(*id);
    }
    if (!first) sc.fail("expected 'exists' or 'forall'");
    if (outer.empty() || inner.empty()) sc.fail("expected two nonempty quantifier blocks");
    return 0;
  });

  std::string_view matrix = all.substr(matrix_at);
  if (trim({matrix, 0}).text.empty()) throw ParseError("expected a matrix", all.size());
  QuantifierShape shape = *first ? QuantifierShape::kExistsForall : QuantifierShape::kForallExists;
  try {
    return at_offset(matrix_at, [&] { return Cqbf2::parse(shape, outer, inner, matrix); });
  } catch (const QueryError& e) {
    throw ParseError(e.what(), head.offset);
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace hpcause
