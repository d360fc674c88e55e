#include "casimir/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

// ---------------------------------------------------------------------------
// Document model: ordered sections of key/value entries. Values are numbers,
// quoted strings, arrays, or inline tables; everything fits on one line.
// ---------------------------------------------------------------------------

struct Value {
  enum class Kind { number, string, array, table };
  Kind kind = Kind::number;
  double number = 0.0;
  std::string text;
  std::vector<Value> array;
  std::vector<std::pair<std::string, Value>> table;
  int line = 0;
};

using Entries = std::vector<std::pair<std::string, Value>>;

struct Section {
  std::string path;
  bool is_array = false;
  int line = 0;
  Entries entries;
};

struct Location {
  const std::string* source;
  int line;

  std::string str() const {
    return *source + ":" + std::to_string(line) + ": ";
  }
};

[[noreturn]] void parse_fail(const Location& loc, const std::string& msg) {
  throw ParseError(loc.str() + msg);
}

[[noreturn]] void invalid(const Location& loc, const std::string& msg) {
  throw ValidationError(loc.str() + msg);
}

// ---------------------------------------------------------------------------
// Scanner
// ---------------------------------------------------------------------------

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  Location loc;

  bool eol() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_ws() {
    while (!eol() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

std::string scan_bare_key(Cursor& cur) {
  const std::size_t start = cur.pos;
  while (!cur.eol() && is_bare_key_char(cur.peek())) ++cur.pos;
  if (cur.pos == start) parse_fail(cur.loc, "expected a key");
  return std::string(cur.text.substr(start, cur.pos - start));
}

Value scan_value(Cursor& cur);

Value scan_string(Cursor& cur) {
  ++cur.pos;  // opening quote
  const std::size_t start = cur.pos;
  while (!cur.eol() && cur.peek() != '"') ++cur.pos;
  if (cur.eol()) parse_fail(cur.loc, "unterminated string");
  Value v;
  v.kind = Value::Kind::string;
  v.text = std::string(cur.text.substr(start, cur.pos - start));
  v.line = cur.loc.line;
  ++cur.pos;  // closing quote
  return v;
}

Value scan_number(Cursor& cur) {
  const char* begin = cur.text.data() + cur.pos;
  const char* end = cur.text.data() + cur.text.size();
  double parsed = 0.0;
  const auto res = std::from_chars(begin, end, parsed);
  if (res.ec != std::errc{}) parse_fail(cur.loc, "malformed number");
  cur.pos += static_cast<std::size_t>(res.ptr - begin);
  Value v;
  v.kind = Value::Kind::number;
  v.number = parsed;
  v.line = cur.loc.line;
  return v;
}

Value scan_array(Cursor& cur) {
  Value v;
  v.kind = Value::Kind::array;
  v.line = cur.loc.line;
  ++cur.pos;  // '['
  cur.skip_ws();
  if (!cur.eol() && cur.peek() == ']') {
    ++cur.pos;
    return v;
  }
  while (true) {
    cur.skip_ws();
    v.array.push_back(scan_value(cur));
    cur.skip_ws();
    if (cur.eol()) parse_fail(cur.loc, "unterminated array");
    if (cur.peek() == ',') {
      ++cur.pos;
      continue;
    }
    if (cur.peek() == ']') {
      ++cur.pos;
      return v;
    }
    parse_fail(cur.loc, "expected ',' or ']' in array");
  }
}

Value scan_inline_table(Cursor& cur) {
  Value v;
  v.kind = Value::Kind::table;
  v.line = cur.loc.line;
  ++cur.pos;  // '{'
  cur.skip_ws();
  if (!cur.eol() && cur.peek() == '}') {
    ++cur.pos;
    return v;
  }
  while (true) {
    cur.skip_ws();
    std::string key = scan_bare_key(cur);
    cur.skip_ws();
    if (cur.eol() || cur.peek() != '=') {
      parse_fail(cur.loc, "expected '=' in inline table");
    }
    ++cur.pos;
    cur.skip_ws();
    v.table.emplace_back(std::move(key), scan_value(cur));
    cur.skip_ws();
    if (cur.eol()) parse_fail(cur.loc, "unterminated inline table");
    if (cur.peek() == ',') {
      ++cur.pos;
      continue;
    }
    if (cur.peek() == '}') {
      ++cur.pos;
      return v;
    }
    parse_fail(cur.loc, "expected ',' or '}' in inline table");
  }
}

Value scan_value(Cursor& cur) {
  if (cur.eol()) parse_fail(cur.loc, "expected a value");
  const char c = cur.peek();
  if (c == '"') return scan_string(cur);
  if (c == '[') return scan_array(cur);
  if (c == '{') return scan_inline_table(cur);
  return scan_number(cur);
}

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::vector<Section> parse_document(std::string_view text,
                                    const std::string& source) {
  std::vector<Section> sections;
  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const Location loc{&source, line_no};
    std::string_view line = strip_comment(raw);
    Cursor cur{line, 0, loc};
    cur.skip_ws();
    if (cur.eol()) continue;

    if (cur.peek() == '[') {
      const bool is_array = cur.pos + 1 < line.size() && line[cur.pos + 1] == '[';
      cur.pos += is_array ? 2 : 1;
      cur.skip_ws();
      std::string path = scan_bare_key(cur);
      cur.skip_ws();
      for (int i = 0; i < (is_array ? 2 : 1); ++i) {
        if (cur.eol() || cur.peek() != ']') {
          parse_fail(loc, "unterminated section header");
        }
        ++cur.pos;
      }
      cur.skip_ws();
      if (!cur.eol()) parse_fail(loc, "trailing text after section header");
      sections.push_back(Section{std::move(path), is_array, line_no, {}});
      continue;
    }

    if (sections.empty()) {
      parse_fail(loc, "key outside of any section");
    }
    std::string key = scan_bare_key(cur);
    cur.skip_ws();
    if (cur.eol() || cur.peek() != '=') parse_fail(loc, "expected '='");
    ++cur.pos;
    cur.skip_ws();
    Value value = scan_value(cur);
    value.line = line_no;
    cur.skip_ws();
    if (!cur.eol()) parse_fail(loc, "trailing text after value");
    for (const auto& [existing, unused] : sections.back().entries) {
      if (existing == key) {
        invalid(loc, "duplicate key '" + key + "'");
      }
    }
    sections.back().entries.emplace_back(std::move(key), std::move(value));
  }
  return sections;
}

// ---------------------------------------------------------------------------
// Schema mapping
// ---------------------------------------------------------------------------

struct EntryView {
  const Entries* entries;
  const std::string* source;
  std::string context;
  int line;

  Location loc(int l) const { return {source, l}; }

  const Value* find(const std::string& key) const {
    for (const auto& [k, v] : *entries) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  double number(const std::string& key, const Value& v) const {
    if (v.kind != Value::Kind::number) {
      invalid(loc(v.line), context + ": " + key + " must be a number");
    }
    return v.number;
  }

  double require_number(const std::string& key) const {
    const Value* v = find(key);
    if (v == nullptr) {
      invalid(loc(line), context + ": missing required key '" + key + "'");
    }
    return number(key, *v);
  }

  std::string require_string(const std::string& key) const {
    const Value* v = find(key);
    if (v == nullptr) {
      invalid(loc(line), context + ": missing required key '" + key + "'");
    }
    if (v->kind != Value::Kind::string) {
      invalid(loc(v->line), context + ": " + key + " must be a string");
    }
    return v->text;
  }
};

OscillatorTerm oscillator_term(const Value& v, const EntryView& view,
                               const std::string& key) {
  if (v.kind != Value::Kind::table) {
    invalid(view.loc(v.line),
            view.context + ": entries of " + key +
                " must be inline tables { wp2 = ..., w0 = ..., gamma = ... }");
  }
  OscillatorTerm term;
  for (const auto& [k, field] : v.table) {
    if (field.kind != Value::Kind::number) {
      invalid(view.loc(field.line),
              view.context + ": " + key + "." + k + " must be a number");
    }
    if (k == "wp2") {
      term.wp2 = field.number;
    } else if (k == "w0") {
      term.w0 = field.number;
    } else if (k == "gamma") {
      term.gamma = field.number;
    } else {
      invalid(view.loc(field.line),
              view.context + ": unknown oscillator key '" + k + "'");
    }
  }
  return term;
}

std::vector<OscillatorTerm> oscillator_terms(const Value& v,
                                             const EntryView& view,
                                             const std::string& key) {
  if (v.kind != Value::Kind::array) {
    invalid(view.loc(v.line), view.context + ": " + key + " must be an array");
  }
  std::vector<OscillatorTerm> terms;
  terms.reserve(v.array.size());
  for (const auto& item : v.array) {
    terms.push_back(oscillator_term(item, view, key));
  }
  return terms;
}

/// Builds a material from the keys of a layer/coating/substrate table.
/// extra_allowed lists keys owned by the caller (e.g. "d" of a layer).
Material material_from(const EntryView& view,
                       std::initializer_list<std::string_view> extra_allowed) {
  auto is_extra = [&extra_allowed](const std::string& k) {
    return std::find(extra_allowed.begin(), extra_allowed.end(), k) !=
           extra_allowed.end();
  };
  const std::string type = view.require_string("type");

  auto ensure_keys = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : *view.entries) {
      if (k == "type" || is_extra(k)) continue;
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        invalid(view.loc(v.line), view.context + ": key '" + k +
                                      "' is not valid for type \"" + type +
                                      "\"");
      }
    }
  };

  try {
    if (type == "vacuum") {
      ensure_keys({});
      return Material::vacuum();
    }
    if (type == "constant") {
      ensure_keys({"eps_inf", "mu_inf"});
      const double eps_inf = view.require_number("eps_inf");
      const Value* mu = view.find("mu_inf");
      const double mu_inf = mu ? view.number("mu_inf", *mu) : 1.0;
      return Material::constant(eps_inf, mu_inf);
    }
    if (type == "oscillator") {
      ensure_keys({"terms", "mu_terms"});
      const Value* terms = view.find("terms");
      if (terms == nullptr) {
        invalid(view.loc(view.line),
                view.context + ": oscillator material requires 'terms'");
      }
      std::vector<OscillatorTerm> mu_terms;
      if (const Value* mu = view.find("mu_terms")) {
        mu_terms = oscillator_terms(*mu, view, "mu_terms");
      }
      return Material::oscillator(oscillator_terms(*terms, view, "terms"),
                                  std::move(mu_terms));
    }
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.find(*view.source) == 0) throw;  // already located
    invalid(view.loc(view.line), view.context + ": " + what);
  }
  invalid(view.loc(view.line),
          view.context + ": type must be \"vacuum\", \"constant\" or "
                         "\"oscillator\"");
}

Layer layer_from(const EntryView& view) {
  const double d = view.require_number("d");
  if (!std::isfinite(d) || d < 0.0) {
    const Value* value = view.find("d");
    invalid(view.loc(value != nullptr ? value->line : view.line),
            view.context + ": d must be finite and >= 0");
  }
  return Layer{material_from(view, {"d"}), d};
}

Plate plate_from(const std::string& side, const Section* section,
                 const std::vector<const Section*>& coating_sections,
                 const std::string& source) {
  if (section == nullptr) {
    throw ValidationError(source + ": missing required section [plate." +
                          side + "]");
  }
  EntryView view{&section->entries, &source, "plate." + side, section->line};
  const std::string kind = view.require_string("kind");
  if (kind == "mirror") {
    if (!coating_sections.empty()) {
      invalid(view.loc(coating_sections.front()->line),
              "plate." + side + ": mirror plates take no coatings");
    }
    const double rp = view.require_number("rp");
    const double rs = view.require_number("rs");
    for (const auto& [k, v] : section->entries) {
      if (k != "kind" && k != "rp" && k != "rs") {
        invalid(view.loc(v.line),
                "plate." + side + ": key '" + k + "' is not valid for mirror");
      }
    }
    try {
      return Plate::phase_reflector(rp, rs);
    } catch (const ValidationError& e) {
      invalid(view.loc(section->line), "plate." + side + ": " + e.what());
    }
  }
  if (kind == "halfspace") {
    const Value* substrate = view.find("substrate");
    if (substrate == nullptr) {
      invalid(view.loc(section->line),
              "plate." + side + ": halfspace requires 'substrate'");
    }
    if (substrate->kind != Value::Kind::table) {
      invalid(view.loc(substrate->line),
              "plate." + side + ": substrate must be an inline table");
    }
    for (const auto& [k, v] : section->entries) {
      if (k != "kind" && k != "substrate") {
        invalid(view.loc(v.line), "plate." + side + ": key '" + k +
                                      "' is not valid for halfspace");
      }
    }
    EntryView sub_view{&substrate->table, &source,
                       "plate." + side + ".substrate", substrate->line};
    Material sub = material_from(sub_view, {});
    std::vector<Layer> coatings;
    for (const Section* coating : coating_sections) {
      EntryView cview{&coating->entries, &source,
                      "plate." + side + ".coating", coating->line};
      coatings.push_back(layer_from(cview));
    }
    return Plate::coated_half_space(std::move(coatings), std::move(sub));
  }
  invalid(view.loc(section->line),
          "plate." + side + ": kind must be \"mirror\" or \"halfspace\"");
}

void apply_quadrature(const Section& section, const std::string& source,
                      QuadratureSpec* spec) {
  EntryView view{&section.entries, &source, "quadrature", section.line};
  for (const auto& [k, v] : section.entries) {
    const double num = view.number(k, v);
    if (k == "rel_tol") {
      spec->rel_tol = num;
    } else if (k == "abs_floor") {
      spec->abs_floor = num;
    } else if (k == "max_levels") {
      if (num != std::floor(num)) {
        invalid(view.loc(v.line), "quadrature: max_levels must be an integer");
      }
      spec->max_levels = static_cast<int>(num);
    } else if (k == "xi_scale") {
      spec->xi_scale = num;
    } else {
      invalid(view.loc(v.line), "quadrature: unknown key '" + k + "'");
    }
  }
  try {
    spec->validate();
  } catch (const ValidationError& e) {
    invalid({&source, section.line}, e.what());
  }
}

void apply_task(const Section& section, const std::string& source,
                std::size_t layer_count, RunConfig* cfg) {
  EntryView view{&section.entries, &source, "task", section.line};
  std::optional<SweepSpec> sweep;
  for (const auto& [k, v] : section.entries) {
    if (k == "kind") {
      const std::string kind = view.require_string("kind");
      if (kind == "compute") {
        cfg->task = TaskKind::compute;
      } else if (kind == "sweep") {
        cfg->task = TaskKind::sweep;
      } else if (kind == "check") {
        cfg->task = TaskKind::check;
      } else {
        invalid(view.loc(v.line),
                "task: kind must be \"compute\", \"sweep\" or \"check\"");
      }
    } else if (k == "target") {
      if (!sweep) sweep.emplace();
      if (v.kind == Value::Kind::string) {
        sweep->target = v.text;
      } else if (v.kind == Value::Kind::number) {
        sweep->target = std::to_string(static_cast<long long>(v.number));
        if (v.number != std::floor(v.number)) {
          invalid(view.loc(v.line), "task: target index must be an integer");
        }
      } else {
        invalid(view.loc(v.line),
                "task: target must be \"d1\", \"dn\" or a layer index");
      }
      if (sweep->target == "d1") {
        sweep->layer_index = 1;
      } else if (sweep->target == "dn") {
        sweep->layer_index = layer_count;
      } else {
        long long idx = 0;
        const auto res = std::from_chars(
            sweep->target.data(), sweep->target.data() + sweep->target.size(),
            idx);
        if (res.ec != std::errc{} ||
            res.ptr != sweep->target.data() + sweep->target.size() ||
            idx < 1 || static_cast<std::size_t>(idx) > layer_count) {
          invalid(view.loc(v.line),
                  "task: target '" + sweep->target +
                      "' does not name a medium layer");
        }
        sweep->layer_index = static_cast<std::size_t>(idx);
      }
    } else if (k == "values") {
      if (!sweep) sweep.emplace();
      if (v.kind != Value::Kind::array || v.array.empty()) {
        invalid(view.loc(v.line), "task: values must be a non-empty array");
      }
      for (const auto& item : v.array) {
        if (item.kind != Value::Kind::number) {
          invalid(view.loc(item.line), "task: values must be numbers");
        }
        if (!std::isfinite(item.number) || item.number <= 0.0) {
          invalid(view.loc(item.line), "task: sweep values must be positive");
        }
        if (!sweep->values.empty() && item.number <= sweep->values.back()) {
          invalid(view.loc(item.line),
                  "task: sweep values must be strictly increasing");
        }
        sweep->values.push_back(item.number);
      }
    } else if (k == "out") {
      if (v.kind != Value::Kind::string) {
        invalid(view.loc(v.line), "task: out must be a string path");
      }
      cfg->output.path = v.text;
    } else if (k == "format") {
      const std::string fmt = view.require_string("format");
      if (fmt == "table") {
        cfg->output.format = OutputFormat::table;
      } else if (fmt == "csv") {
        cfg->output.format = OutputFormat::csv;
      } else {
        invalid(view.loc(v.line), "task: format must be \"table\" or \"csv\"");
      }
    } else {
      invalid(view.loc(v.line), "task: unknown key '" + k + "'");
    }
  }
  if (sweep) {
    if (sweep->values.empty()) {
      invalid({&source, section.line}, "task: sweep requires 'values'");
    }
    if (sweep->target.empty()) {
      invalid({&source, section.line}, "task: sweep requires 'target'");
    }
    cfg->sweep = std::move(sweep);
  }
  if (cfg->task == TaskKind::sweep && !cfg->sweep) {
    invalid({&source, section.line},
            "task: kind \"sweep\" requires 'target' and 'values'");
  }
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& source_name) {
  const std::vector<Section> sections = parse_document(text, source_name);

  const Section* plate_left = nullptr;
  const Section* plate_right = nullptr;
  const Section* quadrature = nullptr;
  const Section* task = nullptr;
  std::vector<const Section*> layers;
  std::vector<const Section*> left_coatings;
  std::vector<const Section*> right_coatings;

  for (const auto& section : sections) {
    const Location loc{&source_name, section.line};
    auto single = [&](const Section*& slot) {
      if (slot != nullptr) {
        invalid(loc, "duplicate section [" + section.path + "]");
      }
      slot = &section;
    };
    if (section.path == "plate.left") {
      single(plate_left);
    } else if (section.path == "plate.right") {
      single(plate_right);
    } else if (section.path == "quadrature") {
      single(quadrature);
    } else if (section.path == "task") {
      single(task);
    } else if (section.path == "layer") {
      if (!section.is_array) invalid(loc, "use [[layer]] for medium layers");
      layers.push_back(&section);
    } else if (section.path == "plate.left.coating") {
      left_coatings.push_back(&section);
    } else if (section.path == "plate.right.coating") {
      right_coatings.push_back(&section);
    } else {
      invalid(loc, "unknown section [" + section.path + "]");
    }
  }

  if (layers.empty()) {
    throw ValidationError(source_name +
                          ": at least one [[layer]] section is required");
  }

  RunConfig cfg;
  cfg.system.plate_left =
      plate_from("left", plate_left, left_coatings, source_name);
  cfg.system.plate_right =
      plate_from("right", plate_right, right_coatings, source_name);
  cfg.system.medium.clear();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    EntryView view{&layers[i]->entries, &source_name,
                   "layer " + std::to_string(i + 1), layers[i]->line};
    cfg.system.medium.push_back(layer_from(view));
  }
  cfg.system.validate();

  if (quadrature != nullptr) {
    apply_quadrature(*quadrature, source_name, &cfg.quadrature);
  }
  if (task != nullptr) {
    apply_task(*task, source_name, cfg.system.medium.size(), &cfg);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path + ": cannot open config file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

}  // namespace casimir
