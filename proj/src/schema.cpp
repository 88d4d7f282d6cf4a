#include "amalgam/schema.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "amalgam/core.hpp"

namespace amalgam {

namespace {

const std::set<std::string> kKeywords = {
    "$ref",       "type",     "enum",     "minimum",  "maximum",
    "required",   "properties", "additionalProperties", "items",
    "minItems",   "maxItems", "definitions", "anyOf"};
const std::set<std::string> kAnnotations = {"$schema", "$id", "title", "description"};
const std::set<std::string> kTypes = {"object", "array", "string", "integer",
                                      "number", "boolean", "null"};

void check_schema(const Json &s, const std::string &where) {
  if (!s.is_object())
    throw InvariantError("schema " + where + " is not an object");
  for (const auto &[key, value] : s.items()) {
    if (kAnnotations.contains(key))
      continue;
    // draft-07 ignores siblings of $ref
    if (s.contains("$ref") && key != "$ref")
      throw InvariantError("schema " + where + " has keywords beside $ref");
    if (!kKeywords.contains(key))
      throw InvariantError("schema " + where + " uses unsupported keyword " + key);
    if (key == "type") {
      const auto list = value.is_array() ? value : Json::array({value});
      for (const auto &t : list)
        if (!t.is_string() || !kTypes.contains(t.get<std::string>()))
          throw InvariantError("schema " + where + " has a bad type");
    } else if (key == "properties" || key == "definitions") {
      for (const auto &[name, sub] : value.items())
        check_schema(sub, where + "/" + key + "/" + name);
    } else if (key == "items") {
      check_schema(value, where + "/items");
    } else if (key == "anyOf") {
      for (std::size_t i = 0; i < value.size(); ++i)
        check_schema(value[i], where + "/anyOf/" + std::to_string(i));
    } else if (key == "additionalProperties" && !value.is_boolean()) {
      check_schema(value, where + "/additionalProperties");
    }
  }
}

struct Store {
  std::map<std::string, Json> docs;

  Store() {
    for (const auto &[name, text] : detail::embedded_schemas()) {
      const auto file = name + ".json";
      Json doc;
      try {
        doc = Json::parse(text);
      } catch (const Json::parse_error &e) {
        throw InvariantError("schema " + file + " does not parse: " + e.what());
      }
      check_schema(doc, file);
      docs.emplace(file, std::move(doc));
    }
  }
};

const Store &store() {
  static const Store s;
  return s;
}

std::pair<std::string, const Json *> resolve(const std::string &ref, const std::string &base) {
  const auto hash = ref.find('#');
  std::string file = ref.substr(0, hash);
  if (file.empty())
    file = base;
  const auto &docs = store().docs;
  auto it = docs.find(file);
  if (it == docs.end())
    throw InvariantError("unknown schema " + file);
  const Json *node = &it->second;
  if (hash != std::string::npos && hash + 1 < ref.size()) {
    const Json::json_pointer ptr(ref.substr(hash + 1));
    if (!node->contains(ptr))
      throw InvariantError("unresolved schema reference " + ref);
    node = &node->at(ptr);
  }
  return {file, node};
}

bool has_type(const Json &doc, const std::string &t) {
  if (t == "object")
    return doc.is_object();
  if (t == "array")
    return doc.is_array();
  if (t == "string")
    return doc.is_string();
  if (t == "integer")
    return doc.is_number_integer();
  if (t == "number")
    return doc.is_number();
  if (t == "boolean")
    return doc.is_boolean();
  return doc.is_null();
}

std::string pointer_token(const std::string &key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

class Validator {
public:
  std::vector<std::string> errors;

  void run(const Json &doc, const Json &s, const std::string &base, const std::string &at) {
    if (s.contains("$ref")) {
      auto [file, target] = resolve(s.at("$ref").get<std::string>(), base);
      run(doc, *target, file, at);
    }
    if (s.contains("anyOf")) {
      const auto &branches = s.at("anyOf");
      bool ok = std::any_of(branches.begin(), branches.end(), [&](const Json &b) {
        Validator v;
        v.run(doc, b, base, at);
        return v.errors.empty();
      });
      if (!ok)
        fail(at, "matches no alternative");
    }
    if (s.contains("type")) {
      const auto &type = s.at("type");
      const auto list = type.is_array() ? type : Json::array({type});
      bool ok = std::any_of(list.begin(), list.end(),
                            [&](const Json &t) { return has_type(doc, t.get<std::string>()); });
      if (!ok) {
        fail(at, "expected " + type.dump());
        return;
      }
    }
    if (s.contains("enum")) {
      const auto &values = s.at("enum");
      if (std::find(values.begin(), values.end(), doc) == values.end())
        fail(at, "value " + doc.dump() + " not in " + values.dump());
    }
    if (doc.is_number()) {
      if (s.contains("minimum") && doc.get<double>() < s.at("minimum").get<double>())
        fail(at, "below minimum " + s.at("minimum").dump());
      if (s.contains("maximum") && doc.get<double>() > s.at("maximum").get<double>())
        fail(at, "above maximum " + s.at("maximum").dump());
    }
    if (doc.is_object())
      object(doc, s, base, at);
    if (doc.is_array()) {
      const auto n = static_cast<std::int64_t>(doc.size());
      if (s.contains("minItems") && n < s.at("minItems").get<std::int64_t>())
        fail(at, "fewer than " + s.at("minItems").dump() + " items");
      if (s.contains("maxItems") && n > s.at("maxItems").get<std::int64_t>())
        fail(at, "more than " + s.at("maxItems").dump() + " items");
      if (s.contains("items"))
        for (std::size_t i = 0; i < doc.size(); ++i)
          run(doc[i], s.at("items"), base, at + "/" + std::to_string(i));
    }
  }

private:
  void fail(const std::string &at, const std::string &what) {
    errors.push_back((at.empty() ? "/" : at) + ": " + what);
  }

  void object(const Json &doc, const Json &s, const std::string &base, const std::string &at) {
    if (s.contains("required"))
      for (const auto &key : s.at("required"))
        if (!doc.contains(key.get<std::string>()))
          fail(at, "missing required key " + key.get<std::string>());
    const Json empty = Json::object();
    const auto &props = s.contains("properties") ? s.at("properties") : empty;
    for (const auto &[key, value] : doc.items()) {
      const auto sub = at + "/" + pointer_token(key);
      if (props.contains(key)) {
        run(value, props.at(key), base, sub);
      } else if (s.contains("additionalProperties")) {
        const auto &extra = s.at("additionalProperties");
        if (extra.is_boolean()) {
          if (!extra.get<bool>())
            fail(sub, "unexpected key");
        } else {
          run(value, extra, base, sub);
        }
      }
    }
  }
};

} // namespace

std::vector<std::string> schema_names() {
  std::vector<std::string> out;
  for (const auto &[file, _] : store().docs)
    out.push_back(file);
  return out;
}

const Json &schema(const std::string &ref) {
  return *resolve(ref, "").second;
}

std::vector<std::string> schema_violations(const Json &doc, const std::string &ref) {
  auto [file, s] = resolve(ref, "");
  Validator v;
  v.run(doc, *s, file, "");
  return v.errors;
}

void require_schema(const Json &doc, const std::string &ref) {
  auto errors = schema_violations(doc, ref);
  if (errors.empty())
    return;
  std::vector<FieldError> fields;
  for (const auto &e : errors) {
    const auto colon = e.find(": ");
    fields.push_back({e.substr(0, colon), e.substr(colon + 2)});
  }
  throw ValidationError(std::move(fields));
}

} // namespace amalgam
