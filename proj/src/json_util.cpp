#include "json_util.hpp"

#include <algorithm>
#include <set>

#include "ccost/catalog_io.hpp"

namespace ccost::detail {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Tracks the JSON path during SAX-style callbacks so duplicate keys can be
// reported where they occur. nlohmann silently keeps the last duplicate otherwise.
class DuplicateKeyGuard {
 public:
  bool operator()(int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        frames_.push_back({true, {}, {}, 0});
        break;
      case json::parse_event_t::array_start:
        frames_.push_back({false, {}, {}, 0});
        break;
      case json::parse_event_t::key: {
        auto& top = frames_.back();
        auto key = parsed.get<std::string>();
        if (!top.keys.insert(key).second) {
          throw SchemaError(path() + "." + key, "duplicate key");
        }
        top.key = std::move(key);
        break;
      }
      case json::parse_event_t::object_end:
      case json::parse_event_t::array_end:
        frames_.pop_back();
        bump();
        break;
      case json::parse_event_t::value:
        bump();
        break;
    }
    return true;
  }

 private:
  struct Frame {
    bool object;
    std::set<std::string> keys;
    std::string key;
    std::size_t index;
  };

  void bump() {
    if (!frames_.empty() && !frames_.back().object) ++frames_.back().index;
  }

  std::string path() const {
    std::string out = "$";
    for (std::size_t i = 0; i + 1 < frames_.size(); ++i) {
      const auto& f = frames_[i];
      out += f.object ? "." + f.key : "[" + std::to_string(f.index) + "]";
    }
    return out;
  }

  std::vector<Frame> frames_;
};

}  // namespace

json parse_json(std::string_view doc) {
  try {
    return json::parse(doc.begin(), doc.end(), DuplicateKeyGuard{});
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.byte, e.what());
  }
}

const char* type_label(const json& j) { return j.type_name(); }

void expect_keys(const json& j, const std::string& path,
                 std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) {
    throw SchemaError(path, std::string("expected object, got ") + type_label(j));
  }
  for (auto key : keys) {
    if (!j.contains(key)) throw SchemaError(path + "." + std::string(key), "missing required field");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw SchemaError(path + "." + key, "unknown field");
    }
  }
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, std::string("expected string, got ") + type_label(j));
  return j.get<std::string>();
}

std::int64_t get_integer(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) throw SchemaError(path, "integer out of range");
    return static_cast<std::int64_t>(v);
  }
  if (!j.is_number_integer()) {
    throw SchemaError(path, std::string("expected integer, got ") + type_label(j));
  }
  return j.get<std::int64_t>();
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, std::string("expected array, got ") + type_label(j));
  return j;
}

std::vector<std::string> get_string_list(const json& j, const std::string& path) {
  std::vector<std::string> out;
  const auto& arr = get_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(get_string(arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string dump_canonical(const ordered_json& j) {
  return j.dump(2, ' ', false, ordered_json::error_handler_t::strict) + "\n";
}

}  // namespace ccost::detail
