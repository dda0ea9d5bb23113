#include "phragmen/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "phragmen/error.hpp"

namespace phragmen {

namespace {

using nlohmann::json;

class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : text_(text) {}

  json parse() {
    json root = json::object();
    for (;;) {
      skip_space_and_comments(true);
      if (pos_ >= text_.size()) break;
      if (text_[pos_] == '[') fail("tables are not supported");
      const std::string key = parse_key();
      skip_inline_space();
      expect('=');
      skip_inline_space();
      json value = parse_value();
      if (root.contains(key)) fail("duplicate key '" + key + "'");
      root[key] = std::move(value);
      skip_inline_space();
      if (pos_ < text_.size() && text_[pos_] == '#') skip_comment();
      if (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '\r') fail("expected end of line");
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, "line " + std::to_string(line_));
  }

  void skip_comment() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  void skip_inline_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void skip_space_and_comments(bool newlines) {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '\n' && newlines) {
        ++line_;
        ++pos_;
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string parse_key() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  json parse_value() {
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  json parse_string() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\n') fail("unterminated string");
      if (text_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= text_.size()) fail("unterminated string");
        const char e = text_[pos_];
        out.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
      } else {
        out.push_back(text_[pos_]);
      }
      ++pos_;
    }
    expect('"');
    return out;
  }

  json parse_array() {
    ++pos_;
    json arr = json::array();
    for (;;) {
      skip_space_and_comments(true);
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return arr;
      }
      arr.push_back(parse_value());
      skip_space_and_comments(true);
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      skip_space_and_comments(true);
      expect(']');
      return arr;
    }
  }

  json parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == '+' ||
                                   text_[pos_] == '_')) {
      ++pos_;
    }
    std::string token;
    for (char ch : text_.substr(start, pos_ - start)) {
      if (ch != '_') token.push_back(ch);
    }
    if (token.empty()) fail("expected a value");
    try {
      json parsed = json::parse(token);
      if (!parsed.is_number()) fail("invalid number '" + token + "'");
      return parsed;
    } catch (const json::exception&) {
      fail("invalid value '" + token + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  long line_ = 1;
};

double number_of(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError("expected a number", where);
  return v.get<double>();
}

long integer_of(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError("expected an integer", where);
  return v.get<long>();
}

SimConfig from_json(const json& root) {
  if (!root.is_object()) throw ParseError("config must be an object", "");
  SimConfig cfg = SimConfig::defaults();
  for (const auto& [key, value] : root.items()) {
    if (key == "distributions") {
      if (!value.is_array()) throw ParseError("expected a list of [a, b] pairs", key);
      cfg.distributions.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string where = key + "[" + std::to_string(i) + "]";
        const json& pair = value[i];
        if (!pair.is_array() || pair.size() != 2) throw ParseError("expected [a, b]", where);
        cfg.distributions.push_back(BetaShape::of(number_of(pair[0], where), number_of(pair[1], where)));
      }
    } else if (key == "xi") {
      cfg.xi.clear();
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          cfg.xi.push_back(number_of(value[i], key + "[" + std::to_string(i) + "]"));
        }
      } else {
        cfg.xi.push_back(number_of(value, key));
      }
    } else if (key == "rules") {
      if (!value.is_array()) throw ParseError("expected a list of rule strings", key);
      cfg.rules.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string where = key + "[" + std::to_string(i) + "]";
        if (!value[i].is_string()) throw ParseError("expected a rule string", where);
        try {
          cfg.rules.push_back(parse_rule(value[i].get<std::string>()));
        } catch (const Error& e) {
          throw ParseError(e.what(), where);
        }
      }
    } else if (key == "n") {
      cfg.n = static_cast<int>(integer_of(value, key));
    } else if (key == "m") {
      cfg.m = static_cast<int>(integer_of(value, key));
    } else if (key == "k") {
      cfg.k = static_cast<int>(integer_of(value, key));
    } else if (key == "runs") {
      cfg.runs = static_cast<int>(integer_of(value, key));
    } else if (key == "p") {
      cfg.issues.p = static_cast<int>(integer_of(value, key));
    } else if (key == "tau") {
      cfg.issues.tau = number_of(value, key);
    } else if (key == "delta") {
      cfg.issues.delta = number_of(value, key);
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ParseError("expected a non-negative integer", key);
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "groups") {
      if (!value.is_array()) throw ParseError("expected a list of cut points", key);
      cfg.group_cuts.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        cfg.group_cuts.push_back(number_of(value[i], key + "[" + std::to_string(i) + "]"));
      }
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(integer_of(value, key));
    } else {
      throw ParseError("unknown key", key);
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), "");
  }
  return cfg;
}

}  // namespace

SimConfig parse_sim_config(std::string_view text, ConfigFormat format) {
  if (format == ConfigFormat::kJson) {
    json root;
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
    return from_json(root);
  }
  return from_json(TomlReader(text).parse());
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  try {
    return parse_sim_config(buf.str(), is_json ? ConfigFormat::kJson : ConfigFormat::kToml);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path);
  }
}

}  // namespace phragmen
