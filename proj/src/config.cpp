#include "twsusp/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "twsusp/error.hpp"

namespace twsusp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw Error(ErrorKind::Parse, key + ": not a number: '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw Error(ErrorKind::Parse, key + ": not an integer: '" + text + "'");
  return v;
}

}  // namespace

ConfigFile parse_config(std::string_view text) {
  ConfigFile cfg;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorKind::Parse, where + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw Error(ErrorKind::Parse, where + "empty section name");
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::Parse, where + "expected key = value");
    if (section.empty()) throw Error(ErrorKind::Parse, where + "key outside any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorKind::Parse, where + "empty key");
    if (!cfg.sections[section].emplace(key, value).second)
      throw Error(ErrorKind::Parse, where + "duplicate key " + section + "." + key);
  }
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

CertifyConfig certify_config(const ConfigFile& file) {
  CertifyConfig cfg;
  CertifyOptions& o = cfg.options;
  std::string mode = "trivial";
  double sup_F = 0, sup_dF = 0, lo = 0, hi = 0;
  bool has_n = false, has_s0 = false, has_hi = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& slot) -> Setter { return [&slot](const std::string& k, const std::string& v) { slot = to_double(k, v); }; };
  const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"certify",
       {{"n", [&](const std::string& k, const std::string& v) { cfg.n = to_int(k, v), has_n = true; }},
        {"s0", [&](const std::string& k, const std::string& v) { cfg.s0 = to_double(k, v), has_s0 = true; }},
        {"ric_min", real(cfg.ric_min)}}},
      {"warp",
       {{"lambda0", real(o.lambda0)},
        {"alpha", real(o.alpha)},
        {"step", real(o.step)},
        {"cap_width", real(o.cap_width)},
        {"tail_width", real(o.tail_width)},
        {"origin_eps", real(o.origin_eps)},
        {"s_budget", real(o.s_budget)},
        {"tol_ode", real(o.tol_ode)}}},
      {"connection",
       {{"mode", [&](const std::string&, const std::string& v) { mode = v; }},
        {"sup_F", real(sup_F)},
        {"sup_deltaF", real(sup_dF)},
        {"support_lo", real(lo)},
        {"support_hi", [&](const std::string& k, const std::string& v) { hi = to_double(k, v), has_hi = true; }}}},
      {"tolerances",
       {{"tol_glue", real(o.tol_glue)},
        {"safety", real(o.safety)},
        {"target_margin", real(o.target_margin)},
        {"phi_default", real(o.phi_fallback)},
        {"phi_floor", real(o.phi_floor)},
        {"r_floor", real(o.r_floor)}}},
      {"output", {{"path", [&](const std::string&, const std::string& v) { cfg.out = v; }}}},
  };

  for (const auto& [name, entries] : file.sections) {
    const auto sec = schema.find(name);
    if (sec == schema.end()) throw Error(ErrorKind::Parse, "unknown section [" + name + "]");
    for (const auto& [key, value] : entries) {
      const auto slot = sec->second.find(key);
      if (slot == sec->second.end()) throw Error(ErrorKind::Parse, "unknown key " + name + "." + key);
      slot->second(name + "." + key, value);
    }
  }
  if (!has_n) throw Error(ErrorKind::Parse, "missing certify.n");
  if (!has_s0) throw Error(ErrorKind::Parse, "missing certify.s0");
  if (mode == "trivial") {
    if (sup_F != 0 || sup_dF != 0) throw Error(ErrorKind::Parse, "trivial connection takes no curvature bounds");
    cfg.connection = ConnectionModel::trivial();
  } else if (mode == "bounded") {
    cfg.connection = ConnectionModel::bounded(sup_F, sup_dF, lo, has_hi ? hi : std::numeric_limits<double>::infinity());
  } else {
    throw Error(ErrorKind::Parse, "connection.mode must be trivial or bounded");
  }
  return cfg;
}

}  // namespace twsusp
