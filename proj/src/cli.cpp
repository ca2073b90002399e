#include "twsusp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twsusp/config.hpp"
#include "twsusp/report.hpp"

namespace twsusp {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Precondition:
    case ErrorKind::Io:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DimensionTooSmall:
    case ErrorKind::ZeroVector:
    case ErrorKind::RankTooLarge:
      return 2;
    case ErrorKind::Unsupported:
    case ErrorKind::UnrecognizedPattern:
      return 3;
    default:
      return 1;
  }
}

GonLabelling parse_gon(std::string_view text, long n) {
  std::vector<std::string> groups;
  if (text.find('(') != std::string_view::npos) {
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string_view::npos) {
      const auto close = text.find(')', pos);
      if (close == std::string_view::npos) throw Error(ErrorKind::Parse, "unbalanced '(' in labels");
      groups.emplace_back(text.substr(pos + 1, close - pos - 1));
      pos = close + 1;
    }
  } else {
    std::string cur;
    for (char c : text) {
      if (c == ';' || c == '\n') {
        groups.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    groups.push_back(cur);
    std::erase_if(groups, [](const std::string& g) { return g.find_first_not_of(" \t\r") == std::string::npos; });
  }
  if (groups.empty()) throw Error(ErrorKind::Parse, "no labels");
  GonLabelling g;
  for (const std::string& group : groups) {
    IntVector v;
    std::stringstream ss(group);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
      std::erase_if(entry, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
      Integer x;
      if (entry.empty() || x.set_str(entry, 10) != 0) throw Error(ErrorKind::Parse, "bad label entry '" + entry + "'");
      v.push_back(x);
    }
    g.labels.push_back(std::move(v));
  }
  g.n = n > 0 ? n : static_cast<long>(g.labels.front().size()) + 2;
  return g;
}

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  return read_all(in);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::Io, "cannot open " + path);
  file << text;
  if (!file) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted suspension workbench: topology of twisted suspensions, plumbings, orbit gons and "
               "positive Ricci neck certificates"};
  app.require_subcommand(1);

  std::string expr = "-", euler, out_path, file = "-", labels, config;
  long standard = -1, gon_n = 0;

  auto* suspend_cmd = app.add_subcommand("suspend", "Twisted suspension report for an expression");
  suspend_cmd->add_option("expr", expr, "manifold expression, '-' for stdin");
  suspend_cmd->add_option("--euler", euler, "suspend the expression with this Euler class");
  suspend_cmd->add_option("--out", out_path, "output path");

  auto* homology_cmd = app.add_subcommand("homology", "Homology, spin and pi1 of an expression");
  homology_cmd->add_option("expr", expr, "manifold expression, '-' for stdin");
  homology_cmd->add_option("--out", out_path, "output path");

  auto* plumb_cmd = app.add_subcommand("plumb", "Reduce a plumbing graph and identify its boundary");
  plumb_cmd->add_option("file", file, "graph file, '-' for stdin");
  plumb_cmd->add_option("--out", out_path, "output path");

  auto* gon_cmd = app.add_subcommand("gon", "Validate an orbit-gon labelling and compute b2");
  gon_cmd->add_option("labels", labels, "labels such as '(1,0) (0,1) (1,1)', '-' for stdin");
  gon_cmd->add_option("--standard", standard, "use the standard gon with 2l+2 labels");
  gon_cmd->add_option("--n", gon_n, "manifold dimension (default: label length + 2)");
  gon_cmd->add_option("--out", out_path, "output path");

  auto* certify_cmd = app.add_subcommand("certify", "Build and certify a positive Ricci neck");
  certify_cmd->add_option("config", config, "configuration file")->required();
  certify_cmd->add_option("--out", out_path, "output path (overrides output.path)");

  auto* export_cmd = app.add_subcommand("profile-export", "Write the certified warping profile as CSV");
  export_cmd->add_option("config", config, "configuration file")->required();
  export_cmd->add_option("--out", out_path, "CSV path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto text_or_stdin = [&](const std::string& value) { return value == "-" ? read_all(in) : value; };

  try {
    if (suspend_cmd->parsed() || homology_cmd->parsed()) {
      Manifold m = parse_manifold(text_or_stdin(expr));
      if (!euler.empty()) m = suspend(m, parse_euler_class(euler));
      emit(dump_json(manifold_json(m)), out_path, out);
      return 0;
    }
    if (plumb_cmd->parsed()) {
      const std::string text = file == "-" ? read_all(in) : read_file(file);
      emit(dump_json(plumbing_json(parse_plumbing(text))), out_path, out);
      return 0;
    }
    if (gon_cmd->parsed()) {
      GonLabelling g;
      if (standard >= 0) {
        if (!labels.empty()) throw Error(ErrorKind::Parse, "give either labels or --standard");
        g = standard_gon(standard);
      } else {
        if (labels.empty()) throw Error(ErrorKind::Parse, "no labels given");
        g = parse_gon(text_or_stdin(labels), gon_n);
      }
      const Json j = gon_json(g);
      emit(dump_json(j), out_path, out);
      return j["valid"].get<bool>() ? 0 : 1;
    }
    const CertifyConfig cfg = certify_config(load_config(config));
    const CertificationResult res = certify(cfg.n, cfg.s0, cfg.connection, cfg.ric_min, cfg.options);
    if (certify_cmd->parsed()) {
      emit(dump_json(certification_json(res)), out_path.empty() ? cfg.out : out_path, out);
    } else {
      std::ostringstream csv;
      export_profile(res.profile, csv);
      emit(csv.str(), out_path, out);
    }
    return res.pass ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace twsusp
