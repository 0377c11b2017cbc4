#include "ccost/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "ccost/catalog_io.hpp"
#include "ccost/reporting.hpp"
#include "ccost/scoring.hpp"
#include "ccost/service.hpp"
#include "httplib.h"

namespace ccost {

namespace {

// Failure that maps directly onto an exit status.
struct CliFailure {
  int status;
  std::string message;
};

class Io {
 public:
  Io(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out(out), err(err) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      return std::string(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CliFailure{exit_usage, "cannot open " + path};
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
  }

  void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << bytes;
    if (!f) throw CliFailure{exit_usage, "cannot write " + path};
  }

 private:
  std::istream& in_;

 public:
  std::ostream& out;
  std::ostream& err;
};

std::string issue_line(const ValidationIssue& i) {
  return std::string(severity_name(i.severity)) + " " + std::string(issue_code_name(i.code)) + " " +
         i.location + ": " + i.message;
}

struct LoadedCatalog {
  Catalog catalog;
  std::string fingerprint;
};

LoadedCatalog load_catalog(Io& io, const std::string& path) {
  Catalog catalog;
  try {
    catalog = parse_catalog(io.read(path));
  } catch (const SyntaxError& e) {
    throw CliFailure{exit_validation, path + ": " + e.what()};
  } catch (const SchemaError& e) {
    throw CliFailure{exit_validation, path + ": " + e.what()};
  }
  const auto issues = validate(catalog);
  if (has_errors(issues)) {
    std::string msg = path + ": catalog is invalid";
    for (const auto& i : issues) msg += "\n  " + issue_line(i);
    throw CliFailure{exit_validation, msg};
  }
  auto fp = fingerprint(catalog);
  return {std::move(catalog), std::move(fp)};
}

Assessment load_assessment(Io& io, const std::string& path, const LoadedCatalog& cat) {
  Assessment a;
  try {
    a = parse_assessment(io.read(path));
  } catch (const SyntaxError& e) {
    throw CliFailure{exit_validation, path + ": " + e.what()};
  } catch (const SchemaError& e) {
    throw CliFailure{exit_validation, path + ": " + e.what()};
  }
  try {
    check_binding(cat.catalog, cat.fingerprint, a);
  } catch (const std::exception& e) {
    throw CliFailure{exit_validation, path + ": " + e.what()};
  }
  return a;
}

int cmd_validate(Io& io, const std::string& path) {
  Catalog catalog;
  try {
    catalog = parse_catalog(io.read(path));
  } catch (const SyntaxError& e) {
    io.err << path << ": " << e.what() << "\n";
    return exit_validation;
  } catch (const SchemaError& e) {
    io.err << path << ": " << e.what() << "\n";
    return exit_validation;
  }
  const auto issues = validate(catalog);
  for (const auto& i : issues) io.out << issue_line(i) << "\n";
  io.out << issues.size() << (issues.size() == 1 ? " issue" : " issues") << "\n";
  if (has_errors(issues)) return exit_validation;
  io.out << "fingerprint " << fingerprint(catalog) << "\n";
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Io io(in, out, err);
  CLI::App app{"Security control catalog scoring and implementation-effort estimation", "ccost"};
  app.require_subcommand(1);

  std::string catalog_path;
  std::string second_path;
  std::vector<std::string> paths;
  std::string requirement;
  std::string kind = "importance";
  std::string out_prefix;
  std::string listen = "127.0.0.1:8080";
  std::string data_dir = "data";
  bool as_csv = false;
  bool as_json = false;
  bool as_svg = false;
  bool summary = false;
  bool normalized = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check a catalog file against every structural rule");
  validate_cmd->add_option("catalog", catalog_path, "Catalog JSON (- for stdin)")->required();

  auto* effort_cmd = app.add_subcommand("effort", "Implementation effort per control group");
  effort_cmd->add_option("catalog", catalog_path)->required();
  effort_cmd->add_flag("--csv", as_csv, "Emit CSV");
  effort_cmd->add_flag("--json", as_json, "Emit JSON");

  auto* importance_cmd = app.add_subcommand("importance", "Controls per requirement and standard");
  importance_cmd->add_option("catalog", catalog_path)->required();
  importance_cmd->add_flag("--csv", as_csv, "Emit the chart CSV");
  importance_cmd->add_flag("--json", as_json, "Emit JSON");
  importance_cmd->add_flag("--svg", as_svg, "Emit the chart SVG");

  auto* extract_cmd = app.add_subcommand("extract", "Catalog table for one requirement");
  extract_cmd->add_option("catalog", catalog_path)->required();
  extract_cmd->add_option("requirement", requirement)->required();

  auto* assess_cmd = app.add_subcommand("assess", "Score an assessment against its catalog");
  assess_cmd->add_option("catalog", catalog_path)->required();
  assess_cmd->add_option("ratings", second_path, "Assessment JSON")->required();
  assess_cmd->add_flag("--summary", summary, "Text summary (default)");
  assess_cmd->add_flag("--json", as_json, "Summary as JSON");

  auto* combine_cmd = app.add_subcommand("combine", "Pointwise maximum of several assessments");
  combine_cmd->add_option("catalog", catalog_path)->required();
  combine_cmd->add_option("assessments", paths, "Two or more assessment files")->required()->expected(2, -1);
  combine_cmd->add_flag("--summary", summary, "Print the combined summary instead of the assessment");

  auto* screen_cmd = app.add_subcommand("screen", "Screen a candidate solution profile");
  screen_cmd->add_option("profile", catalog_path, "Screening profile JSON")->required();
  screen_cmd->add_flag("--json", as_json, "Emit JSON");

  auto* chart_cmd = app.add_subcommand("chart", "Write an SVG chart and its CSV twin");
  chart_cmd->add_option("catalog", catalog_path)->required();
  chart_cmd->add_option("--kind", kind, "importance | assessment")
      ->check(CLI::IsMember({"importance", "assessment"}));
  chart_cmd->add_option("--assessment", paths, "Assessment file (repeatable)");
  chart_cmd->add_flag("--normalized", normalized, "Scale points to 0-1");
  chart_cmd->add_option("--out", out_prefix, "Output prefix; writes PREFIX.svg and PREFIX.csv")
      ->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--listen", listen, "HOST:PORT");
  serve_cmd->add_option("--data", data_dir, "Data directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "Run with --help for usage.\n";
    return exit_usage;
  }

  try {
    if (*validate_cmd) return cmd_validate(io, catalog_path);

    if (*effort_cmd) {
      const auto cat = load_catalog(io, catalog_path);
      out << (as_csv ? effort_csv(cat.catalog) : as_json ? effort_json(cat.catalog) : effort_text(cat.catalog));
      return exit_ok;
    }
    if (*importance_cmd) {
      const auto cat = load_catalog(io, catalog_path);
      if (as_csv || as_svg) {
        const auto chart = importance_chart(cat.catalog);
        out << (as_svg ? chart.svg : chart.csv);
      } else {
        out << (as_json ? importance_json(cat.catalog) : importance_text(cat.catalog));
      }
      return exit_ok;
    }
    if (*extract_cmd) {
      const auto cat = load_catalog(io, catalog_path);
      try {
        out << catalog_extract(cat.catalog, requirement);
      } catch (const UnknownRequirementError& e) {
        throw CliFailure{exit_validation, e.what()};
      }
      return exit_ok;
    }
    if (*assess_cmd) {
      const auto cat = load_catalog(io, catalog_path);
      const auto a = load_assessment(io, second_path, cat);
      out << (as_json ? summary_json(cat.catalog, cat.fingerprint, a)
                      : summary_text(cat.catalog, cat.fingerprint, a));
      return exit_ok;
    }
    if (*combine_cmd) {
      const auto cat = load_catalog(io, catalog_path);
      Assessment combined = load_assessment(io, paths.front(), cat);
      for (std::size_t i = 1; i < paths.size(); ++i) {
        combined = combine(combined, load_assessment(io, paths[i], cat));
      }
      out << (summary ? summary_text(cat.catalog, cat.fingerprint, combined)
                      : serialize_assessment(combined));
      return exit_ok;
    }
    if (*screen_cmd) {
      ScreeningProfile profile;
      try {
        profile = parse_screening_profile(io.read(catalog_path));
      } catch (const SyntaxError& e) {
        throw CliFailure{exit_validation, catalog_path + ": " + e.what()};
      } catch (const SchemaError& e) {
        throw CliFailure{exit_validation, catalog_path + ": " + e.what()};
      }
      const auto verdict = screen_candidate(profile);
      out << (as_json ? verdict_json(verdict) : verdict_text(verdict));
      return exit_ok;
    }
    if (*chart_cmd) {
      const auto cat = load_catalog(io, catalog_path);
      Chart chart;
      if (kind == "importance") {
        chart = importance_chart(cat.catalog);
      } else {
        if (paths.empty()) throw CliFailure{exit_usage, "--kind assessment needs at least one --assessment"};
        std::vector<Assessment> assessments;
        for (const auto& p : paths) assessments.push_back(load_assessment(io, p, cat));
        chart = assessment_chart(cat.catalog, cat.fingerprint, assessments, normalized);
      }
      io.write_file(out_prefix + ".svg", chart.svg);
      io.write_file(out_prefix + ".csv", chart.csv);
      out << "wrote " << out_prefix << ".svg\nwrote " << out_prefix << ".csv\n";
      return exit_ok;
    }
    if (*serve_cmd) {
      const auto colon = listen.rfind(':');
      int port = -1;
      if (colon != std::string::npos) {
        try {
          port = std::stoi(listen.substr(colon + 1));
        } catch (const std::exception&) {
        }
      }
      if (port < 0 || port > 65535) throw CliFailure{exit_usage, "--listen expects HOST:PORT"};
      const auto host = listen.substr(0, colon);
      Service service{std::filesystem::path(data_dir)};
      httplib::Server server;
      mount_routes(server, service);
      err << "listening on " << host << ":" << port << " (data: " << data_dir << ")\n";
      if (!server.listen(host, port)) throw CliFailure{exit_usage, "cannot listen on " + listen};
      return exit_ok;
    }
  } catch (const CliFailure& f) {
    err << f.message << "\n";
    return f.status;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace ccost
