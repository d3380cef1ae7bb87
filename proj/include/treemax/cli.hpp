#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treemax/construct.hpp"
#include "treemax/degree_sequence.hpp"
#include "treemax/oracle.hpp"
#include "treemax/prufer.hpp"
#include "treemax/serialize.hpp"
#include "treemax/weight_function.hpp"

namespace treemax {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;        // success / match / condition holds
inline constexpr int kExitUsage = 1;     // unparsable input or unknown function
inline constexpr int kExitRejected = 2;  // sequence not realizable / condition fails
inline constexpr int kExitLimit = 3;     // resource limit or count overflow
inline constexpr int kExitMismatch = 4;  // oracle and construction disagree

namespace detail {

inline std::optional<int> parse_strict_int(const std::string& token) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (used != token.size()) return std::nullopt;
  return value;
}

inline std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

}  // namespace detail

// Comma-separated integers with the repetition shorthand "<value>x<count>",
// e.g. "4,4,3,3,2,1x8".
inline std::optional<std::vector<int>> parse_degree_sequence_arg(const std::string& text) {
  std::vector<int> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token = detail::trim(token);
    if (token.empty()) return std::nullopt;
    const std::size_t x = token.find('x');
    if (x == std::string::npos) {
      const auto value = detail::parse_strict_int(token);
      if (!value) return std::nullopt;
      values.push_back(*value);
    } else {
      const auto value = detail::parse_strict_int(token.substr(0, x));
      const auto count = detail::parse_strict_int(token.substr(x + 1));
      if (!value || !count || *count < 0 || *count > 1'000'000) return std::nullopt;
      values.insert(values.end(), static_cast<std::size_t>(*count), *value);
    }
  }
  if (values.empty()) return std::nullopt;
  return values;
}

namespace detail {

inline std::string format_value(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

struct SequenceOrExit {
  std::optional<DegreeSequence> sequence;
  int exit_code = kExitOk;
};

inline SequenceOrExit require_realizable(const std::string& text, std::ostream& err) {
  const auto raw = parse_degree_sequence_arg(text);
  if (!raw) {
    err << "error: could not parse degree sequence \"" << text << "\"\n";
    return {std::nullopt, kExitUsage};
  }
  SequenceValidation validation = validate_degree_sequence(*raw);
  if (!validation.ok()) {
    err << "error: degree sequence is not tree-realizable: " << validation.rejection << "\n";
    return {std::nullopt, kExitRejected};
  }
  return {std::move(validation.sequence), kExitOk};
}

inline std::optional<WeightFunction> require_function(const std::string& name, std::ostream& err) {
  auto fn = find_weight_function(name);
  if (!fn) err << "error: unknown function \"" << name << "\"\n";
  return fn;
}

// The theorem machinery needs the strict exchange condition, which sombor
// itself fails; its negation satisfies it.
inline WeightFunction auto_negate_sombor(WeightFunction fn, std::ostream& err) {
  if (fn.base_name() == "sombor" && !fn.negated()) {
    err << "note: sombor fails the strict exchange condition; using sombor:neg\n";
    return fn.negate();
  }
  return fn;
}

inline int cmd_validate(const std::string& text, std::ostream& out, std::ostream& err) {
  const auto raw = parse_degree_sequence_arg(text);
  if (!raw) {
    err << "error: could not parse degree sequence \"" << text << "\"\n";
    return kExitUsage;
  }
  const SequenceValidation validation = validate_degree_sequence(*raw);
  out << "realizable: " << (validation.ok() ? "yes" : "no") << "\n";
  if (validation.sequence) {
    out << "n: " << validation.sequence->size() << "\n";
    out << "normalized: " << validation.sequence->to_string() << "\n";
    out << "input_sorted: " << (validation.input_was_sorted ? "yes" : "no") << "\n";
  }
  if (!validation.ok()) {
    out << "reason: " << validation.rejection << "\n";
    return kExitRejected;
  }
  return kExitOk;
}

inline int cmd_greedy(const std::string& text, TreeFormat format, std::ostream& out, std::ostream& err) {
  auto [sequence, code] = require_realizable(text, err);
  if (!sequence) return code;
  const LabeledTree tree = greedy_tree(*sequence);
  try {
    out << emit_tree(tree, format);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

inline int cmd_enumerate(const std::string& text, const EnumerationLimits& limits, TreeFormat format,
                         std::ostream& out, std::ostream& err) {
  auto [sequence, code] = require_realizable(text, err);
  if (!sequence) return code;
  std::vector<ExtremalClass> classes;
  try {
    classes = enumerate_extremal_classes(*sequence, limits);
  } catch (const EnumerationLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  }
  switch (format) {
    case TreeFormat::json:
      out << enumeration_to_json(*sequence, classes).dump(2) << "\n";
      break;
    case TreeFormat::dot:
      out << "// " << classes.size() << " extremal classes for " << sequence->to_string() << "\n";
      for (std::size_t i = 0; i < classes.size(); ++i) {
        out << "// fingerprint: " << classes[i].form.fingerprint << "\n";
        out << tree_to_dot(classes[i].representative, "class" + std::to_string(i));
      }
      break;
    case TreeFormat::prufer:
      try {
        std::string body;
        for (const ExtremalClass& cls : classes) body += tree_to_prufer_text(cls.representative) + "\n";
        out << body;
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      break;
  }
  return kExitOk;
}

inline int cmd_index(const std::string& path, const std::string& function_name, TreeFormat format,
                     std::ostream& out, std::ostream& err) {
  const auto fn = require_function(function_name, err);
  if (!fn) return kExitUsage;
  std::string content;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    content = buffer.str();
  } else {
    std::ifstream file(path);
    if (!file) {
      err << "error: cannot open \"" << path << "\"\n";
      return kExitUsage;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    content = buffer.str();
  }
  try {
    const LabeledTree tree = parse_tree(content, format);
    out << format_value(r_f_value(tree, *fn)) << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

inline int cmd_check_condition(const std::string& function_name, int delta, bool weak,
                               std::ostream& out, std::ostream& err) {
  const auto fn = require_function(function_name, err);
  if (!fn) return kExitUsage;
  ConditionReport report;
  try {
    report = check_condition(*fn, delta, !weak);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const char* which = report.strict ? "strict" : "weak";
  if (report.holds) {
    out << which << " exchange condition holds for " << fn->name() << " on degrees 1.." << delta << "\n";
    return kExitOk;
  }
  const ConditionCounterexample& cex = *report.counterexample;
  out << which << " exchange condition fails for " << fn->name() << " on degrees 1.." << delta << "\n";
  out << "counterexample (x, y, a, b) = (" << cex.x << ", " << cex.y << ", " << cex.a << ", " << cex.b
      << ")\n";
  out << "F(x,a) + F(y,b) = " << format_value(cex.lhs()) << (report.strict ? " <= " : " < ")
      << format_value(cex.rhs()) << " = F(y,a) + F(x,b)\n";
  return kExitRejected;
}

inline int cmd_verify(const std::string& text, const std::string& function_name,
                      const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  auto [sequence, code] = require_realizable(text, err);
  if (!sequence) return code;
  auto fn = require_function(function_name, err);
  if (!fn) return kExitUsage;
  const WeightFunction used = auto_negate_sombor(*fn, err);
  ExtremalReport report;
  try {
    report = verify_theorem(*sequence, used, options);
  } catch (const CountOverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const EnumerationLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  }
  out << report_to_json(report).dump(2) << "\n";
  return report.verdict == Verdict::match ? kExitOk : kExitMismatch;
}

inline int cmd_sweep(int max_n, const std::string& function_csv, const VerifyOptions& options,
                     std::ostream& out, std::ostream& err) {
  constexpr int kSweepCeiling = 9;
  if (max_n < 2 || max_n > kSweepCeiling) {
    err << "error: --max-n must be between 2 and " << kSweepCeiling << "\n";
    return kExitUsage;
  }
  std::vector<WeightFunction> functions;
  {
    std::istringstream in(function_csv);
    std::string name;
    while (std::getline(in, name, ',')) {
      name = trim(name);
      if (name.empty()) continue;
      auto fn = require_function(name, err);
      if (!fn) return kExitUsage;
      functions.push_back(auto_negate_sombor(*fn, err));
    }
  }
  if (functions.empty()) {
    err << "error: no functions selected\n";
    return kExitUsage;
  }

  std::vector<ExtremalReport> failures;
  std::size_t pairs = 0, sequence_count = 0;
  std::ostringstream matrix;
  try {
    for (int n = 2; n <= max_n; ++n) {
      for (const DegreeSequence& d : realizable_sequences(n)) {
        ++sequence_count;
        matrix << "n=" << n << " " << d.to_string() << ":";
        for (const WeightFunction& fn : functions) {
          const ExtremalReport report = verify_theorem(d, fn, options);
          ++pairs;
          matrix << " " << fn.name() << "=" << (report.verdict == Verdict::match ? "match" : "MISMATCH");
          if (report.verdict != Verdict::match) failures.push_back(report);
        }
        matrix << "\n";
      }
    }
  } catch (const CountOverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const EnumerationLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  }

  out << matrix.str();
  out << "sweep: " << sequence_count << " sequences, " << functions.size() << " functions, "
      << pairs << " pairs, " << failures.size() << " mismatches\n";
  for (const ExtremalReport& report : failures) {
    out << report_to_json(report).dump(2) << "\n";
  }
  return failures.empty() ? kExitOk : kExitMismatch;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal trees for edge-degree based indices over a fixed degree sequence"};
  app.name("treemax");
  app.require_subcommand(1);

  std::string sequence_text, function_name, format_name = "json", file_path = "-";
  std::string sweep_functions =
      "randic,second_zagreb,modified_second_zagreb,sum_connectivity,harmonic,sombor";
  double tolerance = 1e-9;
  int threads = 0, delta = 50, max_n = 6;
  bool weak = false;
  EnumerationLimits limits;

  CLI::App* validate = app.add_subcommand("validate", "Check tree-realizability of a degree sequence");
  validate->add_option("sequence", sequence_text, "Degree sequence, e.g. 4,4,3,3,2,1x8")->required();

  CLI::App* greedy = app.add_subcommand("greedy", "Construct the greedy tree");
  greedy->add_option("sequence", sequence_text)->required();
  greedy->add_option("--format", format_name, "json, dot or prufer")->capture_default_str();

  CLI::App* enumerate = app.add_subcommand("enumerate", "Enumerate all extremal isomorphism classes");
  enumerate->add_option("sequence", sequence_text)->required();
  enumerate->add_option("--format", format_name)->capture_default_str();
  enumerate->add_option("--limit-classes", limits.max_classes)->capture_default_str();
  enumerate->add_option("--limit-states", limits.max_states)->capture_default_str();

  CLI::App* index = app.add_subcommand("index", "Evaluate R_F on a tree document");
  index->add_option("file", file_path, "Tree document; - reads stdin")->capture_default_str();
  index->add_option("--function", function_name, "Catalogue name, optionally with :neg")->required();
  index->add_option("--format", format_name, "json or prufer")->capture_default_str();

  CLI::App* check = app.add_subcommand("check-condition", "Test the exchange condition exhaustively");
  check->add_option("--function", function_name)->required();
  check->add_option("--delta", delta, "Largest degree tested")->capture_default_str();
  check->add_flag("--weak", weak, "Test the weak (>=) condition instead of the strict one");

  CLI::App* verify = app.add_subcommand("verify", "Compare the construction against brute force");
  verify->add_option("sequence", sequence_text)->required();
  verify->add_option("--function", function_name)->required();
  verify->add_option("--tol", tolerance, "Maximizer tolerance on R_F values")->capture_default_str();
  verify->add_option("--threads", threads, "Worker threads; 0 = all cores")->capture_default_str();
  verify->add_option("--limit-classes", limits.max_classes)->capture_default_str();
  verify->add_option("--limit-states", limits.max_states)->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Verify every realizable sequence up to --max-n");
  sweep->add_option("--max-n", max_n, "Largest vertex count (ceiling 9)")->capture_default_str();
  sweep->add_option("--functions", sweep_functions, "Comma-separated catalogue names")
      ->capture_default_str();
  sweep->add_option("--tol", tolerance)->capture_default_str();
  sweep->add_option("--threads", threads)->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto format = parse_tree_format(format_name);
  if (!format) {
    err << "error: unknown format \"" << format_name << "\"\n";
    return kExitUsage;
  }
  VerifyOptions options{tolerance, threads, limits};

  if (validate->parsed()) return detail::cmd_validate(sequence_text, out, err);
  if (greedy->parsed()) return detail::cmd_greedy(sequence_text, *format, out, err);
  if (enumerate->parsed()) return detail::cmd_enumerate(sequence_text, limits, *format, out, err);
  if (index->parsed()) return detail::cmd_index(file_path, function_name, *format, out, err);
  if (check->parsed()) return detail::cmd_check_condition(function_name, delta, weak, out, err);
  if (verify->parsed()) return detail::cmd_verify(sequence_text, function_name, options, out, err);
  if (sweep->parsed()) return detail::cmd_sweep(max_n, sweep_functions, options, out, err);
  return kExitUsage;
}

}  // namespace treemax
