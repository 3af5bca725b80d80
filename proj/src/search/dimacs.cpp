#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "core/error.hpp"
#include "search/search.hpp"

#include "solver_config.hpp"

namespace majcirc::search {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool to_int(std::string_view s, T& out) {
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    fn(++line_no, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

std::string_view constraint_name(ConstraintSet c) { return c == ConstraintSet::minmax ? "minmax" : "all"; }

}  // namespace

std::string to_dimacs(const CnfInstance& inst) {
  std::string out = "p cnf " + std::to_string(inst.num_vars) + " " + std::to_string(inst.num_clauses) + "\n";
  out.reserve(out.size() + inst.literals.size() * 6);
  bool line_start = true;
  char buf[16];
  for (int l : inst.literals) {
    if (!line_start) out.push_back(' ');
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, l);
    out.append(buf, p);
    line_start = (l == 0);
    if (line_start) out.push_back('\n');
  }
  return out;
}

std::string varmap_text(const CnfInstance& inst) {
  const auto& s = inst.spec;
  std::ostringstream os;
  os << "# majcirc varmap 1\n";
  os << "spec n " << s.n << " k " << s.k << " mult " << s.multiplicity_max << " thresholds "
     << (s.standard_thresholds ? "standard" : "free") << " distinct " << (s.distinct_only ? 1 : 0) << " symmetry "
     << (s.symmetry_breaking ? 1 : 0) << " constraints " << constraint_name(s.constraint_set) << "\n";
  os << "vars " << inst.num_vars << " clauses " << inst.num_clauses << "\n";
  for (const auto& v : inst.selectors) os << "v " << v.var << " g " << v.gate << " x " << v.x << " j " << v.level << "\n";
  for (const auto& t : inst.thresholds) os << "t " << t.var << " g " << t.gate << " theta " << t.theta << "\n";
  return os.str();
}

CnfInstance instance_from_varmap(std::string_view text, const EncodeOptions& opts) {
  std::optional<SearchSpaceSpec> spec;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> sizes;
  std::vector<SelectorVar> sel;
  std::vector<ThresholdVar> thr;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) return;
    auto fail = [&](const std::string& why) { throw ParseError(line_no, why); };
    auto num = [&](std::size_t i, auto& out) {
      if (i >= tok.size() || !to_int(tok[i], out)) fail("expected an integer");
    };
    if (tok[0] == "spec") {
      if (tok.size() != 15) fail("malformed spec line");
      SearchSpaceSpec s;
      const char* keys[] = {"n", "k", "mult", "thresholds", "distinct", "symmetry", "constraints"};
      for (std::size_t i = 0; i < 7; ++i)
        if (tok[1 + 2 * i] != keys[i]) fail(std::string("expected '") + keys[i] + "'");
      std::uint32_t distinct = 0, symmetry = 0;
      num(2, s.n);
      num(4, s.k);
      num(6, s.multiplicity_max);
      if (tok[8] != "standard" && tok[8] != "free") fail("thresholds must be standard or free");
      s.standard_thresholds = tok[8] == "standard";
      num(10, distinct);
      num(12, symmetry);
      if (distinct > 1 || symmetry > 1) fail("flags must be 0 or 1");
      s.distinct_only = distinct == 1;
      s.symmetry_breaking = symmetry == 1;
      if (tok[14] == "minmax")
        s.constraint_set = ConstraintSet::minmax;
      else if (tok[14] == "all")
        s.constraint_set = ConstraintSet::all_inputs;
      else
        fail("constraints must be minmax or all");
      spec = s;
    } else if (tok[0] == "vars") {
      std::uint64_t v = 0, c = 0;
      if (tok.size() != 4 || tok[2] != "clauses") fail("malformed vars line");
      num(1, v);
      num(3, c);
      sizes = {v, c};
    } else if (tok[0] == "v") {
      if (tok.size() != 8 || tok[2] != "g" || tok[4] != "x" || tok[6] != "j") fail("malformed selector line");
      SelectorVar s;
      num(1, s.var);
      num(3, s.gate);
      num(5, s.x);
      num(7, s.level);
      sel.push_back(s);
    } else if (tok[0] == "t") {
      if (tok.size() != 6 || tok[2] != "g" || tok[4] != "theta") fail("malformed threshold line");
      ThresholdVar t;
      num(1, t.var);
      num(3, t.gate);
      num(5, t.theta);
      thr.push_back(t);
    } else {
      fail("unknown line type '" + std::string(tok[0]) + "'");
    }
  });
  if (!spec) throw ParseError(0, "varmap has no spec line");

  auto inst = encode(*spec, opts);
  auto mismatch = [](const std::string& why) { throw Error(ErrorKind::inconsistent_model, "varmap does not match its spec: " + why); };
  if (sizes && (sizes->first != inst.num_vars || sizes->second != inst.num_clauses)) mismatch("variable or clause count");
  if (sel.size() != inst.selectors.size() || thr.size() != inst.thresholds.size()) mismatch("entry count");
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const auto& a = sel[i];
    const auto& b = inst.selectors[i];
    if (a.var != b.var || a.gate != b.gate || a.x != b.x || a.level != b.level) mismatch("selector " + std::to_string(a.var));
  }
  for (std::size_t i = 0; i < thr.size(); ++i) {
    const auto& a = thr[i];
    const auto& b = inst.thresholds[i];
    if (a.var != b.var || a.gate != b.gate || a.theta != b.theta) mismatch("threshold variable " + std::to_string(a.var));
  }
  return inst;
}

Model parse_model(std::string_view text, std::uint32_t num_vars) {
  Model m;
  m.value.assign(num_vars + 1, -1);
  bool unsat = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto tok = split_ws(line);
    if (tok.empty()) return;
    if (tok[0] == "c") return;
    if (tok[0] == "s") {
      if (tok.size() >= 2 && (tok[1] == "UNSATISFIABLE" || tok[1] == "UNSAT")) unsat = true;
      return;
    }
    if (tok[0] == "UNSAT" || tok[0] == "UNSATISFIABLE") {
      unsat = true;
      return;
    }
    if (tok[0] == "SAT" || tok[0] == "SATISFIABLE") return;
    std::size_t start = tok[0] == "v" ? 1 : 0;
    for (std::size_t i = start; i < tok.size(); ++i) {
      long long lit = 0;
      if (!to_int(tok[i], lit)) throw ParseError(line_no, "bad literal '" + std::string(tok[i]) + "'");
      if (lit == 0) continue;
      const auto v = static_cast<unsigned long long>(lit < 0 ? -lit : lit);
      if (v > num_vars)
        throw Error(ErrorKind::inconsistent_model, "literal " + std::to_string(lit) + " exceeds the instance's " +
                                                       std::to_string(num_vars) + " variables");
      const std::int8_t val = lit > 0 ? 1 : 0;
      if (m.value[v] >= 0 && m.value[v] != val)
        throw Error(ErrorKind::inconsistent_model, "variable " + std::to_string(v) + " assigned both ways");
      m.value[v] = val;
    }
  });
  if (unsat) throw Error(ErrorKind::unsatisfiable, "solver reported UNSATISFIABLE");
  return m;
}

std::string default_solver_command() {
  if (const char* env = std::getenv("MAJCIRC_SAT_SOLVER"); env && *env) return env;
  return MAJCIRC_DEFAULT_SOLVER;
}

SolveResult run_solver(const CnfInstance& inst, const std::string& command) {
  if (command.empty())
    throw Error(ErrorKind::invalid_argument, "no SAT solver configured; set MAJCIRC_SAT_SOLVER or pass --solver");
  static std::atomic<unsigned> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("majcirc-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  const auto cnf = dir / "instance.cnf";
  {
    std::ofstream f(cnf, std::ios::binary);
    f << to_dimacs(inst);
    if (!f) throw Error(ErrorKind::io, "cannot write " + cnf.string());
  }

  std::string cmd = command;
  const auto substitute = [&cmd](std::string_view key, const std::string& value) {
    bool found = false;
    for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key, pos + value.size())) {
      cmd.replace(pos, key.size(), value);
      found = true;
    }
    return found;
  };
  const std::string quoted = "'" + cnf.string() + "'";
  if (!substitute("{cnf}", quoted)) cmd += " " + quoted;
  substitute("{dir}", "'" + dir.string() + "'");
  cmd += " 2>/dev/null";

  SolveResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove_all(dir);
    throw Error(ErrorKind::io, "cannot start solver: " + command);
  }
  char buf[1 << 14];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  const int status = ::pclose(pipe);
  std::filesystem::remove_all(dir);

  const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  try {
    result.model = parse_model(result.output, inst.num_vars);
    bool any = false;
    for (std::uint32_t v = 1; v <= inst.num_vars; ++v) any = any || result.model.assigned(v);
    const bool says_sat = result.output.find("SATISFIABLE") != std::string::npos || code == 10;
    result.status = (any || says_sat) ? SolveStatus::sat : SolveStatus::unknown;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::unsatisfiable) throw;
    result.status = SolveStatus::unsat;
  }
  return result;
}

}  // namespace majcirc::search
