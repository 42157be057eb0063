#include "paraprox/problem_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <utility>

namespace paraprox {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail_schema(const std::string& path,
                              const std::string& what) {
  throw SchemaError(path + ": " + what);
}

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return it.key() == k;
        }) == allowed.end()) {
      fail_schema(path + "." + it.key(), "unknown field");
    }
  }
}

const Json& require_key(const Json& obj, const char* key,
                        const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail_schema(path + "." + key, "required field is missing");
  }
  return *it;
}

const Json* optional_key(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail_schema(path, "expected a number");
  return j.get<double>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail_schema(path, "expected a boolean");
  return j.get<bool>();
}

std::int64_t get_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail_schema(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t get_count(const Json& j, const std::string& path,
                      std::int64_t minimum) {
  const std::int64_t v = get_integer(j, path);
  if (v < minimum) {
    fail_schema(path, "expected an integer >= " + std::to_string(minimum));
  }
  return static_cast<std::size_t>(v);
}

/// Bound value: a number or the literal strings "inf" / "-inf".
double get_bound(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail_schema(path, "expected a number or \"inf\"/\"-inf\"");
}

std::vector<double> get_double_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail_schema(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Eigen::VectorXd get_vector(const Json& j, const std::string& path) {
  const std::vector<double> v = get_double_list(j, path);
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd get_bound_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) fail_schema(path, "expected an array of bounds");
  Eigen::VectorXd out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] =
        get_bound(j[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

/// Row-major nested arrays, all rows of equal length.
Eigen::MatrixXd get_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    fail_schema(path, "expected a non-empty array of rows");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    rows.push_back(get_double_list(j[r], path + "[" + std::to_string(r) + "]"));
    if (rows.back().size() != rows.front().size()) {
      fail_schema(path + "[" + std::to_string(r) + "]",
                  "rows have different lengths");
    }
  }
  if (rows.front().empty()) fail_schema(path, "rows must be non-empty");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return out;
}

/// Table of 1-based block index sets, converted to 0-based.
std::vector<std::vector<std::size_t>> get_block_table(const Json& j,
                                                      std::size_t alpha,
                                                      const std::string& path) {
  if (!j.is_array()) fail_schema(path, "expected an array of block lists");
  std::vector<std::vector<std::size_t>> out;
  out.reserve(j.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const Json& row = j[r];
    if (!row.is_array() || row.empty()) {
      fail_schema(row_path, "expected a non-empty array of block indices");
    }
    std::vector<std::size_t> set;
    set.reserve(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string cell = row_path + "[" + std::to_string(c) + "]";
      const std::size_t block = get_count(row[c], cell, 1);  // 1-based
      if (block > alpha) {
        throw ConsistencyError(cell + ": block index " +
                               std::to_string(block) +
                               " exceeds partition length " +
                               std::to_string(alpha));
      }
      set.push_back(block - 1);
    }
    out.push_back(std::move(set));
  }
  return out;
}

OperatorSpec parse_operator(const Json& j, std::size_t dimension,
                            const std::string& path) {
  if (!j.is_object()) fail_schema(path, "expected an object");
  const Json& type_json = require_key(j, "type", path);
  if (!type_json.is_string()) fail_schema(path + ".type", "expected a string");
  const std::string type = type_json.get<std::string>();

  auto check_dimension = [&](std::size_t have, const std::string& field) {
    if (have != dimension) {
      throw ConsistencyError(field + ": dimension " + std::to_string(have) +
                             " does not match partition total " +
                             std::to_string(dimension));
    }
  };
  auto read_reference = [&](MonotoneProblem& prob) {
    if (const Json* ref = optional_key(j, "reference_solution")) {
      const Eigen::VectorXd v =
          get_vector(*ref, path + ".reference_solution");
      check_dimension(static_cast<std::size_t>(v.size()),
                      path + ".reference_solution");
      prob.reference_solution = v;
    }
  };

  OperatorSpec spec;
  if (type == "identity") {
    check_keys(j, {"type"}, path);
    spec.value = BuiltinOperatorSpec{BuiltinKind::identity, 0.0, {}};
  } else if (type == "scale") {
    check_keys(j, {"type", "factor"}, path);
    spec.value = BuiltinOperatorSpec{
        BuiltinKind::scale,
        get_number(require_key(j, "factor", path), path + ".factor"),
        {}};
  } else if (type == "affine_average") {
    check_keys(j, {"type", "point"}, path);
    BuiltinOperatorSpec b;
    b.kind = BuiltinKind::affine_average;
    b.point = get_double_list(require_key(j, "point", path), path + ".point");
    check_dimension(b.point.size(), path + ".point");
    spec.value = std::move(b);
  } else if (type == "linear") {
    check_keys(j, {"type", "matrix", "reference_solution"}, path);
    MonotoneProblem prob = MonotoneProblem::linear(
        get_matrix(require_key(j, "matrix", path), path + ".matrix"));
    check_dimension(prob.dimension(), path + ".matrix");
    read_reference(prob);
    spec.value = std::move(prob);
  } else if (type == "separable_prox") {
    check_keys(j, {"type", "atoms", "reference_solution"}, path);
    const Json& atoms_json = require_key(j, "atoms", path);
    if (!atoms_json.is_array() || atoms_json.empty()) {
      fail_schema(path + ".atoms", "expected a non-empty array");
    }
    std::vector<ProxAtom> atoms;
    for (std::size_t i = 0; i < atoms_json.size(); ++i) {
      const std::string apath = path + ".atoms[" + std::to_string(i) + "]";
      const Json& a = atoms_json[i];
      if (!a.is_object()) fail_schema(apath, "expected an object");
      const Json& kind_json = require_key(a, "kind", apath);
      if (!kind_json.is_string()) {
        fail_schema(apath + ".kind", "expected a string");
      }
      const std::string kind = kind_json.get<std::string>();
      if (kind == "quadratic") {
        check_keys(a, {"kind", "a", "c"}, apath);
        atoms.push_back(ProxAtom::quadratic(
            get_number(require_key(a, "a", apath), apath + ".a"),
            get_number(require_key(a, "c", apath), apath + ".c")));
      } else if (kind == "absolute_value") {
        check_keys(a, {"kind"}, apath);
        atoms.push_back(ProxAtom::absolute_value());
      } else if (kind == "box_indicator") {
        check_keys(a, {"kind", "lo", "hi"}, apath);
        atoms.push_back(ProxAtom::box(
            get_bound(require_key(a, "lo", apath), apath + ".lo"),
            get_bound(require_key(a, "hi", apath), apath + ".hi")));
      } else {
        fail_schema(apath + ".kind", "unknown atom kind '" + kind + "'");
      }
    }
    MonotoneProblem prob = MonotoneProblem::separable_prox(std::move(atoms));
    check_dimension(prob.dimension(), path + ".atoms");
    read_reference(prob);
    spec.value = std::move(prob);
  } else if (type == "saddle_quadratic" || type == "convex_program_qp") {
    const bool saddle = type == "saddle_quadratic";
    if (saddle) {
      check_keys(j, {"type", "P", "q", "A", "b", "R", "reference_solution"},
                 path);
    } else {
      check_keys(j, {"type", "P", "q", "A", "b", "reference_solution"}, path);
    }
    Eigen::MatrixXd P = get_matrix(require_key(j, "P", path), path + ".P");
    Eigen::VectorXd q = get_vector(require_key(j, "q", path), path + ".q");
    Eigen::MatrixXd A = get_matrix(require_key(j, "A", path), path + ".A");
    Eigen::VectorXd b = get_vector(require_key(j, "b", path), path + ".b");
    MonotoneProblem prob =
        saddle ? MonotoneProblem::saddle_quadratic(
                     std::move(P), std::move(q), std::move(A), std::move(b),
                     optional_key(j, "R")
                         ? std::optional<Eigen::MatrixXd>(
                               get_matrix(*optional_key(j, "R"), path + ".R"))
                         : std::nullopt)
               : MonotoneProblem::convex_program_qp(std::move(P), std::move(q),
                                                    std::move(A), std::move(b));
    check_dimension(prob.dimension(), path);
    read_reference(prob);
    spec.value = std::move(prob);
  } else if (type == "variational_inequality") {
    check_keys(j, {"type", "G", "g", "lo", "hi", "reference_solution"}, path);
    Eigen::VectorXd lo, hi;
    if (const Json* v = optional_key(j, "lo")) {
      lo = get_bound_vector(*v, path + ".lo");
    }
    if (const Json* v = optional_key(j, "hi")) {
      hi = get_bound_vector(*v, path + ".hi");
    }
    MonotoneProblem prob = MonotoneProblem::variational_inequality(
        get_matrix(require_key(j, "G", path), path + ".G"),
        get_vector(require_key(j, "g", path), path + ".g"), std::move(lo),
        std::move(hi));
    check_dimension(prob.dimension(), path + ".G");
    read_reference(prob);
    spec.value = std::move(prob);
  } else {
    fail_schema(path + ".type", "unknown problem type '" + type + "'");
  }
  return spec;
}

ScheduleSpec parse_schedule(const Json& j, std::size_t alpha,
                            const std::string& path) {
  if (!j.is_object()) fail_schema(path, "expected an object");
  const Json& kind_json = require_key(j, "kind", path);
  if (!kind_json.is_string()) fail_schema(path + ".kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();

  ScheduleSpec spec;
  if (const Json* a = optional_key(j, "alpha")) {
    spec.alpha = get_count(*a, path + ".alpha", 1);
    if (*spec.alpha != alpha) {
      throw ConsistencyError(path + ".alpha: value " +
                             std::to_string(*spec.alpha) +
                             " does not match partition length " +
                             std::to_string(alpha));
    }
  }

  if (kind == "jacobi") {
    check_keys(j, {"kind", "alpha"}, path);
    spec.kind = ScheduleKind::jacobi;
  } else if (kind == "gauss_seidel") {
    check_keys(j, {"kind", "alpha"}, path);
    spec.kind = ScheduleKind::gauss_seidel;
  } else if (kind == "periodic_full") {
    check_keys(j, {"kind", "alpha", "period", "base"}, path);
    spec.kind = ScheduleKind::periodic_full;
    spec.period = get_count(require_key(j, "period", path),
                            path + ".period", 1);
    spec.base = get_block_table(require_key(j, "base", path), alpha,
                                path + ".base");
    if (spec.base.empty()) fail_schema(path + ".base", "must be non-empty");
  } else if (kind == "custom") {
    check_keys(j, {"kind", "alpha", "update_sets", "delays"}, path);
    spec.kind = ScheduleKind::custom;
    spec.update_sets = get_block_table(require_key(j, "update_sets", path),
                                       alpha, path + ".update_sets");
    const Json& delays = require_key(j, "delays", path);
    if (!delays.is_array()) {
      fail_schema(path + ".delays", "expected an array of rows");
    }
    for (std::size_t r = 0; r < delays.size(); ++r) {
      const std::string row_path =
          path + ".delays[" + std::to_string(r) + "]";
      const Json& row = delays[r];
      if (!row.is_array()) fail_schema(row_path, "expected an array");
      if (row.size() != alpha) {
        throw ConsistencyError(row_path + ": has " +
                               std::to_string(row.size()) +
                               " entries, partition length is " +
                               std::to_string(alpha));
      }
      std::vector<std::size_t> drow;
      drow.reserve(alpha);
      for (std::size_t c = 0; c < row.size(); ++c) {
        drow.push_back(get_count(
            row[c], row_path + "[" + std::to_string(c) + "]", 0));
      }
      spec.delays.push_back(std::move(drow));
    }
    if (spec.update_sets.size() != spec.delays.size()) {
      throw ConsistencyError(path + ".update_sets has " +
                             std::to_string(spec.update_sets.size()) +
                             " rows, " + path + ".delays has " +
                             std::to_string(spec.delays.size()));
    }
    if (spec.update_sets.empty()) {
      fail_schema(path + ".update_sets", "must be non-empty");
    }
  } else {
    fail_schema(path + ".kind", "unknown schedule kind '" + kind + "'");
  }
  return spec;
}

RunSettings parse_run(const Json& j, std::size_t dimension,
                      const std::string& path) {
  if (!j.is_object()) fail_schema(path, "expected an object");
  check_keys(j,
             {"tol", "max_iter", "workers", "trace_level", "reference_point",
              "x0"},
             path);
  RunSettings run;
  if (const Json* v = optional_key(j, "tol")) {
    run.tol = get_number(*v, path + ".tol");
    if (!(run.tol > 0.0)) fail_schema(path + ".tol", "must be > 0");
  }
  if (const Json* v = optional_key(j, "max_iter")) {
    run.max_iter = get_count(*v, path + ".max_iter", 1);
  }
  if (const Json* v = optional_key(j, "workers")) {
    run.workers = static_cast<int>(get_count(*v, path + ".workers", 1));
  }
  if (const Json* v = optional_key(j, "trace_level")) {
    if (!v->is_string()) fail_schema(path + ".trace_level", "expected a string");
    const std::string s = v->get<std::string>();
    if (s == "none") {
      run.trace_level = TraceLevel::none;
    } else if (s == "residuals") {
      run.trace_level = TraceLevel::residuals;
    } else if (s == "full") {
      run.trace_level = TraceLevel::full;
    } else {
      fail_schema(path + ".trace_level",
                  "expected \"none\", \"residuals\" or \"full\"");
    }
  }
  auto read_point = [&](const char* key) -> std::optional<std::vector<double>> {
    const Json* v = optional_key(j, key);
    if (!v) return std::nullopt;
    std::vector<double> point = get_double_list(*v, path + "." + key);
    if (point.size() != dimension) {
      throw ConsistencyError(path + "." + key + ": has " +
                             std::to_string(point.size()) +
                             " coordinates, partition total is " +
                             std::to_string(dimension));
    }
    return point;
  };
  run.reference_point = read_point("reference_point");
  run.x0 = read_point("x0");
  return run;
}

CheckSettings parse_checks(const Json& j, const std::string& path) {
  if (!j.is_object()) fail_schema(path, "expected an object");
  check_keys(j, {"run_h2", "run_h3", "trials", "seed"}, path);
  CheckSettings checks;
  if (const Json* v = optional_key(j, "run_h2")) {
    checks.run_h2 = get_bool(*v, path + ".run_h2");
  }
  if (const Json* v = optional_key(j, "run_h3")) {
    checks.run_h3 = get_bool(*v, path + ".run_h3");
  }
  if (const Json* v = optional_key(j, "trials")) {
    checks.trials = static_cast<int>(get_count(*v, path + ".trials", 1));
  }
  if (const Json* v = optional_key(j, "seed")) {
    checks.seed = static_cast<std::uint64_t>(
        get_count(*v, path + ".seed", 0));
  }
  return checks;
}

Json render_bound(double v) {
  if (v == kInf) return Json("inf");
  if (v == -kInf) return Json("-inf");
  return Json(v);
}

Json render_vector(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json render_bound_vector(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(render_bound(v[i]));
  return out;
}

Json render_matrix(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json render_block_table(const std::vector<std::vector<std::size_t>>& table) {
  Json out = Json::array();
  for (const auto& set : table) {
    Json row = Json::array();
    for (std::size_t b : set) row.push_back(b + 1);  // back to 1-based
    out.push_back(std::move(row));
  }
  return out;
}

Json render_operator(const OperatorSpec& spec) {
  Json j;
  if (const auto* builtin = std::get_if<BuiltinOperatorSpec>(&spec.value)) {
    switch (builtin->kind) {
      case BuiltinKind::identity:
        j["type"] = "identity";
        break;
      case BuiltinKind::scale:
        j["type"] = "scale";
        j["factor"] = builtin->factor;
        break;
      case BuiltinKind::affine_average:
        j["type"] = "affine_average";
        j["point"] = builtin->point;
        break;
    }
    return j;
  }
  const auto& prob = std::get<MonotoneProblem>(spec.value);
  switch (prob.family()) {
    case ProblemFamily::linear:
      j["type"] = "linear";
      j["matrix"] = render_matrix(prob.matrix());
      break;
    case ProblemFamily::separable_prox: {
      j["type"] = "separable_prox";
      Json atoms = Json::array();
      for (const ProxAtom& atom : prob.atoms()) {
        Json a;
        switch (atom.kind) {
          case ProxAtom::Kind::quadratic:
            a["kind"] = "quadratic";
            a["a"] = atom.a;
            a["c"] = atom.c;
            break;
          case ProxAtom::Kind::absolute_value:
            a["kind"] = "absolute_value";
            break;
          case ProxAtom::Kind::box_indicator:
            a["kind"] = "box_indicator";
            a["lo"] = render_bound(atom.lo);
            a["hi"] = render_bound(atom.hi);
            break;
        }
        atoms.push_back(std::move(a));
      }
      j["atoms"] = std::move(atoms);
      break;
    }
    case ProblemFamily::saddle_quadratic:
      j["type"] = "saddle_quadratic";
      j["P"] = render_matrix(prob.quadratic_term());
      j["q"] = render_vector(prob.linear_term());
      j["A"] = render_matrix(prob.constraint_matrix());
      j["b"] = render_vector(prob.constraint_offset());
      j["R"] = render_matrix(prob.dual_quadratic_term());
      break;
    case ProblemFamily::convex_program_qp:
      j["type"] = "convex_program_qp";
      j["P"] = render_matrix(prob.quadratic_term());
      j["q"] = render_vector(prob.linear_term());
      j["A"] = render_matrix(prob.constraint_matrix());
      j["b"] = render_vector(prob.constraint_offset());
      break;
    case ProblemFamily::variational_inequality:
      j["type"] = "variational_inequality";
      j["G"] = render_matrix(prob.vi_matrix());
      j["g"] = render_vector(prob.vi_offset());
      j["lo"] = render_bound_vector(prob.box_lower());
      j["hi"] = render_bound_vector(prob.box_upper());
      break;
  }
  if (prob.reference_solution) {
    j["reference_solution"] = render_vector(*prob.reference_solution);
  }
  return j;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("problem file: line " + std::to_string(line) +
                     ", column " + std::to_string(column) + ": " + e.what());
  }

  if (!root.is_object()) fail_schema("$", "top level must be an object");
  check_keys(root, {"format", "partition", "problem", "schedule", "run",
                    "checks"},
             "$");
  if (get_integer(require_key(root, "format", "$"), "$.format") != 1) {
    fail_schema("$.format", "unsupported format version (expected 1)");
  }

  ProblemSpec spec;
  const Json& partition = require_key(root, "partition", "$");
  if (!partition.is_array() || partition.empty()) {
    fail_schema("$.partition", "expected a non-empty array of block sizes");
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const std::size_t s =
        get_count(partition[i], "$.partition[" + std::to_string(i) + "]", 1);
    spec.partition.push_back(s);
    total += s;
  }

  spec.op = parse_operator(require_key(root, "problem", "$"), total,
                           "$.problem");
  spec.schedule = parse_schedule(require_key(root, "schedule", "$"),
                                 spec.partition.size(), "$.schedule");
  if (const Json* run = optional_key(root, "run")) {
    spec.run = parse_run(*run, total, "$.run");
  }
  if (const Json* checks = optional_key(root, "checks")) {
    spec.checks = parse_checks(*checks, "$.checks");
  }
  return spec;
}

std::string render_problem(const ProblemSpec& spec) {
  Json root;
  root["format"] = 1;
  root["partition"] = spec.partition;
  root["problem"] = render_operator(spec.op);

  Json schedule;
  switch (spec.schedule.kind) {
    case ScheduleKind::jacobi:
      schedule["kind"] = "jacobi";
      break;
    case ScheduleKind::gauss_seidel:
      schedule["kind"] = "gauss_seidel";
      break;
    case ScheduleKind::periodic_full:
      schedule["kind"] = "periodic_full";
      schedule["period"] = spec.schedule.period;
      schedule["base"] = render_block_table(spec.schedule.base);
      break;
    case ScheduleKind::custom:
      schedule["kind"] = "custom";
      schedule["update_sets"] = render_block_table(spec.schedule.update_sets);
      schedule["delays"] = spec.schedule.delays;
      break;
  }
  if (spec.schedule.alpha) {
    schedule["alpha"] = *spec.schedule.alpha;
  }
  root["schedule"] = std::move(schedule);

  Json run;
  run["tol"] = spec.run.tol;
  run["max_iter"] = spec.run.max_iter;
  run["workers"] = spec.run.workers;
  switch (spec.run.trace_level) {
    case TraceLevel::none: run["trace_level"] = "none"; break;
    case TraceLevel::residuals: run["trace_level"] = "residuals"; break;
    case TraceLevel::full: run["trace_level"] = "full"; break;
  }
  if (spec.run.reference_point) run["reference_point"] = *spec.run.reference_point;
  if (spec.run.x0) run["x0"] = *spec.run.x0;
  root["run"] = std::move(run);

  Json checks;
  if (spec.checks.run_h2) checks["run_h2"] = *spec.checks.run_h2;
  if (spec.checks.run_h3) checks["run_h3"] = *spec.checks.run_h3;
  checks["trials"] = spec.checks.trials;
  checks["seed"] = spec.checks.seed;
  root["checks"] = std::move(checks);

  return root.dump(2) + "\n";
}

BlockPartition make_partition(const ProblemSpec& spec) {
  return BlockPartition(spec.partition);
}

std::unique_ptr<FixedPointOperator> make_operator(const ProblemSpec& spec) {
  BlockPartition partition = make_partition(spec);
  if (const auto* builtin = std::get_if<BuiltinOperatorSpec>(&spec.op.value)) {
    switch (builtin->kind) {
      case BuiltinKind::identity:
        return make_identity(std::move(partition));
      case BuiltinKind::scale:
        return make_scale(std::move(partition), builtin->factor);
      case BuiltinKind::affine_average:
        return make_affine_average(
            BlockVector(std::move(partition), builtin->point));
    }
  }
  return as_fixed_point_operator(std::get<MonotoneProblem>(spec.op.value),
                                 std::move(partition));
}

Schedule make_schedule(const ProblemSpec& spec, std::size_t horizon) {
  const std::size_t alpha = spec.partition.size();
  ScheduleParams params;
  params.period = spec.schedule.period;
  params.base = spec.schedule.base;
  params.update_sets = spec.schedule.update_sets;
  params.delays = spec.schedule.delays;
  const std::size_t effective_horizon =
      spec.schedule.kind == ScheduleKind::custom
          ? spec.schedule.update_sets.size()
          : horizon;
  return build_schedule(spec.schedule.kind, alpha, effective_horizon, params);
}

RunConfig make_run_config(const ProblemSpec& spec) {
  RunConfig config;
  config.tol = spec.run.tol;
  config.max_iter = spec.run.max_iter;
  config.workers = spec.run.workers;
  config.trace_level = spec.run.trace_level;
  if (spec.run.reference_point) {
    config.reference_point =
        BlockVector(make_partition(spec), *spec.run.reference_point);
  }
  return config;
}

BlockVector initial_point(const ProblemSpec& spec) {
  BlockPartition partition = make_partition(spec);
  if (spec.run.x0) {
    return BlockVector(std::move(partition), *spec.run.x0);
  }
  return BlockVector(std::move(partition));
}

}  // namespace paraprox
