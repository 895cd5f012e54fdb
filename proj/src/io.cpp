#include "stabledp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "stabledp/errors.hpp"

namespace stabledp {

namespace {

template <typename T>
T field(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

char single_char(const Json& j) {
  if (!j.is_string() || j.get<std::string>().size() != 1)
    throw ParseError("relation entries must be one-character strings");
  return j.get<std::string>()[0];
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

Json instance_to_json(const ProblemInstance& instance) {
  Json j;
  j["problem"] = problem_name(kind_of(instance));
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LisInstance>) {
          j["sequence"] = x.sequence;
        } else if constexpr (std::is_same_v<T, IntervalInstance>) {
          j["items"] = Json::array();
          for (const auto& it : x.items) j["items"].push_back({{"l", it.l}, {"r", it.r}, {"w", it.w}});
        } else if constexpr (std::is_same_v<T, LcsInstance>) {
          j["strings"] = x.strings;
        } else if constexpr (std::is_same_v<T, LpsInstance>) {
          j["string"] = x.text;
        } else if constexpr (std::is_same_v<T, KnapsackInstance>) {
          j["costs"] = x.costs;
          j["weights"] = x.weights;
          j["capacity"] = x.capacity;
        } else if constexpr (std::is_same_v<T, RnaInstance>) {
          j["string"] = x.text;
          j["relation"] = Json::array();
          for (auto [a, b] : x.relation)
            j["relation"].push_back({std::string(1, a), std::string(1, b)});
        } else {
          j["weights"] = x.weights;
          j["edges"] = Json::array();
          for (auto [u, v] : x.edges) j["edges"].push_back({u, v});
          j["missing_sets"] = x.missing_sets;
          j["K"] = x.multiplicity;
        }
      },
      instance);
  return j;
}

ProblemInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  const ProblemKind kind =
      doc.contains("problem") ? problem_from_name(field<std::string>(doc, "problem")) : ProblemKind::kDag;
  switch (kind) {
    case ProblemKind::kLis:
      return LisInstance{field<std::vector<std::int64_t>>(doc, "sequence")};
    case ProblemKind::kIntervals: {
      IntervalInstance inst;
      const Json items = field<Json>(doc, "items");
      if (!items.is_array()) throw ParseError("'items' must be an array");
      for (const auto& it : items) {
        if (!it.is_object()) throw ParseError("interval must be an object");
        Interval iv;
        iv.l = field<double>(it, "l");
        iv.r = field<double>(it, "r");
        iv.w = it.contains("w") ? field<double>(it, "w") : 1.0;
        inst.items.push_back(iv);
      }
      return inst;
    }
    case ProblemKind::kLcs:
      return LcsInstance{field<std::vector<std::string>>(doc, "strings")};
    case ProblemKind::kLps:
      return LpsInstance{field<std::string>(doc, "string")};
    case ProblemKind::kKnapsack: {
      KnapsackInstance k;
      k.costs = field<std::vector<std::int64_t>>(doc, "costs");
      k.weights = field<std::vector<double>>(doc, "weights");
      k.capacity = field<std::int64_t>(doc, "capacity");
      return k;
    }
    case ProblemKind::kRna: {
      RnaInstance r;
      r.text = field<std::string>(doc, "string");
      const Json rel = field<Json>(doc, "relation");
      if (!rel.is_array()) throw ParseError("'relation' must be an array");
      for (const auto& p : rel) {
        if (!p.is_array() || p.size() != 2) throw ParseError("relation entries must be pairs");
        r.relation.emplace_back(single_char(p[0]), single_char(p[1]));
      }
      return r;
    }
    case ProblemKind::kDag: {
      DagInstance d;
      d.weights = field<std::vector<double>>(doc, "weights");
      for (const auto& e : field<std::vector<std::vector<VertexId>>>(doc, "edges")) {
        if (e.size() != 2) throw ParseError("edges must be pairs");
        d.edges.emplace_back(e[0], e[1]);
      }
      if (doc.contains("missing_sets"))
        d.missing_sets = field<std::vector<std::vector<VertexId>>>(doc, "missing_sets");
      if (doc.contains("K")) {
        d.multiplicity = field<int>(doc, "K");
      } else {
        std::map<VertexId, int> count;
        for (const auto& s : d.missing_sets)
          for (VertexId v : s) ++count[v];
        d.multiplicity = 1;
        for (const auto& [v, c] : count) d.multiplicity = std::max(d.multiplicity, c);
      }
      return d;
    }
  }
  throw ParseError("unhandled problem kind");
}

ProblemInstance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

ProblemInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

Json solution_to_json(ProblemKind kind, const Solution& solution) {
  Json out = Json::array();
  const bool tuples = kind == ProblemKind::kLcs || kind == ProblemKind::kRna;
  for (const auto& e : solution) {
    if (tuples) {
      out.push_back(e);
    } else {
      out.push_back(e.at(0));
    }
  }
  return out;
}

Solution solution_from_json(ProblemKind kind, const Json& doc) {
  if (!doc.is_array()) throw ParseError("solution must be an array");
  Solution s;
  const bool tuples = kind == ProblemKind::kLcs || kind == ProblemKind::kRna;
  try {
    for (const auto& e : doc) s.push_back(tuples ? e.get<Element>() : Element{e.get<int>()});
  } catch (const Json::exception& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
  normalize(s);
  return s;
}

Json ratio_stats_to_json(const RatioStats& stats) {
  return {{"trials", stats.trials},
          {"opt", number(stats.opt)},
          {"mean", number(stats.mean)},
          {"sem", number(stats.sem)},
          {"min", number(stats.min)}};
}

Json report_to_json(const SensitivityReport& r) {
  Json j;
  j["problem"] = r.problem;
  j["solver"] = r.solver;
  j["n"] = r.n;
  j["delta"] = r.delta;
  j["eps"] = r.eps ? Json(*r.eps) : Json(nullptr);
  j["m"] = r.m;
  j["estimator"] = "assignment";
  j["per_deletion"] = Json::array();
  for (double x : r.per_deletion) j["per_deletion"].push_back(number(x));
  j["average"] = number(r.average);
  j["paper_bound"] = number(r.paper_bound);
  j["vertex_count"] = r.vertex_count;
  j["K"] = r.multiplicity;
  j["ratio_stats"] = r.ratio_stats ? ratio_stats_to_json(*r.ratio_stats) : Json(nullptr);
  j["seed"] = r.seed;
  j["runtime_ms"] = r.runtime_ms ? Json(*r.runtime_ms) : Json(nullptr);
  return j;
}

std::string report_to_csv(const SensitivityReport& r) {
  const Json j = report_to_json(r);
  const std::vector<std::string> keys = {"problem", "solver", "n", "delta", "eps",
                                         "m", "average", "paper_bound", "vertex_count", "K",
                                         "seed", "runtime_ms"};
  const std::vector<std::string> ratio_keys = {"trials", "opt", "mean", "sem", "min"};
  auto cell = [](const Json& v) {
    if (v.is_null()) return std::string();
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  std::string header, row;
  for (const auto& k : keys) {
    header += (header.empty() ? "" : ",") + k;
    row += (row.empty() ? "" : ",") + cell(j[k]);
  }
  for (const auto& k : ratio_keys) {
    header += ",ratio_" + k;
    row += "," + (j["ratio_stats"].is_null() ? std::string() : cell(j["ratio_stats"][k]));
  }
  return header + "\n" + row + "\n";
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace stabledp
