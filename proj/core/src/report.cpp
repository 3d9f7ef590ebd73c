#include <cstdio>
#include <json.hpp>

#include "logdup/error.hpp"
#include "logdup/pipeline.hpp"

namespace logdup {

using nlohmann::json;

std::string_view denominator_note() {
  return "closeness = (sigma / N_left, sigma / N_right) with N the self-similarity of each "
         "side, so duplicates score exactly (1,1). Raw total node counts are listed "
         "separately. For rev_all/add1_and_sqr this yields (15/18, 15/26) ~ (0.833, 0.577); "
         "dividing by raw node counts 19 and 25 would give (0.79, 0.6), but the uniform "
         "counting rule gives 19 and 27.";
}

namespace {

json ratio_pair(const std::pair<Ratio, Ratio> &r) {
  return json::array({r.first.value(), r.second.value()});
}

json ratio_pair_exact(const std::pair<Ratio, Ratio> &r) {
  return json::array({r.first.str(), r.second.str()});
}

json side(const SccRef &r) {
  return json{{"predicates", r.predicates}, {"file", r.file}, {"line", r.line}};
}

json witness_json(const ReportEntry &e) {
  json pm = json::object(), perms = json::object(), clauses = json::array(),
       renamings = json::array();
  for (const auto &[l, r] : e.witness.predicate_mapping)
    pm[l.str()] = r.str();
  for (const auto &[p, perm] : e.witness.arg_permutations) {
    json m = json::array();
    for (std::size_t x : perm.mapping)
      m.push_back(x + 1);
    perms[p.str()] = m;
  }
  for (std::size_t i = 0; i < e.witness.clause_mapping.size(); ++i) {
    std::size_t j = e.witness.clause_mapping[i];
    clauses.push_back(json{{"left", i + 1},
                           {"right", j + 1},
                           {"left_line", e.left_scc.clauses[i].origin.line},
                           {"right_line", e.right_scc.clauses[j].origin.line}});
  }
  for (const Renaming &r : e.witness.renamings) {
    json m = json::object();
    for (const auto &[from, to] : r)
      m[from] = to;
    renamings.push_back(m);
  }
  return json{{"predicate_mapping", pm},
              {"arg_permutations", perms},
              {"clause_mapping", clauses},
              {"renamings", renamings}};
}

PredSymbol pred_from_text(const std::string &s) {
  auto slash = s.rfind('/');
  if (slash == std::string::npos)
    throw ContractViolation("malformed predicate indicator: " + s);
  return PredSymbol{s.substr(0, slash), static_cast<std::size_t>(std::stoul(s.substr(slash + 1)))};
}

std::string fmt3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string joined(const std::vector<std::string> &v, const char *sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? sep : "") + v[i];
  return out;
}

} // namespace

std::string to_json_string(const Report &r) {
  json pairs = json::array();
  for (const ReportEntry &e : r.pairs) {
    json p;
    p["left"] = side(e.left);
    p["right"] = side(e.right);
    p["fingerprint_estimate"] = ratio_pair(e.fingerprint_estimate);
    p["fingerprint_estimate_exact"] = ratio_pair_exact(e.fingerprint_estimate);
    p["closeness"] = e.closeness ? ratio_pair(*e.closeness) : json(nullptr);
    p["closeness_exact"] = e.closeness ? ratio_pair_exact(*e.closeness) : json(nullptr);
    p["sigma"] = e.sigma;
    p["denominators"] = json::array({e.denominators.first, e.denominators.second});
    p["total_nodes"] = json::array({e.total_nodes.first, e.total_nodes.second});
    p["approximate"] = e.approximate;
    p["label"] = e.is_duplicate() ? "duplicate" : "similar";
    p["witness"] = witness_json(e);
    p["common_core"] = e.common_core ? json(*e.common_core) : json(nullptr);
    pairs.push_back(std::move(p));
  }
  json doc;
  doc["version"] = 1;
  doc["pairs"] = std::move(pairs);
  doc["warnings"] = r.warnings;
  doc["metadata"] = json{{"denominator", "self_similarity"}, {"note", denominator_note()}};
  return doc.dump(2) + "\n";
}

std::string render_text(const Report &r) {
  std::string out;
  if (r.pairs.empty())
    out += "no similar pairs found\n";
  for (const ReportEntry &e : r.pairs) {
    out += std::string(e.is_duplicate() ? "duplicate" : "similar") + "  " +
           joined(e.left.predicates, "+") + "  ~  " + joined(e.right.predicates, "+") + "\n";
    out += "  closeness " + fmt3(e.closeness->first.value()) + " " +
           fmt3(e.closeness->second.value()) + "  (sigma " + std::to_string(e.sigma) + " / " +
           std::to_string(e.denominators.first) + ", " + std::to_string(e.denominators.second) +
           ")";
    out += "  fingerprint " + fmt3(e.fingerprint_estimate.first.value()) + " " +
           fmt3(e.fingerprint_estimate.second.value());
    if (e.approximate)
      out += "  [approximate]";
    out += "\n";
    out += "  at " + e.left.file + ":" + std::to_string(e.left.line) + " and " + e.right.file +
           ":" + std::to_string(e.right.line) + "\n";
    for (const auto &[p, perm] : e.witness.arg_permutations) {
      std::vector<std::string> m;
      for (std::size_t i = 0; i < perm.mapping.size(); ++i)
        m.push_back(std::to_string(i + 1) + "->" + std::to_string(perm.mapping[i] + 1));
      out += "  " + p.str() + " -> " + e.witness.predicate_mapping.at(p).str() + " args {" +
             joined(m, ", ") + "}\n";
    }
    for (std::size_t i = 0; i < e.witness.clause_mapping.size(); ++i) {
      std::size_t j = e.witness.clause_mapping[i];
      std::vector<std::string> rho;
      for (const auto &[from, to] : e.witness.renamings[i])
        if (from != to)
          rho.push_back(from + "->" + to);
      out += "  clause line " + std::to_string(e.left_scc.clauses[i].origin.line) +
             " <-> line " + std::to_string(e.right_scc.clauses[j].origin.line);
      if (!rho.empty())
        out += "  rename {" + joined(rho, ", ") + "}";
      out += "\n";
    }
    if (e.common_core) {
      out += "  common core:\n";
      std::string line;
      for (char ch : *e.common_core) {
        if (ch == '\n') {
          out += "    " + line + "\n";
          line.clear();
        } else {
          line += ch;
        }
      }
    }
  }
  for (const std::string &w : r.warnings)
    out += "warning: " + w + "\n";
  return out;
}

StructureWitness witness_from_json(std::string_view pair_json) {
  json p = json::parse(pair_json);
  const json &w = p.at("witness");
  StructureWitness out;
  for (const auto &[l, r] : w.at("predicate_mapping").items())
    out.predicate_mapping.emplace(pred_from_text(l), pred_from_text(r.get<std::string>()));
  for (const auto &[l, m] : w.at("arg_permutations").items()) {
    ArgPermutation perm;
    for (const auto &x : m)
      perm.mapping.push_back(x.get<std::size_t>() - 1);
    out.arg_permutations.emplace(pred_from_text(l), std::move(perm));
  }
  const json &cm = w.at("clause_mapping");
  out.clause_mapping.assign(cm.size(), 0);
  for (const auto &entry : cm) {
    std::size_t l = entry.at("left").get<std::size_t>() - 1;
    if (l >= cm.size())
      throw ContractViolation("clause mapping index out of range");
    out.clause_mapping[l] = entry.at("right").get<std::size_t>() - 1;
  }
  for (const auto &r : w.at("renamings")) {
    Renaming rho;
    for (const auto &[from, to] : r.items())
      rho.emplace(from, to.get<std::string>());
    out.renamings.push_back(std::move(rho));
  }
  return out;
}

} // namespace logdup
