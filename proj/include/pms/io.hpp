#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pms/axioms.hpp"
#include "pms/cheeger.hpp"
#include "pms/curvature.hpp"
#include "pms/profile.hpp"
#include "pms/space.hpp"
#include "pms/spectral.hpp"

namespace pms {

using json = nlohmann::ordered_json;

// Shortest round-trip decimal form; used for CSV cells so that re-running a
// config byte-reproduces every file.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Scalars in JSON: doubles stay JSON numbers (nlohmann round-trips them
// exactly); rationals become "num/den" strings.
// ---------------------------------------------------------------------------

inline json scalar_to_json(double v) { return json(v); }
inline json scalar_to_json(const Rational& v) { return json(rational_to_string(v)); }

template <typename T>
T scalar_from_json(const json& j) {
  if constexpr (scalar_traits<T>::is_exact) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
  } else {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  }
  throw domain_error("cannot read scalar from " + j.dump());
}

// ---------------------------------------------------------------------------
// Space interchange document.
// ---------------------------------------------------------------------------

template <typename T>
json space_to_json(const FiniteSpace<T>& space) {
  json doc;
  doc["kind"] = space.oracle().has_cut_form() ? "cut" : "oracle-table";
  doc["points"] = json::array();
  for (std::size_t i = 0; i < space.points(); ++i) {
    json p;
    p["id"] = space.label(i);
    p["measure"] = scalar_to_json(space.measure(i));
    doc["points"].push_back(std::move(p));
  }
  if (space.oracle().has_cut_form()) {
    doc["edges"] = json::array();
    for (auto& e : space.oracle().edges()) {
      json edge;
      edge["a"] = space.label(e.a);
      edge["b"] = space.label(e.b);
      edge["weight"] = scalar_to_json(e.weight);
      doc["edges"].push_back(std::move(edge));
    }
  } else {
    doc["table"] = json::array();
    for (auto& v : space.oracle().table_values()) doc["table"].push_back(scalar_to_json(v));
  }
  return doc;
}

template <typename T>
FiniteSpace<T> space_from_json(const json& doc) {
  if (!doc.contains("kind") || !doc.contains("points"))
    throw domain_error("space document needs 'kind' and 'points'");
  std::vector<T> measures;
  std::vector<std::string> labels;
  for (auto& p : doc.at("points")) {
    labels.push_back(p.at("id").get<std::string>());
    measures.push_back(scalar_from_json<T>(p.at("measure")));
  }
  const std::size_t n = measures.size();
  std::string kind = doc.at("kind").get<std::string>();
  if (kind == "cut") {
    auto id_of = [&](const std::string& id) -> std::size_t {
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == id) return i;
      throw domain_error("unknown point id '" + id + "' in edge list");
    };
    std::vector<CutEdge<T>> edges;
    if (doc.contains("edges"))
      for (auto& e : doc.at("edges"))
        edges.push_back({id_of(e.at("a").get<std::string>()), id_of(e.at("b").get<std::string>()),
                         scalar_from_json<T>(e.at("weight"))});
    return FiniteSpace<T>(std::move(measures), PerimeterOracle<T>::cut(n, std::move(edges)),
                          std::move(labels));
  }
  if (kind == "oracle-table") {
    std::vector<T> table;
    for (auto& v : doc.at("table")) table.push_back(scalar_from_json<T>(v));
    return FiniteSpace<T>(std::move(measures), PerimeterOracle<T>::table(n, std::move(table)),
                          std::move(labels));
  }
  throw domain_error("unknown space kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Result documents.
// ---------------------------------------------------------------------------

template <typename T>
json mask_to_json(const FiniteSpace<T>& space, const SubsetMask& mask) {
  json ids = json::array();
  mask.for_each([&](std::size_t x) { ids.push_back(space.label(x)); });
  return ids;
}

template <typename T>
SubsetMask mask_from_ids(const FiniteSpace<T>& space, const std::vector<std::string>& ids) {
  SubsetMask m(space.points());
  for (auto& id : ids) {
    bool found = false;
    for (std::size_t i = 0; i < space.points(); ++i)
      if (space.label(i) == id) {
        m.set(i, true);
        found = true;
        break;
      }
    if (!found) throw domain_error("unknown point id '" + id + "'");
  }
  return m;
}

template <typename T>
json value_to_json(const T& v) {
  json out;
  out["decimal"] = format_double(to_double(v));
  if constexpr (scalar_traits<T>::is_exact) {
    out["numerator"] = boost::multiprecision::numerator(v).str();
    out["denominator"] = boost::multiprecision::denominator(v).str();
  }
  return out;
}

template <typename T>
json certificate_to_json(const FiniteSpace<T>& space, const CheegerCertificate<T>& cert) {
  json doc;
  doc["value"] = value_to_json(cert.value);
  doc["method"] = solver_method_name(cert.method);
  doc["optimal"] = cert.optimal;
  doc["chambers"] = json::array();
  for (std::size_t i = 0; i < cert.cluster.chambers.size(); ++i) {
    json c;
    c["points"] = mask_to_json(space, cert.cluster.chambers[i]);
    c["ratio"] = value_to_json(cert.ratios[i]);
    doc["chambers"].push_back(std::move(c));
  }
  doc["trace"] = json::array();
  for (auto& step : cert.trace) {
    json s;
    s["kappa"] = value_to_json(step.kappa);
    s["j_value"] = value_to_json(step.j_value);
    s["minimizer_size"] = step.minimizer_size;
    s["minimizer_measure"] = value_to_json(step.minimizer_measure);
    doc["trace"].push_back(std::move(s));
  }
  return doc;
}

template <typename T>
json axiom_report_to_json(const FiniteSpace<T>& space, const AxiomReport<T>& report) {
  json doc = json::array();
  for (auto& f : report.findings) {
    json item;
    item["axiom"] = axiom_name(f.axiom);
    item["verdict"] = verdict_name(f.verdict);
    if (f.verdict == Verdict::HoldsRandomized) item["trials"] = f.trials;
    if (!f.justification.empty()) item["justification"] = f.justification;
    if (f.witness) {
      json w;
      w["detail"] = f.witness->detail;
      w["sets"] = json::array();
      for (auto& s : f.witness->sets) w["sets"].push_back(mask_to_json(space, s));
      item["witness"] = std::move(w);
    }
    doc.push_back(std::move(item));
  }
  return doc;
}

template <typename T>
json profile_to_json(const IsoperimetricProfile<T>& profile) {
  json doc;
  doc["exact"] = profile.exact;
  doc["breakpoints"] = json::array();
  for (auto& [eps, f] : profile.breakpoints) {
    json row;
    row["measure"] = value_to_json(eps);
    row["ratio"] = value_to_json(f);
    doc["breakpoints"].push_back(std::move(row));
  }
  return doc;
}

template <typename T>
std::string scan_to_csv(const CurvatureScan<T>& scan) {
  std::string out = "kappa,min_value,nontrivial,min_size,max_size\n";
  for (auto& row : scan.rows) {
    out += format_double(to_double(row.kappa));
    out += ',';
    out += format_double(to_double(row.min_value));
    out += ',';
    out += row.nontrivial ? '1' : '0';
    out += ',';
    out += std::to_string(row.min_size);
    out += ',';
    out += std::to_string(row.max_size);
    out += '\n';
  }
  return out;
}

inline json bound_report_to_json(const PBoundReport& b) {
  json doc;
  doc["h1"] = format_double(b.h1);
  doc["hard_bound"] = format_double(b.hard_bound);
  doc["paper_bound"] = format_double(b.paper_bound);
  doc["margin_paper"] = format_double(b.margin_paper);
  doc["hard_ok"] = b.hard_ok;
  return doc;
}

template <typename T>
json eigen_result_to_json(const FiniteSpace<T>& space, const EigenResult<T>& r) {
  json doc;
  doc["p"] = r.p;
  doc["value"] = value_to_json(r.value);
  doc["symmetric"] = r.symmetric;
  doc["optimal"] = r.optimal;
  doc["converged"] = r.converged;
  if (r.restarts) doc["restarts"] = r.restarts;
  if (r.iterations) doc["iterations"] = r.iterations;
  doc["minimizer"] = json::array();
  for (std::size_t i = 0; i < space.points(); ++i)
    doc["minimizer"].push_back(scalar_to_json(r.minimizer[i]));
  return doc;
}

inline json torsion_result_to_json(const FiniteSpace<double>& space, const TorsionResult<double>& r,
                                   double p) {
  json doc;
  doc["p"] = p;
  doc["energy"] = format_double(r.energy);
  doc["l1_mass"] = format_double(r.l1_mass);
  doc["converged"] = r.converged;
  doc["iterations"] = r.iterations;
  doc["bound"] = bound_report_to_json(r.bound);
  doc["w"] = json::array();
  for (std::size_t i = 0; i < space.points(); ++i) doc["w"].push_back(r.w[i]);
  return doc;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw domain_error("cannot open output file " + path);
  out << content;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pms
