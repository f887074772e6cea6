#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parse.hpp"
#include "sections.hpp"
#include "toric.hpp"

namespace qosing {

using Json = nlohmann::json;

inline Json to_json(const Rat& r) { return to_string(r); }

inline Json to_json(const ExpVec& v) {
  Json a = Json::array();
  for (const auto& x : v.c) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const std::vector<ExpVec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline Json to_json(const std::vector<Int>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_long(v));
  return a;
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  fail(ErrorKind::ParseError, "rational must be a string or an integer: " + j.dump());
}

inline ExpVec vec_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::ParseError, "exponent vector must be an array: " + j.dump());
  ExpVec v;
  for (const auto& x : j) v.c.push_back(rat_from_json(x));
  return v;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

// Inline JSON when the argument starts with a brace, otherwise a file path.
inline Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_json_text(arg);
  std::ifstream in(arg);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    fail(ErrorKind::ParseError, std::string("bad field ") + key);
  }
}

struct BranchSpec {
  Json echo;
  Branch branch;
};

inline Json preset_spec(const std::string& name) {
  if (name == "cusp") return Json{{"dim", 1}, {"exponents", Json::array({Json::array({"3/2"})})}};
  if (name == "E4")
    return Json{{"dim", 2}, {"exponents", Json::array({Json::array({"3/2", "0"}), Json::array({"7/4", "0"})})}};
  return nullptr;
}

// Accepts a preset name, inline JSON or a file in exponent form or monomial form.
inline BranchSpec parse_branch_spec(const std::string& arg) {
  Json j = preset_spec(arg);
  if (j.is_null()) j = load_json_arg(arg);
  if (!j.is_object()) fail(ErrorKind::ParseError, "branch spec must be a JSON object");
  BranchSpec out;
  out.echo = j;
  if (j.contains("N")) {
    Int n(field<long>(j, "N"));
    std::vector<Int> B;
    for (const auto& x : field<Json>(j, "B")) {
      if (!x.is_number_integer()) fail(ErrorKind::ParseError, "B entries must be integers");
      B.emplace_back(x.get<long>());
    }
    out.branch = monomial_branch(n, B);
  } else {
    std::size_t d = field<std::size_t>(j, "dim");
    std::vector<ExpVec> exps;
    for (const auto& e : field<Json>(j, "exponents")) exps.push_back(vec_from_json(e));
    out.branch = validate_and_sort(exps, d);
  }
  if (out.branch.G() == 0) fail(ErrorKind::Smooth, "no characteristic exponents");
  derive(out.branch);
  return out;
}

inline Json branch_json(const Branch& b) {
  Json perm = Json::array();
  for (auto p : b.permutation) perm.push_back(p + 1);
  return Json{{"dim", b.dim}, {"exponents", to_json(b.exponents)}, {"permutation", perm}};
}

inline Json invariants_json(const BranchInvariants& inv) {
  Json vals = to_json(inv.derived);
  vals.push_back("inf");
  return Json{{"derived", to_json(inv.derived)}, {"semiroot_valuations", vals},
              {"indices", to_json(inv.indices)},  {"degree", to_long(inv.degree)},
              {"c", inv.c},                       {"s", inv.s},
              {"c_reduced", inv.c_reduced},       {"epsilon", inv.epsilon}};
}

inline Json locus_json(const SingularLocus& L) {
  Json c2 = Json::array();
  for (auto [j, l] : L.codim2) c2.push_back({j, l});
  return Json{{"codim1", L.codim1},
              {"codim2", c2},
              {"local_model_exponent", L.local_model_exponent ? Json(to_long(*L.local_model_exponent)) : Json(nullptr)}};
}

inline Json section_json(const SectionData& s) {
  Json comps = Json::array();
  for (const auto& c : s.components) {
    Json ce = Json::array();
    for (const auto& x : c.char_exponents) ce.push_back(to_string(x));
    comps.push_back({{"degree", to_long(c.degree)}, {"char_exponents", ce}});
  }
  return Json{{"coordinate", s.coordinate + 1},
              {"components", comps},
              {"intersection", s.intersection ? to_json(*s.intersection) : Json(nullptr)}};
}

inline SectionData section_from_json(const Json& j) {
  SectionData s;
  s.coordinate = field<std::size_t>(j, "coordinate");
  if (s.coordinate == 0) fail(ErrorKind::ParseError, "coordinates are numbered from 1");
  s.coordinate -= 1;
  for (const auto& c : field<Json>(j, "components")) {
    SectionComponent sc;
    sc.degree = Int(field<long>(c, "degree"));
    for (const auto& x : field<Json>(c, "char_exponents")) sc.char_exponents.push_back(rat_from_json(x));
    s.components.push_back(sc);
  }
  if (j.contains("intersection") && !j.at("intersection").is_null()) s.intersection = rat_from_json(j.at("intersection"));
  return s;
}

inline Json aux_json(const Branch& b, const BranchInvariants& inv, std::uint64_t seed) {
  Json secs = Json::array();
  for (const auto& s : simulate_sections(b, seed)) secs.push_back(section_json(s));
  return Json{{"dim", b.dim}, {"N_G", to_long(inv.indices.back())}, {"N_G_source", "external"}, {"sections", secs}};
}

inline RecoveryAux aux_from_json(const Json& j) {
  RecoveryAux aux;
  if (j.contains("dim")) aux.dim = field<std::size_t>(j, "dim");
  if (j.contains("N_G")) aux.N_G = Int(field<long>(j, "N_G"));
  if (j.contains("sections"))
    for (const auto& s : j.at("sections")) aux.sections.push_back(section_from_json(s));
  return aux;
}

inline Json fragment_json(const QOSemigroup& sg, const ExpVec& bound, const std::vector<ExpVec>& frag) {
  return Json{{"rank", sg.rank},
              {"generators", to_json(sg.extras)},
              {"caps", to_json(sg.caps)},
              {"bound", to_json(bound)},
              {"fragment_size", frag.size()},
              {"elements", to_json(frag)}};
}

inline Json fan_json(const BlowupResult& br) {
  Json cones = Json::array();
  for (const auto& c : br.fan.max_cones) cones.push_back(to_json(c.rays));
  Json dist = Json::array();
  for (std::size_t p = 0; p < br.distinguished.size(); ++p)
    dist.push_back({{"rays", to_json(br.distinguished[p].rays)},
                    {"label", br.labels[p]},
                    {"h_rays", h_ray_count(br, br.distinguished[p])},
                    {"regular", is_regular(br.distinguished[p])}});
  return Json{{"orbifold_multiplicities", to_json(br.orbifold.m)},
              {"max_cone_count", br.fan.max_cones.size()},
              {"max_cones", cones},
              {"h_rays", to_json(br.h_rays)},
              {"c_reduced", br.c_prime},
              {"distinguished_count", br.distinguished.size()},
              {"distinguished", dist}};
}

inline Json matrix_json(const RatMat& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(to_json(ExpVec{row}));
  return a;
}

inline Json phi_json(const PhiResult& phi) {
  return Json{{"cone", phi.cone_index},
              {"matrix", matrix_json(phi.reduced.matrix)},
              {"generators", to_json(phi.generators)},
              {"generator_images", to_json(phi.generator_images)},
              {"bound", to_json(phi.bound)},
              {"certificate",
               {{"fragment_size", phi.certificate.fragment_size},
                {"images_integral", phi.certificate.images_integral},
                {"injective", phi.certificate.injective},
                {"image_equals_pushforward", phi.certificate.image_equals_pushforward},
                {"ok", phi.certificate.ok()}}}};
}

inline Json recovery_json(const RecoveryResult& r) {
  return Json{{"branch", branch_json(r.branch)},
              {"reduced_derived", to_json(r.reduced_derived)},
              {"transcript", r.transcript}};
}

inline Json witness_json(const WitnessReport& w) {
  Json ws = Json::array();
  for (const auto& t : w.witnesses) ws.push_back({{"vertex", to_json(t.vertex)}, {"m", to_json(t.m)}, {"i", t.i}});
  return Json{{"vertices", to_json(w.polyhedron.vertices)},
              {"witnesses", ws},
              {"parts_disjoint", w.parts_disjoint},
              {"hull_matches", w.hull_matches}};
}

}  // namespace qosing
