#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nonflat/certify.hpp"

namespace py = pybind11;
using namespace nonflat;

// Values cross the boundary as JSON text; the Python package decodes them.
namespace {

HopfPtr load(const std::string& text) {
  return std::make_shared<HopfData>(hopf_from_json(Json::parse(text)));
}

std::string dump(const Json& j) { return j.dump(); }

Rep module_of(const std::string& hopf, const std::string& spec, const std::string& side, bool use_coend) {
  HopfPtr h = load(hopf);
  Rep m = rep_from_spec(spec, h, side == "right" ? Side::right : Side::left);
  if (use_coend) {
    if (m.side != Side::left) throw Error(ErrorCode::mixed_sides, "the coend is built from a left module");
    m = coend(m).as_right_module();
  }
  return m;
}

std::string verify(const std::string& hopf) {
  const AxiomReport rep = verify_hopf(*load(hopf));
  Json j;
  j["all_pass"] = rep.all_pass();
  Json checks = Json::array();
  for (const AxiomCheck& c : rep.checks) {
    Json e;
    e["axiom"] = c.axiom;
    e["pass"] = c.pass;
    e["witness"] = c.witness ? Json(*c.witness) : Json(nullptr);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return dump(j);
}

std::string projectivity(const std::string& hopf, const std::string& spec, const std::string& side, bool use_coend) {
  const Rep m = module_of(hopf, spec, side, use_coend);
  const ProjectivityCertificate p = is_projective(m);
  Json j;
  j["dim"] = m.dim;
  j["projective"] = p.projective;
  j["cover_rank"] = p.cover_rank;
  j["system_rank"] = p.system_rank;
  j["augmented_rank"] = p.augmented_rank;
  return dump(j);
}

std::string freeness(const std::string& hopf, const std::string& spec, const std::string& side, bool use_coend,
                     std::uint64_t seed) {
  const Rep m = module_of(hopf, spec, side, use_coend);
  const FreenessResult f = is_free(m, seed);
  Json j;
  j["dim"] = m.dim;
  j["verdict"] = to_string(f.verdict);
  j["rank"] = f.rank;
  j["evidence"] = f.evidence;
  return dump(j);
}

std::string slices(const std::string& endo, const std::string& field, std::size_t budget) {
  const SliceAlgebra s = slice_algebra(endo_from_json(Json::parse(endo), Field::parse(field)), budget);
  Json j;
  j["dim"] = s.dim;
  j["saturated"] = s.saturated;
  j["multiplications"] = s.multiplications;
  return dump(j);
}

py::tuple run_certify(const std::string& hopf, const std::string& kind, std::size_t v1, int depth, int truncation,
                      std::uint64_t seed, int retries, long long bound, std::size_t budget) {
  CertifyOptions o;
  o.v1_dim = v1;
  o.depth = depth;
  o.truncation = truncation;
  o.seed = seed;
  o.retries = retries;
  o.bound = bound;
  o.slice_budget = budget;
  if (kind != "nonflat" && kind != "witness") throw Error(ErrorCode::invalid_argument, "kind is nonflat or witness");
  const CertifyOutcome out =
      certify(*load(hopf), o, kind == "nonflat" ? CertificateKind::nonflat : CertificateKind::witness);
  return py::make_tuple(render(out.certificate), to_string(out.verdict), out.reason);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "NonflatError", PyExc_ValueError);
  py::register_exception<nlohmann::json::exception>(m, "JsonError", PyExc_ValueError);

  m.def("build_group", [](const std::vector<std::vector<int>>& table, const std::string& field) {
    return dump(to_json(build_group_algebra(table, Field::parse(field))));
  });
  m.def("cyclic_table", &cyclic_group_table);
  m.def("build_sweedler", [](const std::string& field) { return dump(to_json(build_sweedler(Field::parse(field)))); });
  m.def("build_taft", [](int n, const std::string& field) {
    return dump(to_json(build_taft(n, Field::parse(field))));
  });
  m.def("dual", [](const std::string& hopf) { return dump(to_json(dualize(*load(hopf)))); });
  m.def("verify", &verify);
  m.def("is_semisimple", [](const std::string& hopf) { return is_semisimple(*load(hopf)); });
  m.def("content_hash", [](const std::string& hopf) { return content_hash(*load(hopf)); });
  m.def("coend", [](const std::string& hopf, const std::string& spec) {
    const ModuleCoalgebra c = coend(rep_from_spec(spec, load(hopf)));
    Json j = to_json(c);
    j["module_coalgebra"] = verify_module_coalgebra(c);
    return dump(j);
  });
  m.def("projectivity", &projectivity);
  m.def("freeness", &freeness);
  m.def("halfdual", [](const std::string& endo, const std::string& field) {
    return dump(to_json(halfdual(endo_from_json(Json::parse(endo), Field::parse(field)))));
  });
  m.def("lemma_operator", [](const std::string& hopf) { return dump(to_json(lemma312_operator(*load(hopf)))); });
  m.def("slice_algebra", &slices);
  m.def("certify", &run_certify);
  m.def("recheck", [](const std::string& certificate, const std::string& hopf) {
    const RecheckResult r = recheck(certificate, Json::parse(hopf));
    return py::make_tuple(r.status, r.field, r.message);
  });
  m.attr("default_slice_budget") = kDefaultSliceBudget;
}
