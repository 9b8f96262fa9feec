#include "nonflat/certify.hpp"

namespace nonflat {

namespace {

Json optional_bool(std::optional<bool> b) { return b ? Json(*b) : Json(nullptr); }

Json verdict_bool(Verdict v) { return v == Verdict::inconclusive ? Json(nullptr) : Json(v == Verdict::yes); }

Json level_json(const LevelRecord& r) {
  Json j;
  j["n"] = r.n;
  j["cells_invertible"] = r.cells_invertible;
  j["shape"] = r.shape;
  j["intertwiner"] = r.intertwiner;
  j["inverse_law"] = optional_bool(r.inverse_law);
  j["inverse_cells_checked"] = r.inverse_cells_checked;
  j["diag_max"] = r.diag_max;
  j["shift_max"] = r.shift_max;
  return j;
}

Json open_json(const OpenConditions& oc, Verdict o4) {
  Json j;
  j["O1"] = oc.o1;
  j["O2"] = oc.o2;
  j["O3"] = oc.o3;
  j["O4"] = verdict_bool(o4);
  return j;
}

Json slices_json(const std::optional<SliceAlgebra>& s) {
  Json j;
  j["dim"] = s ? s->dim : 0;
  j["saturated"] = s ? Json(s->saturated) : Json(nullptr);
  j["multiplications"] = s ? s->multiplications : 0;
  return j;
}

Json relations_json(const RelationReport& r) {
  Json j;
  j["module_checked"] = r.module_checked;
  j["module_failed"] = r.module_failed;
  j["inverse_checked"] = r.conv_checked;
  j["inverse_failed"] = r.conv_failed;
  j["depth1_checked"] = r.depth1_checked;
  j["depth1_failed"] = r.depth1_failed;
  j["blocks_compared"] = r.blocks_compared;
  j["first_failure"] = r.first_failure;
  return j;
}

Json config_json(const CertifyOptions& o) {
  Json j;
  j["v1_dim"] = o.v1_dim;
  j["depth"] = o.depth;
  j["truncation"] = o.truncation;
  j["seed"] = o.seed;
  j["retries"] = o.retries;
  j["bound"] = o.bound;
  j["slice_budget"] = o.slice_budget;
  return j;
}

CertifyOptions config_from_json(const Json& j) {
  auto get = [&](const char* key) -> const Json& {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer())
      throw Error(ErrorCode::parse_error, std::string("config.") + key + " missing or not an integer");
    return j[key];
  };
  CertifyOptions o;
  o.v1_dim = get("v1_dim").get<std::size_t>();
  o.depth = get("depth").get<int>();
  o.truncation = get("truncation").get<int>();
  o.seed = get("seed").get<std::uint64_t>();
  o.retries = get("retries").get<int>();
  o.bound = get("bound").get<long long>();
  o.slice_budget = get("slice_budget").get<std::size_t>();
  return o;
}

Json caveats(const CertifyOptions& o, const HopfData& h) {
  Json c = Json::array();
  c.push_back("All checks are exact over " + h.field().name() + " on the materialized range: U-block indices 0.." +
              std::to_string(o.truncation) + ", levels 0.." + std::to_string(o.depth) + ".");
  c.push_back(
      "The witness is a randomized search with exact re-verification; a pass certifies this instance only and "
      "does not settle existence of infinite sequences over countable fields in general.");
  c.push_back(
      "Slice-algebra saturation and faithfulness of the A-action are instance-level evidence for injectivity of "
      "the canonical maps; no injectivity claim is made for the free Hopf algebra as a whole.");
  return c;
}

Json find_path(const Json& j, const std::string& key) { return j.contains(key) ? j.at(key) : Json(nullptr); }

}  // namespace

std::string to_verdict_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "pass";
    case Verdict::no: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string render(const Json& certificate) { return certificate.dump(2) + "\n"; }

CertifyOutcome certify(const HopfData& h_in, const CertifyOptions& o, CertificateKind kind) {
  if (o.depth < 0 || o.depth > o.truncation - 2)
    throw Error(ErrorCode::invalid_argument, "depth must lie in 0..truncation-2");
  if (!verify_hopf(h_in).all_pass()) throw Error(ErrorCode::parse_error, "input does not satisfy the Hopf axioms");
  auto h = std::make_shared<HopfData>(h_in);

  const bool semisimple = is_semisimple(*h);
  const BlockLayout layout = make_layout(h, o.v1_dim, o.truncation);
  const bool projective = is_projective(coend(layout.v_module()).as_right_module()).projective;

  CertifyOutcome out;
  std::optional<WitnessResult> wr;
  std::optional<RelationReport> rel;
  const bool faithful = phi_faithful(*h);

  if (kind == CertificateKind::nonflat && (semisimple || projective)) {
    out.verdict = Verdict::no;
    out.reason = semisimple ? kSemisimpleReason : "Coend V projective, no non-flatness evidence";
  } else {
    WitnessOptions wo;
    wo.v1_dim = o.v1_dim;
    wo.depth = o.depth;
    wo.truncation = o.truncation;
    wo.seed = o.seed;
    wo.retries = o.retries;
    wo.bound = o.bound;
    wo.slice_budget = o.slice_budget;
    wr = build_witness(h, wo);
    if (wr->witness) rel = verify_relations(*wr->witness);
    out.verdict = wr->verdict;
    if (!wr->witness) {
      out.reason = "no witness after " + std::to_string(wr->attempts) + " attempts";
    } else if (wr->verdict == Verdict::no) {
      out.reason = "witness records do not all pass";
    } else if (wr->verdict == Verdict::inconclusive) {
      out.reason = "slice algebra did not stabilize within the budget";
    }
    if (out.verdict == Verdict::yes && !rel->all_pass()) {
      out.verdict = Verdict::no;
      out.reason = "relation check fails: " + rel->first_failure;
    }
    if (kind == CertificateKind::nonflat && out.verdict == Verdict::yes && !faithful) {
      out.verdict = Verdict::no;
      out.reason = "A acts unfaithfully on U";
    }
  }

  Json c;
  c["field"] = to_json(h->field());
  c["seed"] = o.seed;
  c["depth"] = o.depth;
  c["truncation"] = o.truncation;
  Json levels = Json::array();
  if (wr)
    for (const auto& r : wr->levels) levels.push_back(level_json(r));
  c["levels"] = std::move(levels);
  c["open_conditions"] = wr && wr->witness ? open_json(wr->open, wr->o4) : open_json({}, Verdict::inconclusive);
  c["slice_algebra"] = slices_json(wr ? wr->slices : std::nullopt);
  c["coend_projective"] = projective;
  c["verdict"] = to_verdict_string(out.verdict);
  c["caveats"] = caveats(o, *h);

  c["kind"] = kind == CertificateKind::nonflat ? "nonflat" : "witness";
  c["reason"] = out.reason;
  Json input;
  input["hopf"] = h->name();
  input["dim"] = h->dim();
  input["sha256"] = content_hash(*h);
  c["input"] = std::move(input);
  c["config"] = config_json(o);
  c["semisimple"] = semisimple;
  c["phi_faithful"] = faithful;
  Json search;
  search["attempts"] = wr ? wr->attempts : 0;
  Json counts = Json::object();
  if (wr)
    for (const auto& [k, v] : wr->failure_counts) counts[k] = v;
  search["failure_counts"] = std::move(counts);
  c["search"] = std::move(search);
  c["relations"] = rel ? relations_json(*rel) : Json(nullptr);
  if (wr && wr->witness) {
    Json w;
    w["attempt_seed"] = wr->witness->seed;
    w["f0"] = cells_to_json(wr->witness->levels.front());
    c["witness"] = std::move(w);
  } else {
    c["witness"] = nullptr;
  }
  out.certificate = std::move(c);
  return out;
}

std::string first_difference(const Json& a, const Json& b, const std::string& path) {
  // parsed documents store nonnegative integers as unsigned
  if (a.is_number() && b.is_number()) return a == b ? "" : (path.empty() ? "$" : path);
  if (a.type() != b.type()) return path.empty() ? "$" : path;
  if (a.is_object()) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
      if (ia.key() != ib.key()) return path + "." + ia.key();
      std::string d = first_difference(ia.value(), ib.value(), path + "." + ia.key());
      if (!d.empty()) return d;
    }
    if (ia != a.end()) return path + "." + ia.key();
    if (ib != b.end()) return path + "." + ib.key();
    return "";
  }
  if (a.is_array()) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
      std::string d = first_difference(a[k], b[k], path + "[" + std::to_string(k) + "]");
      if (!d.empty()) return d;
    }
    if (a.size() != b.size()) return path + "[" + std::to_string(n) + "]";
    return "";
  }
  return a == b ? "" : (path.empty() ? "$" : path);
}

RecheckResult recheck(const std::string& text, const Json& hopf_json) {
  RecheckResult res;
  auto mismatch = [&](const std::string& field, const std::string& msg) {
    res.status = 1;
    res.field = field;
    res.message = msg;
    return res;
  };

  Json cert;
  HopfData h;
  CertifyOptions o;
  CertificateKind kind = CertificateKind::nonflat;
  try {
    cert = Json::parse(text);
    h = hopf_from_json(hopf_json);
    o = config_from_json(find_path(cert, "config"));
    const Json k = find_path(cert, "kind");
    if (!k.is_string() || (k != "nonflat" && k != "witness"))
      throw Error(ErrorCode::parse_error, "certificate kind missing");
    kind = k == "witness" ? CertificateKind::witness : CertificateKind::nonflat;
  } catch (const nlohmann::json::exception& e) {
    return {2, "", std::string("unreadable certificate: ") + e.what()};
  } catch (const Error& e) {
    return {2, "", e.what()};
  }

  const Json input = find_path(cert, "input");
  if (!input.is_object() || find_path(input, "sha256") != content_hash(h))
    return mismatch(".input.sha256", "input Hopf data differs from the certified one");

  // independent re-derivation from the stored level-0 cells
  const Json wj = find_path(cert, "witness");
  if (wj.is_object()) {
    try {
      auto hp = std::make_shared<HopfData>(h);
      const BlockLayout layout = make_layout(hp, o.v1_dim, o.truncation);
      Witness w{layout, find_path(wj, "attempt_seed").get<std::uint64_t>(), {}};
      w.levels.push_back(level0_from_json(find_path(wj, "f0"), layout));
      for (int n = 0; n < o.depth; ++n) w.levels.push_back(advance(w.levels.back()));
      const auto records = audit_levels(w);
      const Json stored = find_path(cert, "levels");
      if (!stored.is_array() || stored.size() != records.size())
        return mismatch(".levels", "level count does not match the depth");
      for (std::size_t n = 0; n < records.size(); ++n) {
        std::string d = first_difference(level_json(records[n]), stored[n], ".levels[" + std::to_string(n) + "]");
        if (!d.empty()) return mismatch(d, "level record does not re-derive from the stored cells");
      }
      const ShapedOperator& f0 = w.levels.front();
      std::string d = first_difference(open_json(check_O123(f0), check_O4(f0, o.slice_budget)),
                                       find_path(cert, "open_conditions"), ".open_conditions");
      if (!d.empty()) return mismatch(d, "open condition does not re-derive");
      std::optional<SliceAlgebra> sa;
      try {
        sa = slice_algebra(full_slices(f0), layout.v_dim(), o.slice_budget);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::budget_exhausted) throw;
      }
      d = first_difference(slices_json(sa), find_path(cert, "slice_algebra"), ".slice_algebra");
      if (!d.empty()) return mismatch(d, "slice algebra does not re-derive");
      d = first_difference(relations_json(verify_relations(w)), find_path(cert, "relations"), ".relations");
      if (!d.empty()) return mismatch(d, "relation report does not re-derive");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::parse_error) return {2, ".witness", e.what()};
      return mismatch(".witness", std::string("stored cells do not support the recursion: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
      return {2, ".witness", std::string("unreadable witness: ") + e.what()};
    }
  }

  // full regeneration from the echoed configuration, compared byte for byte
  CertifyOutcome again;
  try {
    again = certify(h, o, kind);
  } catch (const Error& e) {
    return mismatch(".config", std::string("configuration no longer certifies: ") + e.what());
  }
  const std::string regenerated = render(again.certificate);
  if (regenerated != text) {
    std::string d = first_difference(again.certificate, cert);
    return mismatch(d.empty() ? "$" : d, d.empty() ? "formatting differs from the canonical rendering"
                                                   : "stored value differs from the regenerated certificate");
  }
  return res;
}

}  // namespace nonflat
