#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nonflat/certify.hpp"

using namespace nonflat;

namespace {

struct Common {
  std::string field = "Q";
  std::string out;
};

struct WitnessFlags {
  std::size_t v1 = 1;
  int depth = 5;
  int truncation = 8;
  std::uint64_t seed = 7;
  int retries = 50;
  long long bound = 3;
  std::size_t slice_budget = kDefaultSliceBudget;

  CertifyOptions options() const { return {v1, depth, truncation, seed, retries, bound, slice_budget}; }
};

void add_witness_flags(CLI::App* app, WitnessFlags& w) {
  app->add_option("--v1", w.v1, "dimension of the trivial summand V_1")->check(CLI::PositiveNumber);
  app->add_option("--depth", w.depth, "number of recursion steps")->check(CLI::NonNegativeNumber);
  app->add_option("--truncation", w.truncation, "highest materialized U-block index");
  app->add_option("--seed", w.seed, "seed for all randomness");
  app->add_option("--retries", w.retries, "sampling attempts")->check(CLI::PositiveNumber);
  app->add_option("--bound", w.bound, "coefficient bound for sampling")->check(CLI::NonNegativeNumber);
  app->add_option("--slice-budget", w.slice_budget, "multiplications allowed in the slice algebra");
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) std::cout << text;
  else write_file_atomic(out, text);
}

HopfPtr load_hopf(const std::string& path) {
  auto h = std::make_shared<HopfData>(hopf_from_json(read_json_file(path)));
  return h;
}

std::vector<std::vector<int>> group_table(const std::string& spec) {
  if (spec.size() > 1 && spec[0] == 'C' && std::all_of(spec.begin() + 1, spec.end(), ::isdigit))
    return cyclic_group_table(std::stoi(spec.substr(1)));
  const Json j = read_json_file(spec);
  try {
    return j.get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::parse_error, "group table must be an array of integer rows");
  }
}

Rep module_from_flags(HopfPtr h, const std::string& spec, const std::string& file, const std::string& side) {
  const Side s = side == "right" ? Side::right : Side::left;
  if (!file.empty()) return rep_from_json(read_json_file(file), h);
  return rep_from_spec(spec, h, s);
}

Json projectivity_json(const ProjectivityCertificate& p) {
  Json j;
  j["projective"] = p.projective;
  j["cover_rank"] = p.cover_rank;
  j["system_rank"] = p.system_rank;
  j["augmented_rank"] = p.augmented_rank;
  j["splitting"] = p.splitting ? to_json(*p.splitting) : Json(nullptr);
  return j;
}

Json freeness_json(const FreenessResult& f) {
  Json j;
  j["verdict"] = to_string(f.verdict);
  j["rank"] = f.rank;
  j["evidence"] = f.evidence;
  j["iso"] = f.iso ? to_json(*f.iso) : Json(nullptr);
  return j;
}

Json operator_json(const LazyUOperator& op) {
  Json j;
  j["scalar"] = to_json(op.scalar());
  Json dom;
  dom["cofinite"] = op.domain().cofinite;
  Json blocks = Json::array();
  for (const auto& b : op.domain().items) blocks.push_back(to_string(b));
  dom[op.domain().cofinite ? "excluded" : "blocks"] = std::move(blocks);
  j["domain"] = std::move(dom);
  Json comps = Json::array();
  for (const auto& [key, m] : op.components()) {
    if (m.is_zero()) continue;
    Json c;
    c["src"] = to_string(key.first);
    c["dst"] = to_string(key.second);
    c["matrix"] = to_json(m);
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  return j;
}

UBlock parse_block(const std::string& s) {
  int a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "U%d_%d%c", &a, &b, &tail) != 2 || (a != 0 && a != 1) || b < 0)
    throw Error(ErrorCode::parse_error, "block must look like U0_3 or U1_0, got '" + s + "'");
  return {a, b};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hopf-algebra toolkit: module tests, witness sequences and non-flatness certificates"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  auto field_opt = [&](CLI::App* sub) { sub->add_option("--field", common.field, "Q, Fp:<p> or cyc:<n>"); };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", common.out, "write output here (atomically)"); };

  // build
  std::string kind, table, dual_input, root;
  int taft_n = 2;
  auto* build = app.add_subcommand("build", "construct Hopf data");
  build->add_option("kind", kind, "group, sweedler, taft or dual")->required()->check(
      CLI::IsMember({"group", "sweedler", "taft", "dual"}));
  build->add_option("--table", table, "C<n> or a JSON file with the multiplication table");
  build->add_option("--n", taft_n, "Taft order");
  build->add_option("--q", root, "root of unity for Taft algebras (default: first primitive one)");
  build->add_option("--input", dual_input, "Hopf JSON to dualize");
  field_opt(build);
  out_opt(build);

  std::string hopf_path;
  auto hopf_arg = [&](CLI::App* sub) { sub->add_option("hopf", hopf_path, "Hopf JSON file")->required(); };

  auto* verify = app.add_subcommand("verify", "check the Hopf axioms");
  hopf_arg(verify);
  out_opt(verify);

  std::string module_spec = "regular+trivial:1", module_file, side = "left";
  bool use_coend = false;
  auto module_opts = [&](CLI::App* sub) {
    sub->add_option("--module", module_spec, "regular, trivial:n, free:n or sums joined by '+'");
    sub->add_option("--module-file", module_file, "module JSON instead of --module");
    sub->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
  };

  auto* coend_cmd = app.add_subcommand("coend", "coend module coalgebra of a left module V");
  hopf_arg(coend_cmd);
  module_opts(coend_cmd);
  out_opt(coend_cmd);

  auto* projective = app.add_subcommand("projective", "decide projectivity of a module");
  hopf_arg(projective);
  module_opts(projective);
  projective->add_flag("--coend", use_coend, "test Coend V of the module as a right module instead");
  out_opt(projective);

  std::uint64_t iso_seed = 1;
  auto* free_cmd = app.add_subcommand("free", "decide freeness of a module");
  hopf_arg(free_cmd);
  module_opts(free_cmd);
  free_cmd->add_flag("--coend", use_coend, "test Coend V of the module as a right module instead");
  free_cmd->add_option("--seed", iso_seed, "seed for the isomorphism search");
  out_opt(free_cmd);

  WitnessFlags wf;
  auto* witness = app.add_subcommand("witness", "build and audit a witness sequence");
  hopf_arg(witness);
  add_witness_flags(witness, wf);
  out_opt(witness);

  auto* certify_cmd = app.add_subcommand("certify-nonflat", "produce a non-flatness certificate");
  hopf_arg(certify_cmd);
  add_witness_flags(certify_cmd, wf);
  out_opt(certify_cmd);

  std::string cert_path;
  auto* recheck_cmd = app.add_subcommand("recheck", "re-derive every field of a certificate");
  recheck_cmd->add_option("certificate", cert_path, "certificate JSON")->required();
  hopf_arg(recheck_cmd);

  std::string word, apply_block;
  std::size_t apply_index = 0;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a free-algebra word on a witness");
  hopf_arg(eval_cmd);
  add_witness_flags(eval_cmd, wf);
  eval_cmd->add_option("--word", word, "e.g. \"2 c[0,1,2] a[1,0,0,0] + c[1,0,0]\"")->required();
  eval_cmd->add_option("--apply", apply_block, "apply to the basis vector of this block (e.g. U0_0)");
  eval_cmd->add_option("--index", apply_index, "coordinate within --apply");
  out_opt(eval_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*build) {
      const Field f = Field::parse(common.field);
      HopfData h;
      if (kind == "group") {
        if (table.empty()) throw Error(ErrorCode::invalid_argument, "build group needs --table");
        h = build_group_algebra(group_table(table), f);
      } else if (kind == "sweedler") {
        h = build_sweedler(f);
      } else if (kind == "taft") {
        std::optional<Scalar> q;
        if (!root.empty()) {
          Json qj = Json::parse(root, nullptr, false);
          if (qj.is_discarded()) qj = root;
          q = scalar_from_json(qj, f);
        }
        h = build_taft(taft_n, f, q);
      } else {
        if (dual_input.empty()) throw Error(ErrorCode::invalid_argument, "build dual needs --input");
        h = dualize(hopf_from_json(read_json_file(dual_input)));
      }
      Json j = to_json(h);
      Json cfg;
      cfg["kind"] = kind;
      cfg["field"] = f.name();
      if (kind == "group") cfg["table"] = table;
      if (kind == "taft") cfg["n"] = taft_n;
      if (kind == "dual") cfg["input"] = dual_input;
      j["config"] = std::move(cfg);
      emit(j, common.out);
      return 0;
    }

    if (*recheck_cmd) {
      std::ifstream in(cert_path, std::ios::binary);
      if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + cert_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      const RecheckResult r = recheck(ss.str(), read_json_file(hopf_path));
      Json j;
      j["status"] = r.status == 0 ? "match" : r.status == 1 ? "mismatch" : "unreadable";
      j["field"] = r.field;
      j["message"] = r.message;
      Json cfg;
      cfg["certificate"] = cert_path;
      cfg["hopf"] = hopf_path;
      j["config"] = std::move(cfg);
      std::cout << j.dump(2) << "\n";
      return r.status;
    }

    HopfPtr h = load_hopf(hopf_path);

    if (*verify) {
      AxiomReport rep = verify_hopf(*h);
      Json j;
      j["all_pass"] = rep.all_pass();
      Json checks = Json::array();
      for (const auto& c : rep.checks) {
        Json cj;
        cj["axiom"] = c.axiom;
        cj["pass"] = c.pass;
        cj["witness"] = c.witness ? Json(*c.witness) : Json(nullptr);
        checks.push_back(std::move(cj));
      }
      j["checks"] = std::move(checks);
      j["semisimple"] = rep.all_pass() ? Json(is_semisimple(*h)) : Json(nullptr);
      Json cfg;
      cfg["hopf"] = hopf_path;
      j["config"] = std::move(cfg);
      emit(j, common.out);
      return rep.all_pass() ? 0 : 1;
    }

    Json cfg;
    cfg["hopf"] = hopf_path;

    if (*coend_cmd || *projective || *free_cmd) {
      Rep m = module_from_flags(h, module_spec, module_file, side);
      cfg["module"] = module_file.empty() ? Json(module_spec) : Json(module_file);
      cfg["side"] = to_string(m.side);
      Json j;
      if (*coend_cmd) {
        if (m.side != Side::left) throw Error(ErrorCode::mixed_sides, "the coend is built from a left module");
        ModuleCoalgebra c = coend(m);
        j = to_json(c);
        j["module_coalgebra"] = verify_module_coalgebra(c);
        j["config"] = std::move(cfg);
        emit(j, common.out);
        return 0;
      }
      if (use_coend) {
        if (m.side != Side::left) throw Error(ErrorCode::mixed_sides, "the coend is built from a left module");
        m = coend(m).as_right_module();
        cfg["coend"] = true;
      }
      j["dim"] = m.dim;
      if (*projective) {
        j["projectivity"] = projectivity_json(is_projective(m));
        j["config"] = std::move(cfg);
        emit(j, common.out);
        return 0;
      }
      cfg["seed"] = iso_seed;
      FreenessResult fr = is_free(m, iso_seed);
      j["freeness"] = freeness_json(fr);
      j["config"] = std::move(cfg);
      emit(j, common.out);
      return fr.verdict == Verdict::inconclusive ? 1 : 0;
    }

    if (*witness || *certify_cmd) {
      CertifyOutcome res =
          certify(*h, wf.options(), *witness ? CertificateKind::witness : CertificateKind::nonflat);
      emit(res.certificate, common.out);
      if (!res.reason.empty()) std::cerr << res.reason << "\n";
      return res.verdict == Verdict::yes ? 0 : 1;
    }

    if (*eval_cmd) {
      const CertifyOptions o = wf.options();
      if (o.depth > o.truncation - 2) throw Error(ErrorCode::invalid_argument, "depth must lie in 0..truncation-2");
      WitnessOptions wo;
      wo.v1_dim = o.v1_dim;
      wo.depth = o.depth;
      wo.truncation = o.truncation;
      wo.seed = o.seed;
      wo.retries = o.retries;
      wo.bound = o.bound;
      wo.slice_budget = o.slice_budget;
      WitnessResult wr = build_witness(h, wo);
      Json j;
      j["word"] = word;
      if (!wr.witness) {
        j["error"] = "no witness after " + std::to_string(wr.attempts) + " attempts";
        emit(j, common.out);
        return 1;
      }
      const FreeWord fw = parse_word(word, h->field(), h->dim());
      const LazyUOperator op = eval_word(*wr.witness, fw);
      j["operator"] = operator_json(op);
      if (!apply_block.empty()) {
        const UBlock b = parse_block(apply_block);
        const std::size_t d = wr.witness->layout.u_block_dim(b.s);
        if (apply_index >= d) throw Error(ErrorCode::invalid_argument, "--index outside the block");
        Vector v(d, h->field().zero());
        v[apply_index] = h->field().one();
        Json image = Json::object();
        for (const auto& [blk, vec] : op.apply({{b, v}})) image[to_string(blk)] = to_json(vec);
        j["image"] = std::move(image);
      }
      cfg["v1_dim"] = o.v1_dim;
      cfg["depth"] = o.depth;
      cfg["truncation"] = o.truncation;
      cfg["seed"] = o.seed;
      cfg["retries"] = o.retries;
      cfg["bound"] = o.bound;
      j["config"] = std::move(cfg);
      emit(j, common.out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
