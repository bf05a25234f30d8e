// sepfact: construct separable states from product ensembles, certify and
// recover unique decompositions, analyze faces, canonicalize automorphisms.
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sepfact/decomposition.hpp"
#include "sepfact/json_io.hpp"
#include "sepfact/sampling.hpp"
#include "sepfact/septests.hpp"

namespace {

using namespace sepfact;

Dims parse_dims(const std::string& text) {
  const auto pos = text.find('x');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= text.size())
    throw SchemaError("dims", "expected MxN, e.g. 3x4");
  int m = 0, n = 0;
  try {
    std::size_t used = 0;
    m = std::stoi(text.substr(0, pos), &used);
    if (used != pos) throw std::invalid_argument("");
    n = std::stoi(text.substr(pos + 1), &used);
    if (used != text.size() - pos - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw SchemaError("dims", "expected MxN, e.g. 3x4");
  }
  if (m < 1 || n < 1) throw SchemaError("dims", "factor dimensions must be positive");
  return {m, n};
}

struct Config {
  std::string in, out, svg;
  std::string dims = "2x2";
  std::uint64_t seed = 0;
  double eps_rank = Tolerance{}.eps_rank;
  int count = 100;
  int k = 0;  // 0 means max(m, n)
};

Json report_for(const std::string& command, const Json& payload) {
  Json rep;
  rep["command"] = command;
  rep.update(payload);
  return rep;
}

Json run_command(const std::string& command, const Config& cfg, const Tolerance& tol) {
  if (command == "construct") {
    const Ensemble ens = ensemble_from_json(load_json_file(cfg.in));
    return report_for(command, density_to_json(density_of(ens)));
  }
  if (command == "certify") {
    const Ensemble ens = ensemble_from_json(load_json_file(cfg.in));
    Json payload;
    payload["m"] = ens.dims.m;
    payload["n"] = ens.dims.n;
    payload.update(certificate_to_json(certify_vk(ens, tol)));
    return report_for(command, payload);
  }
  if (command == "recover") {
    const DensityMatrix rho = density_from_json(load_json_file(cfg.in), tol);
    const Recovery rec = recover_unique(rho, tol, cfg.seed);
    Json payload;
    payload["k"] = int(rec.ensemble.components.size());
    payload["residual"] = rec.residual;
    payload["retries"] = rec.retries;
    payload["certificate"] = certificate_to_json(certify_vk(rec.ensemble, tol));
    payload["ensemble"] = ensemble_to_json(rec.ensemble);
    return report_for(command, payload);
  }
  if (command == "coarse") {
    const Ensemble ens = ensemble_from_json(load_json_file(cfg.in));
    return report_for(command, coarse_to_json(coarse_decompose(ens, tol), ens.dims));
  }
  if (command == "face") {
    const Ensemble ens = ensemble_from_json(load_json_file(cfg.in));
    return report_for(command, face_to_json(face_of_ensemble(ens, tol)));
  }
  if (command == "relation") {
    const ProductPair pair = pair_from_json(load_json_file(cfg.in));
    Json payload;
    payload["m"] = pair.dims.m;
    payload["n"] = pair.dims.n;
    payload["relation"] = relation_name(face_relation(pair.pv1, pair.pv2, tol));
    return report_for(command, payload);
  }
  if (command == "canon") {
    const AutomorphismWord word = word_from_json(load_json_file(cfg.in));
    return report_for(command, canonical_to_json(canonicalize(word, tol)));
  }
  if (command == "ppt") {
    const DensityMatrix rho = density_from_json(load_json_file(cfg.in), tol);
    Json payload;
    payload["m"] = rho.dims.m;
    payload["n"] = rho.dims.n;
    payload.update(ppt_to_json(ppt_test(rho, Side::A, tol)));
    return report_for(command, payload);
  }
  // sample
  const Dims dims = parse_dims(cfg.dims);
  const int k = cfg.k > 0 ? cfg.k : std::max(dims.m, dims.n);
  const SampleStats stats = sample_experiment(dims, k, cfg.count, cfg.seed, tol);
  if (!cfg.svg.empty()) write_text_file(cfg.svg, margin_histogram_svg(stats.ray_gap_values));
  return report_for(command, sample_to_json(stats));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"separable-state decomposition toolkit"};
  app.require_subcommand(1);
  Config cfg;

  auto add_file_command = [&](const std::string& name, const std::string& help,
                              bool takes_seed) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--in", cfg.in, "input JSON file")->required();
    sub->add_option("--out", cfg.out, "output report file")->required();
    sub->add_option("--eps-rank", cfg.eps_rank, "rank tolerance")
        ->envname("SEPFACT_EPS_RANK");
    if (takes_seed) sub->add_option("--seed", cfg.seed, "recovery seed");
    return sub;
  };

  add_file_command("construct", "build a density matrix from a product ensemble", false);
  add_file_command("certify", "check an ensemble against the uniqueness regime", false);
  add_file_command("recover", "recover the unique product decomposition of a state", true);
  add_file_command("coarse", "group an ensemble into its left-ray blocks", false);
  add_file_command("face", "describe the face generated by an ensemble", false);
  add_file_command("relation", "classify the face spanned by two product states", false);
  add_file_command("canon", "reduce an automorphism word to normal form", false);
  add_file_command("ppt", "partial-transpose test on a density matrix", false);

  CLI::App* s_sample = app.add_subcommand("sample", "margin statistics over random ensembles");
  s_sample->add_option("--dims", cfg.dims, "factor dimensions, MxN")->required();
  s_sample->add_option("--k", cfg.k, "components per ensemble (default max(m,n))");
  s_sample->add_option("--count", cfg.count, "number of ensembles");
  s_sample->add_option("--seed", cfg.seed, "base seed");
  s_sample->add_option("--out", cfg.out, "output report file")->required();
  s_sample->add_option("--svg", cfg.svg, "optional histogram SVG file");
  s_sample->add_option("--eps-rank", cfg.eps_rank, "rank tolerance")
      ->envname("SEPFACT_EPS_RANK");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Tolerance tol;
    tol.eps_rank = cfg.eps_rank;
    tol.check();
    const Json rep = run_command(command, cfg, tol);
    write_json_file(cfg.out, rep);
    return 0;
  } catch (const RegimeRejection& e) {
    Json err;
    err["error"] = "regime";
    err["reason"] = e.what();
    std::cout << err.dump(2) << std::endl;
    std::cerr << "sepfact " << command << ": " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "contract";
    err["reason"] = e.what();
    std::cout << err.dump(2) << std::endl;
    std::cerr << "sepfact " << command << ": " << e.what() << std::endl;
    return 1;
  }
}
