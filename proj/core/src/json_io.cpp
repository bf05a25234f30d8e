#include "sepfact/json_io.hpp"

#include <cmath>
#include <fstream>

namespace sepfact {

namespace {

int int_field(const Json& j, const std::string& field, int lo) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw SchemaError(field, "expected an integer");
  const int v = j[field].get<int>();
  if (v < lo) throw SchemaError(field, "value below " + std::to_string(lo));
  return v;
}

double finite_number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw SchemaError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(field, "value must be finite");
  return v;
}

Dims dims_from(const Json& j) {
  return {int_field(j, "m", 1), int_field(j, "n", 1)};
}

ProductVector pv_from_json(const Json& j, const std::string& field, Dims dims) {
  if (!j.is_object()) throw SchemaError(field, "expected an object with e and f");
  ComplexVector e = cvector_from_json(j.value("e", Json()), field + ".e", dims.m);
  ComplexVector f = cvector_from_json(j.value("f", Json()), field + ".f", dims.n);
  return {std::move(e), std::move(f)};
}

Json pv_to_json(const ProductVector& pv) {
  Json j;
  j["e"] = cvector_to_json(pv.e);
  j["f"] = cvector_to_json(pv.f);
  return j;
}

Json quantiles_to_json(const MarginQuantiles& q) {
  Json j;
  j["min"] = q.min;
  j["q25"] = q.q25;
  j["median"] = q.median;
  j["q75"] = q.q75;
  j["max"] = q.max;
  return j;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& mat) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    Json rrow = Json::array(), irow = Json::array();
    for (Eigen::Index j = 0; j < mat.cols(); ++j) {
      rrow.push_back(mat(i, j).real());
      irow.push_back(mat(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  Json j;
  j["rows"] = int(mat.rows());
  j["cols"] = int(mat.cols());
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) throw SchemaError(field, "expected a matrix object");
  const int rows = int_field(j, "rows", 1);
  const int cols = int_field(j, "cols", 1);
  if (!j.contains("re") || !j["re"].is_array() || !j.contains("im") || !j["im"].is_array())
    throw SchemaError(field, "expected re and im arrays");
  const Json& re = j["re"];
  const Json& im = j["im"];
  if (int(re.size()) != rows || int(im.size()) != rows)
    throw SchemaError(field, "re/im row count does not match rows");
  ComplexMatrix mat(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!re[i].is_array() || int(re[i].size()) != cols || !im[i].is_array() ||
        int(im[i].size()) != cols)
      throw SchemaError(field, "re/im row " + std::to_string(i) + " has wrong length");
    for (int c = 0; c < cols; ++c)
      mat(i, c) = Complex(finite_number(re[i][c], field + ".re"),
                          finite_number(im[i][c], field + ".im"));
  }
  return mat;
}

Json cvector_to_json(const ComplexVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back({v(i).real(), v(i).imag()});
  return j;
}

ComplexVector cvector_from_json(const Json& j, const std::string& field, int expected) {
  if (!j.is_array() || j.empty()) throw SchemaError(field, "expected a non-empty array of [re, im]");
  if (expected >= 0 && int(j.size()) != expected)
    throw SchemaError(field, "expected length " + std::to_string(expected));
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != 2)
      throw SchemaError(field, "entry " + std::to_string(i) + " is not [re, im]");
    v(Eigen::Index(i)) =
        Complex(finite_number(j[i][0], field), finite_number(j[i][1], field));
  }
  return v;
}

Json ensemble_to_json(const Ensemble& ens) {
  Json comps = Json::array();
  for (const auto& c : ens.components) {
    Json jc;
    jc["weight"] = c.weight;
    jc["e"] = cvector_to_json(c.pv.e);
    jc["f"] = cvector_to_json(c.pv.f);
    comps.push_back(std::move(jc));
  }
  Json j;
  j["m"] = ens.dims.m;
  j["n"] = ens.dims.n;
  j["components"] = std::move(comps);
  return j;
}

Ensemble ensemble_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("ensemble", "expected an object");
  const Dims dims = dims_from(j);
  if (!j.contains("components") || !j["components"].is_array() || j["components"].empty())
    throw SchemaError("components", "expected a non-empty array");
  std::vector<WeightedProduct> comps;
  comps.reserve(j["components"].size());
  int idx = 0;
  for (const auto& jc : j["components"]) {
    const std::string field = "components[" + std::to_string(idx++) + "]";
    if (!jc.is_object() || !jc.contains("weight"))
      throw SchemaError(field, "expected an object with weight, e, f");
    const double w = finite_number(jc["weight"], field + ".weight");
    comps.push_back({w, pv_from_json(jc, field, dims)});
  }
  return Ensemble(dims, std::move(comps));
}

Json density_to_json(const DensityMatrix& rho) {
  Json j;
  j["m"] = rho.dims.m;
  j["n"] = rho.dims.n;
  j["matrix"] = matrix_to_json(rho.mat);
  return j;
}

DensityMatrix density_from_json(const Json& j, const Tolerance& tol) {
  if (!j.is_object()) throw SchemaError("density", "expected an object");
  const Dims dims = dims_from(j);
  if (!j.contains("matrix")) throw SchemaError("matrix", "missing matrix object");
  const ComplexMatrix mat = matrix_from_json(j["matrix"], "matrix");
  return validate_state(mat, dims, tol);
}

Json certificate_to_json(const VkCertificate& cert) {
  Json j;
  j["k"] = cert.k;
  j["ray_gap"] = cert.ray_gap;
  j["f_min_sv"] = cert.f_min_sv;
  j["min_weight"] = cert.min_weight;
  j["valid"] = cert.valid;
  if (!cert.valid) {
    j["rejection"] = cert.rejection;
    j["margin"] = cert.margin;
  }
  return j;
}

Json coarse_to_json(const CoarseDecomposition& coarse, Dims dims) {
  Json blocks = Json::array();
  for (const auto& blk : coarse.blocks) {
    Json jb;
    jb["gamma"] = blk.gamma;
    jb["ray"] = cvector_to_json(blk.ray);
    jb["dim"] = int(blk.l_basis.cols());
    jb["l_basis"] = matrix_to_json(blk.l_basis);
    jb["sigma"] = matrix_to_json(blk.sigma.mat);
    blocks.push_back(std::move(jb));
  }
  Json j;
  j["m"] = dims.m;
  j["n"] = dims.n;
  j["q"] = int(coarse.blocks.size());
  j["blocks"] = std::move(blocks);
  return j;
}

Json face_to_json(const BlockSimplexFace& face) {
  Json blocks = Json::array();
  for (const auto& blk : face.blocks) {
    Json jb;
    jb["ray"] = cvector_to_json(blk.ray);
    jb["block_dim"] = blk.block_dim;
    jb["f_basis"] = matrix_to_json(blk.f_basis);
    jb["l_basis"] = matrix_to_json(blk.l_basis);
    blocks.push_back(std::move(jb));
  }
  Json j;
  j["m"] = face.dims.m;
  j["n"] = face.dims.n;
  j["q"] = face.q;
  j["affine_dim"] = face.affine_dim;
  j["simplex"] = is_simplex(face);
  j["blocks"] = std::move(blocks);
  return j;
}

std::string relation_name(FaceRelation rel) {
  switch (rel) {
    case FaceRelation::Equal: return "Equal";
    case FaceRelation::Segment: return "Segment";
    case FaceRelation::ThreeBall: return "ThreeBall";
  }
  return "Equal";
}

AutomorphismWord word_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("word", "expected an object");
  const Dims dims = dims_from(j);
  if (!j.contains("word") || !j["word"].is_array())
    throw SchemaError("word", "expected an array of generators");
  std::vector<Generator> gens;
  int idx = 0;
  for (const auto& jg : j["word"]) {
    const std::string field = "word[" + std::to_string(idx++) + "]";
    if (!jg.is_object() || !jg.contains("g") || !jg["g"].is_string())
      throw SchemaError(field, "expected an object with generator tag g");
    const std::string g = jg["g"].get<std::string>();
    if (g == "swap") {
      gens.push_back(Generator::swap());
    } else if (g == "pt") {
      const std::string side = jg.value("side", "");
      if (side != "A" && side != "B") throw SchemaError(field + ".side", "expected \"A\" or \"B\"");
      gens.push_back(Generator::pt(side == "A" ? Side::A : Side::B));
    } else if (g == "lu") {
      if (!jg.contains("U") || !jg.contains("V"))
        throw SchemaError(field, "lu generator needs U and V");
      gens.push_back(Generator::local(matrix_from_json(jg["U"], field + ".U"),
                                      matrix_from_json(jg["V"], field + ".V")));
    } else {
      throw SchemaError(field + ".g", "unknown generator \"" + g + "\"");
    }
  }
  return AutomorphismWord(dims, std::move(gens));
}

Json word_to_json(const AutomorphismWord& word) {
  Json gens = Json::array();
  for (const auto& g : word.gens) {
    Json jg;
    switch (g.kind) {
      case Generator::Kind::Swap:
        jg["g"] = "swap";
        break;
      case Generator::Kind::PtA:
        jg["g"] = "pt";
        jg["side"] = "A";
        break;
      case Generator::Kind::PtB:
        jg["g"] = "pt";
        jg["side"] = "B";
        break;
      case Generator::Kind::LocalU:
        jg["g"] = "lu";
        jg["U"] = matrix_to_json(g.U);
        jg["V"] = matrix_to_json(g.V);
        break;
    }
    gens.push_back(std::move(jg));
  }
  Json j;
  j["m"] = word.dims.m;
  j["n"] = word.dims.n;
  j["word"] = std::move(gens);
  return j;
}

Json canonical_to_json(const CanonicalAutomorphism& canon) {
  Json j;
  j["m"] = canon.dims.m;
  j["n"] = canon.dims.n;
  j["swap"] = canon.swap_flag;
  switch (canon.pt) {
    case PtPattern::None: j["pt_pattern"] = "None"; break;
    case PtPattern::A: j["pt_pattern"] = "A"; break;
    case PtPattern::B: j["pt_pattern"] = "B"; break;
    case PtPattern::Both: j["pt_pattern"] = "Both"; break;
  }
  j["U"] = matrix_to_json(phase_normalized_matrix(canon.local.U));
  j["V"] = matrix_to_json(phase_normalized_matrix(canon.local.V));
  j["extends_to_full_state_space"] = extends_to_full_state_space(canon);
  return j;
}

ProductPair pair_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("pair", "expected an object");
  const Dims dims = dims_from(j);
  if (!j.contains("pv1") || !j.contains("pv2"))
    throw SchemaError("pair", "expected pv1 and pv2 objects");
  return {dims, pv_from_json(j["pv1"], "pv1", dims), pv_from_json(j["pv2"], "pv2", dims)};
}

Json ppt_to_json(const PptReport& report) {
  Json j;
  j["side"] = report.side == Side::A ? "A" : "B";
  j["min_eig_pt"] = report.min_eig_pt;
  j["passes"] = report.passes;
  return j;
}

Json sample_to_json(const SampleStats& stats) {
  Json j;
  j["m"] = stats.dims.m;
  j["n"] = stats.dims.n;
  j["k"] = stats.k;
  j["count"] = stats.count;
  j["seed"] = stats.seed;
  j["measures"] = "sphere-uniform factors, simplex-uniform weights";
  j["valid_fraction"] = stats.valid_fraction;
  j["ray_gap"] = quantiles_to_json(stats.ray_gap);
  j["f_min_sv"] = quantiles_to_json(stats.f_min_sv);
  j["min_weight"] = quantiles_to_json(stats.min_weight);
  j["valid_count"] = stats.valid_count;
  j["recovered_count"] = stats.recovered_count;
  j["recovery_success_rate"] = stats.recovery_success_rate;
  j["max_residual"] = stats.max_residual;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("file", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("file", std::string("JSON parse failure: ") + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractViolation("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractViolation("cannot write '" + path + "'");
  out << text;
}

}  // namespace sepfact
