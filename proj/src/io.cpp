#include "ilscond/io.hpp"

#include <fstream>

namespace ilscond {

namespace {

using nlohmann::json;

Mat matrix_from_rows(const json& j, const char* name) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw std::invalid_argument(std::string(name) +
                                " must be an array of row arrays");
  }
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.front().size());
  Mat M(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (static_cast<Index>(row.size()) != cols) {
      throw std::invalid_argument(std::string(name) + " rows have uneven length");
    }
    for (Index k = 0; k < cols; ++k) M(i, k) = row.at(k).get<double>();
  }
  return M;
}

json rows_of_matrix(const Mat& M) {
  json out = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
    out.push_back(row);
  }
  return out;
}

Vec vector_from_json(const json& j, const char* name) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(name) + " must be an array");
  }
  Vec v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

json json_of_vector(const Vec& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

IlsProblem problem_from_json(const json& j) {
  Signature sig{j.at("m_plus").get<Index>(), j.at("m_minus").get<Index>()};
  Vec b = vector_from_json(j.at("b"), "b");

  const bool has_A = j.contains("A");
  const bool has_gsvd = j.contains("gsvd");
  if (has_A == has_gsvd) {
    throw std::invalid_argument("problem needs exactly one of A or gsvd");
  }

  Mat A;
  if (has_A) {
    A = matrix_from_rows(j.at("A"), "A");
  } else {
    const json& g = j.at("gsvd");
    GsvdSpec spec;
    spec.thetas = g.at("thetas").get<std::vector<double>>();
    spec.X = matrix_from_rows(g.at("X"), "X");
    if (g.contains("Q_plus")) {
      spec.Q_plus = matrix_from_rows(g.at("Q_plus"), "Q_plus");
    }
    if (g.contains("Q_minus")) {
      spec.Q_minus = matrix_from_rows(g.at("Q_minus"), "Q_minus");
    }
    spec.m_plus = sig.m_plus;
    spec.m_minus = sig.m_minus;
    A = gsvd_matrix(spec);
  }

  const double norm_a = j.contains("norm_a") ? j.at("norm_a").get<double>()
                                             : A.norm();
  const double norm_b = j.contains("norm_b") ? j.at("norm_b").get<double>()
                                             : b.norm();
  return make_problem(std::move(A), std::move(b), sig, norm_a, norm_b);
}

json problem_to_json(const IlsProblem& p) {
  json j;
  j["m_plus"] = p.J.m_plus;
  j["m_minus"] = p.J.m_minus;
  j["A"] = rows_of_matrix(p.A);
  j["b"] = json_of_vector(p.b);
  j["norm_a"] = p.norm_a;
  j["norm_b"] = p.norm_b;
  return j;
}

IlsProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return problem_from_json(j);
}

json solution_to_json(const IlsSolution& s) {
  json j;
  j["x"] = json_of_vector(s.x);
  j["r"] = json_of_vector(s.r);
  return j;
}

json report_to_json(const ConditioningReport& r) {
  json j;
  j["chi_A"] = r.chi_A;
  j["chi_b"] = r.chi_b;
  j["chi_Ab"] = r.chi_Ab;
  j["B"] = r.bhp;
  j["bound_iii"] = r.bound_iii;
  j["bound_iv"] = r.bound_iv;
  j["norm_M1"] = r.norm_M1;
  j["norm_M2"] = r.norm_M2;
  j["norm_JxA"] = r.norm_JxA;
  j["norm_Jxb"] = r.norm_Jxb;
  j["norm_a"] = r.norm_a;
  j["norm_b"] = r.norm_b;
  j["norm_A_fro"] = r.norm_A_fro;
  j["norm_b2"] = r.norm_b2;
  j["norm_x"] = r.norm_x;
  j["norm_r"] = r.norm_r;
  j["norm_gram_inv"] = r.norm_gram_inv;
  j["norm_gram_inv_At"] = r.norm_gram_inv_At;
  return j;
}

json diagnostics_to_json(const TheoremDiagnostics& d) {
  json j;
  j["rho"] = d.rho;
  j["lambda1"] = d.lambda1;
  j["lambda2"] = d.lambda2;
  j["star_b_holds"] = d.star_b_holds;
  j["star_d_holds"] = d.star_d_holds;
  j["lower1"] = d.lower1;
  j["lower2"] = d.lower2;
  j["overestimation_floor"] = d.overestimation_floor;
  j["provisionally_forward_stable"] = d.provisionally_forward_stable;
  return j;
}

json probe_result_to_json(const ProbeResult& r) {
  json j;
  j["mode"] = to_string(r.mode);
  j["epsilon"] = r.epsilon;
  j["max_ratio"] = r.max_ratio;
  j["margin_i"] = r.margin_i;
  j["margin_ii"] = r.margin_ii;
  j["margin_iii"] = r.margin_iii;
  j["margin_iv"] = r.margin_iv;
  j["attained_fraction"] = r.attained_fraction;
  j["chi_reference"] = r.chi_reference;
  j["accepted"] = r.accepted;
  j["rejected"] = r.rejected;
  return j;
}

}  // namespace ilscond
