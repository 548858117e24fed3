#include "bellsim/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bellsim {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double to_deg(double rad) { return rad * kDegPerRad; }

Json rho_entries(const DensityMatrix& rho) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) {
      const Complex z = rho.entry(i, j);
      row.push_back(Json::array({round9(z.real()), round9(z.imag())}));
    }
    rows.push_back(row);
  }
  return rows;
}

Json basis_labels() {
  Json labels = Json::array();
  for (const char* label : kBasisLabels) labels.push_back(label);
  return labels;
}

const char* pauli_label(int idx) {
  constexpr const char* labels[] = {"I", "X", "Y", "Z"};
  return labels[idx];
}

Matrix2c pauli_or_id(int idx) {
  if (idx == 0) return Matrix2c::Identity();
  return pauli(idx == 1 ? PauliAxis::X : idx == 2 ? PauliAxis::Y : PauliAxis::Z);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string fmt9(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

double round9(double value) {
  return std::strtod(fmt9(value).c_str(), nullptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string density_matrix_json(const DensityMatrix& rho) {
  Json j;
  j["basis"] = basis_labels();
  j["rho"] = rho_entries(rho);
  return dump(j);
}

std::string tomo_result_json(const TomoResult& result) {
  Json j;
  j["basis"] = basis_labels();
  j["rho_hat"] = rho_entries(result.rho_hat);
  j["fidelity"] = round9(result.fidelity_to_reference);
  j["purity"] = round9(result.purity);
  j["fitted_p"] = round9(result.fitted_p);
  j["fidelity_to_fit"] = round9(result.fidelity_to_fit);
  j["min_eig_raw"] = round9(result.min_eig_raw);
  j["shots_per_basis"] = result.shots_per_basis;
  j["seed"] = result.seed;
  return dump(j);
}

std::string pauli_coeffs_csv(const DensityMatrix& rho) {
  std::ostringstream out;
  out << "op_a,op_b,coeff\n";
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double c =
          (rho.matrix() * tensor(pauli_or_id(a), pauli_or_id(b))).trace().real();
      out << pauli_label(a) << ',' << pauli_label(b) << ',' << fmt9(c) << '\n';
    }
  }
  return out.str();
}

std::string surface_csv(const BetaSurface& surface) {
  std::ostringstream out;
  out << "theta_deg/phi_deg";
  for (double phi : surface.phi) out << ',' << fmt9(to_deg(phi));
  out << '\n';
  for (Eigen::Index i = 0; i < surface.values.rows(); ++i) {
    out << fmt9(to_deg(surface.theta[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < surface.values.cols(); ++j) {
      out << ',' << fmt9(surface.values(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string surface_json(const BetaSurface& surface) {
  Json j;
  Json theta = Json::array();
  for (double t : surface.theta) theta.push_back(round9(to_deg(t)));
  Json phi = Json::array();
  for (double p : surface.phi) phi.push_back(round9(to_deg(p)));
  j["theta_deg"] = theta;
  j["phi_deg"] = phi;
  Json values = Json::array();
  for (Eigen::Index i = 0; i < surface.values.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < surface.values.cols(); ++k) {
      row.push_back(round9(surface.values(i, k)));
    }
    values.push_back(row);
  }
  j["values"] = values;
  return dump(j);
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << "# beta columns hold the Bell operator value, not the analyzer angle\n";
  out << "tau_fs,p_model,beta_measured,beta_stderr,beta_model,theta_deg,"
         "phi_deg,shots,seed\n";
  for (const auto& r : records) {
    out << fmt9(r.tau_fs) << ',' << fmt9(r.p_model) << ','
        << fmt9(r.beta_measured) << ',' << fmt9(r.beta_stderr) << ','
        << fmt9(r.beta_model) << ',' << fmt9(to_deg(r.theta)) << ','
        << fmt9(to_deg(r.phi)) << ',' << r.shots << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepRecord>& records) {
  Json rows = Json::array();
  for (const auto& r : records) {
    Json row;
    row["tau_fs"] = round9(r.tau_fs);
    row["p_model"] = round9(r.p_model);
    row["beta_measured"] = round9(r.beta_measured);
    row["beta_stderr"] = round9(r.beta_stderr);
    row["beta_model"] = round9(r.beta_model);
    row["theta_deg"] = round9(to_deg(r.theta));
    row["phi_deg"] = round9(to_deg(r.phi));
    row["shots"] = r.shots;
    row["seed"] = r.seed;
    rows.push_back(row);
  }
  return dump(rows);
}

std::string bell_max_csv(const std::vector<BellMaxRow>& rows, bool include_white) {
  std::ostringstream out;
  out << "# beta columns hold the Bell operator value, not the analyzer angle\n";
  out << "p,beta_max,theta_deg,phi_deg,horodecki_bound";
  if (include_white) out << ",beta_max_white,violated_white";
  out << '\n';
  for (const auto& r : rows) {
    out << fmt9(r.p) << ',' << fmt9(r.beta_max) << ',' << fmt9(to_deg(r.theta))
        << ',' << fmt9(to_deg(r.phi)) << ',' << fmt9(r.bound);
    if (include_white) {
      out << ',' << fmt9(r.beta_max_white) << ','
          << (std::abs(r.beta_max_white) > 2.0 ? 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

std::string bell_max_json(const std::vector<BellMaxRow>& rows, bool include_white) {
  Json array = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["p"] = round9(r.p);
    row["beta_max"] = round9(r.beta_max);
    row["theta_deg"] = round9(to_deg(r.theta));
    row["phi_deg"] = round9(to_deg(r.phi));
    row["horodecki_bound"] = round9(r.bound);
    if (include_white) {
      row["beta_max_white"] = round9(r.beta_max_white);
      row["violated_white"] = std::abs(r.beta_max_white) > 2.0;
    }
    array.push_back(row);
  }
  return dump(array);
}

std::string measured_bell_csv(const MeasuredBell& run, double p,
                              const ChshSettings& settings, std::uint64_t shots,
                              std::uint64_t seed) {
  const auto& a = settings.angles();
  const double arm1[] = {a[0], a[0], a[1], a[1]};
  const double arm2[] = {a[2], a[3], a[2], a[3]};
  std::ostringstream out;
  out << "# beta_hat = measured Bell operator value\n";
  out << "# p = " << fmt9(p) << "\n";
  out << "# beta_hat = " << fmt9(run.beta_hat) << "\n";
  out << "# beta_stderr = " << fmt9(run.std_err) << "\n";
  out << "# exact = " << (run.exact ? 1 : 0) << "\n";
  out << "# shots = " << shots << "\n";
  out << "# seed = " << seed << "\n";
  out << "term,a_deg,b_deg,e_hat,std_err,total\n";
  constexpr const char* names[] = {"A0B0", "A0B1", "A1B0", "A1B1"};
  for (std::size_t i = 0; i < run.terms.size(); ++i) {
    const auto& t = run.terms[i];
    out << names[i] << ',' << fmt9(to_deg(arm1[i])) << ','
        << fmt9(to_deg(arm2[i])) << ',' << fmt9(t.e_hat) << ','
        << fmt9(t.std_err) << ',' << t.total << '\n';
  }
  return out.str();
}

std::string measured_bell_json(const MeasuredBell& run, double p,
                               const ChshSettings& settings, std::uint64_t shots,
                               std::uint64_t seed) {
  const auto& a = settings.angles();
  Json j;
  j["p"] = round9(p);
  j["angles_deg"] = Json::array({round9(to_deg(a[0])), round9(to_deg(a[1])),
                                 round9(to_deg(a[2])), round9(to_deg(a[3]))});
  j["beta_hat"] = round9(run.beta_hat);
  j["beta_stderr"] = round9(run.std_err);
  j["violation"] = std::abs(run.beta_hat) > 2.0;
  j["exact"] = run.exact;
  j["shots_per_setting"] = shots;
  j["seed"] = seed;
  Json terms = Json::array();
  constexpr const char* names[] = {"A0B0", "A0B1", "A1B0", "A1B1"};
  for (std::size_t i = 0; i < run.terms.size(); ++i) {
    Json term;
    term["name"] = names[i];
    term["e_hat"] = round9(run.terms[i].e_hat);
    term["std_err"] = round9(run.terms[i].std_err);
    term["total"] = run.terms[i].total;
    terms.push_back(term);
  }
  j["terms"] = terms;
  return dump(j);
}

}  // namespace bellsim
